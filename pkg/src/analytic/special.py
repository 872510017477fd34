"""
Funciones especiales del cálculo analítico de outage.

- compositions / multinomial: índices de las sumas multinomiales.
- upper_incomplete_gamma / log_scaled_upper_gamma: Γ(a, x) para a entero ≤ 1.
- merge_roots / partial_fractions: descomposición de 1/Π(x+a_i)^{m_i}.
- chi: ∫_u^∞ e^{-bx} / Π(x+a_i)^p dx.
"""

import itertools
import math
import sys
from dataclasses import dataclass

from scipy import integrate
from scipy.special import comb, exp1

from config import (
    CHI_AMPLIFICATION_LIMIT, GAMMA_CF_THRESHOLD, QUAD_EPSREL,
    QUAD_LIMIT, ROOT_MERGE_RTOL,
)

_CF_EPS = 1e-15
_CF_MAX_ITER = 10_000
_TINY = sys.float_info.min / sys.float_info.epsilon


# ── Combinatoria ──────────────────────────────────────────────────────────

def compositions(n, t):
    """All ordered t-tuples of non-negative integers summing to n.

    Order is deterministic (lexicographic in the bar positions), and the
    count is C(n+t-1, t-1).
    """
    if n < 0 or t < 1:
        raise ValueError(f"compositions necesita n >= 0 y t >= 1 (n={n}, t={t})")
    result = []
    slots = n + t - 1
    for bars in itertools.combinations(range(slots), t - 1):
        parts = []
        prev = -1
        for bar in bars:
            parts.append(bar - prev - 1)
            prev = bar
        parts.append(slots - prev - 1)
        result.append(tuple(parts))
    return result


def multinomial(parts):
    """n! / Π n_τ! como entero exacto."""
    total = math.factorial(sum(parts))
    for part in parts:
        total //= math.factorial(part)
    return total


def binomial(n, k):
    return int(comb(n, k, exact=True))


# ── Gamma incompleta superior ─────────────────────────────────────────────

def _check_gamma_args(a, x):
    if x <= 0:
        raise ValueError(f"Γ(a, x) sólo se evalúa con x > 0 (x={x})")
    if a > 1 or int(a) != a:
        raise ValueError(f"Orden no soportado: a={a} (se requiere entero <= 1)")
    return int(a)


def _log_cf(a, x):
    """log(e^x Γ(a,x)) por fracción continua de Legendre (Lentz modificado)."""
    b = x + 1.0 - a
    c = 1.0 / _TINY
    d = 1.0 / b
    h = d
    for i in range(1, _CF_MAX_ITER + 1):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < _TINY:
            d = _TINY
        c = b + an / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _CF_EPS:
            return a * math.log(x) + math.log(h)
    raise ArithmeticError(f"Fracción continua de Γ({a}, {x}) sin convergencia")


def _log_recurrence(a, x):
    """log(e^x Γ(a,x)) por recurrencia descendente desde E₁ (x < 1).

    Se itera R = x^{-a}·e^x·Γ(a,x), que cumple R(a) = (x·R(a+1) - 1)/a y no
    desborda cuando x → 0.
    """
    ratio = math.exp(x) * float(exp1(x))
    for order in range(-1, a - 1, -1):
        ratio = (x * ratio - 1.0) / order
    return a * math.log(x) + math.log(ratio)


def log_scaled_upper_gamma(a, x):
    """Return log(e^x · Γ(a, x)) for integer a ≤ 1 and x > 0.

    Γ(a, x) is strictly positive on this domain, so the log is always
    defined and e^{c}·Γ(a, x) can be formed as exp(c - x + result) without
    overflow when c is large.
    """
    a = _check_gamma_args(a, x)
    if a == 1:
        return 0.0
    if x < GAMMA_CF_THRESHOLD:
        return _log_recurrence(a, x)
    return _log_cf(a, x)


def upper_incomplete_gamma(a, x):
    """Γ(a, x) = ∫_x^∞ t^{a-1} e^{-t} dt, a ∈ {1, 0, -1, ...}, x > 0."""
    return math.exp(log_scaled_upper_gamma(a, x) - x)


# ── Fracciones parciales ──────────────────────────────────────────────────

def merge_roots(roots, rtol=ROOT_MERGE_RTOL):
    """Agrupa raíces casi iguales sumando multiplicidades.

    ``roots`` es una secuencia de pares (raíz, multiplicidad). Devuelve la
    lista ordenada de pares con raíces separadas al menos ``rtol`` relativo;
    el valor de una raíz fusionada es la media ponderada.
    """
    merged = []
    for root, mult in sorted(roots):
        if mult <= 0:
            continue
        if merged:
            last_root, last_mult = merged[-1]
            if abs(root - last_root) <= rtol * max(root, last_root):
                total = last_mult + mult
                merged[-1] = ((last_root * last_mult + root * mult) / total, total)
                continue
        merged.append((root, mult))
    return merged


@dataclass(frozen=True)
class PartialFractionExpansion:
    """1/Π(x+a_i)^{m_i} = Σ_i Σ_q A(q,i) / (x+a_i)^q.

    coeffs[i][q-1] guarda A(q, i).
    """

    roots: tuple
    multiplicities: tuple
    coeffs: tuple

    def evaluate(self, x):
        return math.fsum(
            coeff / (x + root) ** (q + 1)
            for root, row in zip(self.roots, self.coeffs)
            for q, coeff in enumerate(row)
        )

    def direct(self, x):
        value = 1.0
        for root, mult in zip(self.roots, self.multiplicities):
            value /= (x + root) ** mult
        return value


def _inverse_power_series(offset, mult, order):
    """Coeficientes en t de (offset + t)^{-mult} hasta t^order."""
    base = offset ** (-mult)
    return [
        base * binomial(mult + r - 1, r) * (-1.0 / offset) ** r
        for r in range(order + 1)
    ]


def _multiply_series(left, right, order):
    out = [0.0] * (order + 1)
    for i, li in enumerate(left[: order + 1]):
        if li == 0.0:
            continue
        for j, rj in enumerate(right[: order + 1 - i]):
            out[i + j] += li * rj
    return out


def partial_fractions(roots, rtol=ROOT_MERGE_RTOL):
    """Expand 1/Π(x+a_i)^{m_i} into simple fractions.

    Args:
        roots: sequence of (a_i, m_i) pairs, a_i > 0, already merged.

    Around each root a_i the remaining factors are expanded as a power
    series in t = x + a_i; A(q, i) is the coefficient of t^{m_i - q}.

    Raises:
        ValueError: non-positive root or two roots closer than ``rtol``.
    """
    pairs = sorted((float(r), int(m)) for r, m in roots)
    for root, mult in pairs:
        if root <= 0:
            raise ValueError(f"Raíz no positiva: {root}")
        if mult < 1:
            raise ValueError(f"Multiplicidad inválida: {mult}")
    for (r1, _), (r2, _) in zip(pairs, pairs[1:]):
        if abs(r2 - r1) <= rtol * max(r1, r2):
            raise ValueError(f"Raíces duplicadas sin fusionar: {r1}, {r2}")

    coeffs = []
    for i, (root_i, mult_i) in enumerate(pairs):
        order = mult_i - 1
        series = [1.0] + [0.0] * order
        for j, (root_j, mult_j) in enumerate(pairs):
            if j == i:
                continue
            factor = _inverse_power_series(root_j - root_i, mult_j, order)
            series = _multiply_series(series, factor, order)
        coeffs.append(tuple(series[mult_i - q] for q in range(1, mult_i + 1)))

    return PartialFractionExpansion(
        roots=tuple(r for r, _ in pairs),
        multiplicities=tuple(m for _, m in pairs),
        coeffs=tuple(coeffs),
    )


# ── χ ─────────────────────────────────────────────────────────────────────

def _chi_quadrature(roots, b, u, log_scale):
    """∫_u^∞ por cuadratura adaptativa tras x = u + y/b."""
    def integrand(y):
        x = u + y / b
        log_den = sum(m * math.log(x + r) for r, m in roots)
        return math.exp(log_scale - b * u - y - log_den)

    value, _ = integrate.quad(
        integrand, 0.0, math.inf,
        epsabs=0.0, epsrel=QUAD_EPSREL * 1e-2, limit=QUAD_LIMIT,
    )
    return value / b


def chi(p, a, b, u, log_scale=0.0):
    """exp(log_scale) · ∫_u^∞ e^{-bx} / Π_i (x + a_i)^p dx.

    p = 0 gives e^{-bu}/b. For p > 0 the integrand is split in partial
    fractions and each term reduces to b^{q-1}·e^{-bu}·S(1-q, b(a_i+u)) with
    S = e^x Γ; terms are built in log space with roots scaled by their
    maximum. When the alternating terms cancel by more than
    CHI_AMPLIFICATION_LIMIT the value comes from quadrature instead.
    """
    if b <= 0:
        raise ValueError(f"chi necesita b > 0 (b={b})")
    if u < 0:
        raise ValueError(f"chi necesita u >= 0 (u={u})")
    if p == 0:
        return math.exp(log_scale - b * u) / b

    roots = merge_roots([(float(ai), p) for ai in a])
    if not roots:
        return math.exp(log_scale - b * u) / b
    total_mult = sum(m for _, m in roots)
    scale = max(r for r, _ in roots)
    expansion = partial_fractions([(r / scale, m) for r, m in roots])

    log_scale_root = math.log(scale)
    log_b = math.log(b)
    terms = []
    for root, row in zip(roots, expansion.coeffs):
        for q, coeff in enumerate(row, start=1):
            if coeff == 0.0:
                continue
            log_term = (
                math.log(abs(coeff))
                + (q - total_mult) * log_scale_root
                + (q - 1) * log_b
                - b * u
                + log_scaled_upper_gamma(1 - q, b * (root[0] + u))
                + log_scale
            )
            terms.append(math.copysign(math.exp(log_term), coeff))

    value = math.fsum(terms)
    magnitude = math.fsum(abs(t) for t in terms)
    if value <= 0 or magnitude > CHI_AMPLIFICATION_LIMIT * value:
        return _chi_quadrature(roots, b, u, log_scale)
    return value
