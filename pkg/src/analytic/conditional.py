"""
Probabilidades de outage condicionadas a ḡ = G_CB(k) y sus medias.

Aquí ḡ se trata como fijo: la media sobre ḡ (dinámico) o la sustitución
ḡ = κ (estático) la hace src.analytic.outage. Todas las integrales usan la
densidad exponencial e^{-x/μ}/μ como peso.

Las funciones admiten ``phi_bar = 0`` (half-duplex / full-duplex ideal):
el factor de autointerferencia desaparece de Ξ₁ y χ pierde su segunda raíz.
"""

import math

from config import FZ_BRANCH_RTOL
from src.analytic.special import binomial, chi, log_scaled_upper_gamma


# ── Primer salto ──────────────────────────────────────────────────────────

def f_z_cdf(z, params):
    """CDF de Z = P_C·G_CR + φ (suma de dos exponenciales)."""
    if z < 0:
        raise ValueError(f"z debe ser >= 0 (z={z})")
    if z == 0:
        return 0.0
    mean_c = params.p_c * params.mu_cr
    phi_bar = params.phi_bar
    if phi_bar == 0:
        return -math.expm1(-z / mean_c)

    if abs(phi_bar - mean_c) < FZ_BRANCH_RTOL * max(phi_bar, mean_c):
        return 1.0 - (z + phi_bar) / phi_bar * math.exp(-z / phi_bar)
    return (
        phi_bar * -math.expm1(-z / phi_bar) - mean_c * -math.expm1(-z / mean_c)
    ) / (phi_bar - mean_c)


def _source_hop_ratios(w, params):
    r1 = params.p_c * params.mu_cr * w / params.mu_sr
    r2 = params.phi_bar * w / params.mu_sr
    return r1, r2


def f_w_cdf(w, params):
    """CDF de W = G_SR / Z: 1 - μ_SR² / ((μ_SR + P_C μ_CR w)(μ_SR + φ̄ w))."""
    if w < 0:
        raise ValueError(f"w debe ser >= 0 (w={w})")
    if math.isinf(w):
        return 1.0
    r1, r2 = _source_hop_ratios(w, params)
    return (r1 + r2 + r1 * r2) / ((1.0 + r1) * (1.0 + r2))


def xi1(p_s, params):
    """Ξ₁ = P{Γ_SR < s} con P_S fijo; equivale a F_W(s / P_S)."""
    if params.s == 0:
        return 0.0
    if p_s <= 0:
        return 1.0
    return f_w_cdf(params.s / p_s, params)


def _source_hop_survival(p_s, params):
    """1 - Ξ₁(P_S)."""
    if params.s == 0:
        return 1.0
    if p_s <= 0:
        return 0.0
    r1, r2 = _source_hop_ratios(params.s / p_s, params)
    return 1.0 / ((1.0 + r1) * (1.0 + r2))


# ── Segundo salto ─────────────────────────────────────────────────────────

def _relay_cap_exponent(g_bar, params):
    """(1-α) P_C ḡ / (P̄_R μ_RB ξ): P{cap de P_R no activo} = e^{-exponente}."""
    return (1.0 - params.alpha) * params.p_c * g_bar / (params.p_r_max * params.mu_rb * params.xi)


def xi2(g_bar, h_bar, params):
    """Ξ₂ = P{Γ_RD < s | ḡ, h̄}, con la media sobre G_RB en forma cerrada."""
    if g_bar < 0 or h_bar < 0:
        raise ValueError(f"ḡ y h̄ deben ser >= 0 (ḡ={g_bar}, h̄={h_bar})")
    if params.s == 0:
        return 0.0
    exponent = _relay_cap_exponent(g_bar, params)
    slack = math.exp(-exponent)
    a = (1.0 - params.alpha) * params.mu_rd * g_bar
    den = a + params.mu_rb * params.xi * params.s * h_bar
    if math.isinf(g_bar):
        ratio = 0.0
    elif den > 0:
        ratio = a * slack / den
    else:
        ratio = slack
    bracket = -math.expm1(-exponent) + ratio
    survival = math.exp(-params.p_c * h_bar * params.s / (params.p_r_max * params.mu_rd)) * bracket
    return min(max(1.0 - survival, 0.0), 1.0)


def xi_e2e(xi1_value, xi2_value):
    """Cuello de botella DF: 1 - (1-Ξ₁)(1-Ξ₂)."""
    return xi1_value + xi2_value - xi1_value * xi2_value


# ── ϑ y φ1 ────────────────────────────────────────────────────────────────

def vartheta(p, g_bar, params):
    """E_l̄[(1 - Ξ₁)^p] con P_S = min(αP_C ḡ/(ξ l̄), P̄_S).

    l̄ ≤ u: el cap P̄_S está activo y el término es constante.
    l̄ > u: (1-Ξ₁) = a1·a2 / ((l̄+a1)(l̄+a2)) y la cola es un χ.
    ḡ = 0 devuelve 0 para p ≥ 1: P_S = 0 en todo l̄ > 0, el cap nunca llega
    a activarse (u = 0) y el enlace S→R está siempre en outage.
    """
    if p < 0:
        raise ValueError(f"p debe ser >= 0 (p={p})")
    if p == 0 or params.s == 0:
        return 1.0
    if g_bar < 0:
        raise ValueError(f"ḡ debe ser >= 0 (ḡ={g_bar})")
    capped = _source_hop_survival(params.p_s_max, params) ** p
    if g_bar == 0:
        return 0.0
    if math.isinf(g_bar):
        return capped

    budget = params.alpha * params.p_c * g_bar / params.xi
    u = budget / params.p_s_max
    cap_prob = -math.expm1(-u / params.mu_sb)

    roots = [budget * params.mu_sr / (params.p_c * params.mu_cr * params.s)]
    if params.phi_bar > 0:
        roots.append(budget * params.mu_sr / (params.phi_bar * params.s))
    log_prefactor = p * sum(math.log(r) for r in roots) - math.log(params.mu_sb)
    tail = chi(p, roots, 1.0 / params.mu_sb, u, log_scale=log_prefactor)
    return cap_prob * capped + tail


def phi1_table(n_max, g_bar, params):
    """[φ1(0), …, φ1(n_max)] con φ1(n) = Σ_p C(n,p)(-1)^p ϑ(p)."""
    thetas = [vartheta(p, g_bar, params) for p in range(n_max + 1)]
    return [
        math.fsum(binomial(n, p) * (-1) ** p * thetas[p] for p in range(n + 1))
        for n in range(n_max + 1)
    ]


def phi1(n, g_bar, params):
    """φ1(n, ḡ) = E_l̄[Ξ₁^n]."""
    return phi1_table(n, g_bar, params)[n]


# ── θ y φ2 ────────────────────────────────────────────────────────────────

def theta_fn(p, q, g_bar, params):
    """E_h̄[(AE/(A + B h̄))^q · e^{-p P_C s h̄/(P̄_R μ_RD)}] con h̄ ~ Exp(μ_CD).

    A = (1-α) μ_RD ḡ, B = μ_RB ξ s, E = e^{-(1-α) P_C ḡ/(P̄_R μ_RB ξ)}.
    """
    if not 0 <= q <= p:
        raise ValueError(f"Se requiere 0 <= q <= p (p={p}, q={q})")
    if g_bar < 0:
        raise ValueError(f"ḡ debe ser >= 0 (ḡ={g_bar})")
    rate = p * params.p_c * params.s / (params.p_r_max * params.mu_rd) + 1.0 / params.mu_cd
    if q == 0:
        return 1.0 / (params.mu_cd * rate)
    exponent = _relay_cap_exponent(g_bar, params)
    if params.s == 0:
        return math.exp(-q * exponent)
    if g_bar == 0 or math.isinf(g_bar):
        return 0.0

    a = (1.0 - params.alpha) * params.mu_rd * g_bar
    b = params.mu_rb * params.xi * params.s
    log_value = (
        q * (math.log(a) - math.log(b) - exponent)
        + (q - 1) * math.log(rate)
        + log_scaled_upper_gamma(1 - q, rate * a / b)
        - math.log(params.mu_cd)
    )
    return math.exp(log_value)


def phi2_table(n_max, g_bar, params):
    """[φ2(0), …, φ2(n_max)]; cada θ(p, q) se evalúa una sola vez."""
    capped = -math.expm1(-_relay_cap_exponent(g_bar, params))
    theta = {
        (p, q): theta_fn(p, q, g_bar, params)
        for p in range(n_max + 1)
        for q in range(p + 1)
    }
    table = []
    for n in range(n_max + 1):
        terms = [
            binomial(n, p) * binomial(p, q) * (-1) ** p * capped ** (p - q) * theta[(p, q)]
            for p in range(n + 1)
            for q in range(p + 1)
        ]
        table.append(math.fsum(terms))
    return table


def phi2(n, g_bar, params):
    """φ2(n, ḡ) = E_h̄[Ξ₂^n]."""
    return phi2_table(n, g_bar, params)[n]
