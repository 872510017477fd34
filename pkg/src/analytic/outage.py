"""
Probabilidad de outage analítica (selección bulk y por subportadora).

Las subportadoras son estadísticamente idénticas, así que los productos
en k son potencias K-ésimas. La única integral que queda es la media sobre
ḡ = G_CB: en control dinámico se evalúa con quad_vec tras t = 1 - e^{-ḡ/μ_CB};
en estático ḡ = κ.
"""

import math
from functools import lru_cache

import numpy as np
from scipy.integrate import quad_vec

from config import CLAMP_TOL, N_MAX_ANALYTIC, QUAD_EPSABS, QUAD_EPSREL, QUAD_LIMIT
from src.analytic.conditional import phi1_table, phi2_table
from src.analytic.special import binomial, compositions, multinomial
from src.errors import NumericalInstabilityError
from src.link.modes import (
    DuplexMode, OutageEstimate, PowerControlMode, SelectionScheme, parse_enum,
)
from src.validators import check_params


@lru_cache(maxsize=None)
def _weighted_compositions(n, t):
    """[(coeficiente multinomial, partes)] de 𝖢(n, t)."""
    return tuple((multinomial(c), c) for c in compositions(n, t))


def _clamp_probability(raw, what):
    if not -CLAMP_TOL <= raw <= 1.0 + CLAMP_TOL:
        raise NumericalInstabilityError(
            f"{what} = {raw:.3e} fuera de [0, 1]: la suma alternada perdió precisión"
        )
    return min(max(raw, 0.0), 1.0)


def _check_relays(params):
    if params.n_relays > N_MAX_ANALYTIC:
        raise NumericalInstabilityError(
            f"N = {params.n_relays} > {N_MAX_ANALYTIC}: suma alternada inestable, usar Monte Carlo"
        )


# ── Integrandos condicionados a ḡ ─────────────────────────────────────────

def _bulk_integrand(g_bar, params):
    """Vector [Φ_n | ḡ] para n = 0..N (multinomial sobre 𝖢(n, 4))."""
    t1 = phi1_table(params.n_relays, g_bar, params)
    t2 = phi2_table(params.n_relays, g_bar, params)
    values = []
    for n in range(params.n_relays + 1):
        values.append(math.fsum(
            coef * (-1) ** (n2 + n3) * t1[n2 + n4] * t2[n3 + n4]
            for coef, (_, n2, n3, n4) in _weighted_compositions(n, 4)
        ))
    return np.array(values)


def _ps_integrand(g_bar, params):
    """[Ψ | ḡ] (multinomial sobre 𝖢(N, 3))."""
    n_relays = params.n_relays
    t1 = phi1_table(n_relays, g_bar, params)
    t2 = phi2_table(n_relays, g_bar, params)
    value = math.fsum(
        coef * (-1) ** n3 * t1[n1 + n3] * t2[n2 + n3]
        for coef, (n1, n2, n3) in _weighted_compositions(n_relays, 3)
    )
    return np.array([value])


# ── Medias sobre ḡ ────────────────────────────────────────────────────────

def _average_dynamic(integrand, params):
    """E_ḡ[integrand(ḡ)] con ḡ ~ Exp(μ_CB), sobre t ∈ [0, 1]."""
    def mapped(t):
        g_bar = -params.mu_cb * math.log1p(-t) if t < 1.0 else math.inf
        return integrand(g_bar, params)

    value, _ = quad_vec(
        mapped, 0.0, 1.0,
        epsabs=QUAD_EPSABS, epsrel=QUAD_EPSREL, norm="max", limit=QUAD_LIMIT,
    )
    return np.asarray(value)


def _average_static(integrand, params):
    """Masa puntual en ḡ = κ."""
    return np.asarray(integrand(params.kappa, params))


def _average_for(mode):
    if parse_enum(PowerControlMode, mode) is PowerControlMode.DYNAMIC:
        return _average_dynamic
    return _average_static


def _bulk_from_average(params, average):
    """Σ_n C(N,n)(-1)^n Φ_n^K con Φ_n = average(integrando bulk)."""
    _check_relays(params)
    phis = average(_bulk_integrand, params)
    k = params.n_subcarriers
    raw = math.fsum(
        binomial(params.n_relays, n) * (-1) ** n * float(phis[n]) ** k
        for n in range(params.n_relays + 1)
    )
    return _clamp_probability(raw, "P_out bulk")


def _ps_from_average(params, average):
    """1 - (1 - Ψ)^K con Ψ = average(integrando por subportadora)."""
    _check_relays(params)
    psi = _clamp_probability(float(average(_ps_integrand, params)[0]), "Ψ")
    if psi >= 1.0:
        return 1.0
    raw = -math.expm1(params.n_subcarriers * math.log1p(-psi))
    return _clamp_probability(raw, "P_out por subportadora")


# ── API pública ───────────────────────────────────────────────────────────

def outage_bulk_dynamic(params):
    """Bulk selection, dynamic power control: single ḡ-integral per n."""
    check_params(params)
    return _bulk_from_average(params, _average_dynamic)


def outage_bulk_static(params):
    """Bulk selection, static power control: closed form at ḡ = κ."""
    check_params(params)
    return _bulk_from_average(params, _average_static)


def outage_ps_dynamic(params):
    check_params(params)
    return _ps_from_average(params, _average_dynamic)


def outage_ps_static(params):
    check_params(params)
    return _ps_from_average(params, _average_static)


def effective_params(params, duplex, scheme):
    """Parámetros equivalentes para dúplex y esquema dados.

    Half: φ̄ = 0 y umbral s(s+2). IdealFull: φ̄ = 0. Random: un relé
    elegido al margen del canal se comporta como N = 1.
    """
    duplex = parse_enum(DuplexMode, duplex)
    scheme = parse_enum(SelectionScheme, scheme)
    if duplex is DuplexMode.HALF:
        params = params.with_updates(phi_bar=0.0, s=params.s * (params.s + 2.0))
    elif duplex is DuplexMode.IDEAL_FULL:
        params = params.with_updates(phi_bar=0.0)
    if scheme is SelectionScheme.RANDOM:
        params = params.with_updates(n_relays=1)
    return params


def _evaluate(params, mode, duplex, scheme):
    scheme = parse_enum(SelectionScheme, scheme)
    eff = effective_params(params, duplex, scheme)
    average = _average_for(mode)
    if scheme is SelectionScheme.PER_SUBCARRIER:
        return _ps_from_average(eff, average)
    return _bulk_from_average(eff, average)


def outage_half_analytic(params, scheme, mode=PowerControlMode.DYNAMIC):
    """Half-duplex: φ̄ → 0 y umbral s(s+2) sobre la rutina del esquema."""
    check_params(params)
    return _evaluate(params, mode, DuplexMode.HALF, scheme)


def analytic_outage(params, mode, duplex, scheme):
    """Outage analítica para cualquier combinación de modo, dúplex y esquema.

    Raises:
        NumericalInstabilityError: N demasiado grande o resultado fuera de [0, 1].
    """
    check_params(params)
    probability = _evaluate(params, mode, duplex, scheme)
    return OutageEstimate(probability=probability)
