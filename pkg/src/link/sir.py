"""
Control de potencia y SIRs instantáneos por salto.

Las funciones ``*_all`` operan sobre una ChannelRealization con eje de
ensayos opcional y devuelven arrays (..., K) o (..., N, K); las funciones
escalares (source_power, relay_power, sir_*) son vistas de un elemento.
Un denominador nulo da +inf, de modo que min/argmax no necesitan casos
especiales.
"""

import numpy as np

from src.link.modes import DuplexMode, PowerControlMode, parse_enum


def safe_ratio(num, den):
    num = np.asarray(num, dtype=float)
    den = np.asarray(den, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = num / den
    return np.where(den > 0, out, np.inf)


def _interference_budget(real, params, mode, share):
    """share * P_C * (G_CB o κ) / ξ, forma (..., K)."""
    if parse_enum(PowerControlMode, mode) is PowerControlMode.DYNAMIC:
        reference = real.g_cb
    else:
        reference = np.full_like(real.g_cb, params.kappa)
    return share * params.p_c * reference / params.xi


def source_power_all(real, params, mode):
    budget = _interference_budget(real, params, mode, params.alpha)
    return np.minimum(safe_ratio(budget, real.g_sb), params.p_s_max)


def relay_power_all(real, params, mode):
    budget = _interference_budget(real, params, mode, 1.0 - params.alpha)
    return np.minimum(safe_ratio(budget[..., None, :], real.g_rb), params.p_r_max)


def _residual_si(real, duplex):
    if parse_enum(DuplexMode, duplex) is DuplexMode.FULL:
        return real.phi
    return np.zeros_like(real.phi)


def sir_first_hop_all(real, params, mode, duplex=DuplexMode.FULL):
    p_s = source_power_all(real, params, mode)[..., None, :]
    denom = params.p_c * real.g_cr + _residual_si(real, duplex)
    return safe_ratio(real.g_sr * p_s, denom)


def sir_second_hop_all(real, params, mode):
    p_r = relay_power_all(real, params, mode)
    denom = params.p_c * real.g_cd[..., None, :]
    return safe_ratio(real.g_rd * p_r, np.broadcast_to(denom, p_r.shape))


def sir_end_to_end_all(real, params, mode, duplex=DuplexMode.FULL):
    return np.minimum(
        sir_first_hop_all(real, params, mode, duplex),
        sir_second_hop_all(real, params, mode),
    )


# ── Operaciones escalares ─────────────────────────────────────────────────

def source_power(k, real, params, mode):
    """P_S(k) = min(α P_C G_CB(k) / (ξ G_SB(k)), P̄_S); estático usa κ."""
    return float(source_power_all(real, params, mode)[..., k])


def relay_power(n, k, real, params, mode):
    """P_Rn(k) = min((1-α) P_C G_CB(k) / (ξ G_RnB(k)), P̄_R); estático usa κ."""
    return float(relay_power_all(real, params, mode)[..., n, k])


def sir_first_hop(n, k, real, params, mode, duplex=DuplexMode.FULL):
    return float(sir_first_hop_all(real, params, mode, duplex)[..., n, k])


def sir_second_hop(n, k, real, params, mode):
    return float(sir_second_hop_all(real, params, mode)[..., n, k])


def sir_end_to_end(n, k, real, params, mode, duplex=DuplexMode.FULL):
    """Cuello de botella DF: mínimo de los dos saltos."""
    return min(
        sir_first_hop(n, k, real, params, mode, duplex),
        sir_second_hop(n, k, real, params, mode),
    )
