"""
Objetivos sustitutos para elegir α.

Ω(α): media sobre ḡ del SIR extremo a extremo con las ganancias
sustituidas por sus medias (control dinámico).
γ(α): mismo cuello de botella con ḡ = κ (control estático).
"""

import math


def _first_hop_gain(params):
    """μ_SR / (P_C μ_CR + φ̄)."""
    return params.mu_sr / (params.p_c * params.mu_cr + params.phi_bar)


def _second_hop_gain(params):
    """μ_RD / (P_C μ_CD)."""
    return params.mu_rd / (params.p_c * params.mu_cd)


def varrho(params):
    """Punto de corte ϱ: la pendiente en ḡ de ambos saltos coincide."""
    first = params.mu_sb * params.mu_rd * (params.p_c * params.mu_cr + params.phi_bar)
    second = params.p_c * params.mu_sr * params.mu_rb * params.mu_cd
    return first / (second + first)


def _slopes(alpha, params):
    """Pendientes en ḡ de los SIR medios de cada salto antes del cap."""
    first = _first_hop_gain(params) * alpha * params.p_c / (params.xi * params.mu_sb)
    second = _second_hop_gain(params) * (1.0 - alpha) * params.p_c / (params.xi * params.mu_rb)
    return first, second


def _caps(params):
    """SIR medios de cada salto con la potencia en su máximo."""
    return params.p_s_max * _first_hop_gain(params), params.p_r_max * _second_hop_gain(params)


def _check_alpha(alpha):
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"α debe estar en (0, 1) (α={alpha})")


def omega(alpha, params):
    """Ω(α) para control dinámico.

    ω1 cuando el cap del primer salto supera al del segundo, ω2 en otro
    caso; dentro de cada una, la rama α < ϱ usa la pendiente del primer
    salto y la rama α ≥ ϱ la del segundo. Todas tienen la forma
    c·μ_CB·(1 - e^{-C/(c·μ_CB)}).
    """
    _check_alpha(alpha)
    slope_first, slope_second = _slopes(alpha, params)
    cap_first, cap_second = _caps(params)

    cap = cap_second if cap_first > cap_second else cap_first
    slope = slope_first if alpha < varrho(params) else slope_second
    scale = slope * params.mu_cb
    return scale * -math.expm1(-cap / scale)


def gamma_static(alpha, params):
    """γ(α) = min(γ1, γ2) con ḡ = κ."""
    _check_alpha(alpha)
    gamma1 = _first_hop_gain(params) * min(
        alpha * params.p_c * params.kappa / (params.xi * params.mu_sb), params.p_s_max,
    )
    gamma2 = _second_hop_gain(params) * min(
        (1.0 - alpha) * params.p_c * params.kappa / (params.xi * params.mu_rb), params.p_r_max,
    )
    return min(gamma1, gamma2)
