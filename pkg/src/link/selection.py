"""
Selección de relés, evento de outage y SIR celular.

Todas las funciones aceptan realizaciones con eje de ensayos opcional.
Empates en el argmax: gana el índice de relé más bajo (np.argmax devuelve
la primera aparición).
"""

import numpy as np

from config import CELLULAR_SIR_RTOL
from src.link.modes import DuplexMode, SelectionScheme, parse_enum
from src.link.sir import (
    safe_ratio, relay_power_all, sir_end_to_end_all, source_power_all,
)


def outage_threshold(params, duplex):
    """s, o s(s+2) en half-duplex (el enlace usa la mitad del tiempo)."""
    if parse_enum(DuplexMode, duplex) is DuplexMode.HALF:
        return params.s * (params.s + 2.0)
    return params.s


def draw_random_relay(params, rng, lead_shape=()):
    """Índice uniforme en [0, N) por ensayo."""
    return rng.integers(0, params.n_relays, size=lead_shape)


def _choose(gamma, scheme, random_index):
    """Índices (..., K) a partir de la matriz de SIRs (..., N, K)."""
    n_sub = gamma.shape[-1]
    if scheme is SelectionScheme.PER_SUBCARRIER:
        return np.argmax(gamma, axis=-2)

    if scheme is SelectionScheme.BULK:
        single = np.argmax(gamma.min(axis=-1), axis=-1)
    else:
        single = np.asarray(random_index)
    return np.repeat(single[..., None], n_sub, axis=-1)


def take_selected(values, index):
    """Extrae values[..., ñ(k), k] para cada subportadora."""
    return np.take_along_axis(values, index[..., None, :], axis=-2)[..., 0, :]


def select_relays(real, params, mode, duplex, scheme, rng=None, random_index=None):
    """Relé elegido por subportadora.

    Bulk: argmax_n min_k Γ_SRnD(k) replicado en k.
    PerSubcarrier: argmax_n Γ_SRnD(k) para cada k.
    Random: un índice uniforme replicado en k; se toma ``random_index`` si
    viene dado, si no se extrae de ``rng``.
    """
    return selected_sir(real, params, mode, duplex, scheme, rng, random_index)[0]


def selected_sir(real, params, mode, duplex, scheme, rng=None, random_index=None):
    """(índices, Γ_SRñD(k)) tras la selección, ambos (..., K)."""
    scheme = parse_enum(SelectionScheme, scheme)
    gamma = sir_end_to_end_all(real, params, mode, duplex)
    if scheme is SelectionScheme.RANDOM and random_index is None:
        if rng is None:
            raise ValueError("La selección aleatoria necesita rng o random_index")
        random_index = draw_random_relay(params, rng, gamma.shape[:-2])
    index = _choose(gamma, scheme, random_index)
    return index, take_selected(gamma, index)


def is_outage(real, params, mode, duplex, scheme, rng=None, random_index=None):
    """Outage si alguna subportadora queda por debajo del umbral.

    Devuelve bool para una realización y array de bool con eje de ensayos.
    """
    _, sir = selected_sir(real, params, mode, duplex, scheme, rng, random_index)
    event = sir.min(axis=-1) < outage_threshold(params, duplex)
    return bool(event) if np.ndim(event) == 0 else event


def cellular_sir(real, params, mode, index):
    """SIR en la estación base: P_C G_CB / (P_S G_SB + P_Rñ G_RñB)."""
    p_s = source_power_all(real, params, mode)
    p_r = take_selected(relay_power_all(real, params, mode), index)
    g_rb = take_selected(real.g_rb, index)
    interference = p_s * real.g_sb + p_r * g_rb
    return safe_ratio(params.p_c * real.g_cb, interference)


def cellular_outage_events(real, params, mode, index):
    """Indicadores (..., K) de SIR celular por debajo de ξ."""
    sir = cellular_sir(real, params, mode, index)
    return sir < params.xi * (1.0 - CELLULAR_SIR_RTOL)
