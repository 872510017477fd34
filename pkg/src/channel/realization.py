"""
Realizaciones de canal: ganancias exponenciales por relé y subportadora.

Muestreo por CDF inversa (-μ·ln(1-U)) sobre un generador Philox (basado en
contador), de modo que cada semilla / hijo de SeedSequence da un stream
independiente y reproducible entre plataformas.
"""

from dataclasses import dataclass

import numpy as np


# Orden fijo de muestreo de las familias dentro de un lote
_RELAY_FAMILIES = ("g_sr", "g_rd", "g_cr", "g_rb", "phi")
_SUBCARRIER_FAMILIES = ("g_cd", "g_sb", "g_cb")

_FAMILY_MEAN = {
    "g_sr": "mu_sr", "g_rd": "mu_rd", "g_cr": "mu_cr", "g_rb": "mu_rb",
    "phi": "phi_bar", "g_cd": "mu_cd", "g_sb": "mu_sb", "g_cb": "mu_cb",
}


@dataclass(frozen=True)
class ChannelRealization:
    """Ganancias instantáneas (struct-of-arrays).

    Las familias por relé tienen forma (..., N, K) y las por subportadora
    (..., K); el eje inicial opcional recorre ensayos de Monte Carlo.
    """

    g_sr: np.ndarray
    g_rd: np.ndarray
    g_cr: np.ndarray
    g_rb: np.ndarray
    phi: np.ndarray
    g_cd: np.ndarray
    g_sb: np.ndarray
    g_cb: np.ndarray

    @property
    def n_relays(self):
        return self.g_sr.shape[-2]

    @property
    def n_subcarriers(self):
        return self.g_sr.shape[-1]

    def without_si(self):
        """Misma realización con φ forzado a 0 (half-duplex / full-duplex ideal)."""
        return ChannelRealization(
            g_sr=self.g_sr, g_rd=self.g_rd, g_cr=self.g_cr, g_rb=self.g_rb,
            phi=np.zeros_like(self.phi),
            g_cd=self.g_cd, g_sb=self.g_sb, g_cb=self.g_cb,
        )


def make_rng(seed):
    """Generador Philox a partir de un entero o de un SeedSequence."""
    if isinstance(seed, np.random.SeedSequence):
        return np.random.Generator(np.random.Philox(seed))
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))


def exp_cdf(g, mu):
    """CDF of an exponential gain with mean ``mu``: 1 - exp(-g/mu).

    Accepts scalars or arrays; ``g = inf`` maps to 1.
    """
    g_arr = np.asarray(g, dtype=float)
    if np.any(g_arr < 0):
        raise ValueError(f"Ganancia negativa en exp_cdf: {g}")
    if mu <= 0:
        raise ValueError(f"Media no positiva en exp_cdf: {mu}")
    out = -np.expm1(-g_arr / mu)
    return float(out) if out.ndim == 0 else out


def _exponential(rng, mean, shape):
    u = rng.random(shape)
    return -mean * np.log1p(-u)


def sample_batch(params, rng, trials):
    """Draw ``trials`` independent realizations at once.

    Returns:
        ChannelRealization with shapes (trials, N, K) and (trials, K).
    """
    n, k = params.n_relays, params.n_subcarriers
    arrays = {}
    for name in _RELAY_FAMILIES:
        arrays[name] = _exponential(rng, getattr(params, _FAMILY_MEAN[name]), (trials, n, k))
    for name in _SUBCARRIER_FAMILIES:
        arrays[name] = _exponential(rng, getattr(params, _FAMILY_MEAN[name]), (trials, k))
    return ChannelRealization(**arrays)


def sample_realization(params, rng):
    """Una sola realización con formas exactas N×K y K."""
    batch = sample_batch(params, rng, 1)
    return ChannelRealization(**{
        name: getattr(batch, name)[0]
        for name in _RELAY_FAMILIES + _SUBCARRIER_FAMILIES
    })
