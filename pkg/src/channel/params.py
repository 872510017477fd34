"""
Parámetros del escenario: ganancias medias, potencias, umbrales y contadores.
"""

import math
from dataclasses import dataclass, fields, replace

from config import REFERENCE_DEFAULTS_DB, REFERENCE_DEFAULTS_LINEAR


def db_to_linear(x_db):
    """Convert a power quantity from dB to linear scale, 10^(x/10)."""
    # 10**(x/10) en vez de exp(...) para que 0, 10 y 30 dB den valores exactos
    return 10.0 ** (x_db / 10.0)


def linear_to_db(x):
    return 10.0 * math.log10(x)


@dataclass(frozen=True)
class NetworkParams:
    """Escenario completo en unidades lineales.

    mu_*: ganancias medias de cada enlace; phi_bar: SI residual media;
    p_c: potencia del CUE; p_s_max / p_r_max: topes por subportadora;
    xi: umbral de outage celular; s: umbral de outage D2D;
    alpha: factor de coordinación; kappa: factor de control estático;
    n_relays (N) y n_subcarriers (K).
    """

    mu_sr: float
    mu_rd: float
    mu_sb: float
    mu_rb: float
    mu_cr: float
    mu_cd: float
    mu_cb: float
    phi_bar: float
    p_c: float
    p_s_max: float
    p_r_max: float
    xi: float
    s: float
    alpha: float
    kappa: float
    n_relays: int
    n_subcarriers: int

    def with_updates(self, **changes):
        """Copia con algunos campos cambiados (sin validar)."""
        return replace(self, **changes)

    def as_dict(self):
        return {f.name: getattr(self, f.name) for f in fields(self)}


FIELD_NAMES = tuple(f.name for f in fields(NetworkParams))


def default_params(**overrides):
    """Escenario de referencia (μ_SR=μ_RD=30 dB, ..., s=ξ=P_C=1, α=0.5, κ=4).

    Args:
        **overrides: valores lineales que sustituyen a los de referencia.

    Returns:
        NetworkParams.
    """
    values = {key: db_to_linear(val) for key, val in REFERENCE_DEFAULTS_DB.items()}
    values.update(REFERENCE_DEFAULTS_LINEAR)
    unknown = set(overrides) - set(FIELD_NAMES)
    if unknown:
        raise TypeError(f"Campos desconocidos: {sorted(unknown)}")
    values.update(overrides)
    return NetworkParams(**values)
