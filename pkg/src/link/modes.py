"""
Modos de operación (control de potencia, selección, dúplex) y estimaciones.
"""

import math
from dataclasses import dataclass
from enum import Enum

from scipy.stats import norm

from config import WILSON_LEVEL


class PowerControlMode(str, Enum):
    DYNAMIC = "dynamic"
    STATIC = "static"


class SelectionScheme(str, Enum):
    BULK = "bulk"
    PER_SUBCARRIER = "per_subcarrier"
    RANDOM = "random"


class DuplexMode(str, Enum):
    FULL = "full"
    HALF = "half"
    IDEAL_FULL = "ideal_full"


def parse_enum(enum_cls, value):
    """Acepta el valor ('per_subcarrier'), el nombre ('PER_SUBCARRIER') o el miembro."""
    if isinstance(value, enum_cls):
        return value
    text = str(value).strip()
    try:
        return enum_cls(text.lower().replace("-", "_"))
    except ValueError:
        pass
    try:
        return enum_cls[text.upper().replace("-", "_")]
    except KeyError:
        valid = ", ".join(m.value for m in enum_cls)
        raise ValueError(f"'{value}' no es un {enum_cls.__name__} válido ({valid})") from None


@dataclass(frozen=True)
class OutageEstimate:
    """Probabilidad de outage con su procedencia.

    half_width y trials son 0 para valores analíticos.
    """

    probability: float
    half_width: float = 0.0
    trials: int = 0
    source: str = "analytic"

    def __post_init__(self):
        if not 0.0 <= self.probability <= 1.0:
            raise ValueError(f"Probabilidad fuera de [0, 1]: {self.probability}")
        if self.half_width < 0:
            raise ValueError(f"Semi-anchura negativa: {self.half_width}")

    def covers(self, value, n_halfwidths=3.0):
        """True si ``value`` cae dentro de n semi-anchuras de la estimación."""
        return abs(value - self.probability) <= n_halfwidths * self.half_width


def wilson_halfwidth(successes, trials, level=WILSON_LEVEL):
    """Half-width of the Wilson score interval for a binomial proportion."""
    if trials < 1:
        raise ValueError("trials debe ser >= 1")
    z = norm.ppf(0.5 + level / 2.0)
    p_hat = successes / trials
    denom = 1.0 + z * z / trials
    spread = p_hat * (1.0 - p_hat) / trials + z * z / (4.0 * trials * trials)
    return z * math.sqrt(spread) / denom


def monte_carlo_estimate(successes, trials):
    return OutageEstimate(
        probability=successes / trials,
        half_width=wilson_halfwidth(successes, trials),
        trials=trials,
        source="monte-carlo",
    )
