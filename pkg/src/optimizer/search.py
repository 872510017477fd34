"""
Búsqueda del factor de coordinación α.

- maximize_quasiconcave: sección áurea sobre (0, 1).
- suboptimal_alpha: α^& maximizando Ω (dinámico) o γ (estático).
- optimal_alpha_grid: α* por barrido de la outage en una rejilla.
"""

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from joblib import Parallel, delayed

from config import DEFAULT_GRID_POINTS, DEFAULT_SEED, DEFAULT_TRIALS, GOLDEN_TOL, N_MAX_ANALYTIC
from src.analytic.outage import analytic_outage
from src.errors import NotUnimodalWarning
from src.link.modes import (
    DuplexMode, PowerControlMode, SelectionScheme, parse_enum,
)
from src.link.montecarlo import estimate_outage
from src.optimizer.surrogate import gamma_static, omega
from src.validators import check_params

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class AlphaSearchResult:
    """α elegido, valor del objetivo sustituto y outage conseguida.

    curve guarda (α, outage) de cada punto evaluado por el oráculo de
    rejilla; notes, los avisos de la búsqueda.
    """

    alpha: float
    objective: float
    achieved_outage: object = None
    method: str = "surrogate-search"
    notes: tuple = ()
    curve: tuple = field(default=(), repr=False)

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise ValueError(f"α fuera de (0, 1): {self.alpha}")


def _is_unimodal(samples, rtol=1e-12):
    """True si los valores, ordenados por α, suben y luego bajan (mesetas incluidas)."""
    values = [value for _, value in sorted(samples)]
    falling = False
    for prev, cur in zip(values, values[1:]):
        slack = rtol * max(abs(prev), abs(cur))
        if cur < prev - slack:
            falling = True
        elif cur > prev + slack and falling:
            return False
    return True


def maximize_quasiconcave(objective, tol=GOLDEN_TOL, lower=0.0, upper=1.0):
    """Golden-section search for the maximizer of ``objective`` on (lower, upper).

    Every evaluation is kept; if the values, ordered by α, rise and fall
    more than once the objective is not quasi-concave: a NotUnimodalWarning
    is issued, recorded in ``notes``, and the best point seen is returned
    when it beats the final bracket midpoint.
    """
    if tol <= 0:
        raise ValueError(f"tol debe ser > 0 (tol={tol})")

    samples = []

    def evaluate(alpha):
        value = objective(alpha)
        samples.append((alpha, value))
        return value

    a, b = lower, upper
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = evaluate(c), evaluate(d)

    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = evaluate(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = evaluate(d)

    alpha = 0.5 * (a + b)
    value = evaluate(alpha)
    notes = ()
    if not _is_unimodal(samples):
        message = (
            f"Objetivo no unimodal: los valores evaluados suben y bajan más de una vez "
            f"(intervalo final [{a:.6f}, {b:.6f}])"
        )
        warnings.warn(message, NotUnimodalWarning, stacklevel=2)
        notes = (message,)
        best_alpha, best_value = max(samples, key=lambda sample: sample[1])
        if best_value > value:
            alpha, value = best_alpha, best_value

    return AlphaSearchResult(alpha=alpha, objective=value, notes=notes)


def surrogate_for(mode, params):
    """Objetivo α ↦ Ω(α) o γ(α) según el modo de control."""
    if parse_enum(PowerControlMode, mode) is PowerControlMode.DYNAMIC:
        return lambda alpha: omega(alpha, params)
    return lambda alpha: gamma_static(alpha, params)


def suboptimal_alpha(params, mode, scheme=SelectionScheme.PER_SUBCARRIER,
                     duplex=DuplexMode.FULL, tol=GOLDEN_TOL, with_outage=True):
    """α^& = argmax del objetivo sustituto; outage analítica en ese α."""
    check_params(params)
    found = maximize_quasiconcave(surrogate_for(mode, params), tol=tol)
    achieved = None
    if with_outage:
        achieved = analytic_outage(params.with_updates(alpha=found.alpha), mode, duplex, scheme)
    return AlphaSearchResult(
        alpha=found.alpha,
        objective=found.objective,
        achieved_outage=achieved,
        method="surrogate-search",
        notes=found.notes,
    )


def alpha_grid(grid_points):
    """α_i = i / (G+1), i = 1..G (extremos excluidos)."""
    if grid_points < 3:
        raise ValueError(f"grid_points debe ser >= 3 ({grid_points})")
    return [i / (grid_points + 1) for i in range(1, grid_points + 1)]


def _grid_point(params, mode, scheme, duplex, alpha, use_analytic, trials, seed_seq):
    point = params.with_updates(alpha=alpha)
    if use_analytic:
        return analytic_outage(point, mode, duplex, scheme)
    return estimate_outage(point, mode, duplex, scheme, trials, seed_seq)


def optimal_alpha_grid(params, mode, scheme=SelectionScheme.PER_SUBCARRIER,
                       duplex=DuplexMode.FULL, grid_points=DEFAULT_GRID_POINTS,
                       trials_per_point=DEFAULT_TRIALS, seed=DEFAULT_SEED,
                       method="auto", workers=1):
    """α* = argmin de la outage sobre la rejilla (empates: α menor).

    method="auto" usa la vía analítica si N lo permite y Monte Carlo en otro
    caso; cada punto MC recibe su propio hijo de SeedSequence(seed).
    """
    check_params(params)
    if method not in ("auto", "analytic", "monte-carlo"):
        raise ValueError(f"method desconocido: {method!r}")
    use_analytic = method == "analytic" or (
        method == "auto" and params.n_relays <= N_MAX_ANALYTIC
    )
    grid = alpha_grid(grid_points)
    seeds = np.random.SeedSequence(seed).spawn(grid_points)

    estimates = Parallel(n_jobs=workers)(
        delayed(_grid_point)(params, mode, scheme, duplex, alpha, use_analytic, trials_per_point, s)
        for alpha, s in zip(grid, seeds)
    )
    outages = np.array([e.probability for e in estimates])
    best = int(np.argmin(outages))
    alpha = grid[best]
    return AlphaSearchResult(
        alpha=alpha,
        objective=surrogate_for(mode, params)(alpha),
        achieved_outage=estimates[best],
        method="grid-oracle",
        curve=tuple(zip(grid, outages.tolist())),
    )
