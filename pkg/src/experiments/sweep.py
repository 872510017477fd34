"""
Barridos de parámetros: una fila por (variante × valor × esquema × modo × dúplex × métrica).

Cada fila lleva el valor analítico, la estimación Monte Carlo con su
semi-anchura de Wilson y el tiempo de cálculo. Todas las filas usan la
misma semilla, de modo que esquemas y modos se comparan sobre los mismos
canales; el resultado no depende del número de workers.
"""

import math
import time
from dataclasses import dataclass, field

import pandas as pd
from joblib import Parallel, delayed

from config import (
    CSV_COLUMNS, DB_CAPABLE_FIELDS, DEFAULT_GRID_POINTS, DEFAULT_SEED,
    DEFAULT_TRIALS, FLOAT_FORMAT, INTEGER_FIELDS,
)
from src.analytic.outage import analytic_outage
from src.channel import FIELD_NAMES, db_to_linear
from src.errors import ConfigError, NumericalInstabilityError
from src.link.modes import DuplexMode, PowerControlMode, SelectionScheme, parse_enum
from src.link.montecarlo import cellular_outage, estimate_outage
from src.optimizer.search import optimal_alpha_grid, suboptimal_alpha
from src.validators import check_params

METRICS = ("d2d", "cellular")


@dataclass(frozen=True)
class SweepSpec:
    """Definición de un barrido.

    swept_key: un campo de NetworkParams (``_db`` si los valores van en dB)
    o varios unidos por ``+`` que se barren juntos.
    variants: sustituciones (dicts) que se cruzan con los valores, p. ej.
    los pares (N, K) o los κ de un experimento.
    """

    base: object
    swept_key: str
    values: tuple
    schemes: tuple = (SelectionScheme.BULK, SelectionScheme.PER_SUBCARRIER)
    modes: tuple = (PowerControlMode.DYNAMIC,)
    duplexes: tuple = (DuplexMode.FULL,)
    trials: int = DEFAULT_TRIALS
    seed: int = DEFAULT_SEED
    emit_analytic: bool = True
    emit_mc: bool = True
    variants: tuple = ({},)
    metrics: tuple = ("d2d",)
    optimizer_markers: bool = False
    grid_points: int = DEFAULT_GRID_POINTS
    record_timing: bool = True
    workers: int = 1
    name: str = field(default="", compare=False)

    def swept_fields(self):
        """[(campo, en_dB)] de swept_key."""
        return parse_swept_key(self.swept_key)

    def in_db(self):
        return self.swept_fields()[0][1]


def parse_swept_key(key):
    parts = [p.strip() for p in str(key).split("+") if p.strip()]
    if not parts:
        raise ConfigError("sweep.key vacío")
    out = []
    for part in parts:
        in_db = part.endswith("_db")
        name = part[:-3] if in_db else part
        if name not in FIELD_NAMES:
            raise ConfigError(f"sweep.key: campo desconocido '{name}'")
        if in_db and name not in DB_CAPABLE_FIELDS:
            raise ConfigError(f"sweep.key: '{name}' no admite dB")
        out.append((name, in_db))
    if len({in_db for _, in_db in out}) > 1:
        raise ConfigError(f"sweep.key mezcla campos en dB y lineales: {key}")
    return out


def validate_spec(spec):
    """Comprueba la coherencia del barrido; lanza ConfigError."""
    spec.swept_fields()
    if not spec.values:
        raise ConfigError("sweep.values vacío")
    if not (spec.schemes and spec.modes and spec.duplexes and spec.variants):
        raise ConfigError("El barrido necesita al menos un esquema, modo, dúplex y variante")
    if spec.emit_mc and spec.trials < 1:
        raise ConfigError(f"sweep.trials debe ser > 0 (trials={spec.trials})")
    unknown = set(spec.metrics) - set(METRICS)
    if unknown or not spec.metrics:
        raise ConfigError(f"sweep.metrics inválidas: {sorted(unknown) or 'vacío'}")
    for variant in spec.variants:
        bad = set(variant) - set(FIELD_NAMES)
        if bad:
            raise ConfigError(f"Variante con campos desconocidos: {sorted(bad)}")
    for name, _ in spec.swept_fields():
        if name in INTEGER_FIELDS:
            for value in spec.values:
                _integral(name, value)
    check_params(spec.base)
    return spec


def _integral(name, value):
    """Valor entero de un campo contador; rechaza fracciones (2.7 no es N = 2)."""
    if not float(value).is_integer():
        raise ConfigError(f"sweep.values: '{name}' necesita enteros, recibido {value}")
    return int(value)


def point_params(spec, variant, value):
    """NetworkParams de una fila: base + variante + valor barrido."""
    updates = dict(variant)
    for name, in_db in spec.swept_fields():
        linear = db_to_linear(value) if in_db else value
        updates[name] = _integral(name, linear) if name in INTEGER_FIELDS else float(linear)
    return check_params(spec.base.with_updates(**updates))


# ── Trabajo por fila ──────────────────────────────────────────────────────

@dataclass(frozen=True)
class _RowTask:
    params: object
    value: float
    in_db: bool
    scheme: SelectionScheme
    mode: PowerControlMode
    duplex: DuplexMode
    metric: str
    trials: int
    seed: int
    emit_analytic: bool
    emit_mc: bool
    record_timing: bool
    markers: tuple


def _run_row(task):
    start = time.perf_counter()
    status = "ok"
    analytic = math.nan
    if task.emit_analytic and task.metric == "d2d":
        try:
            analytic = analytic_outage(task.params, task.mode, task.duplex, task.scheme).probability
        except NumericalInstabilityError:
            status = "unstable"

    mc_estimate = mc_halfwidth = math.nan
    if task.emit_mc:
        if task.metric == "d2d":
            est = estimate_outage(task.params, task.mode, task.duplex, task.scheme, task.trials, task.seed)
        else:
            est = cellular_outage(task.params, task.mode, task.duplex, task.scheme, task.trials, task.seed)
        mc_estimate, mc_halfwidth = est.probability, est.half_width

    wall_ms = (time.perf_counter() - start) * 1e3 if task.record_timing else 0.0
    linear = db_to_linear(task.value) if task.in_db else task.value
    return {
        "swept_value_db": task.value if task.in_db else math.nan,
        "swept_value_linear": float(linear),
        "scheme": task.scheme.value,
        "mode": task.mode.value,
        "duplex": task.duplex.value,
        "analytic": analytic,
        "mc_estimate": mc_estimate,
        "mc_halfwidth": mc_halfwidth,
        "trials": task.trials if task.emit_mc else 0,
        "seed": task.seed,
        "wall_ms": wall_ms,
        "n_relays": task.params.n_relays,
        "n_subcarriers": task.params.n_subcarriers,
        "kappa": task.params.kappa,
        "metric": task.metric,
        "alpha_suboptimal": task.markers[0],
        "alpha_optimal": task.markers[1],
        "status": status,
    }


def _markers(spec, params, scheme, mode, duplex, cache):
    """(α^&, α*) para la combinación; se reutiliza si solo cambia α."""
    if not spec.optimizer_markers:
        return (math.nan, math.nan)
    key = (params.with_updates(alpha=0.5), scheme, mode, duplex)
    if key not in cache:
        sub = suboptimal_alpha(params, mode, scheme, duplex, with_outage=False)
        try:
            opt = optimal_alpha_grid(
                params, mode, scheme, duplex, grid_points=spec.grid_points,
                trials_per_point=spec.trials, seed=spec.seed,
            ).alpha
        except NumericalInstabilityError:
            opt = math.nan
        cache[key] = (sub.alpha, opt)
    return cache[key]


def _build_tasks(spec):
    in_db = spec.in_db()
    cache = {}
    tasks = []
    for variant in spec.variants:
        for value in spec.values:
            params = point_params(spec, variant, value)
            for scheme in (parse_enum(SelectionScheme, s) for s in spec.schemes):
                for mode in (parse_enum(PowerControlMode, m) for m in spec.modes):
                    for duplex in (parse_enum(DuplexMode, d) for d in spec.duplexes):
                        markers = _markers(spec, params, scheme, mode, duplex, cache)
                        for metric in spec.metrics:
                            tasks.append(_RowTask(
                                params=params, value=float(value), in_db=in_db,
                                scheme=scheme, mode=mode, duplex=duplex, metric=metric,
                                trials=spec.trials, seed=spec.seed,
                                emit_analytic=spec.emit_analytic, emit_mc=spec.emit_mc,
                                record_timing=spec.record_timing, markers=markers,
                            ))
    return tasks


def run_sweep(spec, verbose=False):
    """Ejecuta el barrido y devuelve un DataFrame con columnas CSV_COLUMNS.

    Las filas salen en el orden del barrido aunque se calculen en paralelo.
    Una fila con inestabilidad analítica se marca status="unstable" y
    conserva su estimación Monte Carlo.
    """
    validate_spec(spec)
    tasks = _build_tasks(spec)
    if verbose:
        print(f"  {len(tasks)} filas, {spec.workers} worker(s), semilla {spec.seed}")

    rows = Parallel(n_jobs=spec.workers)(delayed(_run_row)(task) for task in tasks)
    table = pd.DataFrame(rows, columns=CSV_COLUMNS)

    if verbose:
        for row in rows:
            flag = "  ⚠ inestable" if row["status"] == "unstable" else ""
            print(
                f"    {row['swept_value_linear']:>12.5g}  {row['scheme']:<15} {row['mode']:<8} "
                f"{row['duplex']:<10} {row['metric']:<8} "
                f"analítico={row['analytic']:.4e}  MC={row['mc_estimate']:.4e} ± {row['mc_halfwidth']:.1e}"
                f"{flag}"
            )
    return table


def unstable_rows(table):
    return int((table["status"] == "unstable").sum())


def write_csv(table, path):
    """CSV UTF-8 con fin de línea LF y probabilidades a precisión completa."""
    table.to_csv(
        path, index=False, float_format=FLOAT_FORMAT, na_rep="",
        lineterminator="\n", encoding="utf-8",
    )
    return path

