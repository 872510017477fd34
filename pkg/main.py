#!/usr/bin/env python3
"""
Laboratorio de outage D2D full-duplex con varios relés sobre OFDM.

Uso:
    python3 main.py run --config escenario.cfg --out output/barrido.csv
    python3 main.py run --config escenario.cfg --out r.csv --seed 7 --trials 200000 --workers 4
    python3 main.py experiment fig2 --out output/fig2.csv
    python3 main.py experiment fig6 --out output/fig6.csv --xlsx output/fig6.xlsx
    python3 main.py optimize --config escenario.cfg --mode dynamic
    python3 main.py optimize --config escenario.cfg --mode static --scheme bulk --check-sir
"""

import argparse
import os
import sys
import time
import warnings
from dataclasses import replace

from config import (
    DEFAULT_GRID_POINTS, DEFAULT_SEED, DEFAULT_TRIALS, EXIT_CONFIG, EXIT_OK,
    EXIT_UNSTABLE, N_MAX_ANALYTIC,
)
from src.analytic import analytic_outage
from src.errors import ConfigError, NotUnimodalWarning, NumericalInstabilityError
from src.experiments import (
    BUILTIN_NAMES, builtin_experiment, export_results_xlsx, load_scenario,
    run_sweep, unstable_rows, write_csv,
)
from src.link import (
    DuplexMode, PowerControlMode, SelectionScheme, estimate_outage,
    mean_end_to_end_sir,
)
from src.optimizer import optimal_alpha_grid, suboptimal_alpha

_ENUM_CHOICES = {
    "mode": [m.value for m in PowerControlMode],
    "scheme": [s.value for s in SelectionScheme],
    "duplex": [d.value for d in DuplexMode],
}


# ── Barridos ──────────────────────────────────────────────────────────────

def _apply_overrides(spec, args):
    """Aplica --seed/--trials/--workers/--no-timing al barrido."""
    changes = {"workers": args.workers, "record_timing": not args.no_timing}
    if args.seed is not None:
        changes["seed"] = args.seed
    if args.trials is not None:
        changes["trials"] = args.trials
    return replace(spec, **changes)


def _run_spec(spec, args, title):
    """Ejecuta el barrido, escribe CSV (y xlsx) y devuelve el código de salida."""
    print(f"\n[2] Ejecutando barrido {title}...")
    print(f"{'─' * 60}")
    start = time.perf_counter()
    table = run_sweep(spec, verbose=True)
    elapsed = time.perf_counter() - start
    print(f"{'─' * 60}")
    print(f"  {len(table)} filas en {elapsed:.1f} s")

    print("\n[3] Escribiendo resultados...")
    out_dir = os.path.dirname(os.path.abspath(args.out))
    os.makedirs(out_dir, exist_ok=True)
    write_csv(table, args.out)
    print(f"  CSV: {args.out}")
    if args.xlsx:
        export_results_xlsx(table, spec.base, args.xlsx, title=f"Libro {title}")

    n_unstable = unstable_rows(table)
    print(f"\n{'═' * 60}")
    print(f"  RESUMEN - {title}")
    print(f"{'═' * 60}")
    print(f"  Filas: {len(table)} | Semilla: {spec.seed} | Ensayos por fila: {spec.trials}")
    if n_unstable:
        print(f"  ⚠ {n_unstable} filas con la vía analítica inestable (se conserva Monte Carlo)")
        return EXIT_UNSTABLE
    return EXIT_OK


def cmd_run(args):
    print("\n[1] Leyendo escenario...")
    scenario = load_scenario(args.config)
    if scenario.sweep is None:
        raise ConfigError(f"{scenario.path}: el escenario no define sweep.key / sweep.values")
    spec = _apply_overrides(scenario.sweep, args)
    return _run_spec(spec, args, spec.name or os.path.basename(scenario.path))


def cmd_experiment(args):
    print(f"\n[1] Preparando experimento {args.name}...")
    spec = _apply_overrides(builtin_experiment(args.name), args)
    print(f"  Barrido de {spec.swept_key}: {len(spec.values)} valores, {len(spec.variants)} variante(s)")
    return _run_spec(spec, args, spec.name)


# ── Optimización de α ─────────────────────────────────────────────────────

def _outage_at(params, alpha, args):
    """Outage en α: analítica si N lo permite, Monte Carlo en otro caso."""
    point = params.with_updates(alpha=alpha)
    if params.n_relays <= N_MAX_ANALYTIC:
        try:
            return analytic_outage(point, args.mode, args.duplex, args.scheme)
        except NumericalInstabilityError as exc:
            print(f"  ⚠ {exc}")
    return estimate_outage(point, args.mode, args.duplex, args.scheme, args.trials, args.seed, args.workers)


def _describe(estimate):
    if estimate.source == "analytic":
        return f"{estimate.probability:.6e} (analítica)"
    return f"{estimate.probability:.6e} ± {estimate.half_width:.1e} (Monte Carlo, {estimate.trials} ensayos)"


def cmd_optimize(args):
    print("\n[1] Leyendo escenario...")
    params = load_scenario(args.config).params
    args.trials = args.trials or DEFAULT_TRIALS
    args.seed = DEFAULT_SEED if args.seed is None else args.seed

    print(f"\n[2] Búsqueda de α^& (modo {args.mode}, esquema {args.scheme}, dúplex {args.duplex})...")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NotUnimodalWarning)
        sub = suboptimal_alpha(params, args.mode, args.scheme, args.duplex, with_outage=False)
    for note in sub.notes:
        print(f"  ⚠ {note}")
    sub_outage = _outage_at(params, sub.alpha, args)
    print(f"  α^& = {sub.alpha:.6f} | objetivo = {sub.objective:.6e}")
    print(f"  Outage en α^&: {_describe(sub_outage)}")

    print(f"\n[3] Rejilla de {args.grid_points} puntos para α*...")
    method = "auto" if params.n_relays <= N_MAX_ANALYTIC else "monte-carlo"
    try:
        opt = optimal_alpha_grid(
            params, args.mode, args.scheme, args.duplex, grid_points=args.grid_points,
            trials_per_point=args.trials, seed=args.seed, method=method, workers=args.workers,
        )
    except NumericalInstabilityError as exc:
        print(f"  ⚠ {exc}")
        opt = optimal_alpha_grid(
            params, args.mode, args.scheme, args.duplex, grid_points=args.grid_points,
            trials_per_point=args.trials, seed=args.seed, method="monte-carlo", workers=args.workers,
        )
    print(f"  α* = {opt.alpha:.6f}")
    print(f"  Outage en α*: {_describe(opt.achieved_outage)}")

    best = opt.achieved_outage.probability
    if best > 0:
        gap = (sub_outage.probability - best) / best
        print(f"  Diferencia relativa de outage: {gap:+.2%}")

    if args.check_sir:
        print("\n[4] SIR extremo a extremo medio (Monte Carlo)...")
        for label, alpha in (("α^&", sub.alpha), ("α*", opt.alpha)):
            mean_sir = mean_end_to_end_sir(
                params.with_updates(alpha=alpha), args.mode, args.duplex, args.scheme,
                args.trials, args.seed, args.workers,
            )
            print(f"  {label}: E[Γ] = {mean_sir:.6e}")
        print(f"  Objetivo sustituto en α^&: {sub.objective:.6e}")

    return EXIT_OK


# ── CLI ───────────────────────────────────────────────────────────────────

def _add_sweep_options(sub):
    sub.add_argument("--out", required=True, help="CSV de salida")
    sub.add_argument("--seed", type=int, default=None, help="Semilla (default: la del escenario)")
    sub.add_argument("--trials", type=int, default=None, help="Ensayos Monte Carlo por fila")
    sub.add_argument("--workers", type=int, default=1, help="Procesos en paralelo (default: 1)")
    sub.add_argument("--xlsx", default=None, help="Exporta también un libro Excel")
    sub.add_argument(
        "--no-timing", action="store_true", dest="no_timing",
        help="Escribe wall_ms = 0 para que dos ejecuciones den el mismo CSV",
    )


def build_parser():
    parser = argparse.ArgumentParser(
        description="Outage de enlaces D2D full-duplex con varios relés (analítica y Monte Carlo)",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=f"""
Experimentos predefinidos: {', '.join(BUILTIN_NAMES)}

Códigos de salida:
  {EXIT_OK}  correcto
  {EXIT_CONFIG}  error de configuración
  {EXIT_UNSTABLE}  alguna fila con la vía analítica inestable (CSV escrito igualmente)
        """,
    )
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", help="Barrido definido en un fichero de escenario")
    run.add_argument("--config", required=True, help="Fichero de escenario (o nombre en scenarios/)")
    _add_sweep_options(run)
    run.set_defaults(handler=cmd_run)

    experiment = commands.add_parser("experiment", help="Experimento predefinido")
    experiment.add_argument("name", help=f"Uno de: {', '.join(BUILTIN_NAMES)}")
    _add_sweep_options(experiment)
    experiment.set_defaults(handler=cmd_experiment)

    optimize = commands.add_parser("optimize", help="Elige el factor de coordinación α")
    optimize.add_argument("--config", required=True, help="Fichero de escenario")
    optimize.add_argument("--mode", required=True, choices=_ENUM_CHOICES["mode"])
    optimize.add_argument("--scheme", default=SelectionScheme.PER_SUBCARRIER.value, choices=_ENUM_CHOICES["scheme"])
    optimize.add_argument("--duplex", default=DuplexMode.FULL.value, choices=_ENUM_CHOICES["duplex"])
    optimize.add_argument("--grid-points", type=int, default=DEFAULT_GRID_POINTS, dest="grid_points")
    optimize.add_argument("--trials", type=int, default=None, help="Ensayos por punto si se usa Monte Carlo")
    optimize.add_argument("--seed", type=int, default=None)
    optimize.add_argument("--workers", type=int, default=1)
    optimize.add_argument(
        "--check-sir", action="store_true", dest="check_sir",
        help="Compara el SIR medio simulado en α^& y α* con el objetivo sustituto",
    )
    optimize.set_defaults(handler=cmd_optimize)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    print(f"═══ Laboratorio de outage D2D - {args.command} ═══")
    try:
        code = args.handler(args)
    except (ValueError, FileNotFoundError) as exc:
        # ConfigError es un ValueError; también trials < 1, grid_points < 3, ...
        print(f"\nERROR: {exc}")
        return EXIT_CONFIG
    except NumericalInstabilityError as exc:
        print(f"\n⚠ {exc}")
        return EXIT_UNSTABLE
    print("\n═══ Proceso completado ═══")
    return code


if __name__ == "__main__":
    sys.exit(main())
