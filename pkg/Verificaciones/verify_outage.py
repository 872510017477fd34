#!/usr/bin/env python3
"""
Verificación de la vía analítica contra Monte Carlo a gran escala.

Sortea escenarios al azar (ganancias en dB, N, K, κ, α) y, para cada
combinación de esquema, modo y dúplex, comprueba que la outage analítica
cae dentro de 4 semi-anchuras de Wilson de la estimación Monte Carlo.
Después repasa los barridos predefinidos y comprueba las ordenaciones
por subportadora ≤ bulk ≤ aleatoria y ideal ≤ full-duplex.

Uso:
    python3 Verificaciones/verify_outage.py
    python3 Verificaciones/verify_outage.py --scenarios 20 --trials 10000000 --workers 8
    python3 Verificaciones/verify_outage.py --skip-orderings
"""

import argparse
import itertools
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import numpy as np
import pandas as pd

from config import DEFAULT_SEED
from src.analytic import analytic_outage
from src.channel import db_to_linear, default_params
from src.errors import NumericalInstabilityError
from src.experiments import builtin_experiment, run_sweep
from src.link import DuplexMode, PowerControlMode, SelectionScheme, estimate_outage

N_HALFWIDTHS = 4.0

# ── Escenarios aleatorios ───────────────────────────────────────────────

def _random_params(rng):
    """Escenario con outage lejos de 0 y de 1 casi siempre."""
    hop_db = rng.uniform(5.0, 25.0)
    bs_db = rng.uniform(0.0, 15.0)
    return default_params(
        mu_sr=db_to_linear(hop_db),
        mu_rd=db_to_linear(hop_db + rng.uniform(-3.0, 3.0)),
        mu_sb=db_to_linear(bs_db),
        mu_rb=db_to_linear(bs_db + rng.uniform(-3.0, 3.0)),
        mu_cb=db_to_linear(rng.uniform(10.0, 30.0)),
        phi_bar=db_to_linear(rng.uniform(-5.0, 10.0)),
        kappa=float(rng.choice([2.0, 4.0, 8.0])),
        alpha=float(rng.uniform(0.2, 0.8)),
        n_relays=int(rng.integers(1, 5)),
        n_subcarriers=int(rng.integers(1, 5)),
    )


def check_against_monte_carlo(n_scenarios, trials, seed, workers):
    rng = np.random.Generator(np.random.Philox(seed))
    rows = []
    combos = list(itertools.product(SelectionScheme, PowerControlMode, DuplexMode))

    for i in range(n_scenarios):
        params = _random_params(rng)
        print(f"\n  Escenario {i + 1}/{n_scenarios}: N={params.n_relays} K={params.n_subcarriers} "
              f"κ={params.kappa:g} α={params.alpha:.3f}")
        for scheme, mode, duplex in combos:
            try:
                analytic = analytic_outage(params, mode, duplex, scheme).probability
            except NumericalInstabilityError as exc:
                print(f"    ⚠ {scheme.value}/{mode.value}/{duplex.value}: {exc}")
                continue
            mc = estimate_outage(params, mode, duplex, scheme, trials, seed + i, workers)
            ok = mc.covers(analytic, n_halfwidths=N_HALFWIDTHS)
            rows.append({
                "escenario": i + 1, "scheme": scheme.value, "mode": mode.value,
                "duplex": duplex.value, "analytic": analytic,
                "mc": mc.probability, "halfwidth": mc.half_width, "ok": ok,
            })
            if not ok:
                print(f"    ✗ {scheme.value}/{mode.value}/{duplex.value}: "
                      f"analítica {analytic:.4e} vs MC {mc.probability:.4e} ± {mc.half_width:.1e}")
    return pd.DataFrame(rows)


# ── Ordenaciones sobre los barridos predefinidos ────────────────────────

def _ordering_failures(table, lower, upper, column, tol):
    """Filas donde table[column] de ``lower`` supera al de ``upper``."""
    keys = ["swept_value_linear", "n_relays", "n_subcarriers", "kappa", "mode", "metric"]
    other = "duplex" if column == "scheme" else "scheme"
    left = table[table[column] == lower].set_index(keys + [other])["analytic"]
    right = table[table[column] == upper].set_index(keys + [other])["analytic"]
    joined = pd.concat([left.rename("low"), right.rename("high")], axis=1).dropna()
    return joined[joined["low"] > joined["high"] + tol]


def check_orderings(names, tol=1e-9):
    failures = 0
    for name in names:
        spec = builtin_experiment(name, emit_mc=False)
        table = run_sweep(spec)
        table = table[table["metric"] == "d2d"]
        checks = [
            ("scheme", SelectionScheme.PER_SUBCARRIER.value, SelectionScheme.BULK.value),
            ("scheme", SelectionScheme.BULK.value, SelectionScheme.RANDOM.value),
            ("duplex", DuplexMode.IDEAL_FULL.value, DuplexMode.FULL.value),
        ]
        for column, lower, upper in checks:
            if lower not in set(table[column]) or upper not in set(table[column]):
                continue
            bad = _ordering_failures(table, lower, upper, column, tol)
            status = "OK" if bad.empty else f"✗ {len(bad)} filas"
            print(f"  {name:<6} {lower} ≤ {upper}: {status}")
            failures += len(bad)
    return failures


def main():
    parser = argparse.ArgumentParser(description="Analítica vs Monte Carlo a gran escala")
    parser.add_argument("--scenarios", type=int, default=20)
    parser.add_argument("--trials", type=int, default=10_000_000)
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED)
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument("--skip-orderings", action="store_true", dest="skip_orderings")
    args = parser.parse_args()

    print(f"═══ Verificación analítica vs Monte Carlo ({args.trials} ensayos) ═══")

    print("\n[1] Escenarios aleatorios...")
    table = check_against_monte_carlo(args.scenarios, args.trials, args.seed, args.workers)
    n_bad = int((~table["ok"]).sum()) if not table.empty else 0
    print(f"\n{'─' * 60}")
    print(f"  {len(table)} comparaciones, {n_bad} fuera de {N_HALFWIDTHS:g} semi-anchuras")

    n_order = 0
    if not args.skip_orderings:
        print("\n[2] Ordenaciones en los barridos predefinidos...")
        n_order = check_orderings(["fig2", "fig3", "fig4a", "fig4b", "fig6"])

    print(f"\n{'═' * 60}")
    if n_bad or n_order:
        print(f"  ✗ {n_bad} discrepancias, {n_order} ordenaciones rotas")
        return 1
    print("  Todo correcto")
    return 0


if __name__ == "__main__":
    sys.exit(main())
