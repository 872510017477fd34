#!/usr/bin/env python3
"""
Verificación del α sub-óptimo frente al óptimo de rejilla.

Para cada escenario de la lista (referencia y variaciones de N, K, κ y
ganancias hacia la BS) compara la outage analítica en α^& con la del α*
de una rejilla fina. Informa de la diferencia relativa y marca las que
superan --max-gap.

Uso:
    python3 Verificaciones/verify_optimizer.py
    python3 Verificaciones/verify_optimizer.py --grid-points 199 --max-gap 0.05
"""

import argparse
import os
import sys
import warnings

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from src.analytic import analytic_outage
from src.channel import default_params
from src.errors import NotUnimodalWarning
from src.link import PowerControlMode, SelectionScheme
from src.optimizer import optimal_alpha_grid, suboptimal_alpha

# (etiqueta, sustituciones sobre el escenario de referencia)
CASES = [
    ("referencia", {}),
    ("N=K=4", {"n_relays": 4, "n_subcarriers": 4}),
    ("N=4 K=1", {"n_relays": 4, "n_subcarriers": 1}),
    ("κ=8", {"kappa": 8.0}),
    ("μ_SB=μ_RB=0 dB", {"mu_sb": 1.0, "mu_rb": 1.0}),
    ("μ_SR=μ_RD=15 dB", {"mu_sr": 31.622776601683793, "mu_rd": 31.622776601683793}),
]


def main():
    parser = argparse.ArgumentParser(description="α^& frente a α* de rejilla")
    parser.add_argument("--grid-points", type=int, default=99, dest="grid_points")
    parser.add_argument("--max-gap", type=float, default=0.10, dest="max_gap")
    parser.add_argument("--workers", type=int, default=1)
    args = parser.parse_args()

    print("═══ Verificación del α sub-óptimo ═══")
    print(f"\n{'Caso':<18} {'modo':<8} {'esquema':<15} {'α^&':>8} {'α*':>8} {'diferencia':>11}")
    print(f"{'─' * 72}")

    worst = 0.0
    failures = 0
    for label, overrides in CASES:
        params = default_params(**overrides)
        for mode in PowerControlMode:
            for scheme in (SelectionScheme.BULK, SelectionScheme.PER_SUBCARRIER):
                with warnings.catch_warnings(record=True) as caught:
                    warnings.simplefilter("always", NotUnimodalWarning)
                    sub = suboptimal_alpha(params, mode, scheme)
                opt = optimal_alpha_grid(
                    params, mode, scheme, grid_points=args.grid_points,
                    method="analytic", workers=args.workers,
                )
                best = opt.achieved_outage.probability
                achieved = sub.achieved_outage.probability
                gap = (achieved - best) / best if best > 0 else 0.0
                worst = max(worst, gap)
                flag = ""
                if gap > args.max_gap:
                    failures += 1
                    flag = "  ✗"
                elif caught:
                    flag = "  ⚠ no unimodal"
                print(f"{label:<18} {mode.value:<8} {scheme.value:<15} "
                      f"{sub.alpha:>8.4f} {opt.alpha:>8.4f} {gap:>+10.2%}{flag}")

    # La rejilla no incluye α^&: una diferencia algo negativa es posible
    print(f"\n{'═' * 60}")
    print(f"  Peor diferencia: {worst:+.2%} | Casos por encima de {args.max_gap:.0%}: {failures}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
