#!/usr/bin/env python3
"""
Genera los ficheros de escenario de los experimentos predefinidos.

Uso:
    python3 tools/create_scenarios.py
    python3 tools/create_scenarios.py --trials 10000 --out-dir /tmp/escenarios

Escribe scenarios/<nombre>.cfg para cada experimento (fig2 … fig7). Sirven
de punto de partida para barridos propios con `main.py run --config`.
"""

import argparse
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from config import SCENARIOS_DIR
from src.experiments import builtin_experiment, builtin_names, dump_scenario


def main():
    parser = argparse.ArgumentParser(description="Escribe los escenarios predefinidos")
    parser.add_argument("--out-dir", default=SCENARIOS_DIR, dest="out_dir")
    parser.add_argument("--trials", type=int, default=None, help="Ensayos Monte Carlo por fila")
    args = parser.parse_args()

    print("=== Generando escenarios predefinidos ===\n")
    overrides = {} if args.trials is None else {"trials": args.trials}
    for name in builtin_names():
        spec = builtin_experiment(name, **overrides)
        path = dump_scenario(spec, os.path.join(args.out_dir, f"{name}.cfg"))
        rows = len(spec.values) * len(spec.variants) * len(spec.schemes) * len(spec.modes) \
            * len(spec.duplexes) * len(spec.metrics)
        print(f"  {name:<6} {spec.swept_key:<24} {rows:>4} filas -> {path}")

    print(f"\n  Escenarios en {args.out_dir}")


if __name__ == "__main__":
    main()
