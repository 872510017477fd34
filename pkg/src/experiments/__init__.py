from .sweep import (
    METRICS, SweepSpec, parse_swept_key, validate_spec, point_params,
    run_sweep, unstable_rows, write_csv,
)
from .scenario_file import Scenario, load_scenario, parse_scenario, dump_scenario
from .builtin import BUILTIN_NAMES, builtin_experiment, builtin_names
from .excel_writer import export_results_xlsx
