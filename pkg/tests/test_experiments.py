import math
from dataclasses import replace

import pandas as pd
import pytest
from openpyxl import load_workbook

from config import CSV_COLUMNS
from src.channel import default_params
from src.errors import ConfigError
from src.experiments import (
    BUILTIN_NAMES, SweepSpec, builtin_experiment, builtin_names, dump_scenario,
    export_results_xlsx, load_scenario, parse_scenario, parse_swept_key,
    point_params, run_sweep, unstable_rows, validate_spec, write_csv,
)
from src.experiments.scenario_file import _find_scenario
from src.link import DuplexMode, PowerControlMode, SelectionScheme


@pytest.fixture
def small_spec(small_params):
    return SweepSpec(
        base=small_params,
        swept_key="alpha",
        values=(0.3, 0.6),
        schemes=(SelectionScheme.BULK,),
        modes=(PowerControlMode.STATIC,),
        trials=2_000,
        seed=11,
        record_timing=False,
    )


SCENARIO_TEXT = """
# escenario de prueba
mu_sr_db = 10
mu_rd = 10.0
n_relays = 3      # tres relés
sweep.key = p_s_max_db+p_r_max_db
sweep.values = -5, 0, 5
sweep.schemes = bulk, per-subcarrier
sweep.modes = static
sweep.trials = 1e4
sweep.nk_pairs = 2x2, 4x1
sweep.kappas = 2, 8
"""


class TestSweptKey:
    def test_single_and_joint(self):
        assert parse_swept_key("alpha") == [("alpha", False)]
        assert parse_swept_key("mu_sr_db+mu_rd_db") == [("mu_sr", True), ("mu_rd", True)]

    @pytest.mark.parametrize("key", ["", "mu_xx", "n_relays_db", "mu_sr_db+alpha"])
    def test_invalid(self, key):
        with pytest.raises(ConfigError):
            parse_swept_key(key)

    def test_point_params(self, small_params):
        spec = SweepSpec(base=small_params, swept_key="p_s_max_db+p_r_max_db", values=(10.0,))
        point = point_params(spec, {"n_relays": 3}, 10.0)
        assert (point.p_s_max, point.p_r_max, point.n_relays) == (10.0, 10.0, 3)

    def test_point_params_integer_field(self, small_params):
        spec = SweepSpec(base=small_params, swept_key="n_relays", values=(3.0,))
        assert point_params(spec, {}, 3.0).n_relays == 3

    def test_fractional_counter_is_rejected(self, small_params):
        spec = SweepSpec(base=small_params, swept_key="n_relays", values=(2.0, 2.7), emit_mc=False)
        with pytest.raises(ConfigError, match="n_relays"):
            validate_spec(spec)
        with pytest.raises(ConfigError, match="n_relays"):
            point_params(spec, {}, 2.7)


class TestValidateSpec:
    @pytest.mark.parametrize("changes", [
        {"values": ()},
        {"schemes": ()},
        {"trials": 0},
        {"metrics": ("throughput",)},
        {"variants": ({"bogus": 1},)},
    ])
    def test_rejects(self, small_spec, changes):
        with pytest.raises(ConfigError):
            validate_spec(replace(small_spec, **changes))

    def test_rejects_invalid_base(self, small_spec):
        with pytest.raises(ConfigError):
            validate_spec(replace(small_spec, base=small_spec.base.with_updates(kappa=-1.0)))


class TestRunSweep:
    def test_rows_and_columns(self, small_spec):
        table = run_sweep(small_spec)
        assert list(table.columns) == CSV_COLUMNS
        assert len(table) == 2
        assert table["swept_value_linear"].tolist() == [0.3, 0.6]
        assert table["swept_value_db"].isna().all()
        assert (table["status"] == "ok").all()
        assert (table["wall_ms"] == 0.0).all()
        assert table["analytic"].between(0, 1).all()

    def test_deterministic_csv(self, small_spec, tmp_path):
        first = write_csv(run_sweep(small_spec), tmp_path / "a.csv")
        second = write_csv(run_sweep(small_spec), tmp_path / "b.csv")
        assert first.read_bytes() == second.read_bytes()
        assert b"\r\n" not in first.read_bytes()

    def test_workers_do_not_change_results(self, small_spec):
        serial = run_sweep(small_spec)
        parallel = run_sweep(replace(small_spec, workers=2))
        pd.testing.assert_frame_equal(serial, parallel)

    def test_db_columns(self, small_params):
        spec = SweepSpec(
            base=small_params, swept_key="mu_sr_db+mu_rd_db", values=(10.0, 20.0),
            schemes=(SelectionScheme.PER_SUBCARRIER,), modes=(PowerControlMode.STATIC,),
            emit_mc=False,
        )
        table = run_sweep(spec)
        assert table["swept_value_db"].tolist() == [10.0, 20.0]
        assert table["swept_value_linear"].tolist() == [10.0, 100.0]
        assert table["mc_estimate"].isna().all()
        assert (table["trials"] == 0).all()

    def test_row_order(self, small_params):
        spec = SweepSpec(
            base=small_params, swept_key="alpha", values=(0.4,),
            schemes=(SelectionScheme.BULK, SelectionScheme.RANDOM),
            modes=(PowerControlMode.STATIC,),
            duplexes=(DuplexMode.FULL, DuplexMode.HALF),
            variants=({"kappa": 2.0}, {"kappa": 8.0}),
            emit_mc=False,
        )
        table = run_sweep(spec)
        assert table["kappa"].tolist() == [2.0] * 4 + [8.0] * 4
        assert table["scheme"].tolist()[:4] == ["bulk", "bulk", "random", "random"]
        assert table["duplex"].tolist()[:2] == ["full", "half"]

    def test_unstable_row_keeps_monte_carlo(self):
        spec = SweepSpec(
            base=default_params(n_relays=13, n_subcarriers=1), swept_key="alpha", values=(0.5,),
            schemes=(SelectionScheme.BULK,), modes=(PowerControlMode.STATIC,), trials=500,
        )
        table = run_sweep(spec)
        assert table.loc[0, "status"] == "unstable"
        assert math.isnan(table.loc[0, "analytic"])
        assert 0.0 <= table.loc[0, "mc_estimate"] <= 1.0
        assert unstable_rows(table) == 1

    def test_cellular_rows_have_no_analytic(self, small_params):
        spec = SweepSpec(
            base=small_params, swept_key="kappa", values=(8.0,),
            schemes=(SelectionScheme.BULK,), modes=(PowerControlMode.STATIC,),
            metrics=("d2d", "cellular"), trials=1_000,
        )
        table = run_sweep(spec)
        assert table["metric"].tolist() == ["d2d", "cellular"]
        assert math.isnan(table.loc[1, "analytic"])
        assert not math.isnan(table.loc[0, "analytic"])

    def test_optimizer_markers(self, small_params):
        spec = SweepSpec(
            base=small_params, swept_key="alpha", values=(0.2, 0.8),
            schemes=(SelectionScheme.BULK,), modes=(PowerControlMode.STATIC,),
            emit_mc=False, optimizer_markers=True, grid_points=5,
        )
        table = run_sweep(spec)
        # mismos marcadores en todas las filas: solo cambia α
        assert table["alpha_suboptimal"].nunique() == 1
        assert table["alpha_optimal"].nunique() == 1
        assert 0.0 < table.loc[0, "alpha_suboptimal"] < 1.0


class TestScenarioFile:
    def test_parse(self):
        scenario = parse_scenario(SCENARIO_TEXT.splitlines())
        assert scenario.params.mu_sr == 10.0
        assert scenario.params.n_relays == 3
        sweep = scenario.sweep
        assert sweep.values == (-5.0, 0.0, 5.0)
        assert sweep.schemes == (SelectionScheme.BULK, SelectionScheme.PER_SUBCARRIER)
        assert sweep.trials == 10_000
        assert len(sweep.variants) == 4
        assert sweep.variants[1] == {"n_relays": 2, "n_subcarriers": 2, "kappa": 8.0}

    def test_without_sweep(self):
        scenario = parse_scenario(["alpha = 0.25"])
        assert scenario.sweep is None
        assert scenario.params.alpha == 0.25

    @pytest.mark.parametrize("lines,lineno", [
        (["mu_sr = 1", "nonsense"], 2),
        (["mu_xyz = 1"], 1),
        (["mu_sr = 1", "mu_sr_db = 10"], 2),
        (["n_relays = 2.5"], 1),
        (["sweep.schemes = best"], 1),
        (["alpha = 0.5", "sweep.seeds = 3"], 2),
        (["sweep.emit_mc = maybe"], 1),
    ])
    def test_errors_name_file_and_line(self, lines, lineno):
        with pytest.raises(ConfigError, match=rf"^esc\.cfg:{lineno}: "):
            parse_scenario(lines, source="esc.cfg")

    def test_invalid_values(self):
        with pytest.raises(ConfigError, match="alpha"):
            parse_scenario(["alpha = 1.5"])
        with pytest.raises(ConfigError, match="sweep.values"):
            parse_scenario(["sweep.key = alpha"])

    @pytest.mark.parametrize("name", ["fig2", "fig5", "fig6", "fig7"])
    def test_dump_and_load_builtin(self, name, tmp_path):
        spec = builtin_experiment(name)
        path = dump_scenario(spec, tmp_path / f"{name}.cfg")
        loaded = load_scenario(str(path))
        assert loaded.sweep == spec
        assert loaded.sweep.name == name

    def test_find_by_name(self, tmp_path):
        dump_scenario(builtin_experiment("fig3"), tmp_path / "sub" / "fig3_prueba.cfg")
        assert _find_scenario("fig3", str(tmp_path)).endswith("fig3_prueba.cfg")
        assert _find_scenario("inexistente", str(tmp_path)) is None
        with pytest.raises(FileNotFoundError):
            load_scenario("inexistente", str(tmp_path))


class TestBuiltin:
    @pytest.mark.parametrize("name", BUILTIN_NAMES)
    def test_valid(self, name):
        validate_spec(builtin_experiment(name))

    def test_names(self):
        assert builtin_names() == ("fig2", "fig3", "fig4a", "fig4b", "fig5", "fig6", "fig7")
        assert builtin_names(include_aliases=True) == BUILTIN_NAMES
        assert "fig4" in BUILTIN_NAMES

    def test_alias(self):
        assert builtin_experiment("fig4") == builtin_experiment("fig4a")
        assert builtin_experiment("fig4").name == "fig4a"

    def test_overrides(self):
        spec = builtin_experiment("fig3", trials=10, seed=3)
        assert (spec.trials, spec.seed) == (10, 3)
        assert SelectionScheme.RANDOM in spec.schemes

    def test_unknown(self):
        with pytest.raises(ConfigError):
            builtin_experiment("fig9")

    def test_fig6_covers_all_duplex_modes(self):
        assert set(builtin_experiment("fig6").duplexes) == set(DuplexMode)


class TestBuiltinOrderings:
    """Ordenaciones de la vía analítica sobre barridos predefinidos recortados."""

    @staticmethod
    def _by(table, column):
        keys = ["swept_value_linear", "mode", "duplex", "scheme"]
        keys.remove(column)
        return table.pivot_table(index=keys, columns=column, values="analytic")

    def test_fig3_scheme_ordering(self):
        table = run_sweep(builtin_experiment("fig3", emit_mc=False, values=(10.0, 25.0, 40.0)))
        wide = self._by(table, "scheme")
        assert len(wide) == 6
        assert (wide["per_subcarrier"] <= wide["bulk"] + 1e-9).all()
        assert (wide["bulk"] <= wide["random"] + 1e-9).all()

    def test_fig6_duplex_ordering(self):
        table = run_sweep(builtin_experiment("fig6", emit_mc=False, values=(-10.0, 5.0, 20.0)))
        wide = self._by(table, "duplex")
        assert len(wide) == 12
        assert (wide["ideal_full"] <= wide["full"] + 1e-9).all()
        by_scheme = self._by(table, "scheme")
        assert (by_scheme["per_subcarrier"] <= by_scheme["bulk"] + 1e-9).all()


class TestExcelExport:
    def test_sheets(self, small_spec, tmp_path):
        table = run_sweep(small_spec)
        path = tmp_path / "r.xlsx"
        assert export_results_xlsx(table, small_spec.base, path) == 0
        wb = load_workbook(path)
        assert wb.sheetnames == ["RESULTADOS", "ESCENARIO"]
        ws = wb["RESULTADOS"]
        assert [c.value for c in ws[1]] == CSV_COLUMNS
        assert ws.max_row == 3
        assert ws["A2"].value is None
        assert wb["ESCENARIO"]["A2"].value == "mu_sr"

    def test_unstable_sheet(self, tmp_path):
        spec = SweepSpec(
            base=default_params(n_relays=13, n_subcarriers=1), swept_key="alpha", values=(0.5,),
            schemes=(SelectionScheme.BULK,), modes=(PowerControlMode.STATIC,), trials=200,
        )
        path = tmp_path / "r.xlsx"
        assert export_results_xlsx(run_sweep(spec), spec.base, path) == 1
        assert "INESTABLES" in load_workbook(path).sheetnames
