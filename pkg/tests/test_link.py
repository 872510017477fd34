import math
from dataclasses import replace

import numpy as np
import pytest

from src.channel import ChannelRealization, default_params, make_rng, sample_batch
from src.link import (
    DuplexMode, OutageEstimate, PowerControlMode, SelectionScheme,
    cellular_outage, cellular_outage_events, cellular_sir, estimate_outage,
    is_outage, mean_end_to_end_sir, parse_enum, relay_power, select_relays,
    selected_sir, sir_end_to_end, sir_first_hop, sir_second_hop, source_power,
    wilson_halfwidth,
)
from src.link.selection import draw_random_relay
from src.link.sir import safe_ratio

DYN = PowerControlMode.DYNAMIC
STA = PowerControlMode.STATIC


@pytest.fixture
def params():
    return default_params(
        n_relays=2, n_subcarriers=2, alpha=0.5, p_c=1.0, xi=1.0, s=1.0,
        p_s_max=10.0, p_r_max=10.0, kappa=4.0,
    )


@pytest.fixture
def real():
    """Realización 2×2 con SIRs extremo a extremo [[1, 2], [4, 1.5]] (dinámico)."""
    return ChannelRealization(
        g_sr=np.array([[2.0, 1.0], [4.0, 3.0]]),
        g_rd=np.array([[1.0, 2.0], [4.0, 0.75]]),
        g_cr=np.full((2, 2), 0.5),
        g_rb=np.array([[1.0, 2.0], [0.5, 1.0]]),
        phi=np.full((2, 2), 0.5),
        g_cd=np.array([1.0, 1.0]),
        g_sb=np.array([1.0, 0.5]),
        g_cb=np.array([2.0, 4.0]),
    )


class TestParseEnum:
    def test_accepted_spellings(self):
        assert parse_enum(SelectionScheme, "per-subcarrier") is SelectionScheme.PER_SUBCARRIER
        assert parse_enum(SelectionScheme, "PER_SUBCARRIER") is SelectionScheme.PER_SUBCARRIER
        assert parse_enum(DuplexMode, DuplexMode.HALF) is DuplexMode.HALF
        assert parse_enum(PowerControlMode, " Static ") is PowerControlMode.STATIC

    def test_invalid(self):
        with pytest.raises(ValueError, match="DuplexMode"):
            parse_enum(DuplexMode, "quarter")


class TestPowers:
    def test_source_power_dynamic(self, real, params):
        assert source_power(0, real, params, DYN) == pytest.approx(1.0)
        assert source_power(1, real, params, DYN) == pytest.approx(4.0)

    def test_source_power_static_uses_kappa(self, real, params):
        assert source_power(0, real, params, STA) == pytest.approx(2.0)
        assert source_power(1, real, params, STA) == pytest.approx(4.0)

    def test_caps(self, real, params):
        capped = params.with_updates(p_s_max=1.5, p_r_max=1.5)
        assert source_power(1, real, capped, DYN) == 1.5
        assert relay_power(1, 0, real, capped, DYN) == 1.5

    def test_relay_power(self, real, params):
        assert relay_power(0, 0, real, params, DYN) == pytest.approx(1.0)
        assert relay_power(1, 1, real, params, DYN) == pytest.approx(2.0)
        assert relay_power(0, 1, real, params, STA) == pytest.approx(1.0)


class TestSir:
    def test_hops(self, real, params):
        assert sir_first_hop(1, 1, real, params, DYN) == pytest.approx(12.0)
        assert sir_second_hop(1, 0, real, params, DYN) == pytest.approx(8.0)
        assert sir_end_to_end(1, 0, real, params, DYN) == pytest.approx(4.0)
        assert sir_end_to_end(1, 1, real, params, DYN) == pytest.approx(1.5)

    def test_half_duplex_drops_self_interference(self, real, params):
        assert sir_first_hop(0, 0, real, params, DYN, DuplexMode.HALF) == pytest.approx(4.0)
        assert sir_first_hop(0, 0, real, params, DYN, DuplexMode.IDEAL_FULL) == pytest.approx(4.0)

    def test_zero_denominator_is_infinite(self):
        assert safe_ratio(1.0, 0.0) == math.inf
        assert np.array_equal(safe_ratio([1.0, 2.0], [2.0, 0.0]), [0.5, math.inf])


class TestSelection:
    def test_per_subcarrier(self, real, params):
        index, sir = selected_sir(real, params, DYN, DuplexMode.FULL, SelectionScheme.PER_SUBCARRIER)
        assert index.tolist() == [1, 0]
        assert sir.tolist() == pytest.approx([4.0, 2.0])

    def test_bulk_maximizes_worst_subcarrier(self, real, params):
        index, sir = selected_sir(real, params, DYN, DuplexMode.FULL, SelectionScheme.BULK)
        assert index.tolist() == [1, 1]
        assert sir.tolist() == pytest.approx([4.0, 1.5])

    def test_random_uses_given_index(self, real, params):
        index = select_relays(real, params, DYN, DuplexMode.FULL, SelectionScheme.RANDOM, random_index=0)
        assert index.tolist() == [0, 0]

    def test_random_needs_rng(self, real, params):
        with pytest.raises(ValueError):
            select_relays(real, params, DYN, DuplexMode.FULL, SelectionScheme.RANDOM)
        index = select_relays(
            real, params, DYN, DuplexMode.FULL, SelectionScheme.RANDOM,
            rng=np.random.Generator(np.random.Philox(0)),
        )
        assert index[0] == index[1]

    def test_ties_go_to_lowest_index(self, params):
        same = np.ones((2, 2))
        real = ChannelRealization(
            g_sr=same, g_rd=same, g_cr=same, g_rb=same, phi=same,
            g_cd=np.ones(2), g_sb=np.ones(2), g_cb=np.ones(2),
        )
        for scheme in (SelectionScheme.BULK, SelectionScheme.PER_SUBCARRIER):
            assert select_relays(real, params, DYN, DuplexMode.FULL, scheme).tolist() == [0, 0]


class TestIsOutage:
    def test_threshold(self, real, params):
        strict = params.with_updates(s=1.8)
        assert not is_outage(real, strict, DYN, DuplexMode.FULL, SelectionScheme.PER_SUBCARRIER)
        assert is_outage(real, strict, DYN, DuplexMode.FULL, SelectionScheme.BULK)
        assert is_outage(real, strict, DYN, DuplexMode.FULL, SelectionScheme.RANDOM, random_index=0)
        assert not is_outage(real, params, DYN, DuplexMode.FULL, SelectionScheme.RANDOM, random_index=0)

    def test_half_duplex_threshold(self, real, params):
        # s = 0.5 → umbral s(s+2) = 1.25; el mejor por subportadora da min 2
        half = params.with_updates(s=0.5)
        assert not is_outage(real, half, DYN, DuplexMode.HALF, SelectionScheme.PER_SUBCARRIER)
        assert is_outage(real, half, DYN, DuplexMode.HALF, SelectionScheme.RANDOM, random_index=0)


class TestCellular:
    def test_dynamic_without_caps_sits_at_xi(self, real, params):
        index = np.array([1, 0])
        assert cellular_sir(real, params, DYN, index).tolist() == pytest.approx([1.0, 1.0])
        assert not cellular_outage_events(real, params, DYN, index).any()

    def test_static_can_break_cellular_link(self, real, params):
        index = np.array([1, 0])
        assert cellular_sir(real, params, STA, index).tolist() == pytest.approx([0.5, 1.0])
        assert cellular_outage_events(real, params, STA, index).tolist() == [True, False]


class TestWilson:
    def test_known_value(self):
        assert wilson_halfwidth(50, 100) == pytest.approx(0.09617, rel=1e-3)

    def test_zero_successes_has_width(self):
        assert wilson_halfwidth(0, 1000) > 0

    def test_estimate_validation(self):
        with pytest.raises(ValueError):
            OutageEstimate(probability=1.5)
        est = OutageEstimate(probability=0.2, half_width=0.01, trials=100, source="monte-carlo")
        assert est.covers(0.225)
        assert not est.covers(0.25)


class TestEstimateOutage:
    TRIALS = 20_000

    def test_deterministic(self, small_params):
        a = estimate_outage(small_params, DYN, DuplexMode.FULL, SelectionScheme.BULK, self.TRIALS, seed=1)
        b = estimate_outage(small_params, DYN, DuplexMode.FULL, SelectionScheme.BULK, self.TRIALS, seed=1)
        assert a == b
        assert a.source == "monte-carlo"
        assert a.trials == self.TRIALS

    def test_workers_deterministic(self, small_params):
        runs = [
            estimate_outage(small_params, DYN, "full", "per_subcarrier", self.TRIALS, seed=4, workers=2)
            for _ in range(2)
        ]
        assert runs[0] == runs[1]

    def test_invalid_trials(self, small_params):
        with pytest.raises(ValueError):
            estimate_outage(small_params, DYN, "full", "bulk", 0, seed=1)

    @pytest.mark.parametrize("mode", [DYN, STA])
    def test_scheme_ordering_on_shared_channels(self, small_params, mode):
        est = {
            scheme: estimate_outage(small_params, mode, "full", scheme, self.TRIALS, seed=9).probability
            for scheme in SelectionScheme
        }
        assert est[SelectionScheme.PER_SUBCARRIER] <= est[SelectionScheme.BULK] <= est[SelectionScheme.RANDOM]

    @pytest.mark.parametrize("scheme", list(SelectionScheme))
    def test_half_equals_ideal_full_with_stricter_threshold(self, small_params, scheme):
        s = small_params.s
        half = estimate_outage(small_params, DYN, "half", scheme, self.TRIALS, seed=5)
        ideal = estimate_outage(
            small_params.with_updates(s=s * (s + 2)), DYN, "ideal_full", scheme, self.TRIALS, seed=5,
        )
        assert half.probability == ideal.probability

    def test_more_relays_help(self, small_params):
        one = estimate_outage(small_params.with_updates(n_relays=1), DYN, "full", "bulk", self.TRIALS, seed=2)
        four = estimate_outage(small_params.with_updates(n_relays=4), DYN, "full", "bulk", self.TRIALS, seed=2)
        assert four.probability < one.probability


class TestCellularOutage:
    def test_dynamic_never_breaks_cellular_link(self, small_params):
        est = cellular_outage(small_params, DYN, "full", "bulk", 5_000, seed=3)
        assert est.probability == 0.0

    def test_any_dominates_mean(self, small_params):
        params = small_params.with_updates(kappa=8.0)
        mean = cellular_outage(params, STA, "full", "bulk", 5_000, seed=3)
        anyk = cellular_outage(params, STA, "full", "bulk", 5_000, seed=3, aggregate="any")
        assert 0.0 < mean.probability <= anyk.probability

    def test_invalid_aggregate(self, small_params):
        with pytest.raises(ValueError):
            cellular_outage(small_params, STA, "full", "bulk", 100, seed=3, aggregate="median")


class TestMeanSir:
    def test_positive_and_deterministic(self, small_params):
        a = mean_end_to_end_sir(small_params, DYN, "full", "per_subcarrier", 5_000, seed=8)
        b = mean_end_to_end_sir(small_params, DYN, "full", "per_subcarrier", 5_000, seed=8)
        assert a == b
        assert 0.0 < a < math.inf

    def test_selection_raises_mean_sir(self, small_params):
        ps = mean_end_to_end_sir(small_params, DYN, "full", "per_subcarrier", 5_000, seed=8)
        rand = mean_end_to_end_sir(small_params, DYN, "full", "random", 5_000, seed=8)
        assert ps > rand


def _first_subcarriers(real, k):
    """Misma realización restringida a las k primeras subportadoras."""
    return ChannelRealization(**{
        name: getattr(real, name)[..., :k]
        for name in ("g_sr", "g_rd", "g_cr", "g_rb", "phi", "g_cd", "g_sb", "g_cb")
    })


class TestLinkInvariants:
    TRIALS = 20_000

    @pytest.fixture
    def batch(self, small_params):
        params = small_params.with_updates(n_relays=3, n_subcarriers=4)
        rng = make_rng(31)
        real = sample_batch(params, rng, self.TRIALS)
        return params, real, draw_random_relay(params, rng, (self.TRIALS,))

    @pytest.mark.parametrize("mode", [DYN, STA])
    @pytest.mark.parametrize("duplex", ["full", "half"])
    def test_outage_non_decreasing_in_threshold(self, small_params, mode, duplex):
        estimates = [
            estimate_outage(small_params.with_updates(s=float(s)), mode, duplex, "bulk", 5_000, seed=6).probability
            for s in np.geomspace(0.1, 100.0, 20)
        ]
        assert np.all(np.diff(estimates) >= 0)
        assert estimates[0] < estimates[-1]

    @pytest.mark.parametrize("mode", [DYN, STA])
    @pytest.mark.parametrize("scheme", list(SelectionScheme))
    def test_common_power_scaling_keeps_indicators(self, batch, mode, scheme):
        params, real, random_index = batch
        # factor potencia de 2: el reescalado es exacto en coma flotante
        factor = 8.0
        scaled_params = replace(
            params, p_c=params.p_c * factor, p_s_max=params.p_s_max * factor,
            p_r_max=params.p_r_max * factor, phi_bar=params.phi_bar * factor,
        )
        scaled_real = replace(real, phi=real.phi * factor)
        base = is_outage(real, params, mode, DuplexMode.FULL, scheme, random_index=random_index)
        scaled = is_outage(scaled_real, scaled_params, mode, DuplexMode.FULL, scheme, random_index=random_index)
        assert np.array_equal(base, scaled)
        assert base.any()

    @pytest.mark.parametrize("mode", [DYN, STA])
    @pytest.mark.parametrize("scheme", list(SelectionScheme))
    def test_more_subcarriers_never_help(self, batch, mode, scheme):
        params, real, random_index = batch
        previous = np.zeros(self.TRIALS, dtype=bool)
        for k in range(1, params.n_subcarriers + 1):
            events = is_outage(
                _first_subcarriers(real, k), params.with_updates(n_subcarriers=k),
                mode, DuplexMode.FULL, scheme, random_index=random_index,
            )
            # cada ensayo en outage con k subportadoras sigue en outage con k + 1
            assert not (previous & ~events).any()
            previous = events

    @pytest.mark.parametrize("mode", [DYN, STA])
    def test_monte_carlo_outage_grows_with_subcarriers(self, small_params, mode):
        estimates = [
            estimate_outage(small_params.with_updates(n_subcarriers=k), mode, "full", "bulk", self.TRIALS, seed=12)
            for k in (1, 2, 4)
        ]
        for low, high in zip(estimates, estimates[1:]):
            assert low.probability <= high.probability + low.half_width + high.half_width
