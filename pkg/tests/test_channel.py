import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import stats

from src.channel import (
    ChannelRealization, db_to_linear, default_params, exp_cdf, linear_to_db,
    make_rng, sample_batch, sample_realization,
)
from src.errors import ConfigError
from src.validators import check_params, detect_param_errors

DRAWS = 1_000_000

FAMILY_MEANS = [
    ("g_sr", "mu_sr"), ("g_rd", "mu_rd"), ("g_cr", "mu_cr"), ("g_rb", "mu_rb"),
    ("phi", "phi_bar"), ("g_cd", "mu_cd"), ("g_sb", "mu_sb"), ("g_cb", "mu_cb"),
]


@pytest.fixture(scope="module")
def single_link_draws():
    """10⁶ ganancias de cada familia con N = K = 1, aplanadas."""
    params = default_params(n_relays=1, n_subcarriers=1)
    batch = sample_batch(params, make_rng(2024), DRAWS)
    return {family: getattr(batch, family).ravel() for family, _ in FAMILY_MEANS}


class TestDbConversion:
    def test_exact_decades(self):
        assert db_to_linear(0.0) == 1.0
        assert db_to_linear(10.0) == 10.0
        assert db_to_linear(30.0) == 1000.0

    @given(st.floats(min_value=-60.0, max_value=60.0))
    def test_round_trip(self, x_db):
        assert linear_to_db(db_to_linear(x_db)) == pytest.approx(x_db, abs=1e-9)


class TestDefaultParams:
    def test_reference_values(self, reference_params):
        assert reference_params.mu_sr == 1000.0
        assert reference_params.mu_sb == 10.0
        assert reference_params.mu_cb == 100.0
        assert reference_params.mu_cr == pytest.approx(10 ** 0.2)
        assert reference_params.phi_bar == pytest.approx(10 ** 0.5)
        assert (reference_params.s, reference_params.xi, reference_params.p_c) == (1.0, 1.0, 1.0)
        assert (reference_params.alpha, reference_params.kappa) == (0.5, 4.0)

    def test_overrides(self):
        params = default_params(n_relays=4, alpha=0.3)
        assert params.n_relays == 4
        assert params.alpha == 0.3

    def test_unknown_override(self):
        with pytest.raises(TypeError):
            default_params(mu_xx=1.0)

    def test_with_updates_keeps_original(self, reference_params):
        changed = reference_params.with_updates(kappa=8.0)
        assert changed.kappa == 8.0
        assert reference_params.kappa == 4.0


class TestDetectParamErrors:
    def test_valid(self, reference_params):
        assert detect_param_errors(reference_params) == []
        assert check_params(reference_params) is reference_params

    def test_error_dicts(self, reference_params):
        errors = detect_param_errors(reference_params.with_updates(mu_sr=-1.0, alpha=1.0, n_relays=0))
        campos = {e["Campo"] for e in errors}
        assert campos == {"mu_sr", "alpha", "n_relays"}
        assert all(set(e) == {"Campo", "Valor", "Error"} for e in errors)

    def test_non_finite_and_non_integer(self, reference_params):
        errors = detect_param_errors(reference_params.with_updates(mu_cb=math.inf, n_subcarriers=2.5))
        assert {e["Campo"] for e in errors} == {"mu_cb", "n_subcarriers"}

    def test_check_raises(self, reference_params):
        with pytest.raises(ConfigError, match="phi_bar"):
            check_params(reference_params.with_updates(phi_bar=0.0))


class TestExpCdf:
    def test_values(self):
        assert exp_cdf(0.0, 2.0) == 0.0
        assert exp_cdf(math.inf, 2.0) == 1.0
        assert exp_cdf(2.0, 2.0) == pytest.approx(1 - math.exp(-1))

    def test_array(self):
        out = exp_cdf(np.array([0.0, 1.0]), 1.0)
        assert out.shape == (2,)
        assert out[1] == pytest.approx(1 - math.exp(-1))

    def test_negative_gain(self):
        with pytest.raises(ValueError):
            exp_cdf(-0.1, 1.0)


class TestSampling:
    def test_shapes(self, reference_params, rng):
        params = reference_params.with_updates(n_relays=3, n_subcarriers=5)
        batch = sample_batch(params, rng, 7)
        assert batch.g_sr.shape == (7, 3, 5)
        assert batch.phi.shape == (7, 3, 5)
        assert batch.g_cb.shape == (7, 5)
        assert (batch.n_relays, batch.n_subcarriers) == (3, 5)

        single = sample_realization(params, rng)
        assert single.g_rd.shape == (3, 5)
        assert single.g_sb.shape == (5,)

    @pytest.mark.parametrize("family,mean_field", FAMILY_MEANS)
    def test_means(self, single_link_draws, reference_params, family, mean_field):
        sample = single_link_draws[family]
        assert sample.size == DRAWS
        assert sample.mean() == pytest.approx(getattr(reference_params, mean_field), rel=0.01)
        assert (sample >= 0).all()

    @pytest.mark.parametrize("family,mean_field", FAMILY_MEANS)
    def test_marginal_is_exponential(self, single_link_draws, reference_params, family, mean_field):
        mu = getattr(reference_params, mean_field)
        result = stats.kstest(single_link_draws[family], lambda x: exp_cdf(x, mu))
        assert result.pvalue > 1e-4, (family, result)

    def test_links_are_uncorrelated(self, single_link_draws):
        names = [family for family, _ in FAMILY_MEANS]
        corr = np.corrcoef(np.stack([single_link_draws[name] for name in names]))
        off_diagonal = corr[~np.eye(len(names), dtype=bool)]
        assert np.abs(off_diagonal).max() < 0.01

    def test_reproducible(self, reference_params):
        a = sample_batch(reference_params, make_rng(7), 10)
        b = sample_batch(reference_params, make_rng(np.random.SeedSequence(7)), 10)
        assert np.array_equal(a.g_sr, b.g_sr)
        assert np.array_equal(a.g_cb, b.g_cb)

    def test_without_si(self, reference_params, rng):
        real = sample_realization(reference_params, rng)
        clean = real.without_si()
        assert isinstance(clean, ChannelRealization)
        assert not clean.phi.any()
        assert np.array_equal(clean.g_sr, real.g_sr)
