import numpy as np
import pytest

from src.channel import default_params


@pytest.fixture
def reference_params():
    """Escenario de referencia (N = K = 2)."""
    return default_params()


@pytest.fixture
def small_params():
    """μ_SR = μ_RD = 10 dB: outage del orden de 0.1, cómoda para Monte Carlo."""
    return default_params(mu_sr=10.0, mu_rd=10.0)


@pytest.fixture
def moderate_params():
    """Ξ₁ y Ξ₂ lejos de 0 y de 1, para comparar sumas alternadas con cuadratura."""
    return default_params(mu_sr=10.0, mu_rd=10.0, s=2.0)


@pytest.fixture
def rng():
    return np.random.Generator(np.random.Philox(12345))
