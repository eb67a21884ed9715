import numpy as np
import pytest

from kingate import PulseSpec, SystemParams, make_grid


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def sqrt_swap_point():
    """A tuned sqrt(SWAP) operating point with a T=10 pulse."""
    from kingate.tuning import sqrt_swap_delta_a

    g, D = 1.2, 0.3
    params = SystemParams.degenerate(g, sqrt_swap_delta_a(g, 1.0, D))
    pulse = PulseSpec(10.0, D)
    return params, pulse, make_grid(pulse)
