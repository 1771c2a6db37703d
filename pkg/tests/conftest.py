import numpy as np
import pytest

from qfc.medium import derive, rb87_preset
from qfc.pulses import default_grid, gaussian

T = 20e-9


@pytest.fixture
def rb87():
    return rb87_preset()


@pytest.fixture
def params_8(rb87):
    return derive(rb87, 8 * rb87.Gamma_ref)


@pytest.fixture
def grid_8(params_8):
    return default_grid(T, params_8.max_delay, n_points=2048)


@pytest.fixture
def gaussian_8(rb87, grid_8):
    return gaussian(T, 0.0, grid_8, rb87.L_over_c)


@pytest.fixture
def vacuum():
    def make(profile):
        return profile.with_samples(np.zeros_like(profile.samples))
    return make


@pytest.fixture
def equal_velocity_medium(rb87):
    return rb87._replace(G2=rb87.G1)
