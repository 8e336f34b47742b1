import numpy as np
import pytest

from electroseis.analytic import Constant
from electroseis.domain import build_domain
from electroseis.parameters import (PRIMAL_NAMES, compute_diagonalization,
                                    derive_em_parameters, fields_from_specs)

# canonical admissible constants used across the suite
BASE_PARAMS = {
    "mu": 1.0, "epsilon": 1.0, "sigma": 0.2, "L": 0.1, "eta": 1.0, "kappa": 1.0,
    "lam": 2.0, "G": 1.0, "C": 1.0, "M": 3.0, "rho": 2.0, "rho_f": 1.0, "rho_e": 3.0,
}


def make_domain_grid(n=8, shell=0.125, T=0.5, delta=0.05, dt=0.01, n_t=10):
    return build_domain([0, 0, 0], [1, 1, 1], shell, T, delta, (n, n, n), dt, n_t)


def make_params(grid, overrides=None):
    vals = dict(BASE_PARAMS)
    if overrides:
        vals.update(overrides)
    specs = {name: Constant(vals[name]) for name in PRIMAL_NAMES}
    return derive_em_parameters(fields_from_specs(grid, specs))


@pytest.fixture
def small_grid():
    return make_domain_grid(n=8)


@pytest.fixture
def base_params(small_grid):
    _, grid = small_grid
    return make_params(grid)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
