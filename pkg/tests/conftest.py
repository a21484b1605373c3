import numpy as np
import pytest

from qwspec import make_params


@pytest.fixture
def bench_params():
    """Two-phase walk with one positive bound state near 1.3604."""
    return make_params(0.25, 0.6, -0.5, 0.9, q=0.8)


def random_params(rng, gamma_max=0.7, amp_max=0.95, complex_phases=False):
    """A random valid parameter set with moduli chosen by convention."""
    g = rng.uniform(-gamma_max, gamma_max)
    p = rng.uniform(-amp_max, amp_max)
    a_m, a_p = rng.uniform(-amp_max, amp_max, 2)
    if not complex_phases:
        return make_params(g, p, a_m, a_p)
    q = np.sqrt(1 - p * p) * np.exp(1j * rng.uniform(0, 2 * np.pi))
    b_m = np.sqrt(1 - a_m * a_m) * np.exp(1j * rng.uniform(0, 2 * np.pi))
    b_p = np.sqrt(1 - a_p * a_p) * np.exp(1j * rng.uniform(0, 2 * np.pi))
    return make_params(g, p, a_m, a_p, q=q, b_m=b_m, b_p=b_p)


def random_nonzero_lambda(rng, lo=0.1, hi=10.0, real=False):
    r = np.exp(rng.uniform(np.log(lo), np.log(hi)))
    if real:
        return float(np.sign(rng.standard_normal()) * r)
    return complex(r * np.exp(1j * rng.uniform(0, 2 * np.pi)))
