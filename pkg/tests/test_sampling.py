import numpy as np
import pytest

from thetanull import Characteristic, eval_jet
from thetanull.errors import NoConvergence
from thetanull.sampling import divisor_point, random_gamma48_word, random_period, random_symmetric


@pytest.mark.parametrize("g", [1, 2, 3])
def test_random_period_imag_floor(g, rng):
    for _ in range(5):
        tau = random_period(rng, g, im_floor=0.6)
        assert np.min(np.linalg.eigvalsh(tau.im)) >= 0.6 - 1e-12


def test_determinism():
    a = random_period(np.random.default_rng(1), 2)
    b = random_period(np.random.default_rng(1), 2)
    assert a == b
    w1 = random_gamma48_word(np.random.default_rng(5), 2)
    w2 = random_gamma48_word(np.random.default_rng(5), 2)
    assert w1 == w2


def test_random_symmetric(rng):
    M = random_symmetric(rng, 4)
    assert np.array_equal(M, M.T)


def test_divisor_point(tau_smooth):
    x = divisor_point(tau_smooth, [0.5, 0.2j])
    assert abs(eval_jet(tau_smooth, x, Characteristic.zero(2), 0).value) < 1e-12
    # starting on a symmetry line used to make plain Newton cycle
    x = divisor_point(np.diag([0.9j, 1j]), [0.5, 0.2j])
    assert abs(eval_jet(np.diag([0.9j, 1j]), x, Characteristic.zero(2), 0).value) < 1e-12


def test_divisor_point_failure():
    # theta[0,0](i, .) has no zero on the line Re z = 0
    with pytest.raises(NoConvergence):
        divisor_point([[1j]], [0.0], v=np.array([1j]), max_iter=5)
