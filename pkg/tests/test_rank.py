import numpy as np
import pytest
from hypothesis import given, strategies as st

from thetanull.rank import rank_report


def test_threshold_rule():
    rep = rank_report(np.diag([1.0, 1e-3, 1e-9]))
    assert rep.numerical_rank == 2
    assert rep.singular_values == (1.0, 1e-3, 1e-9)
    assert rep.threshold == pytest.approx(1e-6)
    assert rep.margin() == pytest.approx(3.0)
    rep = rank_report(np.diag([1.0, 1e-3]), abs_floor=1e-2)
    assert rep.numerical_rank == 1 and rep.threshold == 1e-2


def test_zero_matrix():
    rep = rank_report(np.zeros((3, 4)))
    assert rep.numerical_rank == 0
    assert rep.matrix_dim == (3, 4)
    assert not rep.full_rank


@given(st.integers(0, 2**32 - 1), st.floats(1e-8, 1e8), st.floats(0, 2 * np.pi))
def test_scale_invariance(seed, r, phase):
    rng = np.random.default_rng(seed)
    n, k = 4, int(rng.integers(0, 5))
    U = rng.normal(size=(n, k)) + 1j * rng.normal(size=(n, k))
    M = U @ U.T
    s = r * np.exp(1j * phase)
    a, b = rank_report(M), rank_report(s * M)
    assert a.numerical_rank == b.numerical_rank
    assert list(a.singular_values) == sorted(a.singular_values, reverse=True)


def test_perturbation_below_threshold_is_ignored(rng):
    M = np.diag([2.0, 1.0, 0.0])
    noise = 1e-9 * rng.normal(size=(3, 3))
    assert rank_report(M + noise).numerical_rank == 2


def test_json():
    obj = rank_report(np.eye(2)).to_json()
    assert obj["numerical_rank"] == 2 and obj["witness"] is None
