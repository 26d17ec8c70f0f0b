import numpy as np
import pytest
from hypothesis import given, strategies as st

from thetanull import Characteristic, SymplecticElement, act, act_char, direct_sum, parity, validate_period
from thetanull.characteristics import enumerate_all
from thetanull.errors import (
    EntryOverflow,
    ImagNotPositiveDefinite,
    NotSymmetric,
    NotSymplectic,
    NumericallySingular,
)
from thetanull.sampling import gamma48_generators, random_gamma48_word, random_period
from thetanull.siegel import (
    PeriodMatrix,
    automorphy_det,
    block_embedding,
    cholesky_lower,
    in_gamma,
    in_gamma_n_2n,
    reverse_cholesky,
)


def sp1(a, b, c, d):
    return SymplecticElement([[a]], [[b]], [[c]], [[d]])


def test_validate_examples():
    tau = validate_period(1j * np.eye(2), 1e-12)
    assert tau.g == 2
    with pytest.raises(NotSymmetric):
        validate_period([[1j, 2], [2.000001, 1j]], 1e-12)
    with pytest.raises(ImagNotPositiveDefinite):
        validate_period([[-1j]])


def test_validate_symmetrizes_small_asymmetry():
    tau = validate_period([[1j, 0.5 + 1e-12], [0.5, 1j]])
    assert tau.tau[0, 1] == tau.tau[1, 0]
    assert abs(tau.tau[0, 1] - (0.5 + 0.5e-12)) < 1e-15


def test_validate_rejects_bad_shapes():
    with pytest.raises(ValueError):
        validate_period(np.ones((2, 3)) * 1j)
    with pytest.raises(ValueError):
        validate_period([[np.nan * 1j]])


def test_period_matrix_is_immutable():
    tau = validate_period(1j * np.eye(2))
    with pytest.raises(ValueError):
        tau.tau[0, 0] = 0


def test_period_json_round_trip():
    tau = random_period(np.random.default_rng(3), 3)
    again = PeriodMatrix.from_json(tau.to_json())
    assert again == tau


def test_cholesky_helpers(rng):
    A = rng.normal(size=(4, 4))
    Y = A @ A.T + np.eye(4)
    L = cholesky_lower(Y)
    assert np.allclose(L @ L.T, Y)
    T = reverse_cholesky(Y)
    assert np.allclose(np.triu(T, 1), 0)
    assert np.allclose(T.T @ T, Y)
    with pytest.raises(ImagNotPositiveDefinite):
        cholesky_lower(np.diag([1.0, 1e-15]))


def test_direct_sum():
    tau = direct_sum([[1j]], [[2j]])
    assert tau.g == 2
    assert np.array_equal(tau.tau, np.diag([1j, 2j]))


def test_act_examples():
    tau = validate_period([[1j]])
    assert act(SymplecticElement.identity(1), tau) == tau
    assert np.allclose(act(sp1(0, 1, -1, 0), tau).tau, [[1j]])
    assert np.allclose(act(sp1(1, 8, 0, 1), tau).tau, [[8 + 1j]])


def test_act_numerically_singular():
    # c tau + d = -tau has eigenvalues 2e12 + i and i
    big = 1e12
    tau = validate_period([[big + 1j, big], [big, big + 1j]])
    eye, zero = np.eye(2, dtype=int), np.zeros((2, 2), dtype=int)
    with pytest.raises(NumericallySingular):
        act(SymplecticElement(zero, eye, -eye, zero), tau)


def test_symplectic_validation():
    with pytest.raises(NotSymplectic):
        sp1(1, 1, 1, 1)
    with pytest.raises(EntryOverflow):
        sp1(2**63 - 1, 0, 0, 1)
    with pytest.raises(ValueError):
        SymplecticElement([[1.5]], [[0]], [[0]], [[1]])


def _random_symplectic(rng, g, steps=4):
    """Product of elementary symplectic matrices with small entries."""
    out = SymplecticElement.identity(g)
    eye = np.eye(g, dtype=np.int64)
    zero = np.zeros((g, g), dtype=np.int64)
    for _ in range(steps):
        kind = rng.integers(3)
        S = rng.integers(-1, 2, size=(g, g))
        S = np.triu(S) + np.triu(S, 1).T
        if kind == 0:
            s = SymplecticElement(eye, S, zero, eye)
        elif kind == 1:
            s = SymplecticElement(eye, zero, S, eye)
        else:
            s = SymplecticElement(zero, eye, -eye, zero)
        out = out @ s
    return out


@pytest.mark.parametrize("g", [1, 2, 3])
def test_action_is_a_group_action(g, rng):
    for _ in range(5):
        s1, s2 = _random_symplectic(rng, g, 2), _random_symplectic(rng, g, 2)
        tau = random_period(rng, g, im_floor=1.0)
        lhs = act(s1 @ s2, tau).tau
        rhs = act(s1, act(s2, tau)).tau
        assert np.max(np.abs(lhs - rhs)) < 1e-10


def test_inverse_and_json(rng):
    s = _random_symplectic(rng, 3)
    assert s @ s.inverse() == SymplecticElement.identity(3)
    assert SymplecticElement.from_json(s.to_json()) == s


def test_congruence_examples():
    ident = SymplecticElement.identity(1)
    assert in_gamma(ident, 4) and in_gamma_n_2n(ident, 4)
    s = sp1(1, 4, 0, 1)
    assert in_gamma(s, 4) and not in_gamma_n_2n(s, 4)
    s = sp1(1, 8, 0, 1)
    assert in_gamma(s, 4) and in_gamma_n_2n(s, 4)


@pytest.mark.parametrize("g", [1, 2, 3])
def test_subgroup_monotonicity(g, rng):
    for s in gamma48_generators(g):
        assert in_gamma_n_2n(s, 4) and in_gamma(s, 4) and s.is_symplectic()
    for _ in range(10):
        w = random_gamma48_word(rng, g, 3)
        assert in_gamma_n_2n(w, 4) and in_gamma(w, 4)
        assert act_char(w, enumerate_all(g)[int(rng.integers(4**g))]) is not None


def test_act_char_examples():
    ch = Characteristic.parse("0:1")
    assert act_char(SymplecticElement.identity(1), ch) == ch
    assert act_char(sp1(0, 1, -1, 0), ch) == Characteristic.parse("1:0")
    assert act_char(sp1(1, 1, 0, 1), Characteristic.parse("0:0")) == Characteristic.parse("0:1")


@pytest.mark.parametrize("g", [1, 2, 3])
def test_act_char_preserves_parity_exhaustively(g, rng):
    for _ in range(6):
        s = _random_symplectic(rng, g)
        for ch in enumerate_all(g):
            assert parity(act_char(s, ch)) == parity(ch)


@given(st.integers(0, 2**32 - 1))
def test_act_char_composition(seed):
    rng = np.random.default_rng(seed)
    g = int(rng.integers(1, 4))
    s1, s2 = _random_symplectic(rng, g), _random_symplectic(rng, g)
    for ch in enumerate_all(g):
        assert act_char(s1 @ s2, ch) == act_char(s1, act_char(s2, ch))


@pytest.mark.parametrize("g", [1, 2])
def test_gamma48_fixes_characteristics(g, rng):
    for _ in range(5):
        w = random_gamma48_word(rng, g)
        for ch in enumerate_all(g):
            assert act_char(w, ch) == ch


def test_block_embedding_and_automorphy():
    s = block_embedding(sp1(1, 8, 0, 1), sp1(1, 0, 8, 1))
    assert s.g == 2 and in_gamma_n_2n(s, 4)
    tau = validate_period(np.diag([1j, 2j]))
    assert np.isclose(automorphy_det(s, tau), 8 * 2j + 1)
