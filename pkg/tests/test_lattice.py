import itertools
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from thetanull import validate_period
from thetanull.engine import EvalConfig, eval_jet
from thetanull.engine.lattice import (
    choose_radius,
    lattice_points,
    shortest_vector_length,
    tail_bound,
    tail_model,
)
from thetanull.errors import RadiusCapExceeded
from thetanull.sampling import random_period
from thetanull.siegel import reverse_cholesky

SQPI = math.sqrt(math.pi)


def brute_force(T, center, R, box):
    g = T.shape[0]
    out = []
    for m in itertools.product(range(-box, box + 1), repeat=g):
        if np.linalg.norm(T @ (np.array(m) + center)) <= R:
            out.append(m)
    return sorted(out)


def test_one_dimensional_interval():
    pts = lattice_points([[SQPI]], [0.0], SQPI * 3.5)
    assert pts[:, 0].tolist() == list(range(-3, 4))


def test_closed_unit_disk():
    pts = lattice_points(SQPI * np.eye(2), [0.0, 0.0], SQPI * 1.0)
    assert sorted(map(tuple, pts)) == [(-1, 0), (0, -1), (0, 0), (0, 1), (1, 0)]


def test_matches_box_scan():
    T = reverse_cholesky(np.array([[2.0, 1.0], [1.0, 2.0]]))
    center = np.array([0.5, 0.5])
    got = sorted(map(tuple, lattice_points(T, center, 4.0)))
    assert got == brute_force(T, center, 4.0, 8)


@given(st.integers(0, 2**32 - 1), st.integers(1, 3))
def test_matches_box_scan_random(seed, g):
    rng = np.random.default_rng(seed)
    A = rng.normal(size=(g, g))
    Y = A @ A.T + 0.5 * np.eye(g)
    T = reverse_cholesky(math.pi * Y)
    center = rng.uniform(-1, 1, g)
    R = float(rng.uniform(0.5, 4.0))
    box = int(math.ceil(R * np.linalg.norm(np.linalg.inv(T), 2) + 2))
    got = lattice_points(T, center, R)
    assert sorted(map(tuple, got)) == brute_force(T, center, R, box)
    assert [tuple(m) for m in got] == sorted(map(tuple, got))


def test_rejects_bad_inputs():
    with pytest.raises(ValueError):
        lattice_points(np.array([[1.0, 1.0], [0.0, 1.0]]), [0, 0], 1.0)
    with pytest.raises(RadiusCapExceeded):
        lattice_points(np.eye(2), [0, 0], 5.0, max_radius=4.0)
    with pytest.raises(RadiusCapExceeded):
        lattice_points(np.eye(2), [0, 0], 50.0, max_points=100)


def test_shortest_vector_against_box():
    T = reverse_cholesky(np.array([[2.0, 1.9], [1.9, 2.0]]))
    best = min(np.linalg.norm(T @ np.array(m)) for m in itertools.product(range(-6, 7), repeat=2) if any(m))
    assert shortest_vector_length(T) == pytest.approx(best, rel=1e-12)


def test_tail_bound_examples():
    tau = validate_period([[1j]])
    R3 = SQPI * 3 * (1 + 1e-12)
    omitted = 2 * sum(math.exp(-math.pi * m * m) for m in range(4, 40))
    assert omitted <= tail_bound(tau, 0, R3)
    assert tail_bound(tau, 0, 10.0) < 1e-8
    assert tail_bound(tau, 0, 20.0) < 1e-30
    assert tail_bound(tau, 0, 20.0) < tail_bound(tau, 0, 10.0) < tail_bound(tau, 0, 5.0)


@pytest.mark.parametrize("order", [0, 2, 4])
def test_tail_bound_covers_derivative_tails(order):
    """Box-sum of omitted weighted moduli stays below the bound (g = 2)."""
    rng = np.random.default_rng(order)
    tau = random_period(rng, 2)
    z = np.array([0.1 + 0.2j, -0.3 + 0.1j])
    model = tail_model(tau, order, z)
    R = model.min_radius + 1.0
    Y = tau.im
    T = reverse_cholesky(math.pi * Y)
    c = np.linalg.solve(Y, z.imag)
    worst = 0.0
    for alpha in itertools.combinations_with_replacement(range(2), order):
        total = 0.0
        for m in itertools.product(range(-25, 26), repeat=2):
            n = np.array(m, dtype=float)
            if np.linalg.norm(T @ (n + c)) <= R:
                continue
            w = math.exp(-math.pi * n @ Y @ n - 2 * math.pi * n @ z.imag)
            for j in alpha:
                w *= 2 * math.pi * abs(n[j])
            total += w
        worst = max(worst, total / (2 * math.pi) ** order)
    assert worst <= model.bound(R)


@given(st.integers(0, 2**32 - 1), st.integers(0, 4))
def test_tail_bound_monotone(seed, order):
    rng = np.random.default_rng(seed)
    g = int(rng.integers(1, 4))
    tau = random_period(rng, g)
    z = rng.normal(size=g) * 0.3 + 1j * rng.normal(size=g) * 0.3
    model = tail_model(tau, order, z)
    R = model.min_radius + float(rng.uniform(0, 3))
    assert model.bound(R + 1) <= model.bound(R)
    assert model.bound(model.min_radius - 1e-3) == math.inf


def test_choose_radius_hits_target():
    model = tail_model(validate_period(np.diag([1j, 2j])), 2)
    R, b = choose_radius(model, 1e-12, 30.0)
    assert b <= 1e-12
    assert model.bound(R * (1 - 1e-6)) > 1e-12 or R == model.min_radius
    with pytest.raises(RadiusCapExceeded):
        choose_radius(model, 1e-300, 6.0)


def test_eval_jet_reports_cap():
    with pytest.raises(RadiusCapExceeded):
        eval_jet(validate_period([[1j]]), None, __import__("thetanull").Characteristic.zero(1), 0,
                 EvalConfig(target_abs_error=1e-12, max_radius=2.0))
