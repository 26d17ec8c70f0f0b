"""Seeded random inputs shared by the verification suites and scans."""
from __future__ import annotations

import numpy as np

from .engine import DEFAULT_CONFIG, EvalConfig, eval_jet
from .characteristics import Characteristic
from .errors import NoConvergence
from .siegel import PeriodMatrix, SymplecticElement, as_period, validate_period


def random_period(rng: np.random.Generator, g: int, im_floor: float = 0.6,
                  re_span: float = 0.5, coupling: float = 0.3) -> PeriodMatrix:
    """Random period matrix with ``Im tau >= im_floor`` (in the Loewner order)."""
    A = rng.uniform(-coupling, coupling, size=(g, g))
    Y = im_floor * np.eye(g) + A @ A.T + np.diag(rng.uniform(0, 0.6, size=g))
    X = rng.uniform(-re_span, re_span, size=(g, g))
    X = (X + X.T) / 2
    return validate_period(X + 1j * Y)


def random_z(rng: np.random.Generator, g: int, re_span: float = 0.5, im_span: float = 0.3) -> np.ndarray:
    return rng.uniform(-re_span, re_span, g) + 1j * rng.uniform(-im_span, im_span, g)


def random_symmetric(rng: np.random.Generator, n: int) -> np.ndarray:
    M = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return (M + M.T) / 2


def gamma48_generators(g: int) -> list[SymplecticElement]:
    """Elementary elements of ``Gamma_g(4, 8)`` (translations, lower translations, ``A``-blocks)."""
    eye = np.eye(g, dtype=np.int64)
    zero = np.zeros((g, g), dtype=np.int64)
    shears = []
    for j in range(g):
        for k in range(j, g):
            S = np.zeros((g, g), dtype=np.int64)
            if j == k:
                S[j, j] = 8
            else:
                S[j, k] = S[k, j] = 4
            shears.append(S)
    gens = []
    for S in shears:
        gens.append(SymplecticElement(eye, S, zero, eye))
        gens.append(SymplecticElement(eye, zero, S, eye))
    for j in range(g):
        for k in range(g):
            if j != k:
                A = eye.copy()
                A[j, k] = 4
                gens.append(SymplecticElement(A, zero, zero, np.linalg.inv(A).T.round().astype(np.int64)))
    return gens


def random_gamma48_word(rng: np.random.Generator, g: int, max_len: int = 3) -> SymplecticElement:
    gens = gamma48_generators(g)
    gens = gens + [s.inverse() for s in gens]
    length = int(rng.integers(1, max_len + 1))
    out = SymplecticElement.identity(g)
    for _ in range(length):
        out = out @ gens[int(rng.integers(len(gens)))]
    return out


_RESTARTS = (0j, 0.3 + 0.1j, -0.2 + 0.35j, 0.45 - 0.2j)


def divisor_point(tau, x0, v=None, ch: Characteristic | None = None,
                  cfg: EvalConfig = DEFAULT_CONFIG, tol: float = 1e-13,
                  max_iter: int = 60) -> np.ndarray:
    """Damped Newton solve of ``theta[ch](tau, x0 + t v) = 0`` for complex ``t``.

    ``v`` defaults to the last coordinate direction. Steps are capped at
    0.25 and halved until ``|theta|`` decreases; a stalled run restarts from
    a fixed list of offsets, so the result is deterministic.
    """
    tau = as_period(tau)
    g = tau.g
    ch = ch or Characteristic.zero(g)
    x0 = np.asarray(x0, dtype=complex)
    if v is None:
        v = np.zeros(g, dtype=complex)
        v[-1] = 1.0
    for t in _RESTARTS:
        jet = eval_jet(tau, x0 + t * v, ch, 1, cfg)
        for _ in range(max_iter):
            f, df = jet.value, jet.gradient() @ v
            if abs(f) <= tol * max(1.0, abs(df)):
                return x0 + t * v
            if df == 0:
                break
            step = -f / df
            if abs(step) > 0.25:
                step *= 0.25 / abs(step)
            for _ in range(30):
                trial = eval_jet(tau, x0 + (t + step) * v, ch, 1, cfg)
                if abs(trial.value) < abs(f):
                    break
                step /= 2
            else:
                break
            t, jet = t + step, trial
    raise NoConvergence(f"no zero of theta along the line from {x0}")
