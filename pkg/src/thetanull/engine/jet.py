"""Theta functions with characteristics and their z-partials.

    theta[eps, delta](tau, z) = sum_m exp(pi i [(m + eps/2)^T tau (m + eps/2)
                                              + 2 (m + eps/2)^T (z + delta/2)])

Term-wise differentiation multiplies the ``m``-th term by
``prod_j (2 pi i n_j)^alpha_j`` with ``n = m + eps/2``. Derivatives in tau
come from the heat equation

    d^2 theta / dz_j dz_k = 2 pi i (1 + [j == k]) d theta / d tau_jk

with ``tau_jk`` (``j <= k``) the coordinates of the symmetric matrix.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from ..characteristics import Characteristic
from ..siegel import PeriodMatrix, as_period, reverse_cholesky
from . import backend
from .lattice import DEFAULT_MAX_POINTS, choose_radius, tail_model

MAX_ORDER = 4
TWO_PI_I = 2j * math.pi


def heat_factor(j: int, k: int) -> complex:
    """Constant ``c_jk`` with ``d^2 theta/dz_j dz_k = c_jk * d theta/d tau_jk``."""
    return TWO_PI_I * (2 if j == k else 1)


@dataclass(frozen=True)
class EvalConfig:
    target_abs_error: float = 1e-12
    max_radius: float = 30.0
    max_derivative_order: int = MAX_ORDER
    max_points: int = DEFAULT_MAX_POINTS

    def __post_init__(self):
        if not self.target_abs_error > 0:
            raise ValueError("target_abs_error must be positive")
        if not self.max_radius > 0:
            raise ValueError("max_radius must be positive")
        if not 0 <= self.max_derivative_order <= MAX_ORDER:
            raise ValueError(f"max_derivative_order must lie in [0, {MAX_ORDER}]")


DEFAULT_CONFIG = EvalConfig()


@lru_cache(maxsize=None)
def multi_indices(g: int, order: int) -> tuple[tuple[int, ...], ...]:
    """Sorted coordinate tuples of length ``<= order``; ``(0, 0, 1)`` is d^3/dz0^2 dz1."""
    out = []
    for k in range(order + 1):
        out.extend(itertools.combinations_with_replacement(range(g), k))
    return tuple(out)


@lru_cache(maxsize=None)
def _power_table(g: int, order: int) -> np.ndarray:
    idx = multi_indices(g, order)
    pw = np.zeros((len(idx), g), dtype=np.int64)
    for r, alpha in enumerate(idx):
        for j in alpha:
            pw[r, j] += 1
    return pw


@dataclass(frozen=True, eq=False)
class ThetaJet:
    """Value and z-partials of ``theta[ch](tau, .)`` at one point."""

    genus: int
    characteristic: Characteristic
    order: int
    partials: dict
    tail_bound_used: float
    radius_used: float
    terms_summed: int
    z: np.ndarray = field(repr=False)

    def partial(self, *idx: int) -> complex:
        return self.partials[tuple(sorted(idx))]

    @property
    def value(self) -> complex:
        return self.partials[()]

    def gradient(self) -> np.ndarray:
        return np.array([self.partials[(j,)] for j in range(self.genus)])

    def hessian(self) -> np.ndarray:
        g = self.genus
        return np.array([[self.partial(j, k) for k in range(g)] for j in range(g)])

    def third(self) -> np.ndarray:
        g = self.genus
        out = np.empty((g, g, g), dtype=complex)
        for i, j, k in itertools.product(range(g), repeat=3):
            out[i, j, k] = self.partial(i, j, k)
        return out

    def to_json(self) -> dict:
        return {
            "genus": self.genus,
            "characteristic": self.characteristic.to_json(),
            "order": self.order,
            "z": {"re": self.z.real.tolist(), "im": self.z.imag.tolist()},
            "partials": [
                {"alpha": list(a), "re": v.real, "im": v.imag} for a, v in self.partials.items()
            ],
            "tail_bound_used": self.tail_bound_used,
            "radius_used": self.radius_used,
            "terms_summed": self.terms_summed,
        }


def _as_z(z, g: int) -> np.ndarray:
    if z is None:
        return np.zeros(g, dtype=complex)
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    if z.shape != (g,):
        raise ValueError(f"z must have length {g}")
    return z


def eval_jet(tau, z, ch: Characteristic, order: int = 0, cfg: EvalConfig = DEFAULT_CONFIG,
             *, radius: float | None = None, kernel: str | None = None) -> ThetaJet:
    """Evaluate ``d^alpha theta[ch](tau, z)`` for every ``|alpha| <= order``.

    The truncation radius is the smallest one whose rigorous tail bound is
    at most ``cfg.target_abs_error``, unless ``radius`` forces one (then
    ``tail_bound_used`` reports the bound at that radius, possibly ``inf``).
    """
    tau = as_period(tau)
    g = tau.g
    if ch.g != g:
        raise ValueError("characteristic genus does not match tau")
    if not 0 <= order <= cfg.max_derivative_order:
        raise ValueError(f"order {order} outside [0, {cfg.max_derivative_order}]")
    z = _as_z(z, g)

    model = tail_model(tau, order, z)
    if radius is None:
        R, bound = choose_radius(model, cfg.target_abs_error, cfg.max_radius)
    else:
        R, bound = float(radius), model.bound(float(radius))

    X, Y = np.ascontiguousarray(tau.re), np.ascontiguousarray(tau.im)
    T = reverse_cholesky(math.pi * Y)
    eps_half = np.asarray(ch.eps, dtype=float) / 2
    y = np.ascontiguousarray(z.imag)
    x = np.ascontiguousarray(z.real + np.asarray(ch.delta, dtype=float) / 2)
    center = eps_half + np.linalg.solve(Y, y)
    powers = _power_table(g, order)

    fn = backend.get_kernel(kernel)
    sums, count = fn(T, np.ascontiguousarray(center), R, eps_half, X, Y, x, y,
                     model.K0, powers, cfg.max_points)
    if count < 0:
        from ..errors import RadiusCapExceeded

        raise RadiusCapExceeded(f"more than {cfg.max_points} lattice points at radius {R:.4g}")

    scale = math.exp(model.K0)
    partials = {}
    for alpha, s in zip(multi_indices(g, order), sums):
        partials[alpha] = complex(s * scale * TWO_PI_I ** len(alpha))
    return ThetaJet(g, ch, order, partials, bound, R, int(count), z)


def theta(tau, z, ch: Characteristic, cfg: EvalConfig = DEFAULT_CONFIG) -> complex:
    return eval_jet(tau, z, ch, 0, cfg).value


def tau_gradient_from_jet(jet: ThetaJet) -> dict:
    """``{(j, k): d theta / d tau_jk}`` for ``j <= k`` from an order >= 2 jet."""
    g = jet.genus
    return {
        (j, k): jet.partial(j, k) / heat_factor(j, k) for j in range(g) for k in range(j, g)
    }


def tau_derivative(tau, z, ch: Characteristic, jk: tuple[int, int],
                   cfg: EvalConfig = DEFAULT_CONFIG) -> complex:
    """``d theta[ch] / d tau_jk`` at ``(tau, z)`` via the heat equation."""
    j, k = jk
    jet = eval_jet(tau, z, ch, 2, cfg)
    return jet.partial(j, k) / heat_factor(j, k)


def directional_tau_derivative(tau, E, ch: Characteristic, cfg: EvalConfig = DEFAULT_CONFIG,
                               z=None) -> complex:
    """Derivative of ``s -> theta[ch](tau + s E, z)`` at ``s = 0``.

    Equals ``sum_{j<=k} E_jk d theta / d tau_jk = tr(E Hess_z theta) / (4 pi i)``.
    """
    tau = as_period(tau)
    E = np.asarray(E, dtype=complex)
    if E.shape != (tau.g, tau.g) or not np.allclose(E, E.T, rtol=0, atol=1e-14):
        raise ValueError("direction must be a symmetric g x g matrix")
    if not np.any(E):
        return 0j
    jet = eval_jet(tau, z, ch, 2, cfg)
    grad = tau_gradient_from_jet(jet)
    return complex(sum(E[j, k] * v for (j, k), v in grad.items()))


def shift_factor(tau, z, ch: Characteristic) -> complex:
    """``kappa`` with ``theta[0](tau, z + tau eps/2 + delta/2) = kappa * theta[ch](tau, z)``.

    ``kappa = exp(pi i (-(eps/2)^T tau (eps/2) - eps^T (z + delta/2)))``.
    """
    t = np.asarray(as_period(tau).tau)
    z = _as_z(z, t.shape[0])
    e = np.asarray(ch.eps, dtype=float)
    d = np.asarray(ch.delta, dtype=float)
    return complex(np.exp(1j * math.pi * (-(e / 2) @ t @ (e / 2) - e @ (z + d / 2))))


def shift_identity_residual(tau, z, ch: Characteristic, cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    """``|theta[0](tau, z + half_period) - kappa theta[ch](tau, z)|``."""
    tau = as_period(tau)
    z = _as_z(z, tau.g)
    if ch.is_zero:
        return 0.0
    from ..characteristics import half_period

    zero = Characteristic.zero(tau.g)
    lhs = eval_jet(tau, z + half_period(tau.tau, ch), zero, 0, cfg).value
    rhs = shift_factor(tau, z, ch) * eval_jet(tau, z, ch, 0, cfg).value
    return abs(lhs - rhs)
