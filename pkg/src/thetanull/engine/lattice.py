"""Ellipsoid lattice enumeration and the truncation-error bound.

The theta series is summed over the integer points ``m`` inside the
ellipsoid ``|T (m + c)| <= R`` where ``T^T T = pi Im(tau)`` (``T`` lower
triangular) and ``c = eps/2 + Im(tau)^{-1} Im(z)`` is the maximiser of the
term modulus. The omitted terms are bounded by comparing the lattice sum to
a radial integral: balls of the packing radius ``rho`` around the points of
``T Z^g`` are disjoint, and on ``s >= r0`` the per-term majorant
``exp(-s^2) (A + B s)^N`` is decreasing, which gives

    tail(R) <= exp(K0) * g / rho^g * int_{R - 2 rho}^inf exp(-s^2) (A + B s)^N (s + rho)^(g-1) ds

valid whenever ``R - 2 rho >= r0``. The integral is a finite combination of
upper incomplete gamma functions.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from numpy.polynomial import polynomial as P
from scipy.special import gamma, gammaincc

from ..errors import RadiusCapExceeded
from ..siegel import as_period, reverse_cholesky
from . import _kernel_py

DEFAULT_MAX_POINTS = 10**7


def lattice_points(T, center, R: float, max_radius: float = math.inf,
                   max_points: int = DEFAULT_MAX_POINTS) -> np.ndarray:
    """Integer vectors ``m`` with ``|T (m + center)|_2 <= R``.

    Parameters
    ----------
    T : (g, g) array
        Real lower-triangular matrix with positive diagonal.
    center : (g,) array
    R : float
        Ellipsoid radius.

    Returns
    -------
    (N, g) int64 array in lexicographic order.

    Raises
    ------
    RadiusCapExceeded
        If ``R > max_radius`` or more than ``max_points`` points are needed.
    """
    T = np.ascontiguousarray(T, dtype=float)
    if T.ndim != 2 or T.shape[0] != T.shape[1] or np.any(np.triu(T, 1)):
        raise ValueError("T must be square lower triangular")
    if np.any(np.diagonal(T) <= 0):
        raise ValueError("T must have a positive diagonal")
    if R > max_radius:
        raise RadiusCapExceeded(f"radius {R:.4g} exceeds cap {max_radius:.4g}")
    pts = _kernel_py.enumerate_points(T, np.asarray(center, dtype=float), float(R), max_points)
    if pts is None:
        raise RadiusCapExceeded(f"more than {max_points} lattice points at radius {R:.4g}")
    return pts


def shortest_vector_length(T) -> float:
    """Length of the shortest nonzero vector of the lattice ``T Z^g``."""
    T = np.asarray(T, dtype=float)
    g = T.shape[0]
    # T e_g = T_gg e_g, so lambda_1 <= T_gg
    bound = T[g - 1, g - 1] * (1 + 1e-9)
    pts = lattice_points(T, np.zeros(g), bound)
    best = bound
    for m in pts:
        if np.any(m):
            best = min(best, float(np.linalg.norm(T @ m)))
    return best


@dataclass(frozen=True)
class TailModel:
    """Precomputed constants of the truncation bound for one ``(tau, z, order)``."""

    g: int
    order: int
    rho: float
    A: float
    B: float
    K0: float

    @property
    def r0(self) -> float:
        """Start of the region where ``exp(-s^2) (A + B s)^N`` decreases."""
        N, A, B = self.order, self.A, self.B
        if N == 0:
            return 0.0
        return (-2 * A + math.sqrt(4 * A * A + 8 * N * B * B)) / (4 * B)

    @property
    def min_radius(self) -> float:
        return 2 * self.rho + self.r0

    @cached_property
    def _terms(self) -> tuple[np.ndarray, np.ndarray]:
        # (A + B s)^N (s + rho)^(g-1) = sum_k c_k s^k, and
        # int_a^inf s^k exp(-s^2) ds = Gamma((k+1)/2, a^2) / 2
        poly = P.polymul(P.polypow([self.A, self.B], self.order), P.polypow([self.rho, 1.0], self.g - 1))
        h = (np.arange(len(poly)) + 1) / 2
        pref = math.exp(self.K0) * self.g / self.rho**self.g
        return h, pref * poly * 0.5 * gamma(h)

    def bound(self, R: float) -> float:
        a = R - 2 * self.rho
        if a < self.r0 or a < 0:
            return math.inf
        h, coef = self._terms
        return float(coef @ gammaincc(h, a * a))


def tail_model(tau, order: int, z=None) -> TailModel:
    tau = as_period(tau)
    g = tau.g
    Y = tau.im
    T = reverse_cholesky(math.pi * Y)
    y = np.zeros(g) if z is None else np.asarray(z, dtype=complex).imag
    cy = np.linalg.solve(Y, y)
    rho = 0.5 * shortest_vector_length(T) * (1 - 1e-12)
    tinv = float(np.linalg.norm(np.linalg.inv(T), 2))
    return TailModel(
        g=g,
        order=order,
        rho=rho,
        A=1.0 + 2 * math.pi * float(np.linalg.norm(cy)),
        B=2 * math.pi * tinv,
        K0=float(math.pi * y @ cy),
    )


def tail_bound(tau, order: int, R: float, z=None) -> float:
    """Upper bound on the summed modulus of all omitted terms.

    Covers every partial ``d^alpha/dz^alpha`` with ``|alpha| <= order``
    simultaneously. Returns ``inf`` when ``R`` is inside the margin
    ``2 rho + r0`` where the comparison argument does not apply.
    """
    return tail_model(tau, order, z).bound(R)


def choose_radius(model: TailModel, target: float, max_radius: float) -> tuple[float, float]:
    """Smallest radius (to bisection precision) whose bound meets ``target``."""
    lo = model.min_radius
    b = model.bound(lo)
    if b <= target:
        return lo, b
    hi = lo + 1.0
    while model.bound(hi) > target:
        if hi > max_radius:
            raise RadiusCapExceeded(
                f"tail bound {model.bound(max_radius):.3e} at cap radius {max_radius:.4g} "
                f"exceeds target {target:.3e}"
            )
        hi = lo + 2 * (hi - lo)
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if model.bound(mid) <= target:
            hi = mid
        else:
            lo = mid
        if hi - lo <= 1e-10 * hi:
            break
    if hi > max_radius:
        raise RadiusCapExceeded(f"required radius {hi:.4g} exceeds cap {max_radius:.4g}")
    return hi, model.bound(hi)
