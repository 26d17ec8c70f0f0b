"""Bordered Hessians of theta, the form eta and Gauss-map ramification.

For a hypersurface ``F = 0`` the Gauss map ``x -> [dF(x)]`` ramifies at a
smooth point exactly when the bordered Hessian

    B = | H      dF |
        | dF^T   0  |

is singular. Expanding ``det B`` along the last row and column gives
``det B = -dF^T cof(H) dF`` for symmetric ``H``; the quadratic form
``eta = dF^T cof(H) dF`` therefore detects ramification.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .characteristics import Characteristic
from .engine import DEFAULT_CONFIG, EvalConfig, eval_jet
from .errors import (
    InternalConsistencyError,
    NotOnDivisor,
    NotOnDivisorWarning,
    SingularPointOfTheta,
)
from .rank import DEFAULT_RANK_REL_TOL, FLOOR_FACTOR, RankReport, rank_report
from .siegel import as_period
from .strata import d_matrix

DEFAULT_DIVISOR_TOL = 1e-8
DEFAULT_ETA_REL_TOL = 1e-6
SINGULAR_GRAD_TOL = 1e-9
_IDENTITY_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class BorderedHessian:
    H: np.ndarray
    dF: np.ndarray
    B: np.ndarray
    theta_value: complex
    tail_bound: float

    @property
    def n(self) -> int:
        return self.H.shape[0]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "H": {"re": self.H.real.tolist(), "im": self.H.imag.tolist()},
            "dF": {"re": self.dF.real.tolist(), "im": self.dF.imag.tolist()},
            "B": {"re": self.B.real.tolist(), "im": self.B.imag.tolist()},
            "theta": {"re": self.theta_value.real, "im": self.theta_value.imag},
            "tail_bound": self.tail_bound,
        }


def assemble_bordered(H, dF) -> np.ndarray:
    H = np.asarray(H, dtype=complex)
    dF = np.asarray(dF, dtype=complex)
    n = H.shape[0]
    B = np.zeros((n + 1, n + 1), dtype=complex)
    B[:n, :n] = H
    B[:n, n] = dF
    B[n, :n] = dF
    return B


def bordered_hessian(tau, x, ch: Characteristic | None = None,
                     cfg: EvalConfig = DEFAULT_CONFIG) -> BorderedHessian:
    """Hessian and gradient of ``theta[ch](tau, .)`` at ``x``, bordered."""
    tau = as_period(tau)
    ch = ch or Characteristic.zero(tau.g)
    jet = eval_jet(tau, x, ch, 2, cfg)
    H = jet.hessian()
    dF = jet.gradient()
    return BorderedHessian(H, dF, assemble_bordered(H, dF), jet.value, jet.tail_bound_used)


def cofactor_matrix(M) -> np.ndarray:
    """Signed minors: ``cof[j, k] = (-1)^(j+k) det(M without row j, column k)``."""
    M = np.atleast_2d(np.asarray(M, dtype=complex))
    n = M.shape[0]
    if n == 1:
        return np.ones((1, 1), dtype=complex)
    cof = np.empty_like(M)
    for j in range(n):
        rows = [r for r in range(n) if r != j]
        for k in range(n):
            cols = [c for c in range(n) if c != k]
            cof[j, k] = (-1) ** (j + k) * np.linalg.det(M[np.ix_(rows, cols)])
    return cof


def eta_form(H, dF) -> complex:
    """``dF^T cof(H) dF``."""
    dF = np.asarray(dF, dtype=complex)
    return complex(dF @ cofactor_matrix(H) @ dF)


def eta_scale(H, dF) -> float:
    """Natural size of eta: ``|dF|^2 |H|^(n-1)`` (spectral norm for H)."""
    H = np.atleast_2d(np.asarray(H, dtype=complex))
    n = H.shape[0]
    return float(np.linalg.norm(dF) ** 2 * np.linalg.norm(H, 2) ** (n - 1))


def check_bordered_identity(H, dF) -> tuple[complex, complex]:
    """Return ``(det B, eta)`` after asserting ``det B = -eta``."""
    e = eta_form(H, dF)
    det_b = complex(np.linalg.det(assemble_bordered(H, dF)))
    tol = _IDENTITY_TOL * (abs(e) + eta_scale(H, dF)) + 1e-300
    if abs(det_b + e) > tol:
        raise InternalConsistencyError(f"det B = {det_b} but eta = {e}")
    return det_b, e


def _on_divisor(bh: BorderedHessian, divisor_tol: float) -> bool:
    return abs(bh.theta_value) <= divisor_tol * max(1.0, float(np.linalg.norm(bh.dF)))


def eta(tau, x, ch: Characteristic | None = None, cfg: EvalConfig = DEFAULT_CONFIG,
        divisor_tol: float = DEFAULT_DIVISOR_TOL) -> complex:
    """``eta = dF^T cof(H) dF`` at ``(tau, x)``.

    Off the divisor the value is still returned, with a
    :class:`NotOnDivisorWarning`.
    """
    bh = bordered_hessian(tau, x, ch, cfg)
    if not _on_divisor(bh, divisor_tol):
        warnings.warn(f"|theta| = {abs(bh.theta_value):.3e}: point is not on the theta divisor",
                      NotOnDivisorWarning, stacklevel=2)
    _, e = check_bordered_identity(bh.H, bh.dF)
    return e


def eta_vanishes(H, dF, rel_tol: float = DEFAULT_ETA_REL_TOL) -> bool:
    return abs(eta_form(H, dF)) <= rel_tol * eta_scale(H, dF)


def is_gauss_ramification(tau, x, ch: Characteristic | None = None,
                          cfg: EvalConfig = DEFAULT_CONFIG, tol: float = DEFAULT_RANK_REL_TOL,
                          divisor_tol: float = DEFAULT_DIVISOR_TOL) -> tuple[bool, RankReport]:
    """Whether the Gauss map of the theta divisor ramifies at ``x``.

    True iff the bordered Hessian has numerical rank below ``g + 1``.

    Raises
    ------
    NotOnDivisor
        If ``theta(tau, x)`` is not numerically zero.
    SingularPointOfTheta
        If the gradient vanishes, so ``x`` is outside the Gauss map's domain.
    """
    bh = bordered_hessian(tau, x, ch, cfg)
    if not _on_divisor(bh, divisor_tol):
        raise NotOnDivisor(f"|theta| = {abs(bh.theta_value):.3e}")
    if np.linalg.norm(bh.dF) <= SINGULAR_GRAD_TOL * max(1.0, float(np.linalg.norm(bh.H, 2))):
        raise SingularPointOfTheta(f"|grad theta| = {np.linalg.norm(bh.dF):.3e}")
    check_bordered_identity(bh.H, bh.dF)
    rep = rank_report(bh.B, tol, FLOOR_FACTOR * bh.tail_bound, ch)
    return rep.numerical_rank < bh.n + 1, rep


def boundary_rank(tau_prime, z, cfg: EvalConfig = DEFAULT_CONFIG,
                  rank_rel_tol: float = DEFAULT_RANK_REL_TOL,
                  divisor_tol: float = DEFAULT_DIVISOR_TOL) -> RankReport:
    """Rank of the boundary matrix: the bordered Hessian of ``theta(tau', .)`` at ``z/2``.

    Rank ``g`` (= dimension of ``tau'`` plus one) places the boundary point
    outside the closure of ``t_null^{g-1}``.
    """
    tau_prime = as_period(tau_prime)
    x = np.asarray(z, dtype=complex) / 2
    bh = bordered_hessian(tau_prime, x, None, cfg)
    if not _on_divisor(bh, divisor_tol):
        raise NotOnDivisor(f"|theta(tau', z/2)| = {abs(bh.theta_value):.3e}")
    return rank_report(bh.B, rank_rel_tol, FLOOR_FACTOR * bh.tail_bound)


def hessian_form_F(tau, ch: Characteristic, cfg: EvalConfig = DEFAULT_CONFIG) -> complex:
    """``det D theta[ch](tau)`` (equal to ``det Hess_z theta[ch](tau, 0) / (4 pi i)^g``)."""
    return complex(np.linalg.det(d_matrix(tau, ch, cfg)))
