"""Theta constants, the operator D and the rank strata of the theta-null divisor.

``D`` applied to a theta constant is the symmetric matrix with
``d theta/d tau_jj`` on the diagonal and ``(1/2) d theta/d tau_jk`` off it;
by the heat equation it equals ``Hess_z theta(tau, 0) / (4 pi i)``, so its
rank is the rank of the tangent cone at the corresponding 2-torsion point.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .characteristics import Characteristic, enumerate_even
from .engine import DEFAULT_CONFIG, EvalConfig, directional_tau_derivative, eval_jet
from .engine.jet import tau_gradient_from_jet
from .errors import (
    ImagNotPositiveDefinite,
    InternalConsistencyError,
    LeftSiegelSpace,
    NoConvergence,
    NotInGamma48,
)
from .rank import DEFAULT_RANK_REL_TOL, FLOOR_FACTOR, RankReport, rank_report
from .siegel import (
    PeriodMatrix,
    SymplecticElement,
    act,
    as_period,
    automorphy_det,
    in_gamma_n_2n,
    validate_period,
)

DEFAULT_VANISH_TOL = 1e-9
HESS_TO_D = 4j * math.pi


def _d_from_jet(jet) -> np.ndarray:
    g = jet.genus
    grad = tau_gradient_from_jet(jet)
    D = np.empty((g, g), dtype=complex)
    for (j, k), v in grad.items():
        D[j, k] = D[k, j] = v if j == k else v / 2
    via_hess = jet.hessian() / HESS_TO_D
    tol = 1e-12 * max(1.0, float(np.max(np.abs(via_hess))))
    if np.max(np.abs(D - via_hess)) > tol:
        raise InternalConsistencyError("D matrix disagrees with Hess/(4 pi i)")
    return D


def d_matrix(tau, ch: Characteristic, cfg: EvalConfig = DEFAULT_CONFIG) -> np.ndarray:
    """``D theta[ch](tau)``; cross-checked against ``Hess_z theta[ch](tau, 0) / (4 pi i)``."""
    return _d_from_jet(eval_jet(tau, None, ch, 2, cfg))


def d_matrix_report(tau, ch: Characteristic, cfg: EvalConfig = DEFAULT_CONFIG,
                    rank_rel_tol: float = DEFAULT_RANK_REL_TOL) -> tuple[np.ndarray, RankReport]:
    jet = eval_jet(tau, None, ch, 2, cfg)
    D = _d_from_jet(jet)
    return D, rank_report(D, rank_rel_tol, FLOOR_FACTOR * jet.tail_bound_used, ch)


def theta_constant_vector(tau, cfg: EvalConfig = DEFAULT_CONFIG) -> list[tuple[Characteristic, complex]]:
    """Even theta constants in enumeration order (the coordinates of Th)."""
    tau = as_period(tau)
    return [(ch, eval_jet(tau, None, ch, 0, cfg).value) for ch in enumerate_even(tau.g)]


@dataclass(frozen=True)
class StratumClassification:
    vanishing: tuple[tuple[Characteristic, RankReport], ...]
    min_h: int | None
    in_theta_null: bool
    constants: tuple[tuple[Characteristic, complex], ...]
    vanish_tol: float
    scale: float

    def to_json(self) -> dict:
        return {
            "in_theta_null": self.in_theta_null,
            "min_h": self.min_h,
            "vanish_tol": self.vanish_tol,
            "scale": self.scale,
            "vanishing": [
                {"characteristic": ch.to_json(), "rank_report": rep.to_json()}
                for ch, rep in self.vanishing
            ],
            "constants": [
                {"characteristic": ch.to_json(), "re": v.real, "im": v.imag, "abs": abs(v)}
                for ch, v in self.constants
            ],
        }


def classify_stratum(tau, cfg: EvalConfig = DEFAULT_CONFIG, vanish_tol: float = DEFAULT_VANISH_TOL,
                     rank_rel_tol: float = DEFAULT_RANK_REL_TOL) -> StratumClassification:
    """Locate ``tau`` in the strata ``t_null^h``.

    A constant counts as vanishing when ``|theta[ch](tau, 0)| <= vanish_tol``
    times the largest even constant. Each vanishing characteristic gets a
    rank report of its D matrix; ``min_h`` is the least of those ranks.
    """
    tau = as_period(tau)
    jets = [(ch, eval_jet(tau, None, ch, 2, cfg)) for ch in enumerate_even(tau.g)]
    constants = tuple((ch, jet.value) for ch, jet in jets)
    scale = max(abs(v) for _, v in constants)
    vanishing = []
    for ch, jet in jets:
        if abs(jet.value) <= vanish_tol * scale:
            D = _d_from_jet(jet)
            rep = rank_report(D, rank_rel_tol, FLOOR_FACTOR * jet.tail_bound_used, ch)
            vanishing.append((ch, rep))
    min_h = min((rep.numerical_rank for _, rep in vanishing), default=None)
    return StratumClassification(tuple(vanishing), min_h, bool(vanishing), constants,
                                 vanish_tol, scale)


def find_on_divisor(tau0, E, ch: Characteristic, cfg: EvalConfig = DEFAULT_CONFIG,
                    newton_tol: float = 1e-12, max_iter: int = 50) -> tuple[complex, PeriodMatrix]:
    """Newton search for ``s`` with ``theta[ch](tau0 + s E, 0) = 0``.

    Steps are halved while they fail to decrease ``|theta|`` or leave the
    Siegel space.
    """
    if not ch.is_even:
        raise ValueError("odd theta constants vanish identically; pick an even characteristic")
    tau0 = as_period(tau0)
    E = np.asarray(E, dtype=complex)
    if E.shape != (tau0.g, tau0.g) or not np.allclose(E, E.T, rtol=0, atol=1e-14):
        raise ValueError("direction must be a symmetric g x g matrix")

    def value(s):
        tau = validate_period(tau0.tau + s * E)
        return tau, eval_jet(tau, None, ch, 0, cfg).value

    s = 0j
    tau, f = value(s)
    for _ in range(max_iter):
        if abs(f) <= newton_tol:
            return s, tau
        df = directional_tau_derivative(tau, E, ch, cfg)
        if df == 0:
            raise NoConvergence("zero derivative along the search direction")
        step = -f / df
        for _halving in range(40):
            try:
                t_new, f_new = value(s + step)
            except ImagNotPositiveDefinite:
                step /= 2
                continue
            if abs(f_new) < abs(f):
                break
            step /= 2
        else:
            raise LeftSiegelSpace("no damped Newton step stays in H_g and decreases |theta|")
        s, tau, f = s + step, t_new, f_new
    if abs(f) <= newton_tol:
        return s, tau
    raise NoConvergence(f"|theta| = {abs(f):.3e} after {max_iter} iterations")


def modular_weight_check_squared(sigma: SymplecticElement, tau, ch: Characteristic,
                                 cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    """``|theta[ch](sigma.tau, 0)^2 - det(c tau + d) theta[ch](tau, 0)^2|`` for sigma in Gamma(4, 8)."""
    if not in_gamma_n_2n(sigma, 4):
        raise NotInGamma48("element is not in Gamma_g(4, 8)")
    tau = as_period(tau)
    lhs = eval_jet(act(sigma, tau), None, ch, 0, cfg).value ** 2
    rhs = automorphy_det(sigma, tau) * eval_jet(tau, None, ch, 0, cfg).value ** 2
    return abs(lhs - rhs)
