"""Jacobians of the singularity schemes S and S_null.

Local equations on the universal family, in coordinates
``(tau_11, tau_12, ..., tau_gg, z_1, ..., z_g)``:

* S:      ``theta = 0`` and ``d theta/dz_i = 0`` for all ``i``;
* S_null: ``theta = 0`` and ``z = (tau eps + delta) / 2`` for an even ``[eps, delta]``.

Every tau-derivative is a z-derivative by the heat equation, so a single
order-3 jet feeds the whole S Jacobian.

At an even half-period ``x`` the Jacobian of S written with ``theta[0,0]``
in the ``z`` chart carries extra terms in the mixed block whenever
``eps != 0``: ``theta[0,0](tau, x + w) = kappa(tau, w) theta[eps, delta](tau, w)``
and the derivatives of the unit ``kappa`` leak into the third z-partials.
Passing ``ch`` evaluates the same equations in the translated chart ``w``,
where the mixed block vanishes by parity. Both charts give the same rank.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .characteristics import Characteristic, half_period
from .engine import DEFAULT_CONFIG, EvalConfig, eval_jet, heat_factor
from .errors import NotOnSingularityScheme
from .rank import DEFAULT_RANK_REL_TOL, FLOOR_FACTOR, RankReport, rank_report
from .siegel import as_period

DEFAULT_RESIDUAL_TOL = 1e-9
DEFAULT_VANISH_TOL = 1e-9


def tau_coordinates(g: int) -> list[tuple[int, int]]:
    """Upper-triangle index pairs in lexicographic order."""
    return [(j, k) for j in range(g) for k in range(j, g)]


def column_names(g: int) -> list[str]:
    return [f"tau_{j + 1}{k + 1}" for j, k in tau_coordinates(g)] + [f"z_{i + 1}" for i in range(g)]


@dataclass(frozen=True, eq=False)
class SchemeJacobian:
    matrix: np.ndarray
    which: str
    genus: int
    characteristic: Characteristic
    point: np.ndarray
    residuals: dict = field(default_factory=dict)
    tail_bound: float = 0.0

    @property
    def columns(self) -> list[str]:
        return column_names(self.genus)

    @property
    def n_tau(self) -> int:
        return self.genus * (self.genus + 1) // 2

    @property
    def tau_block(self) -> np.ndarray:
        return self.matrix[:, : self.n_tau]

    @property
    def z_block(self) -> np.ndarray:
        return self.matrix[:, self.n_tau :]

    def to_json(self) -> dict:
        return {
            "which": self.which,
            "genus": self.genus,
            "characteristic": self.characteristic.to_json(),
            "point": {"re": self.point.real.tolist(), "im": self.point.imag.tolist()},
            "columns": self.columns,
            "re": self.matrix.real.tolist(),
            "im": self.matrix.imag.tolist(),
            "residuals": dict(self.residuals),
            "tail_bound": self.tail_bound,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "SchemeJacobian":
        g = int(obj["genus"])
        if obj["columns"] != column_names(g):
            raise ValueError("column list does not match the fixed ordering")
        mat = np.asarray(obj["re"], dtype=float) + 1j * np.asarray(obj["im"], dtype=float)
        if mat.shape != (g + 1, g * (g + 1) // 2 + g):
            raise ValueError("Jacobian has the wrong shape")
        point = np.asarray(obj["point"]["re"], dtype=float) + 1j * np.asarray(obj["point"]["im"], dtype=float)
        return cls(mat, obj["which"], g, Characteristic.from_json(obj["characteristic"]), point,
                   dict(obj.get("residuals", {})), float(obj.get("tail_bound", 0.0)))


def sing_S_jacobian(tau, z, cfg: EvalConfig = DEFAULT_CONFIG,
                    ch: Characteristic | None = None) -> SchemeJacobian:
    """Gradients of ``theta[ch]`` and of ``d theta[ch]/dz_i`` at ``(tau, z)``.

    ``ch`` defaults to ``[0, 0]``; see the module docstring for the
    translated chart at half-periods.
    """
    tau = as_period(tau)
    g = tau.g
    ch = ch or Characteristic.zero(g)
    jet = eval_jet(tau, z, ch, 3, cfg)
    H = jet.hessian()
    T3 = jet.third()
    coords = tau_coordinates(g)
    rows = [[H[j, k] / heat_factor(j, k) for j, k in coords] + list(jet.gradient())]
    for i in range(g):
        rows.append([T3[i, j, k] / heat_factor(j, k) for j, k in coords] + list(H[i]))
    residuals = {"theta_abs": abs(jet.value), "grad_norm": float(np.linalg.norm(jet.gradient())),
                 "hess_norm": float(np.linalg.norm(H, 2))}
    return SchemeJacobian(np.array(rows, dtype=complex), "S", g, ch, jet.z, residuals,
                          jet.tail_bound_used)


def sing_S_at_half_period(tau, ch: Characteristic, cfg: EvalConfig = DEFAULT_CONFIG) -> SchemeJacobian:
    """S Jacobian at the half-period of ``ch`` in the translated chart."""
    return sing_S_jacobian(tau, None, cfg, ch)


def sing_S_rank_test(tau, z, cfg: EvalConfig = DEFAULT_CONFIG, ch: Characteristic | None = None,
                     residual_tol: float = DEFAULT_RESIDUAL_TOL,
                     rank_rel_tol: float = DEFAULT_RANK_REL_TOL) -> tuple[RankReport, bool]:
    """Decide whether ``(tau, z)`` is a singular point of S (rank ``<= g``).

    Raises
    ------
    NotOnSingularityScheme
        If ``|theta|`` or ``|grad theta|`` exceed ``residual_tol * max(1, |Hess|)``.
    """
    jac = sing_S_jacobian(tau, z, cfg, ch)
    res = jac.residuals
    scale = max(1.0, res["hess_norm"])
    if res["theta_abs"] > residual_tol * scale or res["grad_norm"] > residual_tol * scale:
        raise NotOnSingularityScheme(
            f"point does not satisfy the S equations: |theta| = {res['theta_abs']:.3e}, "
            f"|grad| = {res['grad_norm']:.3e}", res)
    rep = rank_report(jac.matrix, rank_rel_tol, FLOOR_FACTOR * jac.tail_bound, ch)
    return rep, rep.numerical_rank <= jac.genus


def snull_jacobian(tau, ch: Characteristic, cfg: EvalConfig = DEFAULT_CONFIG) -> SchemeJacobian:
    """Gradients of ``theta(tau, z)`` and of ``z - (tau eps + delta)/2`` at the half-period."""
    if not ch.is_even:
        raise ValueError("S_null is defined by even characteristics")
    tau = as_period(tau)
    g = tau.g
    x = half_period(tau.tau, ch)
    jet = eval_jet(tau, x, Characteristic.zero(g), 2, cfg)
    H = jet.hessian()
    coords = tau_coordinates(g)
    rows = [[H[j, k] / heat_factor(j, k) for j, k in coords] + list(jet.gradient())]
    eps = ch.eps
    for i in range(g):
        # d/d tau_jk of -(tau eps)_i / 2
        tau_part = []
        for j, k in coords:
            v = 0.0
            if j == i:
                v -= eps[k] / 2
            if k == i and j != k:
                v -= eps[j] / 2
            tau_part.append(v)
        rows.append(tau_part + [1.0 if c == i else 0.0 for c in range(g)])
    residuals = {"theta_abs": abs(jet.value), "grad_norm": float(np.linalg.norm(jet.gradient())),
                 "hess_norm": float(np.linalg.norm(H, 2))}
    return SchemeJacobian(np.array(rows, dtype=complex), "S_null", g, ch, x, residuals,
                          jet.tail_bound_used)


def snull_rank(tau, ch: Characteristic, cfg: EvalConfig = DEFAULT_CONFIG,
               rank_rel_tol: float = DEFAULT_RANK_REL_TOL) -> RankReport:
    jac = snull_jacobian(tau, ch, cfg)
    return rank_report(jac.matrix, rank_rel_tol, FLOOR_FACTOR * jac.tail_bound, ch)


def order_four_data(tau, ch: Characteristic, cfg: EvalConfig = DEFAULT_CONFIG) -> dict:
    """Magnitudes of the order 0..4 z-partials of ``theta[ch](tau, .)`` at 0."""
    if not ch.is_even:
        raise ValueError("order-four diagnostic is defined for even characteristics")
    jet = eval_jet(tau, None, ch, 4, cfg)
    by_order = {k: 0.0 for k in range(5)}
    for alpha, v in jet.partials.items():
        by_order[len(alpha)] = max(by_order[len(alpha)], abs(v))
    by_order["tail_bound"] = jet.tail_bound_used
    return by_order


def order_four_diagnostic(tau, ch: Characteristic, cfg: EvalConfig = DEFAULT_CONFIG,
                          vanish_tol: float = DEFAULT_VANISH_TOL) -> bool:
    """True when ``theta[ch](tau, 0)`` and all second z-partials vanish.

    Odd-order partials vanish by parity, so this is the signature of a zero
    of order at least four at ``z = 0``. Vanishing is judged against the
    largest fourth partial, with an absolute floor from the tail bound.
    """
    d = order_four_data(tau, ch, cfg)
    thr = max(vanish_tol * d[4], FLOOR_FACTOR * d["tail_bound"])
    return d[0] <= thr and d[2] <= thr
