"""Numerical rank with reported tolerances."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .characteristics import Characteristic

DEFAULT_RANK_REL_TOL = 1e-6
FLOOR_FACTOR = 10.0


@dataclass(frozen=True)
class RankReport:
    matrix_dim: tuple[int, int]
    singular_values: tuple[float, ...]
    numerical_rank: int
    rel_tol_used: float
    abs_floor_used: float
    witness: Characteristic | None = None

    @property
    def threshold(self) -> float:
        s1 = self.singular_values[0] if self.singular_values else 0.0
        return max(self.rel_tol_used * s1, self.abs_floor_used)

    @property
    def full_rank(self) -> bool:
        return self.numerical_rank == min(self.matrix_dim)

    def margin(self) -> float:
        """log10 distance of the nearest singular value from the threshold."""
        thr = self.threshold
        if thr <= 0:
            return float("inf")
        logs = [abs(np.log10(max(s, 1e-300) / thr)) for s in self.singular_values]
        return float(min(logs)) if logs else float("inf")

    def to_json(self) -> dict:
        return {
            "matrix_dim": list(self.matrix_dim),
            "singular_values": list(self.singular_values),
            "numerical_rank": self.numerical_rank,
            "rel_tol_used": self.rel_tol_used,
            "abs_floor_used": self.abs_floor_used,
            "threshold": self.threshold,
            "witness": None if self.witness is None else self.witness.to_json(),
        }


def rank_report(M, rel_tol: float = DEFAULT_RANK_REL_TOL, abs_floor: float = 0.0,
                witness: Characteristic | None = None) -> RankReport:
    """Count singular values above ``max(rel_tol * s_1, abs_floor)``."""
    M = np.atleast_2d(np.asarray(M, dtype=complex))
    sv = np.linalg.svd(M, compute_uv=False) if M.size else np.zeros(0)
    sv = tuple(float(s) for s in sorted(sv, reverse=True))
    s1 = sv[0] if sv else 0.0
    thr = max(rel_tol * s1, abs_floor)
    rank = sum(1 for s in sv if s > thr)
    return RankReport(M.shape, sv, rank, rel_tol, abs_floor, witness)
