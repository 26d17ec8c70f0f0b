"""Points of the theta-null divisor built from direct sums.

A product of ``k`` odd genus-1 (or odd genus-2) factors and even factors
vanishes at the origin to order ``k``; its Hessian there has rank 2 when
``k = 2`` and vanishes when ``k >= 3``.
"""
from __future__ import annotations

import numpy as np

from thetanull import Characteristic, direct_sum
from thetanull.characteristics import enumerate_odd
from thetanull.sampling import random_period

CH = Characteristic.parse


def _diag(rng, g):
    out = random_period(rng, 1)
    for _ in range(g - 1):
        out = direct_sum(out, random_period(rng, 1))
    return out


def constructed_points(seed: int = 0):
    """20 ``(tau, ch, expected_hessian_rank)`` triples, g = 2..4."""
    rng = np.random.default_rng(seed)
    pts = []
    for _ in range(8):
        pts.append((_diag(rng, 2), CH("11:11"), 2))
    odd2 = enumerate_odd(2)
    for i in range(6):
        tau = direct_sum(random_period(rng, 1), random_period(rng, 2))
        pts.append((tau, CH("1:1") + odd2[i], 2))
    for _ in range(4):
        pts.append((_diag(rng, 3), CH("110:110"), 2))
    for _ in range(2):
        pts.append((_diag(rng, 4), CH("1111:1111"), 0))
    return pts
