"""Riemann theta functions with characteristics on the Siegel upper half-space.

Subpackages and modules
-----------------------
siegel
    Period matrices, Sp(2g, Z) and its congruence subgroups.
characteristics
    Theta characteristics, parity, half-periods.
engine
    Lattice-sum evaluation of theta jets with certified truncation error.
strata
    Theta constants, the operator D and the theta-null rank strata.
gauss
    Bordered Hessians, the form eta and Gauss-map ramification.
sing
    Jacobians of the singularity schemes S and S_null.
"""
from .characteristics import Characteristic, enumerate_even, enumerate_odd, half_period, parity
from .engine import EvalConfig, ThetaJet, eval_jet
from .siegel import PeriodMatrix, SymplecticElement, act, act_char, direct_sum, validate_period

__version__ = "0.1.0"

__all__ = [
    "Characteristic",
    "EvalConfig",
    "PeriodMatrix",
    "SymplecticElement",
    "ThetaJet",
    "act",
    "act_char",
    "direct_sum",
    "enumerate_even",
    "enumerate_odd",
    "eval_jet",
    "half_period",
    "parity",
    "validate_period",
]
