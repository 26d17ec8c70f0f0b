"""Certified evaluation of theta functions with characteristics."""
from .backend import NAME as KERNEL
from .jet import (
    DEFAULT_CONFIG,
    MAX_ORDER,
    EvalConfig,
    ThetaJet,
    directional_tau_derivative,
    eval_jet,
    heat_factor,
    multi_indices,
    shift_factor,
    shift_identity_residual,
    tau_derivative,
    tau_gradient_from_jet,
    theta,
)
from .lattice import lattice_points, tail_bound, tail_model

__all__ = [
    "KERNEL",
    "DEFAULT_CONFIG",
    "MAX_ORDER",
    "EvalConfig",
    "ThetaJet",
    "directional_tau_derivative",
    "eval_jet",
    "heat_factor",
    "lattice_points",
    "multi_indices",
    "shift_factor",
    "shift_identity_residual",
    "tail_bound",
    "tail_model",
    "tau_derivative",
    "tau_gradient_from_jet",
    "theta",
]
