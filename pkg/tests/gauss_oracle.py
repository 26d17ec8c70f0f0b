"""Finite-difference oracle for the Gauss map of a genus-2 theta divisor.

Near a smooth point ``x`` the curve ``theta(tau, .) = 0`` is parametrized as
``x + u w + t(u) n`` with ``w`` tangent and ``t(u)`` found by Newton. The
Gauss map in the chart ``[grad_0 : grad_1]`` is the ratio of gradient
components; ramification means its derivative in ``u`` vanishes. Theta and
its gradient come from a plain double-precision box sum, independent of the
engine.
"""
from __future__ import annotations

import itertools

import numpy as np

BOX = 8
FD_STEP = 1e-4


def _lattice(g: int) -> np.ndarray:
    return np.array(list(itertools.product(range(-BOX, BOX + 1), repeat=g)), dtype=float)


def theta_grad(tau, x):
    tau = np.asarray(tau, dtype=complex)
    n = _lattice(tau.shape[0])
    expo = np.pi * 1j * np.einsum("ni,ij,nj->n", n, tau, n) + 2j * np.pi * n @ np.asarray(x)
    w = np.exp(expo)
    return w.sum(), (2j * np.pi * n * w[:, None]).sum(axis=0)


def _project(tau, p, normal, tol=1e-14):
    t = 0j
    for _ in range(50):
        f, d = theta_grad(tau, p + t * normal)
        df = d @ normal
        step = f / df
        t -= step
        if abs(step) < tol:
            break
    return p + t * normal


def gauss_ratio_derivative(tau, x, h: float = FD_STEP) -> tuple[complex, float]:
    """Derivative of the Gauss ratio along the divisor, and a scale for it.

    Returns ``(r'(0), scale)`` where ``r = grad_0 / grad_1`` (or its inverse,
    whichever is bounded at ``x``) and ``scale = |grad|^2 |Hess| / grad_k^2``
    makes ``|r'| / scale`` dimensionless.
    """
    x = np.asarray(x, dtype=complex)
    _, dF = theta_grad(tau, x)
    k = int(np.argmax(np.abs(dF)))
    w = np.array([-dF[1], dF[0]])
    w /= np.linalg.norm(w)
    normal = np.conj(dF) / np.vdot(dF, dF).real

    def ratio(u):
        p = _project(tau, x + u * w, normal)
        _, d = theta_grad(tau, p)
        return d[1 - k] / d[k]

    deriv = (8 * (ratio(h) - ratio(-h)) - (ratio(2 * h) - ratio(-2 * h))) / (12 * h)
    H = np.zeros((2, 2), dtype=complex)
    for j in range(2):
        e = np.zeros(2)
        e[j] = 1e-5
        H[:, j] = (theta_grad(tau, x + e)[1] - theta_grad(tau, x - e)[1]) / 2e-5
    scale = float(np.linalg.norm(H, 2)) / abs(dF[k])
    return deriv, scale


def is_ramified(tau, x, rel_tol: float = 1e-6) -> bool:
    d, scale = gauss_ratio_derivative(tau, x)
    return abs(d) <= rel_tol * scale
