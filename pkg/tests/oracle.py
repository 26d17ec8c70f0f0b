"""Extended-precision box-summation oracle for theta functions.

Sums every ``m`` with ``|m_i| <= box`` at ``dps`` decimal digits. It shares
no code with the engine: no ellipsoid enumeration, no tail model.
"""
from __future__ import annotations

import itertools

import mpmath as mp
import numpy as np


def _mpc_matrix(tau):
    t = np.asarray(tau, dtype=complex)
    return [[mp.mpc(t[i, j].real, t[i, j].imag) for j in range(t.shape[1])] for i in range(t.shape[0])]


def theta_partials(tau, z, eps, delta, alphas=((),), box: int = 20, dps: int = 50):
    """``{alpha: d^alpha theta[eps, delta](tau, z)}`` as ``mpc`` values.

    ``alpha`` is a tuple of coordinate indices (``(0, 1)`` is ``d^2/dz_0 dz_1``).
    """
    with mp.workdps(dps):
        t = _mpc_matrix(tau)
        g = len(t)
        zz = [mp.mpc(complex(v).real, complex(v).imag) for v in (np.zeros(g) if z is None else z)]
        shift = [zz[i] + mp.mpf(delta[i]) / 2 for i in range(g)]
        half = [mp.mpf(e) / 2 for e in eps]
        pi_i = mp.mpc(0, 1) * mp.pi
        two_pi_i = 2 * pi_i
        sums = {a: mp.mpc(0) for a in alphas}
        rng = range(-box, box + 1)
        for m in itertools.product(rng, repeat=g):
            n = [m[i] + half[i] for i in range(g)]
            q = mp.mpc(0)
            for i in range(g):
                q += n[i] * n[i] * t[i][i]
                for j in range(i + 1, g):
                    q += 2 * n[i] * n[j] * t[i][j]
            lin = sum(n[i] * shift[i] for i in range(g))
            term = mp.exp(pi_i * q + two_pi_i * lin)
            for a in alphas:
                f = term
                for idx in a:
                    f *= two_pi_i * n[idx]
                sums[a] += f
        return sums


def theta(tau, z, eps, delta, box: int = 20, dps: int = 50) -> complex:
    return complex(theta_partials(tau, z, eps, delta, ((),), box, dps)[()])


def hessian(tau, z, eps, delta, box: int = 20, dps: int = 50) -> np.ndarray:
    g = np.asarray(tau).shape[0]
    alphas = [(i, j) for i in range(g) for j in range(i, g)]
    p = theta_partials(tau, z, eps, delta, alphas, box, dps)
    H = np.zeros((g, g), dtype=complex)
    for i, j in alphas:
        H[i, j] = H[j, i] = complex(p[(i, j)])
    return H
