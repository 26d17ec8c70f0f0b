"""Pure numpy lattice-sum kernel.

Same contract and same point set as the compiled ``_kernel`` module; only
the floating-point summation order differs (numpy pairwise sums instead of a
sequential loop).
"""
import numpy as np

# widening of each coordinate interval before the exact leaf test
INTERVAL_SLACK = 1e-9


def enumerate_points(T, center, R, max_points):
    """Integer vectors ``m`` with ``|T (m + center)|^2 <= R^2``.

    Returns an ``(N, g)`` int64 array in lexicographic order, or ``None``
    if more than ``max_points`` points would be produced at any level.
    """
    T = np.asarray(T, dtype=float)
    center = np.asarray(center, dtype=float)
    g = T.shape[0]
    R2 = R * R
    pts = np.zeros((1, 0), dtype=np.int64)
    nrm = np.zeros(1)
    for i in range(g):
        s = np.zeros(pts.shape[0])
        for j in range(i):
            s = s + T[i, j] * (pts[:, j] + center[j])
        r = np.sqrt(np.maximum(R2 - nrm, 0.0))
        tii = T[i, i]
        lo = np.ceil((-s - r) / tii - center[i] - INTERVAL_SLACK).astype(np.int64)
        hi = np.floor((-s + r) / tii - center[i] + INTERVAL_SLACK).astype(np.int64)
        counts = np.maximum(hi - lo + 1, 0)
        total = int(counts.sum())
        if total > max_points:
            return None
        parent = np.repeat(np.arange(pts.shape[0]), counts)
        starts = np.cumsum(counts) - counts
        offs = np.arange(total) - np.repeat(starts, counts)
        mi = lo[parent] + offs
        v = s[parent] + tii * (mi + center[i])
        new_nrm = nrm[parent] + v * v
        keep = new_nrm <= R2
        pts = np.concatenate([pts[parent][keep], mi[keep, None]], axis=1)
        nrm = new_nrm[keep]
    return pts


def theta_sums(T, center, R, shift, X, Y, x, y, K0, powers, max_points):
    """Sum ``prod_j n_j**powers[k, j] * exp(pi i [n tau n + 2 n (x + i y)] - K0)``.

    ``n = m + shift`` runs over the lattice points returned by
    :func:`enumerate_points`. Returns ``(sums, count)``; ``count`` is -1
    when the point budget is exceeded.
    """
    pts = enumerate_points(T, center, R, max_points)
    K = powers.shape[0]
    if pts is None:
        return np.zeros(K, dtype=complex), -1
    n = pts + np.asarray(shift, dtype=float)
    quad_im = np.einsum("pi,ij,pj->p", n, Y, n)
    quad_re = np.einsum("pi,ij,pj->p", n, X, n)
    re_exp = -np.pi * quad_im - 2 * np.pi * (n @ y) - K0
    im_exp = np.pi * quad_re + 2 * np.pi * (n @ x)
    term = np.exp(re_exp) * (np.cos(im_exp) + 1j * np.sin(im_exp))
    sums = np.empty(K, dtype=complex)
    for k in range(K):
        mono = np.prod(n ** powers[k], axis=1)
        sums[k] = np.sum(mono * term)
    return sums, pts.shape[0]
