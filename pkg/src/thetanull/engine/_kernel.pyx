# cython: language_level=3
"""Compiled lattice-sum kernel: enumeration and accumulation in one pass."""
import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, ceil, floor, exp, cos, sin, M_PI

cnp.import_array()

cdef double INTERVAL_SLACK = 1e-9


def theta_sums(const double[:, ::1] T, const double[::1] center, double R,
               const double[::1] shift, const double[:, ::1] X, const double[:, ::1] Y,
               const double[::1] x, const double[::1] y,
               double K0, const long long[:, ::1] powers, long long max_points):
    cdef Py_ssize_t g = T.shape[0]
    cdef Py_ssize_t K = powers.shape[0]
    cdef Py_ssize_t i, j, k, level
    cdef int maxp = 0
    for k in range(K):
        for j in range(g):
            if powers[k, j] > maxp:
                maxp = <int>powers[k, j]

    cdef long long[::1] m = np.zeros(g, dtype=np.int64)
    cdef long long[::1] ub = np.zeros(g, dtype=np.int64)
    cdef double[::1] s = np.zeros(g, dtype=np.float64)
    cdef double[::1] nrm = np.zeros(g + 1, dtype=np.float64)
    cdef double[::1] n = np.zeros(g, dtype=np.float64)
    cdef double[:, ::1] pw = np.ones((g, maxp + 1), dtype=np.float64)
    cdef double[::1] acc_re = np.zeros(K, dtype=np.float64)
    cdef double[::1] acc_im = np.zeros(K, dtype=np.float64)
    cdef double R2 = R * R
    cdef double r, v, tii, quad_re, quad_im, lin_re, lin_im, re_exp, im_exp
    cdef double t_re, t_im, mono
    cdef long long count = 0
    cdef long long nexpanded = 0

    # level 0
    level = 0
    s[0] = 0.0
    r = sqrt(R2)
    tii = T[0, 0]
    m[0] = <long long>ceil((-s[0] - r) / tii - center[0] - INTERVAL_SLACK)
    ub[0] = <long long>floor((-s[0] + r) / tii - center[0] + INTERVAL_SLACK)
    nexpanded += ub[0] - m[0] + 1
    if nexpanded > max_points:
        return np.zeros(K, dtype=complex), -1

    while level >= 0:
        if m[level] > ub[level]:
            level -= 1
            if level >= 0:
                m[level] += 1
            continue
        tii = T[level, level]
        v = s[level] + tii * (m[level] + center[level])
        nrm[level + 1] = nrm[level] + v * v
        if nrm[level + 1] > R2:
            m[level] += 1
            continue
        if level < g - 1:
            level += 1
            s[level] = 0.0
            for j in range(level):
                s[level] = s[level] + T[level, j] * (m[j] + center[j])
            r = R2 - nrm[level]
            if r < 0.0:
                r = 0.0
            r = sqrt(r)
            tii = T[level, level]
            m[level] = <long long>ceil((-s[level] - r) / tii - center[level] - INTERVAL_SLACK)
            ub[level] = <long long>floor((-s[level] + r) / tii - center[level] + INTERVAL_SLACK)
            if ub[level] >= m[level]:
                nexpanded += ub[level] - m[level] + 1
            if nexpanded > max_points:
                return np.zeros(K, dtype=complex), -1
            continue

        # leaf: accumulate the term for n = m + shift
        for i in range(g):
            n[i] = m[i] + shift[i]
        quad_re = 0.0
        quad_im = 0.0
        for i in range(g):
            lin_re = 0.0
            lin_im = 0.0
            for j in range(g):
                lin_re = lin_re + X[i, j] * n[j]
                lin_im = lin_im + Y[i, j] * n[j]
            quad_re = quad_re + n[i] * lin_re
            quad_im = quad_im + n[i] * lin_im
        lin_re = 0.0
        lin_im = 0.0
        for i in range(g):
            lin_re = lin_re + n[i] * x[i]
            lin_im = lin_im + n[i] * y[i]
        re_exp = -M_PI * quad_im - 2.0 * M_PI * lin_im - K0
        im_exp = M_PI * quad_re + 2.0 * M_PI * lin_re
        t_re = exp(re_exp)
        t_im = t_re * sin(im_exp)
        t_re = t_re * cos(im_exp)
        for i in range(g):
            for j in range(1, maxp + 1):
                pw[i, j] = pw[i, j - 1] * n[i]
        for k in range(K):
            mono = 1.0
            for i in range(g):
                mono = mono * pw[i, powers[k, i]]
            acc_re[k] = acc_re[k] + mono * t_re
            acc_im[k] = acc_im[k] + mono * t_im
        count += 1
        m[level] += 1

    out = np.empty(K, dtype=complex)
    for k in range(K):
        out[k] = complex(acc_re[k], acc_im[k])
    return out, count
