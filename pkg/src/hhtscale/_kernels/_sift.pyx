# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled sift kernels: extrema scan and natural-spline envelope evaluation.

Same contract as ``numpy_backend`` (see that module for the semantics); this
version exists because the sift loop is the hot path of every decomposition
and Monte-Carlo run.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()

name = "compiled"


def find_extrema(x):
    """Locate local maxima/minima of a 1-D array (plateaus count once)."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] xa = np.ascontiguousarray(x, dtype=np.float64)
    cdef Py_ssize_t n = xa.shape[0]
    cdef cnp.ndarray[cnp.intp_t, ndim=1] max_buf = np.empty(n // 2 + 1, dtype=np.intp)
    cdef cnp.ndarray[cnp.intp_t, ndim=1] min_buf = np.empty(n // 2 + 1, dtype=np.intp)
    cdef Py_ssize_t nmax = 0, nmin = 0
    cdef Py_ssize_t i, last = -1
    cdef int last_sign = 0, s
    cdef double d
    for i in range(n - 1):
        d = xa[i + 1] - xa[i]
        if d == 0.0:
            continue
        s = 1 if d > 0.0 else -1
        if last_sign == 1 and s == -1:
            max_buf[nmax] = (last + 1 + i) // 2
            nmax += 1
        elif last_sign == -1 and s == 1:
            min_buf[nmin] = (last + 1 + i) // 2
            nmin += 1
        last_sign = s
        last = i
    max_pos = np.asarray(max_buf[:nmax]).copy()
    min_pos = np.asarray(min_buf[:nmin]).copy()
    xnp = np.asarray(xa)
    return max_pos, xnp[max_pos], min_pos, xnp[min_pos]


def spline_eval(knot_t, knot_v, Py_ssize_t n_out):
    """Natural cubic spline through (knot_t, knot_v) sampled at 0..n_out-1."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] t = np.ascontiguousarray(knot_t, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] v = np.ascontiguousarray(knot_v, dtype=np.float64)
    cdef Py_ssize_t k = t.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(n_out, dtype=np.float64)
    cdef Py_ssize_t i, idx, seg, cur
    cdef double slope, tt, d, w, r, bb
    if k < 2:
        raise ValueError("spline_eval needs at least two knots")
    if k == 2:
        slope = (v[1] - v[0]) / (t[1] - t[0])
        for i in range(n_out):
            out[i] = v[0] + slope * (<double> i - t[0])
        return out

    # Natural spline: solve the tridiagonal system for the second
    # derivatives m[1..k-2] (m[0] = m[k-1] = 0) with the Thomas algorithm.
    cdef cnp.ndarray[cnp.float64_t, ndim=1] h = np.empty(k - 1, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] m = np.zeros(k, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] cp = np.empty(k - 2, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] dp = np.empty(k - 2, dtype=np.float64)
    for i in range(k - 1):
        h[i] = t[i + 1] - t[i]
    for idx in range(k - 2):
        i = idx + 1
        r = 6.0 * ((v[i + 1] - v[i]) / h[i] - (v[i] - v[i - 1]) / h[i - 1])
        bb = 2.0 * (h[i - 1] + h[i])
        if idx == 0:
            cp[0] = h[i] / bb
            dp[0] = r / bb
        else:
            w = bb - h[i - 1] * cp[idx - 1]
            cp[idx] = h[i] / w
            dp[idx] = (r - h[i - 1] * dp[idx - 1]) / w
    m[k - 2] = dp[k - 3]
    for idx in range(k - 4, -1, -1):
        m[idx + 1] = dp[idx] - cp[idx] * m[idx + 2]

    # Piecewise evaluation on the integer grid; the grid is ascending, so a
    # single forward sweep over segments suffices.
    cdef double c0, c1, c2, c3, hseg
    seg = 0
    cur = -1
    c0 = c1 = c2 = c3 = 0.0
    for i in range(n_out):
        tt = <double> i
        while seg < k - 2 and tt > t[seg + 1]:
            seg += 1
        if seg != cur:
            hseg = h[seg]
            c0 = v[seg]
            c1 = (v[seg + 1] - v[seg]) / hseg - hseg * (2.0 * m[seg] + m[seg + 1]) / 6.0
            c2 = m[seg] / 2.0
            c3 = (m[seg + 1] - m[seg]) / (6.0 * hseg)
            cur = seg
        d = tt - t[seg]
        out[i] = c0 + d * (c1 + d * (c2 + d * c3))
    return out
