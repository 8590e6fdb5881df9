"""Pure numpy/scipy implementation of the sift kernels.

Used when the compiled extension is unavailable (or forced via the
``HHTSCALE_BACKEND=python`` environment variable).  The contract is shared
with the compiled backend:

* ``find_extrema`` — strict local extrema; a run of equal samples counts
  once, at the floor-midpoint of the run; series endpoints never qualify.
* ``spline_eval`` — natural cubic spline through the given knots evaluated
  on the integer grid ``0 .. n_out - 1`` (two knots degrade to a line).
"""

import numpy as np
from scipy.interpolate import CubicSpline

name = "python"

__all__ = ["find_extrema", "spline_eval", "name"]


def find_extrema(x):
    """Locate local maxima/minima of a 1-D array.

    Returns
    -------
    (max_pos, max_val, min_pos, min_val)
        Integer positions (ascending) and sample values.
    """
    x = np.ascontiguousarray(x, dtype=np.float64)
    d = np.diff(x)
    nz = np.flatnonzero(d)
    empty_i = np.empty(0, dtype=np.intp)
    empty_f = np.empty(0, dtype=np.float64)
    if nz.size < 2:
        return empty_i, empty_f, empty_i.copy(), empty_f.copy()
    s = np.sign(d[nz])
    j = np.flatnonzero(s[:-1] != s[1:])
    if j.size == 0:
        return empty_i, empty_f, empty_i.copy(), empty_f.copy()
    mid = (nz[j] + 1 + nz[j + 1]) // 2
    rising = s[j] > 0
    max_pos = mid[rising].astype(np.intp)
    min_pos = mid[~rising].astype(np.intp)
    return max_pos, x[max_pos], min_pos, x[min_pos]


def spline_eval(knot_t, knot_v, n_out):
    """Natural cubic spline through (knot_t, knot_v) sampled at 0..n_out-1."""
    knot_t = np.asarray(knot_t, dtype=np.float64)
    knot_v = np.asarray(knot_v, dtype=np.float64)
    if knot_t.shape[0] < 2:
        raise ValueError("spline_eval needs at least two knots")
    grid = np.arange(n_out, dtype=np.float64)
    if knot_t.shape[0] == 2:
        slope = (knot_v[1] - knot_v[0]) / (knot_t[1] - knot_t[0])
        return knot_v[0] + slope * (grid - knot_t[0])
    spline = CubicSpline(knot_t, knot_v, bc_type="natural", extrapolate=True)
    return spline(grid)
