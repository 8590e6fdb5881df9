"""Boundary handling shared by the sift backends.

Envelope splines need knots beyond both ends of the data, otherwise the
envelopes sag toward the first/last extremum and the decomposition leaks
low-frequency error into every component.  The classic cure is to mirror a
few extrema past each end.  The rules below follow the widely used scheme
from Rilling's reference implementation:

* normally extrema are reflected about the first (last) extremum;
* when the boundary sample pokes beyond the first (last) opposite extremum,
  the reflection axis moves to the boundary sample itself, which then also
  enters as an envelope knot;
* if the mirrored knots still fail to reach past the boundary, the axis is
  moved to the boundary and the reflection is redone.

All arrays here are small (O(mirror count)), so this stays in plain numpy
for both backends.
"""

import numpy as np

__all__ = ["mirror_extrema"]


def _tail(arr, count):
    """Last `count` elements (empty when count <= 0)."""
    if count <= 0:
        return arr[:0]
    return arr[-count:]


def mirror_extrema(max_pos, max_val, min_pos, min_val, x, nbsym):
    """Extend extrema past both series ends by mirror reflection.

    Parameters
    ----------
    max_pos, max_val : ndarray
        Positions (ascending ints) and values of the local maxima.
    min_pos, min_val : ndarray
        Same for the local minima.
    x : ndarray
        The series being sifted (only the boundary samples are read).
    nbsym : int
        Number of extrema to mirror on each side.

    Returns
    -------
    (tmax, vmax, tmin, vmin) : tuple of float64 ndarrays
        Strictly ascending knot positions/values for the upper and lower
        envelope splines, covering [0, len(x) - 1].
    """
    if len(max_pos) < 2 or len(min_pos) < 2:
        raise ValueError("mirror_extrema needs at least two maxima and two minima")
    if nbsym < 1:
        raise ValueError("nbsym must be >= 1")

    max_pos = np.asarray(max_pos, dtype=np.float64)
    min_pos = np.asarray(min_pos, dtype=np.float64)
    max_val = np.asarray(max_val, dtype=np.float64)
    min_val = np.asarray(min_val, dtype=np.float64)
    end = float(len(x) - 1)

    # --- left end ------------------------------------------------------
    if max_pos[0] < min_pos[0]:
        if x[0] > min_val[0]:
            # reflect about the first maximum
            lmax_p, lmax_v = max_pos[1:nbsym + 1][::-1], max_val[1:nbsym + 1][::-1]
            lmin_p, lmin_v = min_pos[:nbsym][::-1], min_val[:nbsym][::-1]
            lsym = max_pos[0]
        else:
            # boundary sample acts as a minimum; reflect about the boundary
            lmax_p, lmax_v = max_pos[:nbsym][::-1], max_val[:nbsym][::-1]
            lmin_p = np.append(min_pos[:nbsym - 1][::-1], 0.0)
            lmin_v = np.append(min_val[:nbsym - 1][::-1], x[0])
            lsym = 0.0
    else:
        if x[0] < max_val[0]:
            # reflect about the first minimum
            lmax_p, lmax_v = max_pos[:nbsym][::-1], max_val[:nbsym][::-1]
            lmin_p, lmin_v = min_pos[1:nbsym + 1][::-1], min_val[1:nbsym + 1][::-1]
            lsym = min_pos[0]
        else:
            # boundary sample acts as a maximum
            lmax_p = np.append(max_pos[:nbsym - 1][::-1], 0.0)
            lmax_v = np.append(max_val[:nbsym - 1][::-1], x[0])
            lmin_p, lmin_v = min_pos[:nbsym][::-1], min_val[:nbsym][::-1]
            lsym = 0.0

    tl_max = 2.0 * lsym - lmax_p
    tl_min = 2.0 * lsym - lmin_p
    if tl_min[0] > 0.0 or tl_max[0] > 0.0:
        # mirrored knots do not reach the boundary; redo about the boundary
        if lsym == max_pos[0]:
            lmax_p, lmax_v = max_pos[:nbsym][::-1], max_val[:nbsym][::-1]
        else:
            lmin_p, lmin_v = min_pos[:nbsym][::-1], min_val[:nbsym][::-1]
        tl_max = -lmax_p
        tl_min = -lmin_p

    # --- right end -----------------------------------------------------
    if max_pos[-1] < min_pos[-1]:
        if x[-1] < max_val[-1]:
            # reflect about the last minimum
            rmax_p, rmax_v = _tail(max_pos, nbsym)[::-1], _tail(max_val, nbsym)[::-1]
            rmin_p, rmin_v = _tail(min_pos[:-1], nbsym)[::-1], _tail(min_val[:-1], nbsym)[::-1]
            rsym = min_pos[-1]
        else:
            # boundary sample acts as a maximum
            rmax_p = np.append(end, _tail(max_pos, nbsym - 1)[::-1])
            rmax_v = np.append(x[-1], _tail(max_val, nbsym - 1)[::-1])
            rmin_p, rmin_v = _tail(min_pos, nbsym)[::-1], _tail(min_val, nbsym)[::-1]
            rsym = end
    else:
        if x[-1] > min_val[-1]:
            # reflect about the last maximum
            rmax_p, rmax_v = _tail(max_pos[:-1], nbsym)[::-1], _tail(max_val[:-1], nbsym)[::-1]
            rmin_p, rmin_v = _tail(min_pos, nbsym)[::-1], _tail(min_val, nbsym)[::-1]
            rsym = max_pos[-1]
        else:
            # boundary sample acts as a minimum
            rmax_p, rmax_v = _tail(max_pos, nbsym)[::-1], _tail(max_val, nbsym)[::-1]
            rmin_p = np.append(end, _tail(min_pos, nbsym - 1)[::-1])
            rmin_v = np.append(x[-1], _tail(min_val, nbsym - 1)[::-1])
            rsym = end

    tr_max = 2.0 * rsym - rmax_p
    tr_min = 2.0 * rsym - rmin_p
    if tr_min[-1] < end or tr_max[-1] < end:
        if rsym == max_pos[-1]:
            rmax_p, rmax_v = _tail(max_pos, nbsym)[::-1], _tail(max_val, nbsym)[::-1]
        else:
            rmin_p, rmin_v = _tail(min_pos, nbsym)[::-1], _tail(min_val, nbsym)[::-1]
        tr_max = 2.0 * end - rmax_p
        tr_min = 2.0 * end - rmin_p

    tmax = np.concatenate([tl_max, max_pos, tr_max])
    vmax = np.concatenate([lmax_v, max_val, rmax_v])
    tmin = np.concatenate([tl_min, min_pos, tr_min])
    vmin = np.concatenate([lmin_v, min_val, rmin_v])

    if tmax[0] > 0.0 or tmax[-1] < end or tmin[0] > 0.0 or tmin[-1] < end:
        raise RuntimeError("mirror padding failed to cover the series")
    if np.any(np.diff(tmax) <= 0.0) or np.any(np.diff(tmin) <= 0.0):
        raise RuntimeError("mirror padding produced non-increasing knots")
    return tmax, vmax, tmin, vmin
