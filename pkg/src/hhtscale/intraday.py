"""Trading-day panels, Brownian reference bands, and outside-band rates.

A per-sample measure track (local scaling exponent or entropy) is cut into
one row per trading day.  Averaging the rows gives the mean intraday
profile; a Monte-Carlo ensemble of Brownian-motion paths pushed through the
identical pipeline gives a 5th-95th percentile reference band for that
profile; the fraction of days falling outside the band at each intraday
index measures how unusual the observed behaviour is.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .emd import EmdConfig, decompose
from .measures import complexity, scaling_exponent
from .series import TradingCalendar
from .simulate import SimConfig, simulate
from .spectral import spectral_track

logger = logging.getLogger(__name__)

__all__ = [
    "IntradayPanel",
    "bm_reference_band",
    "measure_day_means",
    "outside_band_likelihood",
    "panelize",
]

MEASURES = ("hstar", "cstar")


@dataclass
class IntradayPanel:
    """Day-by-day view of a measure track.

    matrix : (n_days, width) array, NaN where a day is shorter than the
        widest one or where the measure itself is undefined.
    day_mean : per-index mean over days, skipping NaN.
    band_lo, band_hi : optional per-index reference band (5th/95th
        percentiles of a Brownian ensemble's day-mean curves).
    likelihood : optional per-index fraction of days outside the band.
    lunch_gap : optional (start, stop) column range marking where the
        between-session break falls; samples are contiguous across it, so
        the range is zero-width and only drives plot annotations.
    """

    matrix: np.ndarray
    day_mean: np.ndarray
    band_lo: np.ndarray | None = None
    band_hi: np.ndarray | None = None
    likelihood: np.ndarray | None = None
    lunch_gap: tuple[int, int] | None = None

    @property
    def n_days(self) -> int:
        return self.matrix.shape[0]

    @property
    def width(self) -> int:
        return self.matrix.shape[1]


def _nan_column_mean(matrix: np.ndarray) -> np.ndarray:
    """Column means over defined entries; NaN for all-undefined columns."""
    defined = ~np.isnan(matrix)
    counts = defined.sum(axis=0)
    sums = np.where(defined, matrix, 0.0).sum(axis=0)
    out = np.full(matrix.shape[1], np.nan)
    has = counts > 0
    out[has] = sums[has] / counts[has]
    return out


def panelize(track, calendar: TradingCalendar) -> IntradayPanel:
    """Cut a per-sample track into one row per trading day.

    ``track`` must cover exactly the samples the calendar indexes.  Shorter
    days are right-padded with NaN; the day-mean skips undefined entries.
    """
    values = np.asarray(track, dtype=np.float64)
    if values.ndim != 1:
        raise ValueError("panelize expects a one-dimensional track")
    coverage = calendar.day_slices[-1][1] if calendar.day_slices else 0
    if values.shape[0] != coverage:
        raise ValueError(
            f"track length {values.shape[0]} does not match calendar "
            f"coverage {coverage}"
        )
    lengths = calendar.day_lengths()
    width = int(max(lengths))
    matrix = np.full((calendar.n_days, width), np.nan)
    for row, (start, stop) in enumerate(calendar.day_slices):
        matrix[row, : stop - start] = values[start:stop]

    lunch_gap = None
    if calendar.sessions_per_day == 2 and calendar.sessions:
        first_start, first_stop = calendar.sessions[0][0]
        lunch_gap = (first_stop - first_start, first_stop - first_start)

    return IntradayPanel(
        matrix=matrix, day_mean=_nan_column_mean(matrix), lunch_gap=lunch_gap
    )


def measure_day_means(
    values,
    n_days: int,
    day_length: int,
    measure: str = "hstar",
    emd_config: EmdConfig | None = None,
    trim_fraction: float = 0.0,
) -> np.ndarray:
    """Day-mean measure profile of one path cut into equal windows.

    Runs the full pipeline (decompose, spectral tracks, measure) on the
    whole path, then windows the resulting track -- the windowing applies
    to the measure, not to the data.
    """
    if measure not in MEASURES:
        raise ValueError(f"measure must be one of {MEASURES}")
    x = np.asarray(values, dtype=np.float64)
    if x.shape[0] != n_days * day_length:
        raise ValueError("path length must equal n_days * day_length")
    dec = decompose(x, emd_config)
    track = spectral_track(dec, trim_fraction=trim_fraction)
    if measure == "hstar":
        per_sample = scaling_exponent(track).h_star
    else:
        per_sample = complexity(track).c_star
    matrix = per_sample.reshape(n_days, day_length)
    return _nan_column_mean(matrix)


def _band_worker(args) -> np.ndarray:
    seed, path_index, n_days, day_length, measure, emd_config, trim = args
    cfg = SimConfig(process="bm", length=n_days * day_length, seed=seed)
    path = simulate(cfg, path_index=path_index)
    return measure_day_means(
        path.values,
        n_days,
        day_length,
        measure=measure,
        emd_config=emd_config,
        trim_fraction=trim,
    )


def bm_reference_band(
    day_length: int,
    n_days: int,
    n_sims: int = 100,
    seed: int = 0,
    emd_config: EmdConfig | None = None,
    measure: str = "hstar",
    trim_fraction: float = 0.0,
    threads: int = 1,
) -> tuple[np.ndarray, np.ndarray]:
    """5th/95th percentile band of Brownian day-mean measure profiles.

    Each of ``n_sims`` Brownian paths of length ``n_days * day_length`` is
    pushed through the full pipeline; the band brackets the resulting
    day-mean curves per intraday index (linear-interpolated percentiles).
    """
    if n_sims < 10:
        raise ValueError("n_sims must be >= 10")
    if measure not in MEASURES:
        raise ValueError(f"measure must be one of {MEASURES}")
    jobs = [
        (seed, i, n_days, day_length, measure, emd_config, trim_fraction)
        for i in range(n_sims)
    ]
    if threads <= 1:
        curves = [_band_worker(job) for job in jobs]
    else:
        # map() preserves job order, so the stacked array (and therefore the
        # percentiles) is independent of the worker count
        with ProcessPoolExecutor(max_workers=threads) as pool:
            curves = list(pool.map(_band_worker, jobs, chunksize=max(1, n_sims // (4 * threads))))
    stack = np.vstack(curves)
    band_lo = np.nanpercentile(stack, 5.0, axis=0)
    band_hi = np.nanpercentile(stack, 95.0, axis=0)
    return band_lo, band_hi


def outside_band_likelihood(
    matrix: np.ndarray, band_lo: np.ndarray, band_hi: np.ndarray
) -> np.ndarray:
    """Per-index fraction of defined days falling outside [band_lo, band_hi].

    NaN where a column has no defined entries.
    """
    matrix = np.asarray(matrix, dtype=np.float64)
    band_lo = np.asarray(band_lo, dtype=np.float64)
    band_hi = np.asarray(band_hi, dtype=np.float64)
    if matrix.ndim != 2:
        raise ValueError("matrix must be two-dimensional (days x indices)")
    if band_lo.shape != (matrix.shape[1],) or band_hi.shape != (matrix.shape[1],):
        raise ValueError("band length must match the panel's column count")
    defined = ~np.isnan(matrix)
    counts = defined.sum(axis=0)
    below = np.where(defined, matrix < band_lo, False).sum(axis=0)
    above = np.where(defined, matrix > band_hi, False).sum(axis=0)
    out = np.full(matrix.shape[1], np.nan)
    has = counts > 0
    out[has] = (below[has] + above[has]) / counts[has]
    return out
