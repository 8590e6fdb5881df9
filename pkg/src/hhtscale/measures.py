"""Per-sample scaling and complexity measures over a spectral track.

At every time step the components supply paired observations
(amplitude a_k, period tau_k).  Regressing ln a on ln tau across components
yields a local scaling exponent (the slope) — amplitude growing with period
as a power law — together with the regression R^2 and the number of points
used.  A rolling variant smooths amplitudes and periods with a trailing
window first.  The same amplitudes, turned into a normalized energy
distribution across components, give a Shannon-entropy complexity: 0 when
one component holds all energy, ln(n) when energy spreads evenly.

A whole-series comparator is included: the q=1 structure-function scaling
exponent (mean absolute increment vs lag in log-log).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .spectral import SpectralTrack

__all__ = [
    "ComplexityTrack",
    "GheResult",
    "ScalingTrack",
    "complexity",
    "generalized_hurst_q1",
    "measure_correlation",
    "rolling_scaling_exponent",
    "scaling_exponent",
]

MIN_REGRESSION_POINTS = 3


@dataclass
class ScalingTrack:
    """Local scaling exponent per sample.

    h_star / r_squared are NaN where undefined (fewer than three usable
    components, or degenerate spread); ``defined`` carries the same
    information as a boolean mask; ``points_used`` counts the components
    entering each regression.  ``window`` records the trailing-average width
    of the rolling variant (None for the plain per-sample measure).
    """

    h_star: np.ndarray
    r_squared: np.ndarray
    points_used: np.ndarray
    defined: np.ndarray
    window: int | None = None

    @property
    def length(self) -> int:
        return self.h_star.shape[0]

    def grand_mean(self) -> float:
        """Mean of the exponent over defined samples."""
        if not self.defined.any():
            return float("nan")
        return float(self.h_star[self.defined].mean())

    def grand_std(self) -> float:
        """Sample standard deviation over defined samples (ddof=1)."""
        if self.defined.sum() < 2:
            return float("nan")
        return float(self.h_star[self.defined].std(ddof=1))


@dataclass
class ComplexityTrack:
    """Entropy of the component energy distribution per sample."""

    c_star: np.ndarray
    defined: np.ndarray
    n_imfs: int

    @property
    def length(self) -> int:
        return self.c_star.shape[0]

    def grand_mean(self) -> float:
        if not self.defined.any():
            return float("nan")
        return float(self.c_star[self.defined].mean())


@dataclass(frozen=True)
class GheResult:
    """q=1 structure-function scaling fit."""

    h_g: float
    r_squared: float
    tau_max: int


def _column_regression(ln_a, ln_tau, valid):
    """Per-column OLS of ln_a on ln_tau over rows flagged valid.

    Returns (slope, r_squared, count, defined); slope/r2 are NaN where
    undefined.
    """
    count = valid.sum(axis=0)
    safe = np.maximum(count, 1)
    xa = np.where(valid, ln_tau, 0.0)
    ya = np.where(valid, ln_a, 0.0)
    mean_x = xa.sum(axis=0) / safe
    mean_y = ya.sum(axis=0) / safe
    dx = np.where(valid, ln_tau - mean_x, 0.0)
    dy = np.where(valid, ln_a - mean_y, 0.0)
    sxx = (dx * dx).sum(axis=0)
    syy = (dy * dy).sum(axis=0)
    sxy = (dx * dy).sum(axis=0)

    defined = (count >= MIN_REGRESSION_POINTS) & (sxx > 0.0)
    slope = np.full(ln_a.shape[1], np.nan)
    r2 = np.full(ln_a.shape[1], np.nan)
    np.divide(sxy, sxx, out=slope, where=defined)
    denom = sxx * syy
    ok = defined & (denom > 0.0)
    np.divide(sxy * sxy, denom, out=r2, where=ok)
    np.clip(r2, 0.0, 1.0, out=r2)
    # zero spread in ln_a: slope 0, no explainable variance
    r2[defined & ~ok] = 0.0
    return slope, r2, count.astype(np.intp), defined


def scaling_exponent(track: SpectralTrack) -> ScalingTrack:
    """Per-sample slope of ln(amplitude) against ln(period) across components.

    Components enter a sample's regression when flagged valid there and the
    amplitude is positive.  Fewer than three points, or all periods equal,
    leave the sample undefined.
    """
    if track.n_imfs < MIN_REGRESSION_POINTS:
        raise ValueError(
            f"scaling exponent needs >= {MIN_REGRESSION_POINTS} components, "
            f"got {track.n_imfs}"
        )
    valid = track.validity & (track.amplitudes > 0.0)
    ln_a = np.log(np.where(valid, track.amplitudes, 1.0))
    ln_tau = np.log(np.where(valid, track.periods, 1.0))
    slope, r2, count, defined = _column_regression(ln_a, ln_tau, valid)
    slope[~defined] = np.nan
    r2[~defined] = np.nan
    return ScalingTrack(h_star=slope, r_squared=r2, points_used=count, defined=defined)


def rolling_scaling_exponent(track: SpectralTrack, window: int) -> ScalingTrack:
    """Scaling exponent from trailing moving averages of amplitude and period.

    Each component's amplitude and period are averaged over the valid
    samples among the last ``window`` ones; the regression then proceeds as
    in :func:`scaling_exponent`.  Samples before the first full window are
    undefined.
    """
    length = track.length
    if not (2 <= window <= length):
        raise ValueError("window must be within [2, series length]")
    valid = (track.validity & (track.amplitudes > 0.0)).astype(np.float64)
    amp = np.where(valid > 0, track.amplitudes, 0.0)
    per = np.where(valid > 0, track.periods, 0.0)

    def trailing_sum(a):
        cs = np.cumsum(a, axis=1)
        out = cs.copy()
        out[:, window:] = cs[:, window:] - cs[:, :-window]
        return out

    counts = trailing_sum(valid)
    amp_bar = np.full_like(amp, np.nan)
    per_bar = np.full_like(per, np.nan)
    have = counts > 0
    np.divide(trailing_sum(amp), counts, out=amp_bar, where=have)
    np.divide(trailing_sum(per), counts, out=per_bar, where=have)

    usable = have & (amp_bar > 0.0)
    usable[:, : window - 1] = False  # incomplete trailing windows
    ln_a = np.log(np.where(usable, amp_bar, 1.0))
    ln_tau = np.log(np.where(usable, per_bar, 1.0))
    slope, r2, count, defined = _column_regression(ln_a, ln_tau, usable)
    slope[~defined] = np.nan
    r2[~defined] = np.nan
    return ScalingTrack(
        h_star=slope, r_squared=r2, points_used=count, defined=defined, window=window
    )


def complexity(track: SpectralTrack, weight: str = "squared") -> ComplexityTrack:
    """Shannon entropy of the component energy distribution per sample.

    ``weight="squared"`` (default) distributes by squared amplitude;
    ``weight="linear"`` by plain amplitude.  Terms with zero weight
    contribute nothing (0*ln 0 = 0).  Samples with no energy at all are
    undefined.
    """
    if weight not in ("squared", "linear"):
        raise ValueError("weight must be 'squared' or 'linear'")
    w = track.amplitudes**2 if weight == "squared" else np.abs(track.amplitudes)
    total = w.sum(axis=0)
    defined = total > 0.0
    p = np.divide(w, total, out=np.zeros_like(w), where=defined)
    terms = np.zeros_like(p)
    positive = p > 0.0
    np.multiply(p, np.log(p, out=np.zeros_like(p), where=positive), out=terms, where=positive)
    c = -terms.sum(axis=0)
    c[~defined] = np.nan
    return ComplexityTrack(c_star=c, defined=defined, n_imfs=track.n_imfs)


def generalized_hurst_q1(series, tau_max: int = 19) -> GheResult:
    """q=1 structure-function exponent of a path.

    Computes the mean absolute increment E|X(t+tau) - X(t)| for
    tau = 1..tau_max and fits a line to its log-log trend; the slope is the
    scaling exponent.
    """
    x = np.asarray(getattr(series, "values", series), dtype=np.float64)
    if x.ndim != 1:
        raise ValueError("expected a 1-D series")
    if tau_max < 2:
        raise ValueError("tau_max must be >= 2")
    if x.shape[0] < 10 * tau_max:
        raise ValueError(
            f"series too short: need >= 10*tau_max = {10 * tau_max} samples, got {x.shape[0]}"
        )
    taus = np.arange(1, tau_max + 1)
    moments = np.empty(tau_max, dtype=np.float64)
    for i, tau in enumerate(taus):
        moments[i] = np.mean(np.abs(x[tau:] - x[:-tau]))
    if np.any(moments <= 0.0):
        raise ValueError("degenerate series: zero mean absolute increment at some lag")
    lx = np.log(taus.astype(np.float64))
    ly = np.log(moments)
    dx = lx - lx.mean()
    dy = ly - ly.mean()
    sxx = float(np.dot(dx, dx))
    syy = float(np.dot(dy, dy))
    sxy = float(np.dot(dx, dy))
    slope = sxy / sxx
    r2 = 0.0 if syy == 0.0 else min(1.0, (sxy * sxy) / (sxx * syy))
    return GheResult(h_g=float(slope), r_squared=float(r2), tau_max=tau_max)


def measure_correlation(scaling: ScalingTrack, complexity_track: ComplexityTrack) -> float:
    """Pearson correlation between the two measures over jointly defined samples."""
    joint = scaling.defined & complexity_track.defined
    if joint.sum() < 2:
        raise ValueError("fewer than two jointly defined samples")
    a = scaling.h_star[joint]
    b = complexity_track.c_star[joint]
    if a.std() == 0.0 or b.std() == 0.0:
        raise ValueError("zero variance in one of the measures")
    return float(np.corrcoef(a, b)[0, 1])
