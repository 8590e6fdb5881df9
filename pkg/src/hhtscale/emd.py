"""Envelope-sifting decomposition into oscillatory components.

A series is split into a small stack of zero-mean oscillations ("components"
below, stored newest-frequency first) plus a non-oscillating residue.  One
sift step subtracts the mean of the upper/lower extrema envelopes (natural
cubic splines through mirrored extrema); a component is accepted when the
normalized step-to-step change

    sd = sum((h_prev - h_new)**2) / sum(h_prev**2)

drops below a threshold *and* the candidate is properly oscillatory (every
local maximum positive, every local minimum negative), or after a fixed
iteration budget.  Each accepted component is then centered: its arithmetic
mean is moved into the residue, so components oscillate around zero exactly.
Extraction stops when the residue has fewer than four extrema, when
envelopes can no longer be built, or at the component cap.

The additive bookkeeping is exact by construction: components are obtained
by running subtraction from the input, so ``sum(imfs) + residue``
reconstructs the input to float rounding.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from ._kernels import get_backend, mirror_extrema

logger = logging.getLogger(__name__)

__all__ = [
    "EmdConfig",
    "ImfDecomposition",
    "InsufficientExtremaError",
    "decompose",
    "default_max_imfs",
    "envelope_mean",
    "sift_once",
]

STOP_SD = "sd-threshold"
STOP_MAX_ITER = "max-iterations"
STOP_EXTREMA = "extrema-exhausted"

MIN_LENGTH = 16


class InsufficientExtremaError(ValueError):
    """The series lacks the two maxima and two minima envelopes need."""


def default_max_imfs(length: int) -> int:
    """Component cap used when the config leaves it unset: ceil(log2 T) + 2."""
    return int(math.ceil(math.log2(length))) + 2


@dataclass(frozen=True)
class EmdConfig:
    """Sifting parameters.

    max_imfs=None resolves to ``default_max_imfs(len(series))`` at call time.
    """

    sd_threshold: float = 0.2
    max_sift_iterations: int = 100
    max_imfs: int | None = None
    boundary_mirror_extrema: int = 2

    def __post_init__(self):
        if not (self.sd_threshold > 0.0):
            raise ValueError("sd_threshold must be positive")
        if self.max_sift_iterations < 1:
            raise ValueError("max_sift_iterations must be >= 1")
        if self.max_imfs is not None and self.max_imfs < 1:
            raise ValueError("max_imfs must be >= 1 when given")
        if self.boundary_mirror_extrema < 1:
            raise ValueError("boundary_mirror_extrema must be >= 1")


@dataclass
class ImfDecomposition:
    """Result of :func:`decompose`.

    imfs : (n_imfs, length) array, highest-frequency component first.
    residue : (length,) array; input minus the component sum.
    sift_counts : sift iterations spent per component.
    stop_reasons : per component, one of "sd-threshold", "max-iterations",
        "extrema-exhausted".
    """

    imfs: np.ndarray
    residue: np.ndarray
    sift_counts: list[int]
    stop_reasons: list[str]

    @property
    def n_imfs(self) -> int:
        return self.imfs.shape[0]

    @property
    def length(self) -> int:
        return self.residue.shape[0]

    def reconstruct(self) -> np.ndarray:
        """Sum of components plus residue (should reproduce the input)."""
        return self.imfs.sum(axis=0) + self.residue


def _values(series) -> np.ndarray:
    return np.ascontiguousarray(getattr(series, "values", series), dtype=np.float64)


def envelope_mean(x, nbsym: int = 2, backend=None) -> np.ndarray:
    """Mean of the upper/lower extrema envelopes of ``x``.

    Raises
    ------
    InsufficientExtremaError
        When ``x`` has fewer than two maxima or two minima.
    """
    kernel = backend if backend is not None else get_backend()
    x = _values(x)
    max_pos, max_val, min_pos, min_val = kernel.find_extrema(x)
    if len(max_pos) < 2 or len(min_pos) < 2:
        raise InsufficientExtremaError(
            f"need >= 2 maxima and >= 2 minima, found {len(max_pos)}/{len(min_pos)}"
        )
    tmax, vmax, tmin, vmin = mirror_extrema(max_pos, max_val, min_pos, min_val, x, nbsym)
    n = x.shape[0]
    upper = kernel.spline_eval(tmax, vmax, n)
    lower = kernel.spline_eval(tmin, vmin, n)
    return 0.5 * (upper + lower)


def sift_once(h, config: EmdConfig | None = None, backend=None):
    """One sift step: subtract the mean envelope.

    Returns
    -------
    (h_new, sd) : (ndarray, float)
        The sifted series and the normalized squared change.
    """
    cfg = config or EmdConfig()
    h = _values(h)
    env = envelope_mean(h, cfg.boundary_mirror_extrema, backend)
    h_new = h - env
    denom = float(np.dot(h, h))
    sd = float(np.dot(env, env)) / denom if denom > 0.0 else 0.0
    return h_new, sd


def decompose(series, config: EmdConfig | None = None, backend=None) -> ImfDecomposition:
    """Decompose a series into oscillatory components plus a residue.

    ``series`` may be a TimeSeries or any 1-D float sequence of length >= 16.
    Deterministic: identical input and config give bit-identical output.
    """
    cfg = config or EmdConfig()
    kernel = backend if backend is not None else get_backend()
    x = _values(series)
    if x.ndim != 1:
        raise ValueError("decompose expects a one-dimensional series")
    if x.shape[0] < MIN_LENGTH:
        raise ValueError(f"series too short for decomposition (need >= {MIN_LENGTH})")
    if not np.all(np.isfinite(x)):
        raise ValueError("series contains non-finite values")
    max_imfs = cfg.max_imfs if cfg.max_imfs is not None else default_max_imfs(x.shape[0])
    nbsym = cfg.boundary_mirror_extrema

    residue = x.copy()
    imfs: list[np.ndarray] = []
    sift_counts: list[int] = []
    stop_reasons: list[str] = []
    # scale-relative floor: once the residue is float dust next to the input,
    # further "components" would be rounding noise
    tiny = 1e-24 * float(np.dot(x, x))

    while len(imfs) < max_imfs:
        if float(np.dot(residue, residue)) <= tiny:
            break
        max_pos, max_val, min_pos, min_val = kernel.find_extrema(residue)
        if len(max_pos) + len(min_pos) < 4 or len(max_pos) < 2 or len(min_pos) < 2:
            break  # residue no longer oscillates (or envelopes are impossible)

        h = residue.copy()
        count = 0
        reason = STOP_MAX_ITER
        for _ in range(cfg.max_sift_iterations):
            max_pos, max_val, min_pos, min_val = kernel.find_extrema(h)
            if len(max_pos) < 2 or len(min_pos) < 2:
                reason = STOP_EXTREMA
                break
            # A finished component swings through zero everywhere: maxima
            # above it, minima below.  Without this gate broadband noise
            # converges after a sift or two and collapses into too few
            # components.
            oscillatory = bool(max_val.min() > 0.0 and min_val.max() < 0.0)
            tmax, vmax, tmin, vmin = mirror_extrema(
                max_pos, max_val, min_pos, min_val, h, nbsym
            )
            upper = kernel.spline_eval(tmax, vmax, h.shape[0])
            lower = kernel.spline_eval(tmin, vmin, h.shape[0])
            env = 0.5 * (upper + lower)
            # sd compares the pre-step series with the post-step one; the
            # difference is exactly the envelope mean just removed
            denom = float(np.dot(h, h))
            h = h - env
            count += 1
            sd = float(np.dot(env, env)) / denom if denom > 0.0 else 0.0
            if oscillatory and sd < cfg.sd_threshold:
                reason = STOP_SD
                break
        if count == 0:
            break  # first envelope failed: leave the content in the residue
        h -= h.mean()  # the component's offset belongs to the residue
        imfs.append(h)
        sift_counts.append(count)
        stop_reasons.append(reason)
        residue = residue - h

    stack = np.array(imfs) if imfs else np.empty((0, x.shape[0]), dtype=np.float64)
    return ImfDecomposition(
        imfs=stack, residue=residue, sift_counts=sift_counts, stop_reasons=stop_reasons
    )
