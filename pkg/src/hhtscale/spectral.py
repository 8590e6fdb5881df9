"""Instantaneous amplitude/frequency tracks of decomposed components.

Each component is paired with its Hilbert transform to form an analytic
signal; the modulus gives the instantaneous amplitude, the unwrapped phase
angle differentiates into an instantaneous frequency (radians/sample), and
oscillation periods follow as 2*pi/frequency (samples).  Samples where the
estimated frequency is non-positive — phase briefly running backwards, a
known artifact of the discrete transform — are flagged invalid, as is an
optional margin at both ends where boundary distortion dominates.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .emd import ImfDecomposition

__all__ = ["SpectralTrack", "analytic_signal", "hilbert_transform", "spectral_track"]


def analytic_signal(x) -> np.ndarray:
    """Analytic signal via the frequency-domain method.

    Forward DFT, zero the negative-frequency bins, double the positive
    bins (DC and Nyquist untouched), inverse DFT.
    """
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1:
        raise ValueError("analytic_signal expects a 1-D series")
    n = x.shape[0]
    if n < 4:
        raise ValueError("need at least 4 samples")
    if not np.all(np.isfinite(x)):
        raise ValueError("series contains non-finite values")
    spec = np.fft.fft(x)
    gain = np.zeros(n)
    gain[0] = 1.0
    if n % 2 == 0:
        gain[n // 2] = 1.0
        gain[1 : n // 2] = 2.0
    else:
        gain[1 : (n + 1) // 2] = 2.0
    return np.fft.ifft(spec * gain)


def hilbert_transform(x) -> np.ndarray:
    """Hilbert transform of a real series (imaginary part of the analytic signal)."""
    return analytic_signal(x).imag


@dataclass
class SpectralTrack:
    """Per-component instantaneous quantities, shape (n_imfs, length).

    amplitudes : analytic-signal modulus, >= 0.
    phases : unwrapped phase angle (radians).
    frequencies : phase derivative (central differences, one-sided at the
        ends), radians per sample.
    periods : 2*pi/frequency in samples where the frequency is positive,
        NaN elsewhere.
    validity : False where the frequency is non-positive or inside the
        trimmed boundary margin.
    """

    amplitudes: np.ndarray
    phases: np.ndarray
    frequencies: np.ndarray
    periods: np.ndarray
    validity: np.ndarray

    @property
    def n_imfs(self) -> int:
        return self.amplitudes.shape[0]

    @property
    def length(self) -> int:
        return self.amplitudes.shape[1]


def spectral_track(decomposition: ImfDecomposition, trim_fraction: float = 0.0) -> SpectralTrack:
    """Amplitude/frequency/period tracks for every component of a decomposition.

    The residue takes no part.  ``trim_fraction`` flags that fraction of
    samples at each end invalid (0 keeps everything).
    """
    if decomposition.n_imfs < 1:
        raise ValueError("decomposition has no oscillatory components")
    if not (0.0 <= trim_fraction < 0.5):
        raise ValueError("trim_fraction must be in [0, 0.5)")
    imfs = decomposition.imfs
    n, length = imfs.shape

    analytic = np.empty((n, length), dtype=np.complex128)
    for k in range(n):
        analytic[k] = analytic_signal(imfs[k])
    amplitudes = np.abs(analytic)
    phases = np.unwrap(np.arctan2(analytic.imag, analytic.real), axis=1)
    frequencies = np.gradient(phases, axis=1)

    positive = frequencies > 0.0
    periods = np.full_like(frequencies, np.nan)
    periods[positive] = 2.0 * np.pi / frequencies[positive]

    validity = positive.copy()
    margin = int(trim_fraction * length)
    if margin > 0:
        validity[:, :margin] = False
        validity[:, length - margin :] = False
    return SpectralTrack(
        amplitudes=amplitudes,
        phases=phases,
        frequencies=frequencies,
        periods=periods,
        validity=validity,
    )
