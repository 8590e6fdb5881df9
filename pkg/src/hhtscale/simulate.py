"""Reference path simulators and the Monte-Carlo scaling ensemble.

Four integrated processes with known scaling behaviour:

* ``bm`` — Brownian motion (unit-variance Gaussian increments, cumsum).
* ``fbm`` — fractional Brownian motion via circulant embedding of
  fractional Gaussian noise (exact covariance, FFT-based).
* ``slm`` — stable Lévy motion: i.i.d. symmetric alpha-stable increments
  drawn by the Chambers–Mallows–Stuck transform, integrated; its
  self-similarity index is 1/alpha.
* ``arfima`` — ARFIMA(0, d, 0) noise built from the truncated MA(infinity)
  expansion, then integrated; long-memory exponent d maps to an expected
  scaling exponent of d + 1/2.

Randomness comes from numpy's counter-based Philox generator; path ``i`` of
a run seeded ``s`` always uses ``SeedSequence(s, spawn_key=(i,))``, so
ensembles are reproducible for any thread count and any path subset.
"""

from __future__ import annotations

import logging
import math
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.signal import fftconvolve

from .emd import EmdConfig, decompose
from .measures import generalized_hurst_q1, scaling_exponent
from .series import TimeSeries
from .spectral import spectral_track

logger = logging.getLogger(__name__)

__all__ = [
    "EnsembleStats",
    "SimConfig",
    "monte_carlo_ensemble",
    "rng_for_path",
    "simulate",
    "simulate_arfima",
    "simulate_bm",
    "simulate_fbm",
    "simulate_slm",
]

RNG_NAME = "philox"

PROCESSES = ("bm", "fbm", "slm", "arfima")


@dataclass(frozen=True)
class SimConfig:
    """Simulation request: process name, length, seed, and shape parameters.

    ``slm_m`` and ``slm_big_m`` are the classic stable-motion grid constants
    (kept for interface parity with the established generator; the i.i.d.
    increment construction does not consume them).  Their invariant
    ``slm_m * (slm_big_m + length)`` being a power of two is enforced for
    the slm process.
    """

    process: str
    length: int
    seed: int = 0
    paths: int = 1
    hurst: float | None = None
    alpha: float | None = None
    d: float | None = None
    slm_m: int = 128
    slm_big_m: int = 6000

    def __post_init__(self):
        if self.process not in PROCESSES:
            raise ValueError(f"unknown process {self.process!r} (one of {PROCESSES})")
        if self.length < 2:
            raise ValueError("length must be >= 2")
        if self.paths < 1:
            raise ValueError("paths must be >= 1")
        if self.process == "fbm":
            if self.hurst is None or not (0.0 < self.hurst < 1.0):
                raise ValueError("fbm requires hurst in (0, 1)")
        if self.process == "slm":
            if self.alpha is None or not (1.0 < self.alpha <= 2.0):
                raise ValueError("slm requires alpha in (1, 2]")
            grid = self.slm_m * (self.slm_big_m + self.length)
            if grid & (grid - 1) != 0:
                raise ValueError(
                    f"slm grid m*(M+length) = {grid} must be a power of two "
                    f"(m={self.slm_m}, M={self.slm_big_m}, length={self.length})"
                )
        if self.process == "arfima":
            if self.d is None or not (-0.5 < self.d < 0.5):
                raise ValueError("arfima requires d in (-0.5, 0.5)")


def rng_for_path(seed: int, path_index: int) -> np.random.Generator:
    """Independent counter-derived stream for one path of an ensemble."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(path_index,))))


def simulate_bm(length: int, rng: np.random.Generator) -> np.ndarray:
    """Brownian motion: cumulative sum of standard normal increments."""
    return np.cumsum(rng.standard_normal(length))


def _fgn_circulant(length: int, hurst: float, rng: np.random.Generator) -> np.ndarray:
    """Exact fractional Gaussian noise by circulant embedding.

    The autocovariance gamma(k) = 0.5*(|k+1|^2H - 2|k|^2H + |k-1|^2H) is
    embedded in a circulant of size 2*length whose FFT eigenvalues are
    non-negative for this covariance; complex Gaussian weights with the
    right symmetry then give two independent noise panels, of which the
    real part is kept.
    """
    n = length
    k = np.arange(n + 1, dtype=np.float64)
    two_h = 2.0 * hurst
    gamma = 0.5 * (np.abs(k + 1) ** two_h - 2.0 * np.abs(k) ** two_h + np.abs(k - 1) ** two_h)
    circ = np.concatenate([gamma, gamma[-2:0:-1]])  # size 2n, fold at lag n
    lam = np.fft.fft(circ).real
    floor = -1e-8 * lam.max()
    if lam.min() < floor:
        raise ValueError(f"circulant embedding failed: eigenvalue {lam.min():.3e} < 0")
    lam = np.clip(lam, 0.0, None)

    w0 = rng.standard_normal()
    wn = rng.standard_normal()
    u = rng.standard_normal(n - 1)
    v = rng.standard_normal(n - 1)
    weights = np.empty(2 * n, dtype=np.complex128)
    weights[0] = w0
    weights[n] = wn
    half = (u + 1j * v) / math.sqrt(2.0)
    weights[1:n] = half
    weights[n + 1 :] = np.conj(half[::-1])
    sample = np.fft.ifft(np.sqrt(lam) * weights) * math.sqrt(2.0 * n)
    return sample.real[:n]


def simulate_fbm(length: int, hurst: float, rng: np.random.Generator) -> np.ndarray:
    """Fractional Brownian motion: integrated exact fractional Gaussian noise."""
    return np.cumsum(_fgn_circulant(length, hurst, rng))


def simulate_slm(length: int, alpha: float, rng: np.random.Generator) -> np.ndarray:
    """Symmetric alpha-stable Lévy motion (standard scale, zero drift).

    Increments use the Chambers–Mallows–Stuck transform; alpha = 2 reduces
    to Gaussian increments of variance 2 (the standard-parameterization
    normal limit).
    """
    u = rng.uniform(-0.5 * np.pi, 0.5 * np.pi, size=length)
    w = rng.exponential(1.0, size=length)
    if alpha == 2.0:
        increments = 2.0 * np.sin(u) * np.sqrt(w)
    else:
        increments = (
            np.sin(alpha * u)
            / np.cos(u) ** (1.0 / alpha)
            * (np.cos((1.0 - alpha) * u) / w) ** ((1.0 - alpha) / alpha)
        )
    return np.cumsum(increments)


def _arfima_psi(d: float, count: int) -> np.ndarray:
    """MA(infinity) weights psi_j = psi_{j-1} * (j - 1 + d) / j, psi_0 = 1."""
    j = np.arange(1, count, dtype=np.float64)
    return np.concatenate([[1.0], np.cumprod((j - 1.0 + d) / j)])


def simulate_arfima(length: int, d: float, rng: np.random.Generator, burn_factor: int = 10) -> np.ndarray:
    """Integrated ARFIMA(0, d, 0) path.

    The fractional filter is truncated at ``burn_factor * length`` lags;
    every output sample sees a fully populated filter window.
    """
    truncation = burn_factor * length
    psi = _arfima_psi(d, truncation + 1)
    innovations = rng.standard_normal(length + truncation)
    noise = fftconvolve(innovations, psi, mode="full")[truncation : truncation + length]
    return np.cumsum(noise)


def simulate(config: SimConfig, path_index: int = 0) -> TimeSeries:
    """One path of the configured process as a TimeSeries."""
    rng = rng_for_path(config.seed, path_index)
    if config.process == "bm":
        values = simulate_bm(config.length, rng)
    elif config.process == "fbm":
        values = simulate_fbm(config.length, config.hurst, rng)
    elif config.process == "slm":
        values = simulate_slm(config.length, config.alpha, rng)
    else:
        values = simulate_arfima(config.length, config.d, rng)
    return TimeSeries(values, dt=1.0, label=f"{config.process}[{path_index}]")


@dataclass
class EnsembleStats:
    """Aggregates of the scaling measure over a simulated ensemble.

    mean_hstar_t : per-sample ensemble mean of the local scaling exponent.
    grand_mean / grand_std : time-and-ensemble mean and standard deviation
        over every defined sample (ddof=1).
    mean_r2 : same double average of the regression R^2.
    ghe_mean / ghe_std : ensemble mean/std of the whole-path q=1
        structure-function exponent.
    """

    config: SimConfig
    n_paths: int
    mean_hstar_t: np.ndarray
    grand_mean: float
    grand_std: float
    mean_r2: float
    ghe_mean: float
    ghe_std: float
    rng_name: str = RNG_NAME


def _ensemble_worker(args):
    config, emd_config, tau_max, trim_fraction, path_index = args
    ts = simulate(config, path_index)
    dec = decompose(ts.values, emd_config)
    track = spectral_track(dec, trim_fraction)
    scaling = scaling_exponent(track)
    ghe = generalized_hurst_q1(ts.values, tau_max)
    return scaling.h_star, scaling.r_squared, ghe.h_g


def monte_carlo_ensemble(
    config: SimConfig,
    emd_config: EmdConfig | None = None,
    tau_max: int = 19,
    trim_fraction: float = 0.0,
    threads: int = 1,
) -> EnsembleStats:
    """Simulate ``config.paths`` paths and aggregate their scaling measures.

    Results are independent of ``threads``: each path's stream derives from
    its index, and reductions run in path order.
    """
    if threads < 1:
        raise ValueError("threads must be >= 1")
    emd_config = emd_config or EmdConfig()
    jobs = [
        (config, emd_config, tau_max, trim_fraction, index)
        for index in range(config.paths)
    ]
    if threads == 1 or config.paths == 1:
        results = [_ensemble_worker(job) for job in jobs]
    else:
        chunk = max(1, config.paths // (4 * threads))
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_ensemble_worker, jobs, chunksize=chunk))

    hstar = np.stack([r[0] for r in results])  # (paths, T), NaN where undefined
    r2 = np.stack([r[1] for r in results])
    ghe = np.array([r[2] for r in results])

    with np.errstate(invalid="ignore"):
        mean_hstar_t = _nanmean_quiet(hstar, axis=0)
        grand_mean = float(_nanmean_quiet(mean_hstar_t))
        defined = ~np.isnan(hstar)
        n_defined = int(defined.sum())
        if n_defined > 1:
            dev = np.where(defined, hstar - grand_mean, 0.0)
            grand_std = float(np.sqrt((dev * dev).sum() / (n_defined - 1)))
        else:
            grand_std = float("nan")
        mean_r2 = float(_nanmean_quiet(_nanmean_quiet(r2, axis=0)))
    ghe_mean = float(ghe.mean())
    ghe_std = float(ghe.std(ddof=1)) if config.paths > 1 else float("nan")
    return EnsembleStats(
        config=config,
        n_paths=config.paths,
        mean_hstar_t=mean_hstar_t,
        grand_mean=grand_mean,
        grand_std=grand_std,
        mean_r2=mean_r2,
        ghe_mean=ghe_mean,
        ghe_std=ghe_std,
    )


def _nanmean_quiet(a, axis=None):
    """nanmean without the all-NaN RuntimeWarning (empty slices give NaN)."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", category=RuntimeWarning)
        return np.nanmean(a, axis=axis)
