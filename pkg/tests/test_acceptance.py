"""Acceptance suite: the quantitative and property-based release gates.

Each test prints one summary line (run ``pytest tests/test_acceptance.py -v -s``
to see them) and asserts the stated tolerance.  The Monte-Carlo gates pin
seed 0, so every number here is reproducible to the last bit.

Runtime is about two minutes on one core; the simulation ensembles
(100 paths x 10,000 samples each) dominate.
"""

from __future__ import annotations

import numpy as np
import pytest

from hhtscale import (
    SimConfig,
    complexity,
    decompose,
    measure_day_means,
    monte_carlo_ensemble,
    outside_band_likelihood,
    bm_reference_band,
    scaling_exponent,
    simulate,
    spectral_track,
    hilbert_transform,
)
from hhtscale.cli import run
from hhtscale.simulate import rng_for_path, simulate_fbm

from test_measures import synthetic_track
from test_spectral import hilbert_by_convolution

PATHS = 100
LENGTH = 10_000
DAY_LENGTH = 256
N_DAYS = 16


def report(criterion: int, ok: bool, detail: str) -> None:
    print(f"criterion {criterion:2d}: {'PASS' if ok else 'FAIL'} — {detail}")
    assert ok, detail


# ---------------------------------------------------------------------------
# shared ensembles (computed once; criteria 1, 2, and 5 share the fBm runs)


@pytest.fixture(scope="session")
def fbm_stats():
    stats = {}
    for h in (0.2, 0.3, 0.5, 0.7, 0.9):
        cfg = SimConfig(process="fbm", length=LENGTH, seed=0, paths=PATHS, hurst=h)
        stats[h] = monte_carlo_ensemble(cfg)
    return stats


@pytest.fixture(scope="session")
def slm_stats():
    stats = {}
    for h in (0.5, 0.7, 0.9):
        cfg = SimConfig(
            process="slm", length=10_384, seed=0, paths=PATHS, alpha=1.0 / h
        )
        stats[h] = monte_carlo_ensemble(cfg)
    return stats


@pytest.fixture(scope="session")
def arfima_stats():
    stats = {}
    for d in (-0.2, 0.0, 0.2):
        cfg = SimConfig(process="arfima", length=LENGTH, seed=0, paths=PATHS, d=d)
        stats[d] = monte_carlo_ensemble(cfg)
    return stats


@pytest.fixture(scope="session")
def bm_band():
    return bm_reference_band(day_length=DAY_LENGTH, n_days=N_DAYS, n_sims=100, seed=0)


# ---------------------------------------------------------------------------
# quantitative criteria


def test_criterion_01_fbm_scaling_tables(fbm_stats):
    targets = {0.3: (0.28, 0.59), 0.5: (0.50, 0.81), 0.7: (0.70, 0.89), 0.9: (0.90, 0.93)}
    parts, ok = [], True
    for h, (t_h, t_r2) in targets.items():
        st = fbm_stats[h]
        ok &= abs(st.grand_mean - t_h) <= 0.04 and abs(st.mean_r2 - t_r2) <= 0.06
        parts.append(
            f"H={h}: H*={st.grand_mean:.3f} (target {t_h}±0.04), "
            f"R²={st.mean_r2:.3f} (target {t_r2}±0.06)"
        )
    report(1, ok, "; ".join(parts))


def test_criterion_02_fbm_generalized_hurst(fbm_stats):
    targets = {0.5: 0.50, 0.9: 0.87}
    parts, ok = [], True
    for h, t in targets.items():
        got = fbm_stats[h].ghe_mean
        ok &= abs(got - t) <= 0.04
        parts.append(f"H={h}: H_G={got:.3f} (target {t}±0.04)")
    report(2, ok, "; ".join(parts))


def test_criterion_03_slm_scaling_tables(slm_stats):
    targets = {0.5: 0.50, 0.7: 0.68, 0.9: 0.81}
    parts, ok = [], True
    for h, t in targets.items():
        got = slm_stats[h].grand_mean
        ok &= abs(got - t) <= 0.06
        parts.append(f"1/α={h}: H*={got:.3f} (target {t}±0.06)")
    report(3, ok, "; ".join(parts))


def test_criterion_04_arfima_scaling_tables(arfima_stats):
    targets = {-0.2: 0.32, 0.0: 0.49, 0.2: 0.65}
    parts, ok = [], True
    for d, t in targets.items():
        got = arfima_stats[d].grand_mean
        ok &= abs(got - t) <= 0.04
        parts.append(f"d={d:+.1f}: H*={got:.3f} (target {t}±0.04)")
    report(4, ok, "; ".join(parts))


def test_criterion_05_low_hurst_degrades_fit(fbm_stats):
    r2 = fbm_stats[0.2].mean_r2
    report(5, r2 < 0.5, f"fBm H=0.2: R²={r2:.3f} (< 0.5 required)")


# ---------------------------------------------------------------------------
# property-based criteria


def test_criterion_06_decomposition_completeness():
    worst = 0.0
    count = 0
    for i in range(40):  # white noise
        rng = np.random.default_rng(1000 + i)
        x = rng.standard_normal(128 + 48 * i)
        rec = decompose(x).reconstruct()
        worst = max(worst, np.abs(rec - x).max() / max(np.abs(x).max(), 1.0))
        count += 1
    for i in range(30):  # tones with drifts and offsets
        rng = np.random.default_rng(2000 + i)
        t = np.arange(512 + 32 * i)
        x = (
            (1.0 + i) * np.sin(2 * np.pi * t / (8 + 3 * i) + rng.uniform(0, 2 * np.pi))
            + 0.01 * i * t
            + rng.uniform(-5, 5)
        )
        rec = decompose(x).reconstruct()
        worst = max(worst, np.abs(rec - x).max() / max(np.abs(x).max(), 1.0))
        count += 1
    for i in range(30):  # fractional Brownian paths across the H range
        h = 0.1 + 0.8 * i / 29.0
        x = simulate_fbm(1024, h, rng_for_path(3000, i))
        rec = decompose(x).reconstruct()
        worst = max(worst, np.abs(rec - x).max() / max(np.abs(x).max(), 1.0))
        count += 1
    report(6, worst < 1e-10 and count == 100,
           f"{count} inputs, worst relative reconstruction error {worst:.2e} (< 1e-10)")


def test_criterion_07_hilbert_oracle():
    rng = np.random.default_rng(42)
    worst = 0.0
    for _ in range(20):
        n = int(rng.integers(4, 65))
        x = rng.standard_normal(n)
        worst = max(worst, np.abs(hilbert_transform(x) - hilbert_by_convolution(x)).max())
    n = 1024
    t = np.arange(n)
    interior = slice(n // 20, n - n // 20)
    cos_err = 0.0
    for cycles in (3, 17, 100):
        x = np.cos(2 * np.pi * cycles * t / n)
        want = np.sin(2 * np.pi * cycles * t / n)
        cos_err = max(cos_err, np.abs(hilbert_transform(x) - want)[interior].max())
    report(
        7,
        worst < 1e-8 and cos_err < 1e-6,
        f"convolution-oracle max dev {worst:.2e} (< 1e-8); "
        f"cos→sin interior max dev {cos_err:.2e} (< 1e-6)",
    )


def test_criterion_08_entropy_bounds():
    # (a) bounds on decomposed test inputs
    bound_ok = True
    for i in range(10):
        rng = np.random.default_rng(50 + i)
        x = np.cumsum(rng.standard_normal(1024)) + np.sin(np.arange(1024) / 7.0)
        track = spectral_track(decompose(x))
        c = complexity(track)
        vals = c.c_star[c.defined]
        bound_ok &= bool(np.all(vals >= 0.0) and np.all(vals <= np.log(c.n_imfs)))
    # (b) uniform amplitudes hit ln n
    n = 7
    periods = np.repeat(2.0 ** np.arange(1, n + 1), 5).reshape(n, 5)
    uniform = complexity(synthetic_track(np.full((n, 5), 2.0), periods))
    uniform_err = float(np.abs(uniform.c_star - np.log(n)).max())
    # (c) single mode hits zero
    solo_amp = np.zeros((n, 5))
    solo_amp[3] = 1.0
    solo = complexity(synthetic_track(solo_amp, periods))
    solo_err = float(np.abs(solo.c_star).max())
    report(
        8,
        bound_ok and uniform_err < 1e-12 and solo_err < 1e-12,
        f"bounds hold on 10 inputs; uniform dev {uniform_err:.2e} (< 1e-12); "
        f"single-mode dev {solo_err:.2e}",
    )


def test_criterion_09_scale_invariance():
    worst_h, worst_c = 0.0, 0.0
    for i in range(10):
        rng = np.random.default_rng(70 + i)
        x = np.cumsum(rng.standard_normal(2048))
        track_a = spectral_track(decompose(x))
        track_b = spectral_track(decompose(3.0 * x))
        ha, hb = scaling_exponent(track_a), scaling_exponent(track_b)
        assert np.array_equal(ha.defined, hb.defined)
        worst_h = max(worst_h, np.abs(ha.h_star[ha.defined] - hb.h_star[ha.defined]).max())
        ca, cb = complexity(track_a), complexity(track_b)
        worst_c = max(worst_c, np.abs(ca.c_star[ca.defined] - cb.c_star[ca.defined]).max())
    report(
        9,
        worst_h <= 1e-9 and worst_c <= 1e-9,
        f"x→3x: max |ΔH*| {worst_h:.2e}, max |ΔC*| {worst_c:.2e} (≤ 1e-9)",
    )


def test_criterion_10_brownian_band_calibration(bm_band):
    lo, hi = bm_band
    cfg = SimConfig(process="bm", length=DAY_LENGTH * N_DAYS, seed=0)
    held_out = np.vstack(
        [
            # paths 100+ are disjoint from the band's paths 0..99
            measure_day_means(simulate(cfg, path_index=100 + i).values, N_DAYS, DAY_LENGTH)
            for i in range(50)
        ]
    )
    freq = outside_band_likelihood(held_out, lo, hi)
    stat = float(freq[~np.isnan(freq)].mean())
    report(
        10,
        0.05 <= stat <= 0.15,
        f"50 held-out BM panels: mean per-index outside frequency {stat:.4f} "
        "(0.10 ± 0.05 required)",
    )


def test_criterion_11_persistent_panel_detected(bm_band):
    lo, hi = bm_band
    cfg = SimConfig(process="fbm", length=DAY_LENGTH * N_DAYS, seed=0, hurst=0.8)
    h_track = scaling_exponent(spectral_track(decompose(simulate(cfg, 0).values))).h_star
    likelihood = outside_band_likelihood(h_track.reshape(N_DAYS, DAY_LENGTH), lo, hi)
    interior = likelihood[DAY_LENGTH // 4 : 3 * DAY_LENGTH // 4]
    interior = interior[~np.isnan(interior)]
    mean_like = float(interior.mean())
    report(
        11,
        mean_like > 0.5,
        f"fBm H=0.8 panel: interior outside-band likelihood {mean_like:.4f} (> 0.5)",
    )


def test_criterion_12_thread_count_determinism(tmp_path):
    table_args = [
        "table", "--process", "fbm", "--h-grid", "0.5",
        "--paths", "8", "--length", "512", "--seed", "3",
    ]
    one, eight = tmp_path / "one", tmp_path / "eight"
    assert run(table_args + ["--threads", "1", "--out-dir", str(one)]) == 0
    assert run(table_args + ["--threads", "8", "--out-dir", str(eight)]) == 0
    table_same = (one / "table.csv").read_bytes() == (eight / "table.csv").read_bytes()

    sim_args = ["simulate", "--process", "bm", "--length", "256", "--seed", "4"]
    s_one, s_eight = tmp_path / "s1", tmp_path / "s8"
    assert run(sim_args + ["--threads", "1", "--out-dir", str(s_one)]) == 0
    assert run(sim_args + ["--threads", "8", "--out-dir", str(s_eight)]) == 0
    sim_same = (s_one / "paths.csv").read_bytes() == (s_eight / "paths.csv").read_bytes()

    report(
        12,
        table_same and sim_same,
        f"table.csv byte-identical across --threads 1/8: {table_same}; "
        f"paths.csv byte-identical: {sim_same}",
    )
