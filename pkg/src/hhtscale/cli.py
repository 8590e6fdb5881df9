"""Subcommand front-end tying the library into reproducible runs.

One binary, seven subcommands::

    hhtscale simulate   --process fbm --h 0.7 --length 10000 --paths 3
    hhtscale decompose  prices.csv
    hhtscale spectral   prices.csv --trim-fraction 0.02
    hhtscale scaling    prices.csv --rolling-window 780
    hhtscale complexity prices.csv --weight squared
    hhtscale intraday   prices.csv --measure hstar --band-sims 100
    hhtscale table      --process fbm --h-grid 0.1:0.9:0.1 --paths 100

Every run resolves its parameters as flags > ``--config`` key=value file >
defaults, writes CSV files with a ``# schema:`` header comment and
full round-trip float precision, and drops a ``<file>.manifest`` sidecar
next to each output so the run can be reproduced bit-identically.

Exit codes: 0 success, 1 data/runtime error (message names the offending
file or row), 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .emd import EmdConfig, decompose
from .intraday import bm_reference_band, outside_band_likelihood, panelize
from .manifest import RunManifest, file_digest
from .measures import (
    complexity,
    generalized_hurst_q1,
    rolling_scaling_exponent,
    scaling_exponent,
)
from .series import DataError, TimeSeries, ingest_prices
from .simulate import PROCESSES, SimConfig, monte_carlo_ensemble, simulate
from .spectral import spectral_track

__all__ = ["main", "run"]

SUBCOMMANDS = (
    "simulate",
    "decompose",
    "spectral",
    "scaling",
    "complexity",
    "intraday",
    "table",
)


class UsageError(Exception):
    """Bad flag combination or value; maps to exit code 2."""


# ---------------------------------------------------------------------------
# formatting and file helpers


def _fmt(value) -> str:
    """Full round-trip decimal text for one CSV cell."""
    if isinstance(value, str):
        return value
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return repr(float(value))


def _write_csv(path: Path, schema: str, columns, rows, comments=()) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(f"# schema: {schema} v1\n")
        fh.write(f"# generator: hhtscale {__version__}\n")
        for comment in comments:
            fh.write(f"# {comment}\n")
        fh.write(",".join(columns) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(cell) for cell in row) + "\n")


def _load_config(path) -> dict[str, str]:
    """Parse a plain-text key=value run configuration file."""
    out: dict[str, str] = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise DataError(f"cannot read config file {path}: {exc}") from exc
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise DataError(f"{path}: line {lineno}: expected key=value, got {raw!r}")
        out[key.strip().replace("-", "_")] = value.strip()
    return out


_BOOL_STRINGS = {"true": True, "false": False, "1": True, "0": False}


def _convert(key: str, text: str, kind):
    try:
        if kind is bool:
            return _BOOL_STRINGS[text.lower()]
        return kind(text)
    except (ValueError, KeyError) as exc:
        raise UsageError(f"bad value for {key}: {text!r}") from exc


def _resolve(args, config: dict[str, str], spec: dict) -> dict:
    """Merge flag values, config-file values, and defaults.

    ``spec`` maps parameter name -> (type, default).  Returns the resolved
    parameter dictionary; a None default with no value provided stays None.
    """
    resolved = {}
    for key, (kind, default) in spec.items():
        flag_value = getattr(args, key, None)
        if flag_value is not None:
            resolved[key] = flag_value
        elif key in config:
            resolved[key] = _convert(key, config[key], kind)
        else:
            resolved[key] = default
    return resolved


def _params_for_manifest(resolved: dict) -> dict[str, str]:
    # seed and threads live in dedicated manifest fields
    params = {}
    for key, value in resolved.items():
        if value is None or key in ("config", "seed", "threads"):
            continue
        params[key] = _fmt(value)
    return params


def _finish_outputs(out_dir: Path, names, manifest: RunManifest, started: float):
    manifest.duration_s = time.time() - started
    for name in names:
        manifest.write(out_dir / (name + ".manifest"))


# ---------------------------------------------------------------------------
# input handling

_INGEST_SPEC = {
    "values_col": (str, None),
    "date_col": (str, "date"),
    "time_col": (str, "time"),
    "price_col": (str, "price"),
    "delimiter": (str, ","),
    "session_gap": (float, None),
    "fill": (str, "none"),
}


def _read_input(path: str, params: dict):
    """Load the input series: a raw value column, or prices via ingest.

    Returns (TimeSeries, calendar-or-None).
    """
    if params.get("values_col"):
        column = params["values_col"]
        values = []
        try:
            with open(path, newline="") as fh:
                reader = csv.DictReader(
                    (line for line in fh if not line.startswith("#")),
                    delimiter=params["delimiter"],
                )
                if reader.fieldnames is None or column not in reader.fieldnames:
                    raise DataError(f"{path}: no column named {column!r}")
                for row_number, row in enumerate(reader, start=2):
                    text = row.get(column)
                    try:
                        values.append(float(text))
                    except (TypeError, ValueError):
                        raise DataError(
                            f"{path}: row {row_number}: bad value {text!r} "
                            f"in column {column!r}"
                        ) from None
        except OSError as exc:
            raise DataError(f"cannot read {path}: {exc}") from exc
        return TimeSeries(np.array(values), label=Path(path).stem), None
    series, calendar = ingest_prices(
        path,
        date_col=params["date_col"],
        time_col=params["time_col"] or None,
        price_col=params["price_col"],
        delimiter=params["delimiter"],
        session_gap=params["session_gap"],
        fill=params["fill"],
    )
    return series, calendar


def _emd_config(params: dict) -> EmdConfig:
    try:
        return EmdConfig(
            sd_threshold=params.get("sd_threshold", 0.2),
            max_imfs=params.get("max_imfs"),
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


# ---------------------------------------------------------------------------
# simulate / table helpers


def _sim_config(params: dict, paths: int) -> SimConfig:
    process = params.get("process")
    if process is None:
        raise UsageError("--process is required")
    if process not in PROCESSES:
        raise UsageError(f"unknown process {process!r}; choose from {PROCESSES}")
    kwargs = {}
    if process == "fbm":
        if params.get("h") is None:
            raise UsageError("fbm requires --h")
        kwargs["hurst"] = params["h"]
    elif process == "slm":
        if params.get("alpha") is None:
            raise UsageError("slm requires --alpha")
        kwargs["alpha"] = params["alpha"]
    elif process == "arfima":
        if params.get("d") is None:
            raise UsageError("arfima requires --d")
        kwargs["d"] = params["d"]
    try:
        return SimConfig(
            process=process,
            length=params["length"],
            seed=params["seed"],
            paths=paths,
            **kwargs,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _parse_grid(text: str) -> list[float]:
    """Parse 'start:stop:step' (inclusive) or a comma-separated list."""
    if ":" in text:
        pieces = text.split(":")
        if len(pieces) != 3:
            raise UsageError(f"grid must be start:stop:step, got {text!r}")
        try:
            start, stop, step = (float(p) for p in pieces)
        except ValueError:
            raise UsageError(f"non-numeric grid bounds in {text!r}") from None
        if step <= 0 or stop < start:
            raise UsageError(f"grid {text!r} must have step > 0 and stop >= start")
        count = int(np.floor((stop - start) / step + 1e-9)) + 1
        return [round(start + i * step, 12) for i in range(count)]
    try:
        return [float(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise UsageError(f"non-numeric grid entry in {text!r}") from None


def _table_rows(process, grid_values, params, threads):
    """One ensemble per grid value -> (H, mean/std H*, mean R2, mean/std HG)."""
    rows = []
    for value in grid_values:
        point = dict(params)
        if process == "fbm":
            point["h"] = value
            nominal = value
        elif process == "slm":
            point["alpha"] = value
            nominal = 1.0 / value
        elif process == "arfima":
            point["d"] = value
            nominal = value + 0.5
        else:  # bm
            nominal = 0.5
        config = _sim_config(point, paths=params["paths"])
        stats = monte_carlo_ensemble(
            config,
            emd_config=None,
            tau_max=params["tau_max"],
            trim_fraction=params["trim_fraction"],
            threads=threads,
        )
        rows.append(
            (
                nominal,
                stats.grand_mean,
                stats.grand_std,
                stats.mean_r2,
                stats.ghe_mean,
                stats.ghe_std,
            )
        )
    return rows


# ---------------------------------------------------------------------------
# subcommand handlers

_COMMON_SPEC = {"seed": (int, 0), "threads": (int, 1), "out_dir": (str, ".")}

_TABLE_COLUMNS = ("H", "mean_Hstar", "std_Hstar", "mean_R2", "mean_HG", "std_HG")


def _cmd_simulate(args, config) -> int:
    spec = dict(_COMMON_SPEC)
    spec.update(
        {
            "process": (str, None),
            "length": (int, 10000),
            "paths": (int, 1),
            "h": (float, None),
            "alpha": (float, None),
            "d": (float, None),
            "table": (bool, False),
            "tau_max": (int, 19),
            "trim_fraction": (float, 0.0),
        }
    )
    params = _resolve(args, config, spec)
    started = time.time()
    out_dir = Path(params["out_dir"])
    out_dir.mkdir(parents=True, exist_ok=True)
    sim = _sim_config(params, paths=params["paths"])
    manifest = RunManifest(
        subcommand="simulate",
        params=_params_for_manifest(params),
        seed=params["seed"],
        threads=params["threads"],
    )
    if params["table"]:
        rows = _table_rows(sim.process, [_nominal_value(sim)], params, params["threads"])
        _write_csv(
            out_dir / "table.csv",
            "ensemble-table",
            _TABLE_COLUMNS,
            rows,
            comments=[f"process={sim.process}", f"paths={sim.paths}", f"length={sim.length}"],
        )
        _finish_outputs(out_dir, ["table.csv"], manifest, started)
        return 0
    paths = [simulate(sim, path_index=i).values for i in range(sim.paths)]
    columns = ["t"] + [f"path_{i}" for i in range(sim.paths)]
    rows = ((t, *(p[t] for p in paths)) for t in range(sim.length))
    _write_csv(
        out_dir / "paths.csv",
        "simulated-paths",
        columns,
        rows,
        comments=[f"process={sim.process}", "rng=philox", f"seed={sim.seed}"],
    )
    _finish_outputs(out_dir, ["paths.csv"], manifest, started)
    return 0


def _nominal_value(sim: SimConfig) -> float:
    if sim.process == "fbm":
        return sim.hurst
    if sim.process == "slm":
        return sim.alpha
    if sim.process == "arfima":
        return sim.d
    return 0.5


def _series_handler(subcommand: str, extra_spec: dict, compute) -> "callable":
    """Build a handler for subcommands that read one series and emit CSVs.

    ``compute(series, calendar, params) -> list of (name, schema, columns,
    rows, comments)`` describes the output files.
    """

    def handler(args, config) -> int:
        spec = dict(_COMMON_SPEC)
        spec.update(_INGEST_SPEC)
        spec.update(extra_spec)
        params = _resolve(args, config, spec)
        params["input"] = args.input
        started = time.time()
        out_dir = Path(params["out_dir"])
        out_dir.mkdir(parents=True, exist_ok=True)
        series, calendar = _read_input(args.input, params)
        outputs = compute(series, calendar, params)
        manifest = RunManifest(
            subcommand=subcommand,
            params=_params_for_manifest(params),
            inputs={"input": file_digest(args.input)},
            seed=params["seed"],
            threads=params["threads"],
        )
        names = []
        for name, schema, columns, rows, comments in outputs:
            _write_csv(out_dir / name, schema, columns, rows, comments)
            names.append(name)
        _finish_outputs(out_dir, names, manifest, started)
        return 0

    return handler


def _compute_decompose(series, calendar, params):
    result = decompose(series, _emd_config(params))
    n = result.n_imfs
    columns = ["t"] + [f"imf_{k + 1}" for k in range(n)] + ["residue"]
    rows = (
        (t, *(result.imfs[k, t] for k in range(n)), result.residue[t])
        for t in range(result.length)
    )
    comments = [
        f"sift_counts={','.join(str(c) for c in result.sift_counts)}",
        f"stop_reasons={','.join(result.stop_reasons)}",
        f"dt={_fmt(series.dt)}",
    ]
    return [("imfs.csv", "imf-matrix", columns, rows, comments)]


def _compute_spectral(series, calendar, params):
    result = decompose(series, _emd_config(params))
    track = spectral_track(result, trim_fraction=params["trim_fraction"])
    n = track.n_imfs
    columns = ["t"] + [f"imf_{k + 1}" for k in range(n)]
    comments = [f"dt={_fmt(series.dt)}", "frequency_units=radians_per_sample"]
    amp_rows = (
        (t, *(track.amplitudes[k, t] for k in range(n))) for t in range(track.length)
    )
    freq_rows = (
        (t, *(track.frequencies[k, t] for k in range(n))) for t in range(track.length)
    )
    return [
        ("spectral_amplitude.csv", "amplitude-matrix", columns, amp_rows, comments),
        ("spectral_frequency.csv", "frequency-matrix", columns, freq_rows, comments),
    ]


def _compute_scaling(series, calendar, params):
    result = decompose(series, _emd_config(params))
    track = spectral_track(result, trim_fraction=params["trim_fraction"])
    window = params["rolling_window"]
    if window is None:
        st = scaling_exponent(track)
    else:
        st = rolling_scaling_exponent(track, window=window)
    comments = [f"tau_max={params['tau_max']}"]
    try:
        ghe = generalized_hurst_q1(series.values, tau_max=params["tau_max"])
        comments.append(f"ghe_q1={_fmt(ghe.h_g)}")
        comments.append(f"ghe_r2={_fmt(ghe.r_squared)}")
    except ValueError as exc:
        comments.append(f"ghe_q1=nan ({exc})")
    if window is not None:
        comments.append(f"rolling_window={window}")
    columns = ("t", "h_star", "r2", "points_used")
    rows = (
        (t, st.h_star[t], st.r_squared[t], int(st.points_used[t]))
        for t in range(st.length)
    )
    return [("scaling.csv", "scaling-track", columns, rows, comments)]


def _compute_complexity(series, calendar, params):
    result = decompose(series, _emd_config(params))
    track = spectral_track(result, trim_fraction=params["trim_fraction"])
    ct = complexity(track, weight=params["weight"])
    columns = ("t", "c_star")
    rows = ((t, ct.c_star[t]) for t in range(ct.length))
    comments = [f"weight={params['weight']}", f"n_imfs={ct.n_imfs}"]
    return [("complexity.csv", "complexity-track", columns, rows, comments)]


def _cmd_intraday(args, config) -> int:
    spec = dict(_COMMON_SPEC)
    spec.update(_INGEST_SPEC)
    spec.update(
        {
            "measure": (str, "hstar"),
            "band_sims": (int, 100),
            "trim_fraction": (float, 0.0),
        }
    )
    params = _resolve(args, config, spec)
    params["input"] = args.input
    if params["measure"] not in ("hstar", "cstar"):
        raise UsageError("--measure must be hstar or cstar")
    started = time.time()
    out_dir = Path(params["out_dir"])
    out_dir.mkdir(parents=True, exist_ok=True)
    series, calendar = _read_input(args.input, params)
    if calendar is None:
        raise DataError(
            f"{args.input}: intraday analysis needs dated price rows "
            "(not --values-col)"
        )
    dec = decompose(series)
    track = spectral_track(dec, trim_fraction=params["trim_fraction"])
    if params["measure"] == "hstar":
        per_sample = scaling_exponent(track).h_star
    else:
        per_sample = complexity(track).c_star
    panel = panelize(per_sample, calendar)
    band_lo, band_hi = bm_reference_band(
        day_length=panel.width,
        n_days=panel.n_days,
        n_sims=params["band_sims"],
        seed=params["seed"],
        measure=params["measure"],
        trim_fraction=params["trim_fraction"],
        threads=params["threads"],
    )
    likelihood = outside_band_likelihood(panel.matrix, band_lo, band_hi)

    manifest = RunManifest(
        subcommand="intraday",
        params=_params_for_manifest(params),
        inputs={"input": file_digest(args.input)},
        seed=params["seed"],
        threads=params["threads"],
    )
    gap_comment = (
        [f"lunch_gap={panel.lunch_gap[0]}:{panel.lunch_gap[1]}"]
        if panel.lunch_gap is not None
        else []
    )
    panel_columns = ["day_id"] + [f"c_{j}" for j in range(panel.width)]
    panel_rows = (
        (calendar.day_ids[i], *(panel.matrix[i, j] for j in range(panel.width)))
        for i in range(panel.n_days)
    )
    profile_columns = ("index", "day_mean", "band_lo", "band_hi", "likelihood")
    profile_rows = (
        (j, panel.day_mean[j], band_lo[j], band_hi[j], likelihood[j])
        for j in range(panel.width)
    )
    comments = [f"measure={params['measure']}", f"band_sims={params['band_sims']}"]
    _write_csv(
        out_dir / "intraday_panel.csv",
        "intraday-panel",
        panel_columns,
        panel_rows,
        comments + gap_comment,
    )
    _write_csv(
        out_dir / "intraday_profile.csv",
        "intraday-profile",
        profile_columns,
        profile_rows,
        comments + gap_comment,
    )
    _finish_outputs(
        out_dir, ["intraday_panel.csv", "intraday_profile.csv"], manifest, started
    )
    return 0


def _cmd_table(args, config) -> int:
    spec = dict(_COMMON_SPEC)
    spec.update(
        {
            "process": (str, None),
            "h_grid": (str, None),
            "alpha_grid": (str, None),
            "d_grid": (str, None),
            "paths": (int, 100),
            "length": (int, 10000),
            "tau_max": (int, 19),
            "trim_fraction": (float, 0.0),
        }
    )
    params = _resolve(args, config, spec)
    process = params["process"]
    if process is None:
        raise UsageError("--process is required")
    grid_flag = {"fbm": "h_grid", "slm": "alpha_grid", "arfima": "d_grid"}.get(process)
    if grid_flag is None:
        if process != "bm":
            raise UsageError(f"unknown process {process!r}; choose from {PROCESSES}")
        grid_values = [0.5]
    else:
        if params[grid_flag] is None:
            raise UsageError(f"{process} requires --{grid_flag.replace('_', '-')}")
        grid_values = _parse_grid(params[grid_flag])
    started = time.time()
    out_dir = Path(params["out_dir"])
    out_dir.mkdir(parents=True, exist_ok=True)
    rows = _table_rows(process, grid_values, params, params["threads"])
    manifest = RunManifest(
        subcommand="table",
        params=_params_for_manifest(params),
        seed=params["seed"],
        threads=params["threads"],
    )
    _write_csv(
        out_dir / "table.csv",
        "ensemble-table",
        _TABLE_COLUMNS,
        rows,
        comments=[
            f"process={process}",
            f"paths={params['paths']}",
            f"length={params['length']}",
            "rng=philox",
        ],
    )
    _finish_outputs(out_dir, ["table.csv"], manifest, started)
    return 0


# ---------------------------------------------------------------------------
# parser assembly


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--seed", type=int, default=None, help="base RNG seed")
    sub.add_argument("--threads", type=int, default=None, help="worker processes")
    sub.add_argument("--out-dir", dest="out_dir", default=None, help="output directory")
    sub.add_argument("--config", default=None, help="key=value config file")


def _add_ingest(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("input", help="input CSV file")
    sub.add_argument("--values-col", dest="values_col", default=None,
                     help="read this numeric column directly instead of prices")
    sub.add_argument("--date-col", dest="date_col", default=None)
    sub.add_argument("--time-col", dest="time_col", default=None)
    sub.add_argument("--price-col", dest="price_col", default=None)
    sub.add_argument("--delimiter", default=None)
    sub.add_argument("--session-gap", dest="session_gap", type=float, default=None,
                     help="split days into two sessions at gaps >= this many seconds")
    sub.add_argument("--fill", choices=("none", "ffill"), default=None,
                     help="fill missing in-session samples by carrying prices forward")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hhtscale",
        description="Adaptive scaling and complexity analysis of time series",
    )
    parser.add_argument("--version", action="version", version=f"hhtscale {__version__}")
    subparsers = parser.add_subparsers(dest="subcommand", required=True)

    sim = subparsers.add_parser("simulate", help="generate stochastic paths")
    sim.add_argument("--process", choices=PROCESSES, default=None)
    sim.add_argument("--length", type=int, default=None)
    sim.add_argument("--paths", type=int, default=None)
    sim.add_argument("--h", type=float, default=None, help="Hurst exponent (fbm)")
    sim.add_argument("--alpha", type=float, default=None, help="stability index (slm)")
    sim.add_argument("--d", type=float, default=None, help="memory parameter (arfima)")
    sim.add_argument("--table", action="store_const", const=True, default=None,
                     help="emit the ensemble summary table instead of raw paths")
    sim.add_argument("--tau-max", dest="tau_max", type=int, default=None)
    sim.add_argument("--trim-fraction", dest="trim_fraction", type=float, default=None)
    _add_common(sim)

    dec = subparsers.add_parser("decompose", help="split a series into components")
    _add_ingest(dec)
    dec.add_argument("--sd-threshold", dest="sd_threshold", type=float, default=None)
    dec.add_argument("--max-imfs", dest="max_imfs", type=int, default=None)
    _add_common(dec)

    spe = subparsers.add_parser("spectral", help="amplitude/frequency tracks")
    _add_ingest(spe)
    spe.add_argument("--trim-fraction", dest="trim_fraction", type=float, default=None)
    _add_common(spe)

    sca = subparsers.add_parser("scaling", help="local scaling exponent track")
    _add_ingest(sca)
    sca.add_argument("--rolling-window", dest="rolling_window", type=int, default=None)
    sca.add_argument("--tau-max", dest="tau_max", type=int, default=None)
    sca.add_argument("--trim-fraction", dest="trim_fraction", type=float, default=None)
    _add_common(sca)

    com = subparsers.add_parser("complexity", help="entropy complexity track")
    _add_ingest(com)
    com.add_argument("--weight", choices=("squared", "linear"), default=None)
    com.add_argument("--trim-fraction", dest="trim_fraction", type=float, default=None)
    _add_common(com)

    intr = subparsers.add_parser("intraday", help="day panels and reference bands")
    _add_ingest(intr)
    intr.add_argument("--measure", choices=("hstar", "cstar"), default=None)
    intr.add_argument("--band-sims", dest="band_sims", type=int, default=None)
    intr.add_argument("--trim-fraction", dest="trim_fraction", type=float, default=None)
    _add_common(intr)

    tab = subparsers.add_parser("table", help="ensemble tables over a parameter grid")
    tab.add_argument("--process", choices=PROCESSES, default=None)
    tab.add_argument("--h-grid", dest="h_grid", default=None,
                     help="start:stop:step or comma list of Hurst exponents")
    tab.add_argument("--alpha-grid", dest="alpha_grid", default=None)
    tab.add_argument("--d-grid", dest="d_grid", default=None)
    tab.add_argument("--paths", type=int, default=None)
    tab.add_argument("--length", type=int, default=None)
    tab.add_argument("--tau-max", dest="tau_max", type=int, default=None)
    tab.add_argument("--trim-fraction", dest="trim_fraction", type=float, default=None)
    _add_common(tab)

    return parser


_HANDLERS = {
    "simulate": _cmd_simulate,
    "decompose": _series_handler(
        "decompose", {"sd_threshold": (float, 0.2), "max_imfs": (int, None)},
        _compute_decompose,
    ),
    "spectral": _series_handler(
        "spectral", {"trim_fraction": (float, 0.0)}, _compute_spectral
    ),
    "scaling": _series_handler(
        "scaling",
        {
            "rolling_window": (int, None),
            "tau_max": (int, 19),
            "trim_fraction": (float, 0.0),
        },
        _compute_scaling,
    ),
    "complexity": _series_handler(
        "complexity",
        {"weight": (str, "squared"), "trim_fraction": (float, 0.0)},
        _compute_complexity,
    ),
    "intraday": _cmd_intraday,
    "table": _cmd_table,
}


def run(argv) -> int:
    """Execute one subcommand; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        config = _load_config(args.config) if getattr(args, "config", None) else {}
        return _HANDLERS[args.subcommand](args, config)
    except UsageError as exc:
        print(f"hhtscale {args.subcommand}: {exc}", file=sys.stderr)
        return 2
    except DataError as exc:
        print(f"hhtscale {args.subcommand}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        name = getattr(exc, "filename", None)
        where = f" ({name})" if name and str(name) not in str(exc) else ""
        print(f"hhtscale {args.subcommand}: {exc}{where}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"hhtscale {args.subcommand}: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
