"""Command-line front end.

    milddist verify   --suite all --L 16
    milddist figure1  --out fig1 --format pgm
    milddist stft     signal.csv --window gaussian --out stft.pgm
    milddist gabor-dual --L 16 --a 8 --b 16 --out dual.csv
    milddist poisson  --L 32
    milddist gsp-demo --L 8 --M 4096 --seed 1 --out gsp

Reports are JSON on stdout (or in the file given by ``--out`` where the
command writes no other files).  Exit status: 0 success, 1 failed check,
2 bad configuration or unreadable input.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

import numpy as np

from . import checks, io
from .figure1 import PANELS, DemoConfig, figure1
from .grid import FiniteSignal, gaussian, make_grid
from .gsp import (
    autocorrelation,
    simulate,
    spectral_autocorr_identity,
    stationary,
    white,
    wss_deviation,
)
from .mild import poisson_check
from .transforms import GaborSystem, NotAFrameError, dual_window, stft


class ConfigError(Exception):
    pass


def _finite(obj):
    # strict JSON has no inf/nan
    if isinstance(obj, dict):
        return {k: _finite(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_finite(v) for v in obj]
    if isinstance(obj, (float, np.floating)) and not np.isfinite(obj):
        return None
    return obj


def _emit(report: dict, out: str | None = None) -> None:
    text = json.dumps(_finite(report), indent=2, default=_json_default, allow_nan=False)
    if out:
        Path(out).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)


def _json_default(obj):
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, Path):
        return str(obj)
    raise TypeError(f"not JSON serializable: {type(obj).__name__}")


def _grid(L: int):
    try:
        return make_grid(L)
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from None


def _window(spec: str, grid) -> FiniteSignal:
    if spec == "gaussian":
        return gaussian(grid)
    w = io.read_signal(spec)
    if w.grid != grid:
        raise ConfigError(f"window {spec} has grid L={w.grid.L}, signal has L={grid.L}")
    return w


def cmd_verify(args) -> int:
    if args.suite != "all" and args.suite not in checks.SUITES:
        raise ConfigError(f"unknown suite {args.suite!r}; choose from: all, {', '.join(checks.SUITES)}")
    _grid(args.L)
    t0 = time.perf_counter()
    results = checks.run_suite(args.suite, args.L)
    failures = sum(not r.passed for r in results)
    _emit(
        {
            "suite": args.suite,
            "L": args.L,
            "checks": [r.to_dict() for r in results],
            "failures": failures,
            "seconds": time.perf_counter() - t0,
        },
        args.out,
    )
    return int(failures > 0)


def cmd_figure1(args) -> int:
    if args.format not in ("pgm", "csv"):
        raise ConfigError(f"unknown format {args.format!r}")
    grid = _grid(args.L)
    cfg = DemoConfig(
        L=args.L,
        window=None if args.window == "gaussian" else _window(args.window, grid),
        periodize_stride=args.periodize_stride,
        sample_stride=args.sample_stride,
        shift=tuple(args.shift) if args.shift else None,
        out_dir=args.out,
        format=args.format,
    )
    try:
        result = figure1(cfg)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    files = {}
    for i, name in enumerate(PANELS, start=1):
        path = out / f"panel{i}_{name}.{args.format}"
        if args.format == "pgm":
            io.write_stft(path, result.stfts[name], {"panel": name})
        else:
            io.write_stft_csv(path, result.stfts[name])
        files[name] = str(path)
    meta = dict(result.metadata, files=files)
    (out / "figure1.json").write_text(json.dumps(_finite(meta), indent=2, default=_json_default) + "\n", encoding="utf-8")
    _emit(meta)
    return 0


def cmd_stft(args) -> int:
    if args.format not in ("pgm", "csv"):
        raise ConfigError(f"unknown format {args.format!r}")
    f = io.read_signal(args.input)
    g = _window(args.window, f.grid)
    V = stft(f, g, "gaussian" if args.window == "gaussian" else str(args.window))
    if args.format == "pgm":
        meta = io.write_stft(args.out, V)
    else:
        io.write_stft_csv(args.out, V)
        meta = {"grid": f.grid.metadata()}
    peak = np.unravel_index(np.argmax(np.abs(V.values)), V.values.shape)
    _emit(dict(meta, out=args.out, peak_idx=[int(peak[0]), int(peak[1])]))
    return 0


def cmd_gabor_dual(args) -> int:
    grid = _grid(args.L)
    g = _window(args.window, grid)
    try:
        sys_ = GaborSystem(grid, g, args.a, args.b)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    report = {"grid": grid.metadata(), "a": args.a, "b": args.b, "redundancy": sys_.redundancy}
    try:
        dual = dual_window(sys_)
    except NotAFrameError as exc:
        _emit(dict(report, error=str(exc), residual=exc.residual, condition=exc.condition))
        return 1
    report.update(sys_.dual_info)
    if args.out:
        io.write_signal(args.out, dual)
        report["out"] = args.out
    _emit(report)
    return 0


def cmd_poisson(args) -> int:
    if args.input:
        f = io.read_signal(args.input)
    else:
        f = gaussian(_grid(args.L))
    rec = poisson_check(f)
    _emit(dict(rec.to_dict(), grid=f.grid.metadata()), args.out)
    return 0


def cmd_gsp_demo(args) -> int:
    grid = _grid(args.L)
    if args.M < 2:
        raise ConfigError("need --M >= 2")
    if args.kind == "white":
        spec = white(grid)
    else:
        spec = stationary(FiniteSignal(grid, np.exp(-np.pi * grid.coords() ** 2 / 4)))
    e = simulate(spec, args.M, args.seed)
    a = autocorrelation(e)
    report = {
        "header": e.header(),
        "spectral_autocorr_identity": spectral_autocorr_identity(e),
        "wss": wss_deviation(a).to_dict(),
    }
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        io.write_ensemble(out / "ensemble.bin", e)
        (out / "autocorrelation.csv").write_text(a.to_csv(), encoding="utf-8")
        report["files"] = [str(out / "ensemble.bin"), str(out / "autocorrelation.csv")]
    _emit(report)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="milddist", description="Mild distributions on finite grid models.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run registered identity checks")
    v.add_argument("--suite", default="all")
    v.add_argument("--L", type=int, default=16)
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify)

    f = sub.add_parser("figure1", help="periodization/sampling spectrogram panels")
    f.add_argument("--L", type=int, default=32)
    f.add_argument("--window", default="gaussian")
    f.add_argument("--periodize-stride", type=int)
    f.add_argument("--sample-stride", type=int, default=4)
    f.add_argument("--shift", type=float, nargs=2, metavar=("T", "S"))
    f.add_argument("--out", default="figure1")
    f.add_argument("--format", default="pgm")
    f.set_defaults(func=cmd_figure1)

    s = sub.add_parser("stft", help="STFT of a signal CSV")
    s.add_argument("input")
    s.add_argument("--window", default="gaussian")
    s.add_argument("--out", required=True)
    s.add_argument("--format", default="pgm")
    s.set_defaults(func=cmd_stft)

    d = sub.add_parser("gabor-dual", help="canonical dual Gabor window")
    d.add_argument("--L", type=int, default=16)
    d.add_argument("--a", type=int, required=True)
    d.add_argument("--b", type=int, required=True)
    d.add_argument("--window", default="gaussian")
    d.add_argument("--out")
    d.set_defaults(func=cmd_gabor_dual)

    q = sub.add_parser("poisson", help="Poisson summation check")
    q.add_argument("--L", type=int, default=32)
    q.add_argument("--input")
    q.add_argument("--out")
    q.set_defaults(func=cmd_poisson)

    g = sub.add_parser("gsp-demo", help="simulate a process and check its spectral identities")
    g.add_argument("--L", type=int, default=8)
    g.add_argument("--M", type=int, default=1024)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--kind", choices=("white", "stationary"), default="white")
    g.add_argument("--out")
    g.set_defaults(func=cmd_gsp_demo)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, io.SignalFormatError, FileNotFoundError) as exc:
        parser.print_usage(sys.stderr)
        print(f"milddist {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
