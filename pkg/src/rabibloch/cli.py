"""Command line entry point ``rbo``.

Exit codes: 0 success, 2 configuration error, 3 numerical abort, 4 I/O error.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from . import __version__, files
from .dynamics import NumericalAbort
from .model import omega_b_from_physical
from .scenarios import (PRESET_INFO, ConfigError, apply_overrides, compare_rwa, parse_config,
                        parse_vary, preset, run_scenario, sweep)
from .spectra import TimeSeriesRecord, amplitude_spectrum

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC, EXIT_IO = 0, 2, 3, 4


def _load_config(args):
    if args.config and args.preset:
        raise ConfigError("give either a config file or --preset, not both")
    if args.config:
        cfg = parse_config(Path(args.config).read_text(encoding="utf-8"))
    elif args.preset:
        cfg = preset(args.preset)
    else:
        raise ConfigError("a config file or --preset is required")
    items = []
    for s in args.set or []:
        if "=" not in s:
            raise ConfigError(f"--set expects key=value, got {s!r}")
        k, _, v = s.partition("=")
        items.append((k.strip(), v, None))
    return apply_overrides(cfg, items) if items else cfg


def _add_config_args(p):
    p.add_argument("config", nargs="?", help="scenario file in key = value format")
    p.add_argument("--preset", help="start from a named preset instead of a file")
    p.add_argument("--set", action="append", metavar="KEY=VALUE", help="override one field (repeatable)")
    p.add_argument("--out", help="output directory (default: $RBO_OUT_DIR/<name>)")


def cmd_presets(args):
    for pid, text in PRESET_INFO.items():
        print(f"{pid:10s} {text}")
    return EXIT_OK


def cmd_simulate(args):
    cfg = _load_config(args)
    m = run_scenario(cfg, args.out)
    print(f"wrote {len(m.files)} files to {m.out_dir}")
    print(f"norm drift {m.norm_drift:.3g}, max edge leakage {m.edge_leakage_max:.3g}")
    for label, peaks in m.peaks.items():
        if peaks:
            f, a = max(peaks, key=lambda p: p[1])
            print(f"{label:28s} dominant line {f:.6g}")
    return EXIT_OK


def cmd_spectrum(args):
    tau, values = files.read_columns(args.series)
    rec = TimeSeriesRecord(tau, values, "series", Path(args.series).stem)
    spec = amplitude_spectrum(rec, args.window, args.zero_pad, remove_mean=not args.keep_mean,
                              rel_threshold=args.threshold)
    out = Path(args.out) if args.out else Path(args.series).with_suffix(".spectrum.txt")
    files.write_spectrum(out, spec, Path(args.series).stem)
    print(f"resolution {spec.resolution:.6g}")
    for f, a in spec.peaks:
        print(f"{f:.8g}\t{a:.6g}")
    return EXIT_OK


def cmd_compare_rwa(args):
    cfg = _load_config(args)
    res = compare_rwa(cfg, args.out, write=True)
    print(json.dumps(res.to_dict(), indent=2))
    return EXIT_OK


def cmd_sweep(args):
    cfg = _load_config(args)
    key, values = parse_vary(args.vary)
    root = Path(args.out) if args.out else Path(os.environ.get("RBO_OUT_DIR", "rbo_out")) / f"sweep_{cfg.name}"
    results = sweep(cfg, key, values, root, workers=args.workers)
    summary = {f"{v:.6g}": {"norm_drift": m["norm_drift"], "files": len(m["files"])} for v, m in results.items()}
    files.write_json(root / "sweep.json", {"key": key, "values": values, "runs": summary})
    print(f"{len(results)} runs written under {root}")
    return EXIT_OK


def cmd_convert(args):
    print(f"{omega_b_from_physical(args.a, args.edc, args.gap):.6g}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rbo", description="Rabi-Bloch oscillation simulator")
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("presets", help="list built-in scenarios")
    p.set_defaults(func=cmd_presets)

    p = sub.add_parser("simulate", help="run one scenario and write all outputs")
    _add_config_args(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("spectrum", help="amplitude spectrum of a two-column series file")
    p.add_argument("series")
    p.add_argument("--window", default="hann", choices=("hann", "rect"))
    p.add_argument("--zero-pad", type=int, default=4)
    p.add_argument("--threshold", type=float, default=0.05)
    p.add_argument("--keep-mean", action="store_true", help="do not subtract the mean")
    p.add_argument("--out")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("compare-rwa", help="full model vs rotating-wave approximation")
    _add_config_args(p)
    p.set_defaults(func=cmd_compare_rwa)

    p = sub.add_parser("sweep", help="run a scenario over a range of one parameter")
    _add_config_args(p)
    p.add_argument("--vary", required=True, metavar="KEY=START:STOP:STEPS")
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("convert", help="Bloch frequency from physical units")
    p.add_argument("--a", type=float, required=True, help="lattice constant [nm]")
    p.add_argument("--edc", type=float, required=True, help="dc field [kV/cm]")
    p.add_argument("--gap", type=float, required=True, help="transition energy [eV]")
    p.set_defaults(func=cmd_convert)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (ConfigError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericalAbort as exc:
        print(f"numerical abort: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
