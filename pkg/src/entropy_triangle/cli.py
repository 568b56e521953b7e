"""Command line: ``entropy-triangle {measure,sweep,compare,plot}``.

Options may come from a JSON file (``--config``, keys as in
:class:`~entropy_triangle.pipeline.RunConfig`); explicit flags win.

Exit status: 0 success, 2 configuration error, 3 data error,
4 internal-consistency error.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import pipeline
from .errors import ConfigError, EntropyTriangleError
from .ternary import render_svg

log = logging.getLogger("entropy_triangle")

# argparse dest -> RunConfig field
_RUN_FLAGS = (
    "input", "builtin", "schema", "confusion", "transform", "disc", "bins", "support",
    "partition", "partition_x", "partition_y", "seed", "maxit", "tol", "alpha",
    "na_policy", "class_column", "out_report", "out_svg", "title",
)


def _add_run_flags(p: argparse.ArgumentParser, many_transforms: bool = False):
    src = p.add_argument_group("input")
    src.add_argument("--config", action="append" if many_transforms else "store",
                     help="JSON run configuration" + (" (repeat per method)" if many_transforms else ""))
    src.add_argument("--input", help="CSV file")
    src.add_argument("--builtin", help="embedded dataset name (iris)")
    src.add_argument("--schema", help="JSON schema sidecar for --input")
    src.add_argument("--class-column", dest="class_column")
    src.add_argument("--na-policy", dest="na_policy", choices=("fail", "drop_row"))
    src.add_argument("--confusion", help="square confusion-matrix CSV (rows: true class)")

    tr = p.add_argument_group("transform and discretization")
    tr.add_argument("--transform", choices=pipeline.TRANSFORMS,
                    action="append" if many_transforms else "store")
    tr.add_argument("--disc", choices=("equal-frequency", "equal-width"))
    tr.add_argument("--bins", type=int)
    tr.add_argument("--support", choices=("domain", "observed"),
                    help="count cardinalities over the codebook (domain) or observed codes")
    tr.add_argument("--seed", type=int)
    tr.add_argument("--maxit", type=int)
    tr.add_argument("--tol", type=float)
    tr.add_argument("--alpha", type=float)

    pa = p.add_argument_group("partition")
    pa.add_argument("--partition", choices=("features-vs-class", "features-vs-transformed"))
    pa.add_argument("--partition-x", dest="partition_x", help="comma-separated column names")
    pa.add_argument("--partition-y", dest="partition_y", help="comma-separated column names")

    out = p.add_argument_group("output")
    out.add_argument("--out-report", dest="out_report", help="CSV report path (default: stdout)")
    out.add_argument("--out-svg", dest="out_svg")
    out.add_argument("--title")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="entropy-triangle",
        description="Entropy balance coordinates and ternary diagrams for partitioned data.",
    )
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)
    _add_run_flags(sub.add_parser("measure", help="coordinates of one partition"))
    _add_run_flags(sub.add_parser("sweep", help="PCA/ICA top-i feature sweep"))
    _add_run_flags(sub.add_parser("compare", help="several sweeps on one dataset"),
                   many_transforms=True)
    pl = sub.add_parser("plot", help="render a report CSV")
    pl.add_argument("report")
    pl.add_argument("--kind", default="aggregate")
    pl.add_argument("--out-svg", dest="out_svg")
    pl.add_argument("--title", default="")
    return p


def _read_config_file(path) -> dict:
    try:
        with open(path, encoding="utf-8") as f:
            d = json.load(f)
    except OSError as e:
        raise ConfigError(f"cannot read config {path}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise ConfigError(f"config {path} is not valid JSON: {e}") from None
    if not isinstance(d, dict):
        raise ConfigError(f"config {path} must be a JSON object")
    return d


def _flags(args, skip=()) -> dict:
    return {k: getattr(args, k) for k in _RUN_FLAGS
            if k not in skip and getattr(args, k, None) is not None}


def config_from_args(args) -> pipeline.RunConfig:
    base = _read_config_file(args.config) if args.config else {}
    base.update(_flags(args))
    return pipeline.RunConfig.from_dict(base)


def configs_for_compare(args) -> list[pipeline.RunConfig]:
    files = [_read_config_file(p) for p in (args.config or [])]
    flags = _flags(args, skip=("transform",))
    transforms = args.transform or []
    if files and transforms:
        if len(files) != len(transforms):
            raise ConfigError("give one --transform per --config, or none")
        for f, t in zip(files, transforms):
            f["transform"] = t
    elif not files:
        files = [{"transform": t} for t in transforms]
    if not files:
        raise ConfigError("compare needs --transform (repeated) or --config files")
    return [pipeline.RunConfig.from_dict({**f, **flags}) for f in files]


def _write(path, text: str):
    if path:
        Path(path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _emit(cfg_out_report, cfg_out_svg, rows, spec):
    _write(cfg_out_report, pipeline.format_report(rows))
    if cfg_out_svg:
        Path(cfg_out_svg).write_text(render_svg(spec), encoding="utf-8")


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    logging.captureWarnings(True)
    try:
        if args.command == "measure":
            cfg = config_from_args(args)
            rows, spec = pipeline.measure(cfg)
            _emit(cfg.out_report, cfg.out_svg, rows, spec)
        elif args.command == "sweep":
            cfg = config_from_args(args)
            rows, spec, error = pipeline.sweep(cfg)
            _emit(cfg.out_report, cfg.out_svg, rows, spec)
            if error is not None:
                raise error
        elif args.command == "compare":
            cfgs = configs_for_compare(args)
            rows, spec, error = pipeline.compare(cfgs)
            _emit(cfgs[0].out_report, cfgs[0].out_svg, rows, spec)
            if error is not None:
                raise error
        elif args.command == "plot":
            rows = pipeline.read_report(args.report)
            spec = pipeline.plot_report(rows, args.kind, args.title)
            _write(args.out_svg, render_svg(spec))
    except EntropyTriangleError as e:
        log.error("%s", e)
        return e.exit_code
    return 0


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
