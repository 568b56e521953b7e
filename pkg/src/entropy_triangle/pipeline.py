"""End-to-end workflows behind the command line.

Each workflow takes a :class:`RunConfig` and returns report rows (plain
dicts keyed by :data:`REPORT_FIELDS`) plus, where relevant, a
:class:`~entropy_triangle.ternary.PlotSpec`. Nothing here touches the
filesystem except for loading inputs.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, fields
from pathlib import Path

import numpy as np

from .balance import (
    TriangleCoord,
    channel_balance,
    normalize_aggregate,
    normalize_split,
    split_balance,
)
from .datasets import DataTable, builtin, load_csv, load_schema
from .discretize import default_bins, encode_categorical, fit_discretize, STRATEGIES
from .errors import ConfigError, DataError, EmptyInputError, EntropyTriangleError
from .joint import JointDistribution, Partition, build_joint, from_table
from .ternary import PlotPoint, PlotSpec
from .transforms import (
    IcaParams,
    SweepError,
    fastica,
    iter_ranking_sweep,
    log_transform,
    pca_fit,
    pca_project,
)

__all__ = [
    "RunConfig",
    "REPORT_FIELDS",
    "TRANSFORMS",
    "measure",
    "sweep",
    "compare",
    "plot_report",
    "balance_rows",
    "confusion_rows",
    "read_report",
    "format_report",
    "read_confusion",
]

REPORT_FIELDS = (
    "dataset", "transform", "i", "side", "H_U_bits",
    "DeltaH_prime", "Info_prime", "VI_prime", "DeltaH_bits", "Info_bits", "VI_bits",
)
TRANSFORMS = ("none", "log", "pca", "ica", "log+pca", "log+ica")
PALETTE = ("#1f3b73", "#b8336a", "#2a9d8f", "#e76f51", "#6a4c93", "#3d405b")
REFERENCE_PREFIX = "reference:"


@dataclass(frozen=True)
class RunConfig:
    input: str | None = None
    builtin: str | None = None
    schema: str | None = None
    confusion: str | None = None
    transform: str = "none"
    disc: str = "equal-frequency"
    bins: int | None = None
    support: str = "domain"  # domain | observed
    partition: str | None = None  # features-vs-class | features-vs-transformed
    partition_x: tuple | None = None
    partition_y: tuple | None = None
    seed: int = 17
    maxit: int = 200
    tol: float = 1e-4
    alpha: float = 1.0
    na_policy: str = "fail"
    class_column: str | None = None
    out_report: str | None = None
    out_svg: str | None = None
    title: str | None = None

    def __post_init__(self):
        if self.transform not in TRANSFORMS:
            raise ConfigError(f"transform must be one of {TRANSFORMS}, got {self.transform!r}")
        if self.disc not in STRATEGIES:
            raise ConfigError(f"disc must be one of {STRATEGIES}, got {self.disc!r}")
        if self.bins is not None and (int(self.bins) != self.bins or self.bins < 2):
            raise ConfigError(f"bins must be an integer >= 2, got {self.bins!r}")
        if self.support not in ("domain", "observed"):
            raise ConfigError(f"support must be 'domain' or 'observed', got {self.support!r}")
        if self.partition not in (None, "features-vs-class", "features-vs-transformed"):
            raise ConfigError(f"unknown partition mode {self.partition!r}")
        sources = [s for s in (self.input, self.builtin, self.confusion) if s]
        if len(sources) > 1:
            raise ConfigError("give exactly one of --input, --builtin, --confusion")
        for name in ("partition_x", "partition_y"):
            v = getattr(self, name)
            if isinstance(v, str):
                object.__setattr__(self, name, tuple(s.strip() for s in v.split(",") if s.strip()))
            elif v is not None:
                object.__setattr__(self, name, tuple(v))
        if self.transform != "none" and self.partition == "features-vs-class":
            raise ConfigError("a transform needs the features-vs-transformed partition")

    @classmethod
    def from_dict(cls, d: dict) -> "RunConfig":
        known = {f.name for f in fields(cls)}
        norm = {k.replace("-", "_"): v for k, v in d.items()}
        unknown = sorted(set(norm) - known)
        if unknown:
            raise ConfigError(f"unknown config keys {unknown}; known: {sorted(known)}")
        return cls(**norm)

    @property
    def pre_log(self) -> bool:
        return self.transform.startswith("log")

    @property
    def method(self) -> str | None:
        tail = self.transform.split("+")[-1]
        return tail if tail in ("pca", "ica") else None

    def ica_params(self) -> IcaParams:
        return IcaParams(alpha=self.alpha, maxit=self.maxit, tol=self.tol)

    def dataset_key(self):
        return (self.input, self.builtin, self.schema, self.disc, self.bins, self.support,
                self.partition_x, self.class_column, self.na_policy)


def load_table(cfg: RunConfig) -> DataTable:
    if cfg.builtin:
        return builtin(cfg.builtin)
    if cfg.input:
        schema = load_schema(cfg.schema) if cfg.schema else None
        return load_csv(cfg.input, schema=schema, class_column=cfg.class_column,
                        na_policy=cfg.na_policy)
    raise ConfigError("no input: give --input, --builtin or --confusion")


def _dataset_name(cfg: RunConfig, table: DataTable | None = None) -> str:
    if table is not None:
        return table.name
    return Path(cfg.confusion).stem if cfg.confusion else "data"


def _encode_columns(cfg: RunConfig, names, columns, kinds):
    """Discretize columns; returns (codes matrix, cardinalities)."""
    codes, cards = [], []
    for name, col, kind in zip(names, columns, kinds):
        if kind == "categorical":
            cb, c = encode_categorical(col, variable=name)
        else:
            bins = cfg.bins or default_bins(len(col))
            cb, c = fit_discretize(col, cfg.disc, bins, variable=name)
        codes.append(c)
        cards.append(cb.cardinality)
    return np.column_stack(codes), cards


def _joint(cfg: RunConfig, x_codes, x_cards, x_names, y_codes, y_cards, y_names):
    J = build_joint(np.column_stack([x_codes, y_codes]), list(x_cards) + list(y_cards),
                    variables=list(x_names) + list(y_names))
    if cfg.support == "observed":
        J = J.with_observed_cardinalities()
    return J, Partition(x_names, y_names)


def balance_rows(J: JointDistribution, part: Partition, dataset: str, transform: str, i: int):
    """Report rows ``X``, ``Y``, ``XY`` for one partitioned distribution."""
    agg = channel_balance(J, part)
    sx, sy = split_balance(J, part)
    rows = []
    for s in (sx, sy):
        c = normalize_split(s)
        rows.append(_row(dataset, transform, i, s.side, s.h_u, c, s.delta_h, s.binding, s.h_cond))
    c = normalize_aggregate(agg)
    rows.append(_row(dataset, transform, i, "XY", agg.h_u_total, c, agg.delta_h, agg.binding, agg.vi))
    return rows


def _row(dataset, transform, i, side, h_u, c: TriangleCoord, d, info, vi):
    return {
        "dataset": dataset, "transform": transform, "i": int(i), "side": side,
        "H_U_bits": h_u, "DeltaH_prime": c.delta_prime, "Info_prime": c.info_prime,
        "VI_prime": c.vi_prime, "DeltaH_bits": d, "Info_bits": info, "VI_bits": vi,
    }


def read_confusion(path) -> np.ndarray:
    """A square count matrix from CSV; a non-numeric first row is a header."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"cannot read {path}: {e.strerror}") from None
    rows = [r for r in csv.reader(io.StringIO(text)) if r and any(c.strip() for c in r)]
    if not rows:
        raise EmptyInputError(f"{path}: empty confusion matrix")

    def numeric(r):
        try:
            [float(c) for c in r]
            return True
        except ValueError:
            return False

    if not numeric(rows[0]):
        rows = rows[1:]
    try:
        m = np.array([[float(c) for c in r] for r in rows])
    except ValueError as e:
        raise DataError(f"{path}: non-numeric cell ({e})") from None
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ConfigError(f"{path}: confusion matrix must be square, got shape {m.shape}")
    return m


def confusion_rows(counts, dataset: str = "confusion"):
    n = np.asarray(counts, dtype=float)
    if n.ndim != 2 or n.shape[0] != n.shape[1]:
        raise ConfigError(f"confusion matrix must be square, got shape {n.shape}")
    J = from_table(n, variables=("K", "K_hat"))
    return balance_rows(J, Partition(["K"], ["K_hat"]), dataset, "none", 1)


def _resolve(table: DataTable, names):
    available = table.column_names
    missing = [n for n in names if n not in available]
    if missing:
        raise ConfigError(f"unknown columns {missing}; available: {available}")
    return list(names)


def _feature_names(cfg: RunConfig, table: DataTable):
    if cfg.partition_x:
        return _resolve(table, cfg.partition_x)
    names = [c.name for c in table.features]
    if not names:
        raise ConfigError("dataset has no feature columns")
    return names


def _numeric_features(cfg: RunConfig, table: DataTable):
    names = _feature_names(cfg, table)
    non = [n for n in names if table.kind(n) != "numeric"]
    if non:
        raise ConfigError(f"transforms need numeric features; {non} are categorical")
    x = table.numeric_matrix(names)
    if cfg.pre_log:
        x = log_transform(x).values
    return names, x


def _full_transform(cfg: RunConfig, x):
    n = x.shape[1]
    try:
        if cfg.method == "pca":
            return pca_project(pca_fit(x), x)
        # same seed as the last step of an ICA sweep
        return fastica(x, n, params=cfg.ica_params(), seed=cfg.seed + n).transform(x)
    except EntropyTriangleError as e:
        raise SweepError(n, e) from e


def measure(cfg: RunConfig):
    """Balance coordinates of one partition of a dataset or confusion matrix.

    Returns ``(rows, plot_spec)``.
    """
    if cfg.confusion:
        rows = confusion_rows(read_confusion(cfg.confusion), _dataset_name(cfg))
        return rows, split_spec(rows, cfg.title or f"{_dataset_name(cfg)} (confusion)")
    table = load_table(cfg)
    if cfg.transform == "none":
        x_names = _feature_names(cfg, table)
        if cfg.partition_y:
            y_names = _resolve(table, cfg.partition_y)
        elif table.class_column is not None:
            y_names = [table.class_column.name]
        else:
            raise ConfigError("no class column: give --partition-y or a schema with class_column")
        x_codes, x_cards = _encode_columns(
            cfg, x_names, [table.column(n) for n in x_names], [table.kind(n) for n in x_names])
        y_codes, y_cards = _encode_columns(
            cfg, y_names, [table.column(n) for n in y_names], [table.kind(n) for n in y_names])
        J, part = _joint(cfg, x_codes, x_cards, x_names, y_codes, y_cards, y_names)
        rows = balance_rows(J, part, table.name, "none", len(y_names))
    else:
        names, x = _numeric_features(cfg, table)
        x_codes, x_cards = _encode_columns(cfg, names, x.T, ["numeric"] * len(names))
        if cfg.method is None:
            y = x
        else:
            y = _full_transform(cfg, x)
        y_names = [f"{(cfg.method or 'log').upper()}{j + 1}" for j in range(y.shape[1])]
        y_codes, y_cards = _encode_columns(cfg, y_names, y.T, ["numeric"] * y.shape[1])
        J, part = _joint(cfg, x_codes, x_cards, names, y_codes, y_cards, y_names)
        rows = balance_rows(J, part, table.name, cfg.transform, y.shape[1])
    return rows, split_spec(rows, cfg.title or f"{table.name}: {cfg.transform}")


def sweep(cfg: RunConfig):
    """Coordinates for the top-``i`` transformed features, ``i = 1..n``.

    Returns ``(rows, plot_spec, error)``; ``error`` is the
    :class:`SweepError` that cut the sweep short, or ``None``. Rows for the
    completed steps are returned either way.
    """
    if cfg.method is None:
        raise ConfigError(f"sweep needs a pca or ica transform, got {cfg.transform!r}")
    table = load_table(cfg)
    names, x = _numeric_features(cfg, table)
    x_codes, x_cards = _encode_columns(cfg, names, x.T, ["numeric"] * len(names))
    rows, error = [], None
    prefix = cfg.method.upper()
    try:
        for i, y in iter_ranking_sweep(x, cfg.method, seed=cfg.seed, params=cfg.ica_params()):
            try:
                y_names = [f"{prefix}{j + 1}" for j in range(i)]
                y_codes, y_cards = _encode_columns(cfg, y_names, y.T, ["numeric"] * i)
                J, part = _joint(cfg, x_codes, x_cards, names, y_codes, y_cards, y_names)
                rows.extend(balance_rows(J, part, table.name, cfg.transform, i))
            except DataError as e:
                raise SweepError(i, e) from e
    except SweepError as e:
        error = e
    title = cfg.title or f"{table.name}: {cfg.transform} ranking sweep"
    return rows, split_spec(rows, title, with_aggregate=True), error


def _reference_rows(cfg: RunConfig):
    """The lossless pre-transform (log, or identity) as a reference channel."""
    table = load_table(cfg)
    names = _feature_names(cfg, table)
    raw = table.numeric_matrix(names)
    ref = log_transform(raw).values if cfg.pre_log else raw
    label = REFERENCE_PREFIX + ("log" if cfg.pre_log else "identity")
    x_codes, x_cards = _encode_columns(cfg, names, raw.T, ["numeric"] * len(names))
    y_names = [f"REF{j + 1}" for j in range(len(names))]
    y_codes, y_cards = _encode_columns(cfg, y_names, ref.T, ["numeric"] * len(names))
    J, part = _joint(cfg, x_codes, x_cards, names, y_codes, y_cards, y_names)
    return balance_rows(J, part, table.name, label, len(names))


def compare(cfgs):
    """Merged sweeps of several methods on one dataset.

    All configs must agree on dataset and discretization. A single config
    gives exactly the :func:`sweep` output.

    Returns ``(rows, plot_spec, error)``.
    """
    cfgs = list(cfgs)
    if not cfgs:
        raise ConfigError("compare needs at least one method")
    keys = {c.dataset_key() for c in cfgs}
    if len(keys) > 1:
        raise ConfigError("compared methods must share dataset and discretization settings")
    if len({c.transform for c in cfgs}) != len(cfgs):
        raise ConfigError("compared methods must differ in transform")
    if len(cfgs) == 1:
        return sweep(cfgs[0])
    rows, error = [], None
    for c in cfgs:
        r, _, e = sweep(c)
        rows.extend(r)
        error = error or e
    rows.extend(_reference_rows(cfgs[0]))
    name = rows[0]["dataset"] if rows else "data"
    title = cfgs[0].title or f"{name}: " + " vs ".join(c.transform for c in cfgs)
    return rows, aggregate_spec(rows, title), error


def _coord(row, kind) -> TriangleCoord:
    return TriangleCoord(float(row["DeltaH_prime"]), float(row["Info_prime"]),
                         float(row["VI_prime"]), kind=kind)


def _colors(rows):
    series = []
    for r in rows:
        t = r["transform"]
        if not t.startswith(REFERENCE_PREFIX) and t not in series:
            series.append(t)
    return {t: PALETTE[k % len(PALETTE)] for k, t in enumerate(series)}


def _label(row) -> str:
    return f"1_{row['i']}"


def split_spec(rows, title: str, with_aggregate: bool = False) -> PlotSpec:
    """Split triangle: crosses for X, circles for Y, optionally filled aggregates."""
    colors = _colors(rows)
    pts = []
    glyph = {"X": "cross", "Y": "circle", "XY": "filled-circle"}
    for r in rows:
        side = r["side"]
        if side == "XY" and not with_aggregate:
            continue
        ref = r["transform"].startswith(REFERENCE_PREFIX)
        kind = "aggregate" if side == "XY" else f"split-{side}"
        g = "filled-triangle" if ref else glyph[side]
        color = "#555555" if ref else colors[r["transform"]]
        legend = f"{r['transform']} {'aggregate (2·I′)' if side == 'XY' else side + ' split'}"
        pts.append(PlotPoint(_coord(r, kind), _label(r), g, color, legend))
    return PlotSpec(title=title, kind="split", points=pts)


def aggregate_spec(rows, title: str) -> PlotSpec:
    colors = _colors(rows)
    pts = []
    for r in rows:
        if r["side"] != "XY":
            continue
        t = r["transform"]
        if t.startswith(REFERENCE_PREFIX):
            pts.append(PlotPoint(_coord(r, "aggregate"), t[len(REFERENCE_PREFIX):],
                                 "filled-triangle", "#555555", f"{t[len(REFERENCE_PREFIX):]} reference"))
        else:
            pts.append(PlotPoint(_coord(r, "aggregate"), _label(r), "filled-circle",
                                 colors[t], t))
    return PlotSpec(title=title, kind="aggregate", points=pts)


def plot_report(rows, kind: str, title: str = "") -> PlotSpec:
    """Plot spec for report rows: ``aggregate`` (XY rows) or ``split`` (X, Y rows)."""
    if kind == "aggregate":
        return aggregate_spec(rows, title)
    if kind == "split":
        return split_spec(rows, title)
    raise ConfigError(f"kind must be 'aggregate' or 'split', got {kind!r}")


def format_report(rows) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=REPORT_FIELDS, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: (repr(float(v)) if isinstance(v, float) else v) for k, v in r.items()})
    return buf.getvalue()


def read_report(path_or_text, is_text: bool = False):
    if is_text:
        text = path_or_text
    else:
        try:
            text = Path(path_or_text).read_text(encoding="utf-8")
        except OSError as e:
            raise ConfigError(f"cannot read {path_or_text}: {e.strerror}") from None
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames is None:
        return []
    missing = [f for f in REPORT_FIELDS if f not in reader.fieldnames]
    if missing:
        raise DataError(f"report is missing columns {missing}")
    rows = []
    for line, r in enumerate(reader, start=2):
        try:
            row = {"dataset": r["dataset"], "transform": r["transform"], "i": int(r["i"]),
                   "side": r["side"]}
            for k in REPORT_FIELDS[4:]:
                row[k] = float(r[k])
        except (TypeError, ValueError) as e:
            raise DataError(f"report line {line}: {e}") from None
        if row["side"] not in ("X", "Y", "XY"):
            raise DataError(f"report line {line}: unknown side {row['side']!r}")
        if not all(math.isfinite(row[k]) for k in REPORT_FIELDS[4:]):
            raise DataError(f"report line {line}: non-finite value")
        rows.append(row)
    return rows
