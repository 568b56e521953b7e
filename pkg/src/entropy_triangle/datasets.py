"""Tabular datasets: CSV loading, schema sidecars and the bundled Iris data.

A schema sidecar is a small JSON object::

    {
      "name": "glass",
      "class_column": "Type",
      "has_header": false,
      "header": ["Id", "RI", ...],
      "drop": ["Id"],
      "delimiter": ",",
      "columns": {"RI": "numeric", ..., "Type": "categorical"}
    }

Every key is optional. ``columns`` overrides type inference per column.
"""
from __future__ import annotations

import csv
import io
import json
import math
import warnings
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from .errors import ConfigError, DataError, EmptyInputError

__all__ = [
    "Column",
    "DataTable",
    "CsvOptions",
    "load_csv",
    "read_csv_text",
    "write_csv",
    "load_schema",
    "builtin",
    "BUILTIN_NAMES",
    "schema_path",
]

BUILTIN_NAMES = ("iris",)
NA_TOKENS = {"", "na", "nan", "n/a", "null", "?"}


@dataclass(frozen=True)
class Column:
    name: str
    kind: str  # numeric | categorical
    role: str = "feature"  # feature | class


@dataclass(frozen=True, eq=False)
class DataTable:
    """A rectangular table with typed columns and at most one class column."""

    name: str
    columns: tuple
    values: tuple  # one tuple per column; floats for numeric, str otherwise

    @property
    def m(self) -> int:
        return len(self.values[0]) if self.values else 0

    @property
    def column_names(self) -> list[str]:
        return [c.name for c in self.columns]

    @property
    def class_column(self) -> Column | None:
        return next((c for c in self.columns if c.role == "class"), None)

    @property
    def features(self) -> list[Column]:
        return [c for c in self.columns if c.role == "feature"]

    @property
    def n(self) -> int:
        return len(self.features)

    def column(self, name: str) -> tuple:
        try:
            i = self.column_names.index(name)
        except ValueError:
            raise ConfigError(
                f"unknown column {name!r}; available: {self.column_names}"
            ) from None
        return self.values[i]

    def kind(self, name: str) -> str:
        return self.columns[self.column_names.index(name)].kind

    def numeric_matrix(self, names) -> np.ndarray:
        for n in names:
            if self.kind(n) != "numeric":
                raise ConfigError(f"column {n!r} is not numeric")
        return np.column_stack([np.asarray(self.column(n), dtype=float) for n in names])

    def n_classes(self) -> int:
        c = self.class_column
        return len(set(self.column(c.name))) if c else 0

    def __eq__(self, other):
        if not isinstance(other, DataTable):
            return NotImplemented
        return (self.name, self.columns, self.values) == (other.name, other.columns, other.values)

    def __hash__(self):
        return hash((self.name, self.columns))


@dataclass(frozen=True)
class CsvOptions:
    has_header: bool = True
    delimiter: str = ","
    class_column: str | None = None
    na_policy: str = "fail"  # fail | drop_row
    kinds: dict = field(default_factory=dict)
    header: tuple | None = None
    drop: tuple = ()


def _is_na(cell: str) -> bool:
    return cell.strip().lower() in NA_TOKENS


def _parse_float(cell: str):
    try:
        v = float(cell)
    except ValueError:
        return None
    return v if math.isfinite(v) else None


def read_csv_text(text: str, name: str = "table", options: CsvOptions | None = None) -> DataTable:
    """Parse CSV text into a :class:`DataTable`.

    A column is numeric when every cell parses as a finite number, unless
    ``options.kinds`` says otherwise. Under ``na_policy="fail"`` a missing or
    unparseable cell in a numeric column raises :class:`DataError`; under
    ``"drop_row"`` the row is dropped with a warning.
    """
    opts = options or CsvOptions()
    if opts.na_policy not in ("fail", "drop_row"):
        raise ConfigError(f"na_policy must be 'fail' or 'drop_row', got {opts.na_policy!r}")
    rows = [r for r in csv.reader(io.StringIO(text), delimiter=opts.delimiter)]
    lines = list(range(1, len(rows) + 1))
    keep = [i for i, r in enumerate(rows) if r and any(c.strip() for c in r)]
    rows = [rows[i] for i in keep]
    lines = [lines[i] for i in keep]
    if opts.header is not None:
        header = list(opts.header)
        if opts.has_header and rows:
            rows, lines = rows[1:], lines[1:]
    elif opts.has_header:
        if not rows:
            raise EmptyInputError(f"{name}: no header row")
        header = [h.strip() for h in rows[0]]
        rows, lines = rows[1:], lines[1:]
    else:
        width = len(rows[0]) if rows else 0
        header = [f"V{j + 1}" for j in range(width)]
    if len(set(header)) != len(header):
        raise DataError(f"{name}: duplicate column names in header {header}")
    for r, ln in zip(rows, lines):
        if len(r) != len(header):
            raise DataError(
                f"{name}: line {ln} has {len(r)} fields, expected {len(header)}"
            )
    if not rows:
        raise EmptyInputError(f"{name}: no data rows")

    cols = [[r[j].strip() for r in rows] for j in range(len(header))]
    kinds = {}
    for j, h in enumerate(header):
        if h in opts.kinds:
            k = opts.kinds[h]
            if k not in ("numeric", "categorical"):
                raise ConfigError(f"column kind must be numeric or categorical, got {k!r}")
            kinds[h] = k
        else:
            nonmissing = [c for c in cols[j] if not _is_na(c)]
            numeric = bool(nonmissing) and all(_parse_float(c) is not None for c in nonmissing)
            kinds[h] = "numeric" if numeric else "categorical"

    bad_rows = set()
    for j, h in enumerate(header):
        if h in opts.drop:
            continue
        for i, c in enumerate(cols[j]):
            if kinds[h] == "numeric" and _parse_float(c) is None:
                bad_rows.add(i)
            elif kinds[h] == "categorical" and _is_na(c):
                bad_rows.add(i)
    if bad_rows:
        first = min(bad_rows)
        if opts.na_policy == "fail":
            raise DataError(f"{name}: missing or unparseable value at line {lines[first]}")
        warnings.warn(f"{name}: dropped {len(bad_rows)} row(s) with missing values",
                      RuntimeWarning, stacklevel=2)
    good = [i for i in range(len(rows)) if i not in bad_rows]
    if not good:
        raise EmptyInputError(f"{name}: every row was dropped")

    if opts.class_column is not None and opts.class_column not in header:
        raise ConfigError(f"class column {opts.class_column!r} not in {header}")
    columns, values = [], []
    for j, h in enumerate(header):
        if h in opts.drop:
            continue
        role = "class" if h == opts.class_column else "feature"
        columns.append(Column(h, kinds[h], role))
        if kinds[h] == "numeric":
            values.append(tuple(float(cols[j][i]) for i in good))
        else:
            values.append(tuple(cols[j][i] for i in good))
    return DataTable(name, tuple(columns), tuple(values))


def load_schema(path) -> dict:
    with open(path, encoding="utf-8") as f:
        try:
            schema = json.load(f)
        except json.JSONDecodeError as e:
            raise ConfigError(f"{path}: invalid schema JSON ({e})") from None
    if not isinstance(schema, dict):
        raise ConfigError(f"{path}: schema must be a JSON object")
    return schema


def _options_from_schema(schema: dict | None, **overrides) -> CsvOptions:
    schema = schema or {}
    kw = dict(
        has_header=schema.get("has_header", True),
        delimiter=schema.get("delimiter", ","),
        class_column=schema.get("class_column"),
        kinds=dict(schema.get("columns", {})),
        header=tuple(schema["header"]) if schema.get("header") else None,
        drop=tuple(schema.get("drop", ())),
    )
    kw.update({k: v for k, v in overrides.items() if v is not None})
    return CsvOptions(**kw)


def load_csv(path, options: CsvOptions | None = None, schema: dict | None = None,
             **overrides) -> DataTable:
    """Load a CSV file.

    Options come from ``options`` if given, else from ``schema`` plus keyword
    overrides (``has_header``, ``delimiter``, ``class_column``, ``na_policy``).
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"cannot read {path}: {e.strerror}") from None
    if options is None:
        options = _options_from_schema(schema, **overrides)
    name = (schema or {}).get("name") or path.stem
    return read_csv_text(text, name=name, options=options)


def write_csv(table: DataTable, path) -> None:
    """Write a table with a header row; numbers use their shortest repr."""
    with open(path, "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(table.column_names)
        for i in range(table.m):
            w.writerow([repr(v) if isinstance(v, float) else v for v in (col[i] for col in table.values)])


def schema_path(name: str):
    """Path of a shipped schema sidecar (``iris``, ``glass``, ``arthritis``)."""
    res = resources.files("entropy_triangle") / "data" / f"{name}.schema.json"
    if not res.is_file():
        raise ConfigError(f"no shipped schema named {name!r}")
    return res


def builtin(name: str) -> DataTable:
    """A dataset embedded in the package. Only ``"iris"`` is available."""
    if name not in BUILTIN_NAMES:
        raise ConfigError(f"unknown builtin dataset {name!r}; available: {list(BUILTIN_NAMES)}")
    data = resources.files("entropy_triangle") / "data"
    schema = json.loads((data / f"{name}.schema.json").read_text(encoding="utf-8"))
    text = (data / f"{name}.csv").read_text(encoding="utf-8")
    return read_csv_text(text, name=name, options=_options_from_schema(schema))
