"""Turn feature columns into integer codes.

Binned codebooks use half-open intervals ``[lo, hi)`` with the last one
closed, so the column maximum always lands in the top bin.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, DataError, EmptyInputError

__all__ = [
    "Codebook",
    "fit_discretize",
    "encode_categorical",
    "default_bins",
    "STRATEGIES",
]

STRATEGIES = ("equal-frequency", "equal-width")
MAX_DEFAULT_BINS = 32


def default_bins(m: int) -> int:
    """``ceil(sqrt(m))`` capped at 32, and never below 2."""
    return int(min(max(math.ceil(math.sqrt(m)), 2), MAX_DEFAULT_BINS))


@dataclass(frozen=True)
class Codebook:
    variable: object
    kind: str
    edges: tuple = ()
    categories: tuple = ()

    @property
    def cardinality(self) -> int:
        if self.kind == "categorical":
            return len(self.categories)
        return max(len(self.edges) - 1, 1)

    def encode(self, values) -> np.ndarray:
        """Codes for new values under this codebook.

        Binned values outside the fitted range are clipped into the end bins.
        Unknown categories raise :class:`DataError`.
        """
        if self.kind == "categorical":
            lookup = {c: i for i, c in enumerate(self.categories)}
            try:
                return np.array([lookup[v] for v in values], dtype=np.int64)
            except KeyError as e:
                raise DataError(f"category {e.args[0]!r} not in codebook of {self.variable!r}") from None
        x = np.asarray(values, dtype=float)
        inner = np.asarray(self.edges[1:-1], dtype=float)
        return np.searchsorted(inner, x, side="right").astype(np.int64)

    def interval(self, code: int) -> tuple[float, float]:
        if self.kind != "binned":
            raise ConfigError("only binned codebooks have intervals")
        if len(self.edges) == 1:
            return (self.edges[0], self.edges[0])
        return (self.edges[code], self.edges[code + 1])

    def to_dict(self) -> dict:
        d = {"variable": self.variable, "kind": self.kind, "cardinality": self.cardinality}
        if self.kind == "binned":
            d["edges"] = list(self.edges)
        else:
            d["categories"] = list(self.categories)
        return d


def _check_column(column) -> np.ndarray:
    x = np.asarray(column, dtype=float).reshape(-1)
    if x.size == 0:
        raise EmptyInputError("cannot discretize an empty column")
    bad = ~np.isfinite(x)
    if bad.any():
        r = int(np.argmax(bad))
        raise DataError(f"non-finite value {x[r]!r} at row {r}")
    return x


def fit_discretize(column, strategy: str = "equal-frequency", bins: int | None = None,
                   variable=None):
    """Fit a binned codebook to a real column and encode it.

    Parameters
    ----------
    column : array_like
        Finite real values.
    strategy : {"equal-frequency", "equal-width"}
        Equal-frequency places inner edges at the empirical quantiles
        ``j / bins``; coinciding edges are merged, so the cardinality can
        come out smaller than ``bins``.
    bins : int, optional
        Requested number of bins, at least 2. Defaults to
        :func:`default_bins` of the column length.

    Returns
    -------
    codebook : Codebook
    codes : ndarray of int
    """
    x = _check_column(column)
    if bins is None:
        bins = default_bins(x.size)
    if int(bins) != bins or bins < 2:
        raise ConfigError(f"bins must be an integer >= 2, got {bins!r}")
    bins = int(bins)
    lo, hi = float(x.min()), float(x.max())
    if lo == hi:
        if strategy == "equal-frequency":
            warnings.warn(
                f"column {variable!r} is constant; equal-frequency codebook has one bin",
                RuntimeWarning, stacklevel=2,
            )
        elif strategy not in STRATEGIES:
            raise ConfigError(f"unknown strategy {strategy!r}; choose from {STRATEGIES}")
        cb = Codebook(variable, "binned", edges=(lo,))
        return cb, np.zeros(x.size, dtype=np.int64)
    if strategy == "equal-width":
        edges = np.linspace(lo, hi, bins + 1)
    elif strategy == "equal-frequency":
        edges = np.quantile(x, np.linspace(0.0, 1.0, bins + 1))
        edges[0], edges[-1] = lo, hi
        edges = np.unique(edges)
    else:
        raise ConfigError(f"unknown strategy {strategy!r}; choose from {STRATEGIES}")
    cb = Codebook(variable, "binned", edges=tuple(float(e) for e in edges))
    return cb, cb.encode(x)


def encode_categorical(column, variable=None):
    """Codes for a label column, categories sorted lexicographically."""
    labels = [str(v) for v in column]
    if not labels:
        raise EmptyInputError("cannot encode an empty column")
    cats = tuple(sorted(set(labels)))
    cb = Codebook(variable, "categorical", categories=cats)
    return cb, cb.encode(labels)
