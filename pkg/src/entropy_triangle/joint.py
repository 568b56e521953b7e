"""Sparse empirical joint distributions over discrete codes.

A :class:`JointDistribution` never materializes the product domain. It
keeps the observed support as an integer matrix (one row per distinct
tuple, sorted lexicographically) together with positive weights. When the
distribution comes from data the weights are the raw tuple counts, so
marginal weights stay exact integers and entropies of equal count
profiles are bit-identical.

All entropies are in bits.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Hashable, Iterable, Mapping, Sequence

import numpy as np

from .errors import ConfigError, DomainError, EmptyInputError

__all__ = [
    "JointDistribution",
    "Partition",
    "build_joint",
    "from_mass",
    "from_table",
    "entropy",
    "marginalize",
    "conditional_entropy",
    "uniform_entropy",
    "entropy_of_weights",
]

SUM_TOL = 1e-12


def entropy_of_weights(weights, total=None) -> float:
    """Shannon entropy (bits) of a vector of positive weights.

    Uses a correctly rounded sum so the result does not depend on the order
    of ``weights``.
    """
    w = np.asarray(weights, dtype=float)
    w = w[w > 0]
    if w.size == 0:
        return 0.0
    if total is None:
        total = math.fsum(w)
    p = w / total
    h = -math.fsum(p * np.log2(p))
    return h if h > 0.0 else 0.0


@dataclass(frozen=True, eq=False)
class JointDistribution:
    """Probability mass over tuples of codes.

    Attributes
    ----------
    variables : tuple
        Variable identifiers, one per column of ``support``.
    cardinalities : tuple of int
        Codebook size per variable, unobserved codes included.
    support : ndarray, shape (k, v)
        Distinct code tuples with nonzero mass, sorted lexicographically.
    weights : ndarray, shape (k,)
        Positive weights; probabilities are ``weights / total``.
    total : float
        Normalizer. Equals the row count for empirical distributions.
    """

    variables: tuple
    cardinalities: tuple
    support: np.ndarray
    weights: np.ndarray
    total: float

    @property
    def n_vars(self) -> int:
        return len(self.variables)

    @property
    def probabilities(self) -> np.ndarray:
        return self.weights / self.total

    @property
    def mass(self) -> dict:
        """Sparse map ``code tuple -> probability``."""
        return {
            tuple(int(c) for c in row): float(p)
            for row, p in zip(self.support, self.probabilities)
        }

    def index_of(self, variable) -> int:
        try:
            return self.variables.index(variable)
        except ValueError:
            raise ConfigError(
                f"unknown variable {variable!r}; available: {list(self.variables)}"
            ) from None

    def indices(self, variables: Iterable) -> list[int]:
        return [self.index_of(v) for v in variables]

    def with_observed_cardinalities(self) -> "JointDistribution":
        """Recode every variable onto its observed support.

        Cardinalities then count only the codes that actually occur, which
        changes the uniform reference entropy but not any entropy of the
        distribution itself.
        """
        cols = []
        cards = []
        for j in range(self.n_vars):
            levels, inv = np.unique(self.support[:, j], return_inverse=True)
            cols.append(inv.reshape(-1))
            cards.append(len(levels))
        support = np.column_stack(cols) if cols else self.support
        return _from_weighted_rows(
            support, self.weights, tuple(cards), self.variables, self.total
        )

    def __repr__(self):
        return (
            f"JointDistribution(variables={list(self.variables)}, "
            f"cardinalities={list(self.cardinalities)}, support_size={len(self.weights)})"
        )


def _freeze(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def _from_weighted_rows(rows, weights, cardinalities, variables, total=None):
    rows = np.asarray(rows, dtype=np.int64)
    weights = np.asarray(weights, dtype=float)
    uniq, inv = np.unique(rows, axis=0, return_inverse=True)
    w = np.bincount(inv.reshape(-1), weights=weights, minlength=len(uniq))
    keep = w > 0
    if total is None:
        total = math.fsum(w)
    return JointDistribution(
        variables=tuple(variables),
        cardinalities=tuple(int(c) for c in cardinalities),
        support=_freeze(np.ascontiguousarray(uniq[keep])),
        weights=_freeze(w[keep]),
        total=float(total),
    )


def _check_cardinalities(cardinalities, n_vars):
    cards = tuple(int(c) for c in cardinalities)
    if len(cards) != n_vars:
        raise ConfigError(f"expected {n_vars} cardinalities, got {len(cards)}")
    if any(c < 1 for c in cards):
        raise ConfigError(f"cardinalities must be >= 1, got {list(cards)}")
    return cards


def _default_variables(variables, n_vars):
    if variables is None:
        return tuple(range(n_vars))
    variables = tuple(variables)
    if len(variables) != n_vars:
        raise ConfigError(f"expected {n_vars} variable names, got {len(variables)}")
    if len(set(variables)) != n_vars:
        raise ConfigError(f"duplicate variable names in {list(variables)}")
    return variables


def build_joint(codes, cardinalities: Sequence[int], variables=None) -> JointDistribution:
    """Empirical plug-in distribution of the rows of an integer code matrix.

    Examples
    --------
    >>> J = build_joint([[0, 0], [0, 0], [1, 1], [1, 0]], (2, 2))
    >>> J.mass
    {(0, 0): 0.5, (1, 0): 0.25, (1, 1): 0.25}
    """
    codes = np.asarray(codes)
    if codes.ndim == 1:
        codes = codes[:, None]
    if codes.ndim != 2:
        raise ConfigError("codes must be a 2-D matrix (rows x variables)")
    m, v = codes.shape
    if m == 0:
        raise EmptyInputError("cannot build a distribution from zero rows")
    if not np.issubdtype(codes.dtype, np.integer):
        if not np.all(np.equal(np.mod(codes, 1), 0)):
            raise DomainError("codes must be integers")
        codes = codes.astype(np.int64)
    cards = _check_cardinalities(cardinalities, v)
    bad = (codes < 0) | (codes >= np.asarray(cards))
    if bad.any():
        r, c = map(int, np.argwhere(bad)[0])
        raise DomainError(
            f"code {int(codes[r, c])} at row {r}, column {c} is outside [0, {cards[c]})"
        )
    return _from_weighted_rows(
        codes, np.ones(m), cards, _default_variables(variables, v), total=float(m)
    )


def from_mass(mass: Mapping[tuple, float], cardinalities: Sequence[int], variables=None):
    """Distribution from an explicit ``tuple -> probability`` mapping.

    Zero entries are dropped; the probabilities must sum to one.
    """
    items = [(tuple(k), float(p)) for k, p in mass.items() if p != 0]
    if not items:
        raise EmptyInputError("mass map has no positive entries")
    if any(p < 0 for _, p in items):
        raise DomainError("probabilities must be non-negative")
    s = math.fsum(p for _, p in items)
    if abs(s - 1.0) > SUM_TOL:
        raise DomainError(f"probabilities sum to {s!r}, not 1")
    rows = np.array([k for k, _ in items], dtype=np.int64)
    if rows.ndim == 1:
        rows = rows[:, None]
    cards = _check_cardinalities(cardinalities, rows.shape[1])
    bad = (rows < 0) | (rows >= np.asarray(cards))
    if bad.any():
        r, c = map(int, np.argwhere(bad)[0])
        raise DomainError(f"code {tuple(rows[r])} component {c} outside [0, {cards[c]})")
    return _from_weighted_rows(
        rows, [p for _, p in items], cards, _default_variables(variables, rows.shape[1]),
        total=1.0,
    )


def from_table(table, variables=None) -> JointDistribution:
    """Distribution from a dense table of non-negative counts or masses.

    The table shape gives the cardinalities. Used for contingency tables
    such as confusion matrices.
    """
    t = np.asarray(table, dtype=float)
    if t.ndim == 0:
        raise ConfigError("table must have at least one axis")
    if np.any(t < 0) or not np.all(np.isfinite(t)):
        raise DomainError("table entries must be finite and non-negative")
    idx = np.argwhere(t > 0)
    if idx.size == 0:
        raise EmptyInputError("table is all zeros")
    w = t[tuple(idx.T)]
    return _from_weighted_rows(
        idx, w, t.shape, _default_variables(variables, t.ndim), total=math.fsum(w)
    )


@dataclass(frozen=True)
class Partition:
    """Two disjoint, non-empty blocks of variables covering a distribution."""

    x_vars: tuple
    y_vars: tuple

    def __init__(self, x_vars, y_vars):
        object.__setattr__(self, "x_vars", tuple(x_vars))
        object.__setattr__(self, "y_vars", tuple(y_vars))

    def validate(self, J: JointDistribution) -> None:
        if not self.x_vars or not self.y_vars:
            raise ConfigError("both sides of a partition must be non-empty")
        xs, ys = set(self.x_vars), set(self.y_vars)
        if len(xs) != len(self.x_vars) or len(ys) != len(self.y_vars):
            raise ConfigError("partition repeats a variable")
        if xs & ys:
            raise ConfigError(f"partition sides overlap on {sorted(xs & ys, key=str)}")
        J.indices(self.x_vars + self.y_vars)
        if len(xs) + len(ys) != J.n_vars:
            missing = [v for v in J.variables if v not in xs and v not in ys]
            raise ConfigError(f"partition does not cover variables {missing}")

    def swapped(self) -> "Partition":
        return Partition(self.y_vars, self.x_vars)


def entropy(J: JointDistribution) -> float:
    """Joint Shannon entropy in bits."""
    return entropy_of_weights(J.weights, J.total)


def marginalize(J: JointDistribution, keep: Iterable[Hashable]) -> JointDistribution:
    """Sum out every variable not in ``keep``.

    The result lists variables in the order given by ``keep``.
    """
    keep = list(keep)
    if not keep:
        raise ConfigError("marginalize needs at least one variable to keep")
    if len(set(keep)) != len(keep):
        raise ConfigError(f"duplicate variables in {keep}")
    idx = J.indices(keep)
    if idx == list(range(J.n_vars)):
        return J
    return _from_weighted_rows(
        J.support[:, idx],
        J.weights,
        tuple(J.cardinalities[i] for i in idx),
        tuple(keep),
        total=J.total,
    )


def conditional_entropy(J: JointDistribution, part: Partition, direction: str = "x|y") -> float:
    """``H(X|Y)`` (``direction="x|y"``) or ``H(Y|X)`` (``"y|x"``) via the chain rule."""
    part.validate(J)
    if direction in ("x|y", "X|Y"):
        given = part.y_vars
    elif direction in ("y|x", "Y|X"):
        given = part.x_vars
    else:
        raise ConfigError(f"direction must be 'x|y' or 'y|x', got {direction!r}")
    h = entropy(J) - entropy(marginalize(J, given))
    return h if h > 0.0 else 0.0


def uniform_entropy(J: JointDistribution, subset: Iterable[Hashable] | None = None) -> float:
    """Entropy of the uniform distribution over the product domain of ``subset``."""
    idx = range(J.n_vars) if subset is None else J.indices(subset)
    idx = list(idx)
    if not idx:
        raise ConfigError("uniform_entropy needs a non-empty subset")
    return math.fsum(math.log2(J.cardinalities[i]) for i in idx)
