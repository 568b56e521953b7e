"""Entropy balance equations and their normalized triangle coordinates.

For a distribution partitioned into blocks X and Y the aggregate balance is::

    H_U(X) + H_U(Y) = DeltaH + 2 * I + VI

and each block admits its own split balance::

    H_U(X) = DeltaH_X + I + H(X|Y)
    H_U(Y) = DeltaH_Y + I + H(Y|X)

Dividing by the left-hand side turns each equation into a point of the
2-simplex, which :mod:`entropy_triangle.ternary` draws.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, ConsistencyError, DegenerateDomainError
from .joint import JointDistribution, Partition, build_joint, entropy, from_table, marginalize, uniform_entropy  # noqa: F401 (build_joint: doctest)
from .measures import binding_information

__all__ = [
    "ChannelDecomposition",
    "SplitDecomposition",
    "TriangleCoord",
    "channel_balance",
    "split_balance",
    "normalize_aggregate",
    "normalize_split",
    "cbet_from_confusion",
    "classify_region",
]

DUST = 1e-12
BALANCE_RTOL = 1e-9

KINDS = ("aggregate", "split-X", "split-Y")


def _clean(x: float, what: str) -> float:
    """Clamp floating-point dust to zero, refuse real negatives."""
    if x < -DUST:
        raise ConsistencyError(f"{what} is negative ({x!r})")
    return 0.0 if abs(x) < DUST else x


@dataclass(frozen=True)
class ChannelDecomposition:
    h_u_total: float
    delta_h: float
    binding: float
    vi: float

    def residual(self) -> float:
        return self.h_u_total - (self.delta_h + 2 * self.binding + self.vi)


@dataclass(frozen=True)
class SplitDecomposition:
    side: str
    h_u: float
    delta_h: float
    binding: float
    h_cond: float

    def residual(self) -> float:
        return self.h_u - (self.delta_h + self.binding + self.h_cond)


@dataclass(frozen=True)
class TriangleCoord:
    """A point of the entropy triangle.

    ``info_prime`` holds ``2 I'`` for aggregate points and ``I'`` for split
    points; ``kind`` says which.
    """

    delta_prime: float
    info_prime: float
    vi_prime: float
    kind: str = "aggregate"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ConfigError(f"kind must be one of {KINDS}, got {self.kind!r}")
        parts = (self.delta_prime, self.info_prime, self.vi_prime)
        if not all(np.isfinite(parts)):
            raise ConfigError(f"non-finite composition {parts}")
        if min(parts) < -BALANCE_RTOL or max(parts) > 1 + BALANCE_RTOL:
            raise ConfigError(f"composition parts outside [0, 1]: {parts}")
        if abs(sum(parts) - 1.0) > BALANCE_RTOL:
            raise ConfigError(f"composition does not sum to 1: {parts}")

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.delta_prime, self.info_prime, self.vi_prime)


def _check_identity(lhs: float, parts: float, what: str):
    if abs(lhs - parts) > BALANCE_RTOL * max(abs(lhs), 1.0):
        raise ConsistencyError(f"{what} balance broken: {lhs!r} != {parts!r}")


def _parts(J: JointDistribution, part: Partition):
    part.validate(J)
    hxy = entropy(J)
    hx = entropy(marginalize(J, part.x_vars))
    hy = entropy(marginalize(J, part.y_vars))
    hux = uniform_entropy(J, part.x_vars)
    huy = uniform_entropy(J, part.y_vars)
    binding = binding_information(J, part)
    return hx, hy, hxy, hux, huy, binding


def channel_balance(J: JointDistribution, part: Partition) -> ChannelDecomposition:
    """Aggregate balance of a partitioned distribution.

    Examples
    --------
    Two independent uniform bits and their XOR, split as ``(x1, x2) | x3``:

    >>> J = build_joint([[0, 0, 0], [0, 1, 1], [1, 0, 1], [1, 1, 0]], (2, 2, 2))
    >>> channel_balance(J, Partition([0, 1], [2]))
    ChannelDecomposition(h_u_total=3.0, delta_h=0.0, binding=1.0, vi=1.0)
    """
    hx, hy, hxy, hux, huy, binding = _parts(J, part)
    h_u = hux + huy
    if h_u <= 0.0:
        raise DegenerateDomainError("every variable has cardinality 1; H_U = 0")
    delta = _clean(h_u - (hx + hy), "divergence from uniformity")
    vi = _clean((hxy - hy) + (hxy - hx), "variation of information")
    d = ChannelDecomposition(h_u, delta, binding, vi)
    _check_identity(h_u, delta + 2 * binding + vi, "aggregate")
    return d


def split_balance(J: JointDistribution, part: Partition) -> tuple[SplitDecomposition, SplitDecomposition]:
    """Per-block balances ``(X side, Y side)`` sharing the binding term."""
    hx, hy, hxy, hux, huy, binding = _parts(J, part)
    if hux <= 0.0 or huy <= 0.0:
        raise DegenerateDomainError(
            f"uniform reference entropy is zero on one side (H_U(X)={hux}, H_U(Y)={huy})"
        )
    sx = SplitDecomposition(
        "X", hux, _clean(hux - hx, "Delta H_X"), binding, _clean(hxy - hy, "H(X|Y)")
    )
    sy = SplitDecomposition(
        "Y", huy, _clean(huy - hy, "Delta H_Y"), binding, _clean(hxy - hx, "H(Y|X)")
    )
    _check_identity(hux, sx.delta_h + binding + sx.h_cond, "X-side split")
    _check_identity(huy, sy.delta_h + binding + sy.h_cond, "Y-side split")
    return sx, sy


def _normalize(a: float, b: float, c: float, denom: float, kind: str) -> TriangleCoord:
    if denom <= 0.0:
        raise DegenerateDomainError("cannot normalize by a zero uniform entropy")
    vals = [_clean(v / denom, "normalized coordinate") for v in (a, b, c)]
    return TriangleCoord(*vals, kind=kind)


def normalize_aggregate(d: ChannelDecomposition) -> TriangleCoord:
    """``(DeltaH', 2 I', VI')`` of an aggregate decomposition."""
    return _normalize(d.delta_h, 2 * d.binding, d.vi, d.h_u_total, "aggregate")


def normalize_split(d: SplitDecomposition) -> TriangleCoord:
    """``(DeltaH'_side, I', H'_cond)`` normalized by the side's uniform entropy."""
    return _normalize(d.delta_h, d.binding, d.h_cond, d.h_u, f"split-{d.side}")


def cbet_from_confusion(counts):
    """Triangle coordinates of a classifier from its confusion matrix.

    Rows index the true class, columns the predicted class.

    Returns
    -------
    aggregate : TriangleCoord
    split : tuple of TriangleCoord
        ``(true-class side, predicted side)``.
    """
    n = np.asarray(counts, dtype=float)
    if n.ndim != 2 or n.shape[0] != n.shape[1]:
        raise ConfigError(f"confusion matrix must be square, got shape {n.shape}")
    J = from_table(n, variables=("K", "K_hat"))
    part = Partition(["K"], ["K_hat"])
    agg = normalize_aggregate(channel_balance(J, part))
    sx, sy = split_balance(J, part)
    return agg, (normalize_split(sx), normalize_split(sy))


def classify_region(c: TriangleCoord, threshold: float = 0.8) -> str:
    """Coarse reading of where a point sits in the triangle.

    ``faithful`` near the information apex, ``randomizing`` near the
    variation-of-information vertex, ``rigid`` near the divergence vertex,
    ``intermediate`` otherwise.
    """
    if not (1 / 3 < threshold <= 1):
        raise ConfigError(f"threshold must lie in (1/3, 1], got {threshold}")
    if c.info_prime >= threshold:
        return "faithful"
    if c.vi_prime >= threshold:
        return "randomizing"
    if c.delta_prime >= threshold:
        return "rigid"
    return "intermediate"
