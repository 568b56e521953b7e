"""Bivariate and multivariate information measures in bits.

Two families live here. The *channel* measures take a
:class:`~entropy_triangle.joint.Partition` and describe what passes between
the two blocks (binding information, channel variation of information,
divergence from uniformity). The *source* measures look at all variables
of a distribution as one homogeneous set (total correlation, dual total
correlation, co-information, bound information).
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, ConsistencyError
from .joint import (
    JointDistribution,
    Partition,
    entropy,
    marginalize,
    uniform_entropy,
)

__all__ = [
    "SourceDecomposition",
    "mutual_information",
    "binding_information",
    "binding_information_routes",
    "variation_of_information_channel",
    "delta_uniformity",
    "total_correlation",
    "dual_total_correlation",
    "source_vi",
    "bound_information",
    "co_information",
    "kl_multiinformation",
    "source_decomposition",
]

ROUTE_RTOL = 1e-9
# Absolute floor for the route comparison; relative error is meaningless near 0.
ROUTE_ATOL = 1e-12
MAX_COINFO_VARS = 20


def _nonneg(x: float) -> float:
    return x if x > 0.0 else 0.0


def _block_entropies(J: JointDistribution, part: Partition):
    part.validate(J)
    hx = entropy(marginalize(J, part.x_vars))
    hy = entropy(marginalize(J, part.y_vars))
    return hx, hy, entropy(J)


def mutual_information(J: JointDistribution, part: Partition) -> float:
    """``H(X) + H(Y) - H(X, Y)`` for the two blocks of ``part``."""
    hx, hy, hxy = _block_entropies(J, part)
    return _nonneg(hx + hy - hxy)


def _kl_binding(J: JointDistribution, part: Partition) -> float:
    # sum p(x,y) log p(x,y) / (p(x) p(y)) over the sparse support
    ix, iy = J.indices(part.x_vars), J.indices(part.y_vars)
    p = J.probabilities
    px = _marginal_lookup(J, ix)
    py = _marginal_lookup(J, iy)
    return math.fsum(p * np.log2(p / (px * py)))


def _marginal_lookup(J: JointDistribution, idx) -> np.ndarray:
    """Marginal probability of each support row's projection onto ``idx``."""
    _, inv = np.unique(J.support[:, idx], axis=0, return_inverse=True)
    inv = inv.reshape(-1)
    w = np.bincount(inv, weights=J.weights)
    return (w / J.total)[inv]


def binding_information_routes(J: JointDistribution, part: Partition) -> tuple[float, float, float]:
    """Binding information by three independent routes.

    Returns ``(internal, external, divergence)``:

    * internal: ``H(X,Y) - [H(X|Y) + H(Y|X)]``
    * external: ``H(X) + H(Y) - H(X,Y)``
    * divergence: Kullback-Leibler divergence of the joint from the product
      of its block marginals.
    """
    hx, hy, hxy = _block_entropies(J, part)
    vi = (hxy - hy) + (hxy - hx)
    internal = hxy - vi
    external = hx + hy - hxy
    divergence = _kl_binding(J, part)
    return internal, external, divergence


def binding_information(J: JointDistribution, part: Partition) -> float:
    """Information shared by the two blocks of a partitioned distribution.

    The three routes of :func:`binding_information_routes` are cross-checked
    and the internal one is returned.

    Raises
    ------
    ConsistencyError
        If the routes disagree by more than ``1e-9`` relative.
    """
    internal, external, divergence = binding_information_routes(J, part)
    scale = max(abs(internal), abs(external), abs(divergence))
    tol = max(ROUTE_RTOL * scale, ROUTE_ATOL)
    if (abs(internal - external) > tol or abs(internal - divergence) > tol
            or abs(external - divergence) > tol):
        raise ConsistencyError(
            "binding information routes disagree: "
            f"internal={internal!r}, external={external!r}, divergence={divergence!r}"
        )
    if internal < -ROUTE_ATOL:
        raise ConsistencyError(f"negative binding information {internal!r}")
    return _nonneg(internal)


def variation_of_information_channel(J: JointDistribution, part: Partition):
    """Channel variation of information ``H(X|Y) + H(Y|X)``.

    Returns ``(vi, h_x_given_y, h_y_given_x)``.
    """
    hx, hy, hxy = _block_entropies(J, part)
    hxgy = _nonneg(hxy - hy)
    hygx = _nonneg(hxy - hx)
    return hxgy + hygx, hxgy, hygx


def delta_uniformity(J: JointDistribution, part: Partition):
    """Divergence of each block marginal from the uniform distribution.

    Returns ``(delta_x, delta_y, delta_x + delta_y)``.
    """
    hx, hy, _ = _block_entropies(J, part)
    dx = _nonneg(uniform_entropy(J, part.x_vars) - hx)
    dy = _nonneg(uniform_entropy(J, part.y_vars) - hy)
    return dx, dy, dx + dy


def _single_entropies(J: JointDistribution) -> list[float]:
    return [entropy(marginalize(J, [v])) for v in J.variables]


def _residual_entropies(J: JointDistribution) -> list[float]:
    # H(X_i | rest) = H(all) - H(rest)
    h = entropy(J)
    if J.n_vars == 1:
        return [h]
    out = []
    for v in J.variables:
        rest = [u for u in J.variables if u != v]
        out.append(_nonneg(h - entropy(marginalize(J, rest))))
    return out


def total_correlation(J: JointDistribution) -> float:
    """Sum of single-variable entropies minus the joint entropy."""
    return _nonneg(math.fsum(_single_entropies(J)) - entropy(J))


def source_vi(J: JointDistribution) -> float:
    """Sum over variables of the entropy left after conditioning on all others."""
    return math.fsum(_residual_entropies(J))


def dual_total_correlation(J: JointDistribution) -> float:
    """Joint entropy minus :func:`source_vi`."""
    return _nonneg(entropy(J) - source_vi(J))


def bound_information(J: JointDistribution) -> float:
    return total_correlation(J) + dual_total_correlation(J)


def co_information(J: JointDistribution) -> float:
    """Inclusion-exclusion information shared by all variables (signed).

    ``sum over non-empty subsets S of (-1)**(|S|+1) * H(S)``, which reduces to
    mutual information for two variables and is ``-1`` bit for XOR.
    """
    n = J.n_vars
    if n < 2:
        raise ConfigError("co-information needs at least two variables")
    if n > MAX_COINFO_VARS:
        raise ConfigError(
            f"co-information enumerates 2**n subsets; refusing n={n} > {MAX_COINFO_VARS}, "
            "select fewer variables"
        )
    terms = []
    for r in range(1, n + 1):
        sign = 1.0 if r % 2 else -1.0
        for subset in itertools.combinations(J.variables, r):
            terms.append(sign * entropy(marginalize(J, subset)))
    return math.fsum(terms)


def kl_multiinformation(J: JointDistribution) -> float:
    """Divergence of the joint from the product of all single marginals.

    This is the total correlation written as a Kullback-Leibler sum; it is
    never negative, unlike :func:`co_information`.
    """
    p = J.probabilities
    prod = np.ones_like(p)
    for j in range(J.n_vars):
        prod = prod * _marginal_lookup(J, [j])
    return math.fsum(p * np.log2(p / prod))


@dataclass(frozen=True)
class SourceDecomposition:
    """Multivariate source measures of a set of variables, in bits."""

    h_joint: float
    h_pi: float
    total_correlation: float
    dual_total_correlation: float
    source_vi: float
    bound_information: float
    co_information: float | None


def source_decomposition(J: JointDistribution) -> SourceDecomposition:
    """All source measures in one pass.

    ``co_information`` is ``None`` for a single variable or when there are
    too many variables to enumerate subsets.
    """
    h = entropy(J)
    h_pi = math.fsum(_single_entropies(J))
    vi = math.fsum(_residual_entropies(J))
    c = _nonneg(h_pi - h)
    d = _nonneg(h - vi)
    co = co_information(J) if 2 <= J.n_vars <= MAX_COINFO_VARS else None
    return SourceDecomposition(h, h_pi, c, d, vi, c + d, co)
