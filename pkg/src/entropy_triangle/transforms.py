"""Feature transformations: logarithm, PCA and fastICA, plus ranking sweeps.

PCA diagonalizes the sample covariance with a cyclic Jacobi sweep, which
is deterministic and plenty fast for the tens of features we deal with.
fastICA is the symmetric ("parallel") fixed-point scheme with the log-cosh
contrast.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, DataError, EntropyTriangleError

__all__ = [
    "LogTransform",
    "log_transform",
    "jacobi_eigh",
    "PcaModel",
    "pca_fit",
    "pca_project",
    "IcaModel",
    "IcaParams",
    "fastica",
    "ranking_sweep",
    "iter_ranking_sweep",
    "SweepError",
]


@dataclass(frozen=True)
class LogTransform:
    values: np.ndarray
    shifted: tuple  # per column: True if x -> log(x - min + 1) was used


def log_transform(data, shift: bool = False) -> LogTransform:
    """Element-wise natural logarithm.

    With ``shift=True`` any column holding a non-positive value is mapped
    through ``log(x - min + 1)`` instead, so its minimum goes to 0.
    """
    x = np.asarray(data, dtype=float)
    if x.ndim == 1:
        x = x[:, None]
    out = np.empty_like(x)
    shifted = []
    for j in range(x.shape[1]):
        col = x[:, j]
        if np.all(col > 0):
            out[:, j] = np.log(col)
            shifted.append(False)
        elif shift:
            out[:, j] = np.log(col - col.min() + 1.0)
            shifted.append(True)
        else:
            r = int(np.argmax(~(col > 0)))
            raise DataError(
                f"log of non-positive value {col[r]!r} at row {r}, column {j}; "
                "enable shift to use log(x - min + 1)"
            )
    return LogTransform(out, tuple(shifted))


def jacobi_eigh(a, tol: float = 1e-14, max_sweeps: int = 100):
    """Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.

    Returns ``(eigenvalues, eigenvectors)`` with eigenvectors in columns,
    unsorted.
    """
    a = np.array(a, dtype=float)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ConfigError("jacobi_eigh needs a square matrix")
    a = (a + a.T) / 2
    v = np.eye(n)
    scale = np.sqrt(np.sum(a * a)) or 1.0
    for _ in range(max_sweeps):
        off = np.sqrt(np.sum(np.tril(a, -1) ** 2))
        if off <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= 1e-300:
                    continue
                theta = (a[q, q] - a[p, p]) / (2 * apq)
                t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1)) if theta else 1.0
                c = 1 / np.sqrt(t * t + 1)
                s = t * c
                # A <- R^T A R with R the (p, q) rotation
                ap = a[:, p].copy()
                aq = a[:, q].copy()
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                ap = a[p, :].copy()
                aq = a[q, :].copy()
                a[p, :] = c * ap - s * aq
                a[q, :] = s * ap + c * aq
                a[p, q] = a[q, p] = 0.0
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    else:
        warnings.warn("Jacobi eigen-solver hit max_sweeps", RuntimeWarning, stacklevel=2)
    return np.diag(a).copy(), v


@dataclass(frozen=True)
class PcaModel:
    mean: np.ndarray
    components: np.ndarray  # rows are orthonormal directions
    eigenvalues: np.ndarray  # nonincreasing

    @property
    def n_features(self) -> int:
        return self.components.shape[1]


def pca_fit(data) -> PcaModel:
    """Principal axes of the sample covariance (divisor ``m - 1``).

    Components are ordered by nonincreasing eigenvalue; exact ties keep the
    order of the axis each eigenvector leans on most. Each component is
    signed so its largest-magnitude entry is positive.
    """
    x = np.asarray(data, dtype=float)
    if x.ndim != 2:
        raise ConfigError("PCA needs a 2-D data matrix")
    m, n = x.shape
    if m < 2:
        raise DataError(f"PCA needs at least 2 rows, got {m}")
    if not np.all(np.isfinite(x)):
        raise DataError("PCA input contains non-finite values")
    mean = x.mean(axis=0)
    xc = x - mean
    cov = xc.T @ xc / (m - 1)
    vals, vecs = jacobi_eigh(cov)
    dominant_axis = np.argmax(np.abs(vecs), axis=0)
    order = np.lexsort((dominant_axis, -vals))
    vals = vals[order]
    vecs = vecs[:, order].T.copy()
    for r in range(n):
        j = np.argmax(np.abs(vecs[r]))
        if vecs[r, j] < 0:
            vecs[r] = -vecs[r]
    return PcaModel(mean, vecs, vals)


def pca_project(model: PcaModel, data, k: int | None = None) -> np.ndarray:
    """Scores of ``data`` on the first ``k`` principal components."""
    n = model.n_features
    if k is None:
        k = n
    if not 1 <= k <= n:
        raise ConfigError(f"k must be in [1, {n}], got {k}")
    x = np.asarray(data, dtype=float)
    return (x - model.mean) @ model.components[:k].T


@dataclass(frozen=True)
class IcaParams:
    alpha: float = 1.0
    maxit: int = 200
    tol: float = 1e-4
    fun: str = "logcosh"

    def __post_init__(self):
        if self.fun != "logcosh":
            raise ConfigError(f"only fun='logcosh' is supported, got {self.fun!r}")
        if not 1 <= self.alpha <= 2:
            raise ConfigError(f"alpha must be in [1, 2], got {self.alpha}")
        if self.maxit < 1 or self.tol <= 0:
            raise ConfigError("maxit must be >= 1 and tol > 0")


@dataclass(frozen=True)
class IcaModel:
    """A fitted fastICA unmixing.

    Sources are ``unmixing @ whitening @ (x - mean)``, one row per component.
    """

    mean: np.ndarray
    whitening: np.ndarray  # k x n
    unmixing: np.ndarray  # k x k, orthonormal
    k: int
    n_iter: int
    converged: bool
    seed: int
    params: IcaParams = field(default_factory=IcaParams)

    def transform(self, data) -> np.ndarray:
        x = np.asarray(data, dtype=float) - self.mean
        return x @ (self.unmixing @ self.whitening).T


def _sym_decorrelate(w: np.ndarray) -> np.ndarray:
    # (W W^T)^{-1/2} W
    s, u = np.linalg.eigh(w @ w.T)
    s = np.clip(s, np.finfo(float).tiny, None)
    return (u * (1.0 / np.sqrt(s))) @ u.T @ w


def fastica(data, k: int, params: IcaParams | None = None, seed: int = 17) -> IcaModel:
    """Symmetric fixed-point ICA with the log-cosh contrast.

    Columns are centered but not scaled, then whitened on the top ``k``
    principal axes. Each iteration applies
    ``W <- E[g(Wz) z^T] - diag(E[g'(Wz)]) W`` with ``g = tanh(alpha u)``
    followed by symmetric decorrelation, until every row of ``W`` has
    stopped turning (``max |1 - |diag(W_new W_old^T)|| < tol``).

    Non-convergence within ``maxit`` only warns; the returned model then has
    ``converged=False``.
    """
    params = params or IcaParams()
    x = np.asarray(data, dtype=float)
    if x.ndim == 1:
        x = x[:, None]
    m, n = x.shape
    if not 1 <= k <= n:
        raise ConfigError(f"k must be in [1, {n}], got {k}")
    if m <= n:
        raise DataError(f"fastICA needs more rows than columns (m={m}, n={n})")
    pca = pca_fit(x)
    vals = pca.eigenvalues
    usable = int(np.sum(vals > 1e-12 * max(vals[0], 0.0))) if vals[0] > 0 else 0
    if usable < k:
        raise DataError(f"whitening is rank deficient: {usable} usable components < k={k}")
    whitening = pca.components[:k] / np.sqrt(vals[:k])[:, None]
    z = (x - pca.mean) @ whitening.T  # m x k, unit covariance

    rng = np.random.default_rng(seed)
    w = _sym_decorrelate(rng.standard_normal((k, k)))
    alpha = params.alpha
    converged = False
    it = 0
    for it in range(1, params.maxit + 1):
        wz = z @ w.T  # m x k
        g = np.tanh(alpha * wz)
        g_prime = alpha * (1.0 - g * g)
        w_new = g.T @ z / m - g_prime.mean(axis=0)[:, None] * w
        w_new = _sym_decorrelate(w_new)
        lim = np.max(np.abs(np.abs(np.einsum("ij,ij->i", w_new, w)) - 1.0))
        w = w_new
        if lim < params.tol:
            converged = True
            break
    if not converged:
        warnings.warn(
            f"fastICA did not converge in {params.maxit} iterations (k={k}, seed={seed})",
            RuntimeWarning, stacklevel=2,
        )
    return IcaModel(pca.mean, whitening, w, k, it, converged, seed, params)


class SweepError(EntropyTriangleError):
    """A transform failed at one step of a ranking sweep."""

    def __init__(self, i: int, cause: Exception):
        super().__init__(f"sweep step i={i} failed: {cause}")
        self.i = i
        self.cause = cause
        self.exit_code = getattr(cause, "exit_code", 3)


def iter_ranking_sweep(data, method: str = "pca", max_i: int | None = None, seed: int = 17,
                       params: IcaParams | None = None):
    """Generator form of :func:`ranking_sweep`.

    Steps completed before a failure have already been yielded when the
    :class:`SweepError` is raised.
    """
    x = np.asarray(data, dtype=float)
    n = x.shape[1]
    max_i = n if max_i is None else max_i
    if not 1 <= max_i <= n:
        raise ConfigError(f"max_i must be in [1, {n}], got {max_i}")
    if method == "pca":
        try:
            scores = pca_project(pca_fit(x), x)
        except EntropyTriangleError as e:
            raise SweepError(1, e) from e
        for i in range(1, max_i + 1):
            yield i, scores[:, :i]
    elif method == "ica":
        for i in range(1, max_i + 1):
            try:
                model = fastica(x, i, params=params, seed=seed + i)
            except EntropyTriangleError as e:
                raise SweepError(i, e) from e
            yield i, model.transform(x)
    else:
        raise ConfigError(f"method must be 'pca' or 'ica', got {method!r}")


def ranking_sweep(data, method: str = "pca", max_i: int | None = None, seed: int = 17,
                  params: IcaParams | None = None):
    """Candidate feature sets built from the top ``i`` transformed features.

    PCA is fitted once and the ``i``-th set is the first ``i`` score
    columns, so sets are nested. ICA has no ranking; every ``i`` gets its
    own run with ``k = i`` seeded with ``seed + i``.

    Returns a list of ``(i, scores)`` for ``i = 1..max_i``.
    """
    return list(iter_ranking_sweep(data, method, max_i, seed, params))
