"""Location estimates from depth orderings and their integrated errors."""

from dataclasses import dataclass, field

import numpy as np

from .depth import rank_order
from .exceptions import ConfigError, GridMismatchError, MismatchedLengthError
from .sample import canonical_grid, check_curves

__all__ = [
    "mean_curve",
    "trim_count",
    "trimmed_mean",
    "integrated_error",
    "ErrorTable",
    "adjust_errors",
]


def mean_curve(X):
    X = check_curves(getattr(X, "values", X), min_curves=1)
    return X.mean(axis=0)


def trim_count(n, alpha):
    """Number of curves dropped: the integer part of ``n * alpha``."""
    if not 0 <= alpha < 1:
        raise ConfigError(f"alpha must be in [0, 1), got {alpha}")
    return int(n * alpha)


def trimmed_mean(X, depths, alpha):
    """Pointwise mean of the ``n - [n alpha]`` deepest curves.

    Ties in depth are resolved by curve index, as in
    :func:`funcdepth.depth.rank_order`.
    """
    X = check_curves(getattr(X, "values", X), min_curves=1)
    depths = np.asarray(depths, dtype=float)
    if depths.shape != (X.shape[0],):
        raise MismatchedLengthError(
            f"{depths.size} depths for {X.shape[0]} curves"
        )
    keep = X.shape[0] - trim_count(X.shape[0], alpha)
    return X[rank_order(depths)[:keep]].mean(axis=0)


def integrated_error(estimate, truth_fn, grid):
    """Mean squared deviation from ``truth_fn`` over the grid points.

    ``grid`` must be the canonical grid ``k / V``; pass an integer ``V`` to
    use it directly.
    """
    estimate = np.asarray(estimate, dtype=float)
    if np.isscalar(grid):
        grid = canonical_grid(grid)
    grid = np.asarray(grid, dtype=float)
    if grid.shape != estimate.shape:
        raise GridMismatchError(
            f"estimate has {estimate.size} points, grid has {grid.size}"
        )
    if not np.allclose(grid, canonical_grid(grid.size), rtol=0, atol=1e-12):
        raise GridMismatchError("integrated error is defined on the grid k / V")
    resid = estimate - np.asarray(truth_fn(grid), dtype=float)
    return float(np.mean(resid ** 2))


@dataclass
class ErrorTable:
    """Integrated errors of several estimators over replications.

    ``raw[j, m]`` is the error of ``methods[m]`` in replication ``j``.
    ``adjusted`` subtracts each replication's smallest error, so the best
    estimator of every replication scores exactly 0.
    """

    methods: list
    raw: np.ndarray
    adjusted: np.ndarray = field(default=None)

    def __post_init__(self):
        self.methods = list(self.methods)
        self.raw = np.atleast_2d(np.asarray(self.raw, dtype=float))
        if self.raw.shape[1] != len(self.methods):
            raise MismatchedLengthError(
                f"{self.raw.shape[1]} error columns for {len(self.methods)} methods"
            )
        if self.adjusted is None:
            self.adjusted = self.raw - self.raw.min(axis=1, keepdims=True)

    @property
    def n_replications(self):
        return self.raw.shape[0]

    @property
    def mean(self):
        return dict(zip(self.methods, self.adjusted.mean(axis=0)))

    @property
    def sd(self):
        ddof = 1 if self.n_replications > 1 else 0
        return dict(zip(self.methods, self.adjusted.std(axis=0, ddof=ddof)))


def adjust_errors(table):
    """Recompute adjusted errors against the per-replication minimum.

    The minimum runs over every column, the plain mean included.
    """
    return ErrorTable(table.methods, table.raw)
