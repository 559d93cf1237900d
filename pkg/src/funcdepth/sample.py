"""Curve samples on a shared grid, plus the input checks every module uses."""

from dataclasses import dataclass, field

import numpy as np

from .exceptions import (
    BadGridError,
    MismatchedLengthError,
    NonFiniteError,
    TooFewCurvesError,
    ValidationError,
)

__all__ = [
    "FunctionalSample",
    "canonical_grid",
    "check_grid",
    "check_curves",
    "check_curve",
    "validate_sample",
    "measure",
]


def canonical_grid(n_points):
    """Equally spaced grid ``k / V`` for ``k = 1..V``."""
    n_points = int(n_points)
    if n_points < 2:
        raise BadGridError(f"a grid needs at least 2 points, got {n_points}")
    return np.arange(1, n_points + 1, dtype=float) / n_points


def check_grid(grid):
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size < 2:
        raise BadGridError("grid must be a 1-D sequence of at least 2 points")
    if not np.all(np.isfinite(grid)):
        raise BadGridError("grid contains non-finite abscissae")
    if np.any(np.diff(grid) <= 0):
        raise BadGridError("grid abscissae must be strictly increasing")
    if grid[0] < 0 or grid[-1] > 1:
        raise BadGridError("grid abscissae must lie in [0, 1]")
    return grid


def check_curves(X, n_points=None, min_curves=2):
    """Coerce ``X`` to a float array of shape (n_curves, n_points).

    A single 1-D curve is not accepted here; use :func:`check_curve`.
    """
    try:
        X = np.asarray(X, dtype=float)
    except ValueError as exc:
        # ragged nested sequences end up here
        raise MismatchedLengthError(f"curves do not form a matrix: {exc}") from None
    if X.ndim != 2:
        raise MismatchedLengthError(
            f"expected a 2-D array of curves, got shape {X.shape}"
        )
    if n_points is not None and X.shape[1] != n_points:
        raise MismatchedLengthError(
            f"curves have {X.shape[1]} points but the grid has {n_points}"
        )
    if X.shape[0] < min_curves:
        raise TooFewCurvesError(
            f"need at least {min_curves} curves, got {X.shape[0]}"
        )
    if not np.all(np.isfinite(X)):
        bad = np.argwhere(~np.isfinite(X))[0]
        raise NonFiniteError(f"non-finite value in curve {bad[0]} at point {bad[1]}")
    return X


def check_curve(x, n_points):
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or x.size != n_points:
        raise MismatchedLengthError(
            f"curve has shape {x.shape}, expected ({n_points},)"
        )
    if not np.all(np.isfinite(x)):
        raise NonFiniteError("curve contains non-finite values")
    return x


@dataclass(frozen=True)
class FunctionalSample:
    """``n`` curves observed on one ordered grid.

    ``values[i]`` is curve ``i``; ``ids`` default to the row indices.
    Construction validates everything, so an instance is always usable
    for depth computations.
    """

    grid: np.ndarray
    values: np.ndarray
    ids: tuple = field(default=None)

    def __post_init__(self):
        grid = check_grid(self.grid)
        values = check_curves(self.values, n_points=grid.size)
        ids = self.ids
        if ids is None:
            ids = tuple(str(i) for i in range(values.shape[0]))
        else:
            ids = tuple(ids)
        if len(ids) != values.shape[0]:
            raise MismatchedLengthError(
                f"{len(ids)} ids for {values.shape[0]} curves"
            )
        if len(set(ids)) != len(ids):
            raise ValidationError("curve ids must be unique")
        grid.setflags(write=False)
        values = values.copy()
        values.setflags(write=False)
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "ids", ids)

    @classmethod
    def from_array(cls, X, grid=None, ids=None):
        X = np.asarray(X, dtype=float)
        if grid is None:
            if X.ndim != 2:
                raise MismatchedLengthError(f"expected 2-D curves, got {X.shape}")
            grid = canonical_grid(X.shape[1])
        return cls(grid=grid, values=X, ids=ids)

    @property
    def n_curves(self):
        return self.values.shape[0]

    @property
    def n_points(self):
        return self.grid.size

    def __len__(self):
        return self.n_curves

    def subset(self, indices):
        indices = np.asarray(indices, dtype=int)
        return FunctionalSample(
            self.grid, self.values[indices], tuple(self.ids[i] for i in indices)
        )


def validate_sample(sample):
    """Re-check a sample built by other means; returns it unchanged.

    Accepts a :class:`FunctionalSample` or a ``(grid, values)`` pair.
    """
    if isinstance(sample, FunctionalSample):
        grid, values, ids = sample.grid, sample.values, sample.ids
    else:
        grid, values = sample
        ids = None
    FunctionalSample(grid, values, ids)
    return sample


def measure(mask):
    """Proportion of grid points where ``mask`` is true (counting measure)."""
    mask = np.asarray(mask, dtype=bool)
    return np.count_nonzero(mask) / mask.size
