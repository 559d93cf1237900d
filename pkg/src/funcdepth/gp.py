"""Gaussian-process curves via dense Cholesky factors of the covariance."""

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .exceptions import ConfigError, NotFactorizableError

__all__ = [
    "GpSpec",
    "linear_trend",
    "gp_covariance",
    "gp_factor",
    "sample_gp",
    "JITTERS",
]

JITTERS = (0.0, 1e-12, 1e-10, 1e-8)


def linear_trend(t):
    """Mean function ``g(t) = 4 t`` of the simulation models."""
    return 4.0 * np.asarray(t, dtype=float)


@dataclass(frozen=True)
class GpSpec:
    """Covariance ``k * exp(-c * |s - t| ** mu)`` plus a mean function."""

    k: float = 1.0
    c: float = 1.0
    mu: float = 1.5
    mean_fn: Callable = linear_trend

    def __post_init__(self):
        for name in ("k", "c", "mu"):
            if not getattr(self, name) > 0:
                raise ConfigError(f"{name} must be positive, got {getattr(self, name)}")


def gp_covariance(grid, spec):
    grid = np.asarray(grid, dtype=float)
    dist = np.abs(grid[:, None] - grid[None, :])
    return spec.k * np.exp(-spec.c * dist ** spec.mu)


def gp_factor(cov, jitters=JITTERS):
    """Lower Cholesky factor of ``cov + jitter * I``.

    Tries each jitter in turn and returns ``(L, jitter)`` for the first one
    that factorizes.
    """
    cov = np.asarray(cov, dtype=float)
    if cov.ndim != 2 or cov.shape[0] != cov.shape[1]:
        raise ConfigError(f"covariance must be square, got {cov.shape}")
    if not np.allclose(cov, cov.T, rtol=0, atol=1e-12):
        raise ConfigError("covariance must be symmetric")
    eye = np.eye(cov.shape[0])
    for jitter in jitters:
        try:
            return np.linalg.cholesky(cov + jitter * eye), jitter
        except np.linalg.LinAlgError:
            continue
    raise NotFactorizableError(
        f"covariance is not positive definite even with jitter {jitters[-1]:g}"
    )


def sample_gp(factor, mean_fn, grid, rng, size=None):
    """Draw curves ``mean_fn(grid) + factor @ z`` with standard normal ``z``.

    Returns one curve, or an array of ``size`` curves.
    """
    factor = np.asarray(factor, dtype=float)
    mean = np.asarray(mean_fn(np.asarray(grid, dtype=float)), dtype=float)
    if size is None:
        return mean + factor @ rng.standard_normal(factor.shape[1])
    z = rng.standard_normal((size, factor.shape[1]))
    return mean + z @ factor.T
