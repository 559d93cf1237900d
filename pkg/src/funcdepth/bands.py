"""Bands delimited by sample curves and the masks measured against them.

All functions work pointwise on the grid. Containment is inclusive at the
band boundary, so a delimiting curve always lies inside its own band.
Masks are boolean arrays; their measure is the fraction of true points.
"""

from dataclasses import dataclass

import numpy as np

from .exceptions import BadIndicesError, MismatchedLengthError
from .sample import measure

__all__ = [
    "BandEnvelope",
    "CorrectedBand",
    "envelope",
    "contains_graph",
    "inside_mask",
    "dominance",
    "corrected_band",
    "corrected_contains",
    "corrected_inside_mask",
    "longest_true_run",
    "longest_false_run",
    "longest_runs",
]


@dataclass(frozen=True)
class BandEnvelope:
    lower: np.ndarray
    upper: np.ndarray
    delimiter_indices: tuple


@dataclass(frozen=True)
class CorrectedBand:
    """Band restricted to the dominance set of one orientation.

    ``domain`` marks the grid points where ``lower <= upper``; points outside
    it are ignored by containment tests. ``weight`` is the measure of the
    domain.
    """

    domain: np.ndarray
    lower: np.ndarray
    upper: np.ndarray
    weight: float
    flipped: bool  # True when the second curve of the pair is the lower one


def _values(sample):
    return getattr(sample, "values", sample)


def envelope(sample, indices):
    """Pointwise min and max of the curves ``indices`` of ``sample``."""
    X = np.asarray(_values(sample), dtype=float)
    idx = tuple(int(i) for i in indices)
    if len(idx) < 2:
        raise BadIndicesError("a band needs at least 2 delimiting curves")
    if len(set(idx)) != len(idx):
        raise BadIndicesError(f"delimiting indices must be distinct, got {idx}")
    if min(idx) < 0 or max(idx) >= X.shape[0]:
        raise BadIndicesError(f"indices {idx} out of range for {X.shape[0]} curves")
    rows = X[list(idx)]
    return BandEnvelope(rows.min(axis=0), rows.max(axis=0), idx)


def _same_length(x, *others):
    x = np.asarray(x, dtype=float)
    for o in others:
        if np.shape(o) != x.shape:
            raise MismatchedLengthError(
                f"curve of shape {x.shape} against band of shape {np.shape(o)}"
            )
    return x


def inside_mask(x, band):
    x = _same_length(x, band.lower)
    return (band.lower <= x) & (x <= band.upper)


def contains_graph(x, band):
    return bool(np.all(inside_mask(x, band)))


def dominance(x_a, x_b):
    """Points where ``x_b >= x_a`` and their measure.

    Ties count as dominated in both directions.
    """
    x_a = _same_length(x_a, x_b)
    mask = np.asarray(x_b, dtype=float) - x_a >= 0
    return mask, measure(mask)


def corrected_band(x_a, x_b):
    """Corrected band for the ordered pair ``(x_a, x_b)``.

    ``x_a`` is taken as the lower curve when it lies at or below ``x_b``
    on at least half the grid; otherwise the orientation is flipped. The
    exact half/half split keeps the first orientation.
    """
    x_a = _same_length(x_a, x_b)
    x_b = np.asarray(x_b, dtype=float)
    mask_ab, l_ab = dominance(x_a, x_b)
    if l_ab >= 0.5:
        return CorrectedBand(mask_ab, x_a, x_b, l_ab, False)
    mask_ba, l_ba = dominance(x_b, x_a)
    return CorrectedBand(mask_ba, x_b, x_a, l_ba, True)


def corrected_inside_mask(x, cb):
    x = _same_length(x, cb.lower)
    return cb.domain & (cb.lower <= x) & (x <= cb.upper)


def corrected_contains(x, cb):
    # vacuously true on an empty domain
    inside = corrected_inside_mask(x, cb)
    return bool(np.array_equal(inside, cb.domain))


def longest_runs(mask, axis=-1):
    """Longest run lengths of true and of false values along ``axis``.

    Returns two integer arrays (point counts, not proportions) with
    ``axis`` removed. Vectorized over every other axis.
    """
    mask = np.moveaxis(np.asarray(mask, dtype=bool), axis, 0)
    shape = mask.shape[1:]
    run_in = np.zeros(shape, dtype=np.int32)
    run_out = np.zeros(shape, dtype=np.int32)
    best_in = np.zeros(shape, dtype=np.int32)
    best_out = np.zeros(shape, dtype=np.int32)
    for bit in mask:
        run_in += 1
        run_in *= bit
        run_out += 1
        run_out *= ~bit
        np.maximum(best_in, run_in, out=best_in)
        np.maximum(best_out, run_out, out=best_out)
    return best_in, best_out


def longest_true_run(mask):
    mask = np.asarray(mask, dtype=bool)
    return int(longest_runs(mask)[0]) / mask.size


def longest_false_run(mask):
    mask = np.asarray(mask, dtype=bool)
    return int(longest_runs(mask)[1]) / mask.size
