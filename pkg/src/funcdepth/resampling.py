"""Resampled depth: average depth against K random balanced parts of a sample.

Computing depth against parts of size ``n / K`` cuts the pair count by
roughly a factor ``K``. :func:`rank_agreement_study` checks how closely
the induced rank order follows the full-sample one.
"""

from dataclasses import dataclass, field

import numpy as np
from joblib import Parallel, delayed
from scipy import stats

from .depth import depth_values, parse_method, rank_order, ranks_from_order
from .exceptions import ConfigError, PartTooSmallError
from .gp import GpSpec, gp_covariance, gp_factor, sample_gp
from .sample import canonical_grid, check_curve, check_curves

__all__ = [
    "Partition",
    "random_partition",
    "resampled_depth_values",
    "resampled_depth",
    "RankAgreementReport",
    "rank_agreement_study",
]


@dataclass(frozen=True)
class Partition:
    """Assignment of curve ``i`` to part ``assignment[i]`` in ``0..n_parts-1``."""

    assignment: np.ndarray
    n_parts: int

    @classmethod
    def single(cls, n):
        return cls(np.zeros(n, dtype=np.int64), 1)

    @property
    def parts(self):
        """Member indices of each part, ascending within a part."""
        return [np.flatnonzero(self.assignment == k) for k in range(self.n_parts)]


def random_partition(n, n_parts, rng):
    """Shuffle ``0..n-1`` and deal the indices round-robin into ``n_parts`` parts."""
    n, n_parts = int(n), int(n_parts)
    if n_parts < 1:
        raise ConfigError(f"number of parts must be >= 1, got {n_parts}")
    if n // n_parts < 2:
        raise PartTooSmallError(
            f"{n} curves in {n_parts} parts leaves a part with fewer than 2 curves"
        )
    assignment = np.empty(n, dtype=np.int64)
    assignment[rng.permutation(n)] = np.arange(n) % n_parts
    return Partition(assignment, n_parts)


def resampled_depth_values(reference, partition, methods, X=None):
    """Mean over parts of the depths of ``X`` against each part.

    ``X`` defaults to the reference curves; a reference curve then takes
    part in the bands of its own part.
    """
    ref = check_curves(getattr(reference, "values", reference))
    if partition.assignment.shape != (ref.shape[0],):
        raise ConfigError("partition does not match the number of curves")
    X = ref if X is None else check_curves(X, n_points=ref.shape[1], min_curves=1)
    labels = [parse_method(m).label for m in methods]
    totals = {label: np.zeros(X.shape[0]) for label in labels}
    for part in partition.parts:
        d = depth_values(ref[part], X, methods)
        for label in labels:
            totals[label] += d[label]
    return {label: totals[label] / partition.n_parts for label in labels}


def resampled_depth(x, sample, partition, method):
    ref = check_curves(getattr(sample, "values", sample))
    x = check_curve(x, ref.shape[1])
    label = parse_method(method).label
    return float(resampled_depth_values(ref, partition, [method], x[None])[label][0])


@dataclass
class RankAgreementReport:
    """Resampled ranks reordered by the full-sample rank order.

    ``reordered[b, p]`` is the resampled rank (1 = deepest) of the curve at
    full-sample position ``p`` in repeat ``b``.
    """

    method: str
    reordered: np.ndarray
    correlations: np.ndarray = field(init=False)

    def __post_init__(self):
        self.reordered = np.asarray(self.reordered, dtype=float)
        self.correlations = np.array(
            [_spearman(np.arange(1, row.size + 1), row) for row in self.reordered]
        )

    @property
    def n_repeats(self):
        return self.reordered.shape[0]

    @property
    def mean_rank(self):
        return self.reordered.mean(axis=0)

    @property
    def sd_rank(self):
        ddof = 1 if self.n_repeats > 1 else 0
        return self.reordered.std(axis=0, ddof=ddof)

    @property
    def mean_correlation(self):
        return float(self.correlations.mean())

    def segment_correlation(self, start, stop):
        """Mean over repeats of the rank correlation on positions ``start:stop``."""
        pos = np.arange(start, stop) + 1
        return float(np.mean([_spearman(pos, row[start:stop]) for row in self.reordered]))


def _spearman(a, b):
    b = np.asarray(b, dtype=float)
    if np.all(b == b[0]):
        return 0.0
    return float(stats.spearmanr(a, b)[0])


def _agreement_repeat(seed, b, n, n_parts, labels, factor, spec, grid):
    data_ss, part_ss = np.random.SeedSequence([seed, b]).spawn(2)
    X = sample_gp(factor, spec.mean_fn, grid, np.random.default_rng(data_ss), size=n)
    full = depth_values(X, None, labels)
    partition = random_partition(n, n_parts, np.random.default_rng(part_ss))
    resampled = resampled_depth_values(X, partition, labels)
    out = {}
    for label in labels:
        full_order = rank_order(full[label])
        res_ranks = ranks_from_order(rank_order(resampled[label]))
        out[label] = res_ranks[full_order]
    return out


def rank_agreement_study(
    methods=("BD2", "cBD", "GBD", "cGBD", "GBD_I", "GBD_O"),
    n=150,
    n_parts=10,
    n_repeats=50,
    n_points=30,
    spec=GpSpec(mu=2.0),
    seed=0,
    n_jobs=1,
):
    """Compare full-sample and resampled rank orders over simulated samples.

    Each repeat draws ``n`` curves ``g(t) + e(t)`` with ``e`` a zero-mean
    GP given by ``spec``, ranks them by full-sample depth and by resampled
    depth (fresh partition per repeat), and records the resampled ranks in
    full-sample order. Repeat ``b`` uses the random stream ``(seed, b)``,
    so results do not depend on ``n_jobs``.

    Returns
    -------
    dict
        Method label -> :class:`RankAgreementReport`.
    """
    if n_repeats < 1:
        raise ConfigError("n_repeats must be >= 1")
    labels = [parse_method(m).label for m in methods]
    grid = canonical_grid(n_points)
    factor, _ = gp_factor(gp_covariance(grid, spec))
    rows = Parallel(n_jobs=n_jobs)(
        delayed(_agreement_repeat)(seed, b, n, n_parts, labels, factor, spec, grid)
        for b in range(n_repeats)
    )
    return {
        label: RankAgreementReport(label, np.array([r[label] for r in rows]))
        for label in labels
    }
