"""Contaminated GP curve models and the replicated trimmed-mean study.

Base curves are ``X_i(t) = 4 t + e_i(t)`` with ``e_i`` a zero-mean GP.
A curve is contaminated with probability ``q``; the models differ in how:

=====  ======================================================================
model  contamination of a flagged curve
=====  ======================================================================
0      none
1      ``+M`` everywhere
2      ``sign * M`` everywhere, random sign
3      ``sign * M`` for ``t >= T``, ``T ~ U[0, 1]``
4      ``sign * M`` on ``[T, T + l]``, ``T ~ U[0, 1 - l]``
5      ``sign * M`` at ``k_points`` random grid points
6      whole curve replaced by a draw from a rough GP (``mu = 0.2``)
=====  ======================================================================

Every curve draws from its own random stream, spawned from the
replication's stream, so changing the depth methods or worker count never
changes the generated data.
"""

from dataclasses import asdict, dataclass, field
from functools import lru_cache

import numpy as np
from joblib import Parallel, delayed

from .depth import STANDARD_METHODS, parse_method
from .exceptions import BadModelIdError, ConfigError, PartTooSmallError
from .gp import GpSpec, gp_covariance, gp_factor, linear_trend
from .resampling import random_partition, resampled_depth_values
from .robust import ErrorTable, integrated_error, trimmed_mean
from .sample import FunctionalSample, canonical_grid

__all__ = [
    "MODEL_IDS",
    "ContaminationConfig",
    "LabeledSample",
    "generate_model",
    "StudyConfig",
    "StudyReport",
    "run_study",
]

MODEL_IDS = tuple(range(7))


@dataclass(frozen=True)
class ContaminationConfig:
    model_id: int = 0
    q: float = 0.1
    M: float = 25.0
    peak_length: float = 2 / 30
    k_points: int = 2
    base: GpSpec = GpSpec(mu=1.5)
    smooth: GpSpec = GpSpec(mu=2.0)
    rough: GpSpec = GpSpec(mu=0.2)

    def __post_init__(self):
        if self.model_id not in MODEL_IDS:
            raise BadModelIdError(f"model id must be in 0..6, got {self.model_id}")
        if not 0 <= self.q <= 1:
            raise ConfigError(f"q must be in [0, 1], got {self.q}")
        if not 0 < self.peak_length < 1:
            raise ConfigError(f"peak length must be in (0, 1), got {self.peak_length}")
        if self.k_points < 1:
            raise ConfigError(f"k_points must be >= 1, got {self.k_points}")


@dataclass
class LabeledSample:
    """Generated curves with their contamination labels.

    ``base`` holds the uncontaminated draw of every curve (for model 6, the
    smooth draw), so ``sample.values - base`` is the contamination itself.
    """

    sample: FunctionalSample
    contaminated: np.ndarray
    signs: np.ndarray
    base: np.ndarray


@lru_cache(maxsize=32)
def _cached_factor(spec, grid_key):
    factor, _ = gp_factor(gp_covariance(np.array(grid_key), spec))
    return factor


def _draw(spec, grid, rng):
    factor = _cached_factor(spec, tuple(grid))
    return spec.mean_fn(grid) + factor @ rng.standard_normal(grid.size)


def _curve(cfg, grid, rng):
    m = cfg.model_id
    base = _draw(cfg.smooth if m == 6 else cfg.base, grid, rng)
    flagged = bool(rng.random() < cfg.q)
    sign = 1 if rng.random() < 0.5 else -1
    if m in (0, 1, 6):
        sign = 1
    if m == 6:
        rough = _draw(cfg.rough, grid, rng)
        return (rough if flagged else base), base, flagged, sign
    if m == 0:
        return base, base, False, sign
    if m in (1, 2):
        region = np.ones(grid.size, dtype=bool)
    elif m == 3:
        region = grid >= rng.uniform(0.0, 1.0)
    elif m == 4:
        start = rng.uniform(0.0, 1.0 - cfg.peak_length)
        region = (grid >= start) & (grid <= start + cfg.peak_length)
    else:
        region = np.zeros(grid.size, dtype=bool)
        region[rng.choice(grid.size, size=min(cfg.k_points, grid.size), replace=False)] = True
    if not flagged:
        return base, base, False, sign
    return base + sign * cfg.M * region, base, True, sign


def generate_model(cfg, n, grid, rng):
    """Draw ``n`` curves from model ``cfg.model_id``.

    Parameters
    ----------
    cfg : ContaminationConfig
    n : int
    grid : array of shape (V,)
    rng : numpy.random.Generator
        Spawns one child stream per curve.

    Returns
    -------
    LabeledSample
    """
    grid = np.asarray(grid, dtype=float)
    rows = [_curve(cfg, grid, child) for child in rng.spawn(n)]
    values = np.array([r[0] for r in rows])
    return LabeledSample(
        sample=FunctionalSample(grid, values),
        contaminated=np.array([r[2] for r in rows], dtype=bool),
        signs=np.array([r[3] for r in rows], dtype=np.int64),
        base=np.array([r[1] for r in rows]),
    )


@dataclass(frozen=True)
class StudyConfig:
    models: tuple = MODEL_IDS
    methods: tuple = STANDARD_METHODS
    n: int = 150
    q: float = 0.1
    M: float = 25.0
    alpha: float = 0.2
    R: int = 200
    V: int = 30
    K: int = 10
    seed: int = 0
    k_points: int = 2
    peak_length: float = 2 / 30

    def __post_init__(self):
        object.__setattr__(self, "models", tuple(int(m) for m in self.models))
        object.__setattr__(
            self, "methods", tuple(parse_method(m).label for m in self.methods)
        )
        for m in self.models:
            if m not in MODEL_IDS:
                raise BadModelIdError(f"model id must be in 0..6, got {m}")
        if self.R < 1:
            raise ConfigError("R must be >= 1")
        if not 0 <= self.alpha < 1:
            raise ConfigError(f"alpha must be in [0, 1), got {self.alpha}")
        if self.K < 1 or self.n // self.K < 2:
            raise PartTooSmallError(
                f"{self.n} curves in {self.K} parts leaves a part with fewer than 2 curves"
            )

    def contamination(self, model_id):
        return ContaminationConfig(
            model_id=model_id, q=self.q, M=self.M,
            peak_length=self.peak_length, k_points=self.k_points,
        )

    def as_dict(self):
        return asdict(self)


@dataclass
class StudyReport:
    """Error tables per model; columns are ``"Mean"`` then the depth methods."""

    config: StudyConfig
    tables: dict = field(default_factory=dict)

    @property
    def row_labels(self):
        return ["Mean", *self.config.methods]


def _replication(config, model_id, rep):
    data_ss, part_ss = np.random.SeedSequence([config.seed, model_id, rep]).spawn(2)
    grid = canonical_grid(config.V)
    labeled = generate_model(
        config.contamination(model_id), config.n, grid, np.random.default_rng(data_ss)
    )
    X = labeled.sample.values
    partition = random_partition(config.n, config.K, np.random.default_rng(part_ss))
    depths = resampled_depth_values(X, partition, config.methods)
    row = [integrated_error(X.mean(axis=0), linear_trend, grid)]
    for label in config.methods:
        est = trimmed_mean(X, depths[label], config.alpha)
        row.append(integrated_error(est, linear_trend, grid))
    return row


def run_study(config=StudyConfig(), n_jobs=1):
    """Run every (model, replication) pair and tabulate integrated errors.

    Replication ``j`` of model ``m`` uses the random stream
    ``(seed, m, j)``; results are assembled in (model, replication) order,
    so the report is identical for any ``n_jobs``.
    """
    tasks = [(m, j) for m in config.models for j in range(config.R)]
    rows = Parallel(n_jobs=n_jobs)(
        delayed(_replication)(config, m, j) for m, j in tasks
    )
    report = StudyReport(config)
    labels = report.row_labels
    for i, m in enumerate(config.models):
        raw = np.array(rows[i * config.R:(i + 1) * config.R])
        report.tables[m] = ErrorTable(labels, raw)
    return report
