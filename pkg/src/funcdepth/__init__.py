"""Band depths for functional data.

Six depth notions for samples of curves on a common grid (band depth,
generalized band depth, their corrected versions, and two run-length
variants), resampled depth for large samples, depth-trimmed means, and a
simulation harness for contaminated Gaussian-process curves.
"""

from .depth import (
    STANDARD_METHODS,
    DepthMethod,
    band_depth,
    corrected_band_depth,
    corrected_generalized_band_depth,
    deepest,
    depth_all,
    depth_values,
    gbd_inside,
    gbd_outside,
    generalized_band_depth,
    parse_method,
    rank_order,
)
from .estimators import BandDepth, DepthTrimmedMean
from .resampling import random_partition, rank_agreement_study, resampled_depth_values
from .robust import integrated_error, mean_curve, trimmed_mean
from .sample import FunctionalSample, canonical_grid
from .simulation import ContaminationConfig, StudyConfig, generate_model, run_study

__version__ = "0.1.0"

__all__ = [
    "STANDARD_METHODS",
    "BandDepth",
    "ContaminationConfig",
    "DepthMethod",
    "DepthTrimmedMean",
    "FunctionalSample",
    "StudyConfig",
    "band_depth",
    "canonical_grid",
    "corrected_band_depth",
    "corrected_generalized_band_depth",
    "deepest",
    "depth_all",
    "depth_values",
    "gbd_inside",
    "gbd_outside",
    "generalized_band_depth",
    "generate_model",
    "integrated_error",
    "mean_curve",
    "parse_method",
    "random_partition",
    "rank_agreement_study",
    "rank_order",
    "resampled_depth_values",
    "run_study",
    "trimmed_mean",
]
