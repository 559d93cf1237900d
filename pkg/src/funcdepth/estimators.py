"""scikit-learn style wrappers around the depth functions.

``X`` is always an array of shape (n_curves, n_points): one curve per row,
all observed on the same grid. The grid itself is never needed, since
every depth is computed pointwise.
"""

import numpy as np
from sklearn.base import BaseEstimator, OutlierMixin
from sklearn.utils import check_random_state
from sklearn.utils.validation import check_is_fitted

from .depth import parse_method, rank_order, ranks_from_order
from .resampling import Partition, random_partition, resampled_depth_values
from .robust import trim_count
from .sample import check_curves

__all__ = ["BandDepth", "DepthTrimmedMean"]


class BandDepth(BaseEstimator):
    """Center-outward ordering of a sample of curves.

    Parameters
    ----------
    method : str, default="GBD"
        One of ``BD2``, ``BD3``, ``cBD``, ``GBD``, ``cGBD``, ``GBD_I``,
        ``GBD_O``.
    n_parts : int, default=1
        Number of random parts for resampled depth; 1 uses the whole sample.
    random_state : int, Generator or None
        Only used when ``n_parts > 1``.

    Attributes
    ----------
    reference_ : ndarray of shape (n_curves, n_points)
    partition_ : Partition
    depths_ : ndarray of shape (n_curves,)
        Depth of each training curve.
    order_ : ndarray of shape (n_curves,)
        Training indices from deepest to least deep.
    median_ : ndarray of shape (n_points,)
        The deepest training curve.
    """

    def __init__(self, method="GBD", n_parts=1, random_state=None):
        self.method = method
        self.n_parts = n_parts
        self.random_state = random_state

    def _rng(self):
        rs = self.random_state
        if isinstance(rs, np.random.Generator):
            return rs
        if rs is None or isinstance(rs, (int, np.integer)):
            return np.random.default_rng(rs)
        # legacy RandomState: derive a seed from it
        return np.random.default_rng(check_random_state(rs).randint(2**32))

    def fit(self, X, y=None):
        X = check_curves(X)
        self._label = parse_method(self.method).label
        if self.n_parts == 1:
            self.partition_ = Partition.single(X.shape[0])
        else:
            self.partition_ = random_partition(X.shape[0], self.n_parts, self._rng())
        self.reference_ = X
        self.n_features_in_ = X.shape[1]
        self.depths_ = self._depths(None)
        self.order_ = rank_order(self.depths_)
        self.median_ = X[self.order_[0]]
        return self

    def _depths(self, X):
        return resampled_depth_values(
            self.reference_, self.partition_, [self.method], X
        )[self._label]

    def score_samples(self, X):
        """Depth of new curves with respect to the fitted sample."""
        check_is_fitted(self, "reference_")
        X = check_curves(X, n_points=self.n_features_in_, min_curves=1)
        return self._depths(X)

    def transform(self, X):
        return self.score_samples(X)[:, None]

    def fit_transform(self, X, y=None):
        return self.fit(X).depths_[:, None]

    @property
    def ranks_(self):
        """1-based depth rank of each training curve (1 = deepest)."""
        return ranks_from_order(self.order_)


class DepthTrimmedMean(OutlierMixin, BaseEstimator):
    """Mean of the deepest curves, with the trimmed curves reported as outliers.

    Drops the ``[n * alpha]`` least deep curves and averages the rest.

    Parameters
    ----------
    method, n_parts, random_state
        As in :class:`BandDepth`.
    alpha : float, default=0.2
        Trimming proportion in ``[0, 1)``.

    Attributes
    ----------
    location_ : ndarray of shape (n_points,)
        The trimmed mean curve.
    support_ : ndarray of bool, shape (n_curves,)
        True for the curves kept in the average.
    depths_, order_ : as in :class:`BandDepth`
    threshold_ : float
        Depth of the least deep kept curve; new curves below it are
        predicted as outliers.
    """

    def __init__(self, method="GBD", alpha=0.2, n_parts=1, random_state=None):
        self.method = method
        self.alpha = alpha
        self.n_parts = n_parts
        self.random_state = random_state

    def fit(self, X, y=None):
        self.depth_ = BandDepth(self.method, self.n_parts, self.random_state).fit(X)
        X = self.depth_.reference_
        n = X.shape[0]
        self.n_trimmed_ = trim_count(n, self.alpha)
        kept = self.depth_.order_[: n - self.n_trimmed_]
        self.support_ = np.zeros(n, dtype=bool)
        self.support_[kept] = True
        self.location_ = X[kept].mean(axis=0)
        self.depths_ = self.depth_.depths_
        self.order_ = self.depth_.order_
        self.threshold_ = float(self.depths_[kept[-1]])
        self.n_features_in_ = X.shape[1]
        return self

    @property
    def outliers_(self):
        """Indices of the trimmed curves, least deep last."""
        check_is_fitted(self, "support_")
        return self.order_[self.support_.sum():]

    def score_samples(self, X):
        check_is_fitted(self, "depth_")
        return self.depth_.score_samples(X)

    def decision_function(self, X):
        return self.score_samples(X) - self.threshold_

    def predict(self, X):
        """+1 for curves at least as deep as the shallowest kept curve, else -1."""
        return np.where(self.decision_function(X) >= 0, 1, -1)

    def fit_predict(self, X, y=None):
        # exact training labels; depth ties at the threshold follow index order
        self.fit(X)
        return np.where(self.support_, 1, -1)
