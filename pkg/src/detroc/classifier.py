"""Scikit-learn adapter for the weighted threshold voting rule.

The rule itself has no trainable state; wrapping it as an estimator lets it
plug into sklearn pipelines and metric helpers.  In particular, feeding
``decision_function`` scores of all enumerated vote vectors together with
their exact probabilities as ``sample_weight`` into
``sklearn.metrics.roc_curve`` recovers the exact ROC of the rule.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .distribution import SUM_TOL
from .model import WeightScheme


class WeightedThresholdClassifier(BaseEstimator, ClassifierMixin):
    """Binary classifier over vote vectors: 1 iff ``sum(w_i * x_i) >= tau``.

    Parameters
    ----------
    weights:
        Non-negative member weights, at least one positive.
    tau:
        Decision threshold on the weighted vote sum.  Sums within a small
        tolerance below ``tau`` still count as meeting it, matching the exact
        tail computations elsewhere in the package.
    """

    def __init__(self, weights=(1.0, 1.0, 1.0, 1.0), tau=2.0):
        self.weights = weights
        self.tau = tau

    def fit(self, X=None, y=None):
        """Validate parameters; the rule learns nothing from data."""
        scheme = WeightScheme("fitted", tuple(float(w) for w in self.weights))
        self.weights_ = np.array(scheme.weights)
        self.tau_ = float(self.tau)
        self.n_features_in_ = scheme.n
        self.classes_ = np.array([0, 1])
        return self

    def decision_function(self, X):
        """Weighted vote sums, one per row of X."""
        check_is_fitted(self, "weights_")
        X = check_array(X)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(
                f"X has {X.shape[1]} columns, expected {self.n_features_in_}"
            )
        return X @ self.weights_

    def predict(self, X):
        scores = self.decision_function(X)
        return (scores >= self.tau_ - SUM_TOL).astype(int)
