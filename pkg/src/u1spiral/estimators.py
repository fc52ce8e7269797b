"""scikit-learn compatible wrappers.

``U1LikenessClassifier`` predicts a verdict label for each transformation
family in ``X``; ``SpiralLift`` maps circle points ``(angle, winding)`` onto
the logarithmic spiral and back. Both follow the estimator conventions
(constructor stores parameters verbatim, ``fit`` validates and returns
``self``), so they work with ``clone``, ``get_params`` and pipelines.
"""

from __future__ import annotations

import math

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .classifier import (INCONCLUSIVE, MODES, NOT_U1_LIKE, U1_LIKE, CriterionConfig,
                         classify)
from .coordgroups import FAMILIES, TransformFamily
from .exceptions import DomainError
from .spiral import TWO_PI, SpiralDeformation, _growth_exponent


def as_family(x) -> TransformFamily:
    """Accept a family, a builtin name, or a square generator matrix."""
    if isinstance(x, TransformFamily):
        return x
    if isinstance(x, str):
        if x not in FAMILIES or x == "generator":
            raise DomainError(f"unknown family {x!r}")
        return TransformFamily(x)
    return TransformFamily.from_generator(np.asarray(x, dtype=float))


class U1LikenessClassifier(ClassifierMixin, BaseEstimator):
    """Label families ``U1_LIKE`` / ``NOT_U1_LIKE`` in one membership mode.

    The criterion has no trainable state: ``fit`` only validates the
    parameters and builds ``config_``. ``y`` is accepted and ignored.
    """

    def __init__(self, mode="det", epsilon=0.01,
                 finite_thetas=(0.5, 1.0, 2.0, 2.0 * math.pi),
                 infinitesimal_thetas=(1e-4, 1e-5, 1e-6, 1e-7, 1e-8),
                 tol_membership=1e-9, finite_escape_factor=10.0, first_order_c=3.0,
                 orbit_bound_steps=64, orbit_bound_B=1e3):
        self.mode = mode
        self.epsilon = epsilon
        self.finite_thetas = finite_thetas
        self.infinitesimal_thetas = infinitesimal_thetas
        self.tol_membership = tol_membership
        self.finite_escape_factor = finite_escape_factor
        self.first_order_c = first_order_c
        self.orbit_bound_steps = orbit_bound_steps
        self.orbit_bound_B = orbit_bound_B

    def fit(self, X=None, y=None):
        if self.mode not in MODES:
            raise DomainError(f"unknown mode {self.mode!r}; expected one of {MODES}")
        self.config_ = CriterionConfig(
            epsilon=self.epsilon, finite_thetas=tuple(self.finite_thetas),
            infinitesimal_thetas=tuple(self.infinitesimal_thetas),
            tol_membership=self.tol_membership,
            finite_escape_factor=self.finite_escape_factor,
            first_order_c=self.first_order_c, modes=(self.mode,),
            orbit_bound_steps=self.orbit_bound_steps, orbit_bound_B=self.orbit_bound_B)
        self.classes_ = np.array([INCONCLUSIVE, NOT_U1_LIKE, U1_LIKE])
        return self

    def classify(self, X):
        """Full :class:`ClassificationReport` for each family in ``X``."""
        check_is_fitted(self, "config_")
        return [classify(as_family(x), self.config_) for x in X]

    def predict(self, X):
        return np.array([r.verdicts[self.mode] for r in self.classify(X)])


class SpiralLift(TransformerMixin, BaseEstimator):
    """Circle ``(angle, winding)`` rows to spiral ``(theta_total, radius)`` rows.

    The radius is ``k * exp(epsilon * theta_total)``; distinct windings give
    distinct radii, so :meth:`inverse_transform` recovers the winding.
    """

    def __init__(self, epsilon=0.01, k=1.0):
        self.epsilon = epsilon
        self.k = k

    def fit(self, X=None, y=None):
        SpiralDeformation(self.epsilon)
        if not (math.isfinite(self.k) and self.k > 0):
            raise DomainError(f"k must be positive, got {self.k!r}")
        self.n_features_in_ = 2
        return self

    def transform(self, X):
        check_is_fitted(self, "n_features_in_")
        X = check_array(X, dtype=float)
        if X.shape[1] != 2:
            raise DomainError(f"expected columns (angle, winding), got {X.shape[1]} columns")
        angle, winding = X[:, 0], X[:, 1]
        if np.any((angle < 0) | (angle >= TWO_PI)):
            raise DomainError("angles must lie in [0, 2*pi)")
        if np.any(winding != np.round(winding)):
            raise DomainError("windings must be integers")
        theta = angle + TWO_PI * winding
        _growth_exponent(self.epsilon, float(theta.max(initial=0.0)))
        return np.column_stack([theta, self.k * np.exp(self.epsilon * theta)])

    def inverse_transform(self, X):
        check_is_fitted(self, "n_features_in_")
        X = check_array(X, dtype=float)
        radius = X[:, 1]
        if np.any(radius <= 0):
            raise DomainError("radii must be positive")
        theta = (np.log(radius) - math.log(self.k)) / self.epsilon
        winding = np.floor(theta / TWO_PI)
        angle = theta - TWO_PI * winding
        over, under = angle >= TWO_PI, angle < 0
        angle[over] -= TWO_PI
        winding[over] += 1
        angle[under] += TWO_PI
        winding[under] -= 1
        return np.column_stack([angle, winding])
