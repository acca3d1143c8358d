"""scikit-learn style front end for the L1 oracle."""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .circle import BoundarySamples, l1_norm, make_grid
from .oracle import (
    DEFAULT_DELTA,
    DEFAULT_MAX_ITER,
    DEFAULT_TOL,
    DEFAULT_TRUNCATION,
    solve_l1,
)


def check_boundary_samples(X) -> BoundarySamples:
    """Coerce ``X`` to samples on the matching uniform circle grid."""
    if isinstance(X, BoundarySamples):
        return X
    values = np.asarray(X)
    if values.ndim == 2 and 1 in values.shape:
        values = values.ravel()
    if values.ndim != 1:
        raise ValueError(f"expected a 1-D array of boundary samples, got shape {values.shape}")
    values = values.astype(complex)
    if not np.all(np.isfinite(values)):
        raise ValueError("boundary samples contain NaN or inf")
    return BoundarySamples(make_grid(values.size), values)


class HardyL1Approximator(BaseEstimator):
    """Best approximation of boundary data ``k`` by ``-h`` with ``h`` in H^1_0.

    ``fit`` takes the samples of ``k`` on the ``M`` roots of unity and stores
    the coefficients of ``h(t) = sum_{n=1..n_terms} coef_[n-1] t^n`` minimising
    the mean of ``|k + h|``.

    Parameters
    ----------
    n_terms : int
        Truncation degree of ``h``.
    max_iter, tol, delta :
        IRLS controls: iteration cap, relative objective tolerance and the
        residual floor in the weights.
    """

    def __init__(
        self,
        n_terms=DEFAULT_TRUNCATION,
        max_iter=DEFAULT_MAX_ITER,
        tol=DEFAULT_TOL,
        delta=DEFAULT_DELTA,
    ):
        self.n_terms = n_terms
        self.max_iter = max_iter
        self.tol = tol
        self.delta = delta

    def fit(self, X, y=None):
        k = check_boundary_samples(X)
        report = solve_l1(k, self.n_terms, self.max_iter, self.tol, self.delta)
        self.coefficients_ = report.coefficients
        self.coef_ = report.coefficients.coeffs
        self.objective_ = report.objective
        self.n_iter_ = report.iterations
        self.converged_ = report.converged
        self.objective_history_ = list(report.objective_history)
        self.n_samples_ = k.grid.size
        return self

    def predict(self, T):
        """Evaluate the fitted ``h`` at points of the closed disk."""
        check_is_fitted(self, "coef_")
        T = np.asarray(T, dtype=complex)
        return self.coefficients_(T)

    def transform(self, X):
        """Residual ``k + h`` on the grid of ``X``."""
        check_is_fitted(self, "coef_")
        k = check_boundary_samples(X)
        return (k + self.coefficients_.sample(k.grid)).values

    def score(self, X, y=None):
        """Negative L1 distance, so that larger is better."""
        check_is_fitted(self, "coef_")
        k = check_boundary_samples(X)
        return -l1_norm(k + self.coefficients_.sample(k.grid))
