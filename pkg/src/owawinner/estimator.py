"""scikit-learn compatible committee selector.

``OWAWinnerSelector`` treats the rows of ``X`` as agents and the columns as
items.  ``fit`` chooses ``n_winners`` columns; ``transform`` keeps them.
This lets committee selection sit inside a Pipeline like any other
feature selector.
"""

from numbers import Integral

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.feature_selection import SelectorMixin
from sklearn.utils.validation import check_is_fitted, check_non_negative, validate_data

from ._validation import check_utilities
from .exact import DEFAULT_BUDGET
from .model import Instance, OwaVector, UtilityMatrix
from .owa import parse_family
from .scoring import committee_score
from .solvers import ALGORITHMS, solve


class OWAWinnerSelector(SelectorMixin, BaseEstimator):
    """Select the committee of items maximizing total OWA-aggregated utility.

    Parameters
    ----------
    n_winners : int, default=1
        Committee size K.
    owa : str or array-like, default="harmonic"
        OWA family spec (``"kbest 2"``, ``"gprog 2"``, ...) or an explicit
        coefficient vector of length ``n_winners``.
    algorithm : str, default="greedy"
        One of ``brute``, ``kbest``, ``greedy``, ``hurwicz``, ``kbest-proxy``,
        ``ptas``, ``slots``, ``segmented``, ``gprog-ptas``.
    gamma, ell, epsilon, inner, budget
        Passed through to the chosen solver.

    Attributes
    ----------
    winners_ : ndarray of int
        Selected column indices, ascending.
    score_ : fractions.Fraction
        Exact committee score on the training matrix.
    guarantee_ : float or None
        A-priori approximation ratio of the algorithm on this instance.
    report_ : SolveReport
    """

    def __init__(self, n_winners=1, owa="harmonic", algorithm="greedy", gamma=None,
                 ell=None, epsilon=None, inner="greedy", budget=DEFAULT_BUDGET):
        self.n_winners = n_winners
        self.owa = owa
        self.algorithm = algorithm
        self.gamma = gamma
        self.ell = ell
        self.epsilon = epsilon
        self.inner = inner
        self.budget = budget

    def __sklearn_tags__(self):
        tags = super().__sklearn_tags__()
        tags.input_tags.positive_only = True
        tags.target_tags.required = False
        return tags

    def _owa_vector(self):
        if isinstance(self.owa, str):
            return parse_family(self.owa, self.n_winners)
        return OwaVector(tuple(self.owa))

    def _instance(self, X):
        return Instance(UtilityMatrix(check_utilities(X)), self._owa_vector())

    def fit(self, X, y=None):
        """Choose the committee for utility matrix ``X`` (agents x items)."""
        if not isinstance(self.n_winners, Integral) or self.n_winners < 1:
            raise ValueError(f"n_winners must be a positive integer, got {self.n_winners!r}")
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {self.algorithm!r}")
        X_checked = validate_data(self, X, accept_sparse=False, dtype="numeric")
        check_non_negative(X_checked, f"{type(self).__name__}.fit")
        # nested lists may hold Fractions; keep them exact
        instance = self._instance(X if isinstance(X, (list, tuple)) else X_checked)
        self.instance_ = instance
        self.report_ = solve(instance, self.algorithm, gamma=self.gamma, ell=self.ell,
                             epsilon=self.epsilon, inner=self.inner, budget=self.budget)
        self.winners_ = np.array(self.report_.items, dtype=int)
        self.score_ = self.report_.score
        self.guarantee_ = self.report_.guarantee
        return self

    def _get_support_mask(self):
        check_is_fitted(self)
        mask = np.zeros(self.n_features_in_, dtype=bool)
        mask[self.winners_] = True
        return mask

    def score(self, X, y=None):
        """Committee score of the fitted winners on ``X``, as a float."""
        check_is_fitted(self)
        X = validate_data(self, X, reset=False, dtype="numeric")
        return float(committee_score(self._instance(X), self.winners_).total)
