"""Estimator-style wrappers around the functional core."""

from __future__ import annotations

from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .genvec import canonicalize, classify, det_invariant
from .matrix import mat_mul
from .smith import smith_normal_form
from .validation import check_generating_vector, check_group, check_matrix, check_module


class SmithNormalForm(BaseEstimator, TransformerMixin):
    """Fit the Smith form of one matrix; transform applies X -> B · X · C."""

    def __init__(self, ring=None):
        self.ring = ring

    def fit(self, X, y=None):
        A = check_matrix(X, self.ring)
        d = smith_normal_form(A)
        self.decomposition_ = d
        self.row_transform_ = d.B
        self.col_transform_ = d.C
        self.diagonal_ = d.S
        self.invariant_factors_ = d.diag_chain_order
        return self

    def transform(self, X):
        check_is_fitted(self, "decomposition_")
        A = check_matrix(X, self.ring if self.ring is not None else self.diagonal_.owner)
        return mat_mul(mat_mul(self.row_transform_, A), self.col_transform_)


class GeneratingVectorCanonicalizer(BaseEstimator, TransformerMixin):
    """Fit on a module; transform maps generating vectors to canonical forms.

    ``predict`` returns the determinant class of each vector of length mu
    (the orbit label when n = mu) and 1 for longer vectors.
    """

    def __init__(self, group="sl"):
        self.group = group

    def fit(self, X, y=None):
        M = check_module(X)
        self.module_ = M
        self.mu_ = M.mu
        self.chain_ = M.chain
        self.group_ = check_group(self.group)
        return self

    def transform(self, X):
        check_is_fitted(self, "module_")
        out = []
        self.witnesses_ = []
        for v in X:
            canon, w = canonicalize(self.module_, check_generating_vector(self.module_, v), self.group_)
            out.append(canon)
            self.witnesses_.append(w)
        return out

    def predict(self, X):
        check_is_fitted(self, "module_")
        R = self.module_.owner
        labels = []
        for v in X:
            gv = check_generating_vector(self.module_, v)
            if self.mu_ and gv.n == self.mu_:
                labels.append(det_invariant(self.module_, gv).value)
            else:
                labels.append(R.one())
        return labels

    def classify(self, n):
        check_is_fitted(self, "module_")
        return classify(self.module_, n, self.group_)
