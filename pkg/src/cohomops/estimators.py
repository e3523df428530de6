"""scikit-learn style wrappers.

``fit`` takes a simplicial complex (or a path / list of maximal simplices);
``transform`` works on rows of cochain or class coordinates.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .cochain_ops import cup, p1_cochain, sq_cochain
from .cohomology_ops import operation_matrix
from .complexes import Cochain, coboundary
from .minimal_model import cohomology_basis, homology_presentations, integral_cohomology, minimal_model
from .validation import check_cochain_array, check_coefficients, check_complex, check_operation

__all__ = ["CohomologyProjector", "CohomologyOperation"]


class CohomologyProjector(TransformerMixin, BaseEstimator):
    """Send q-cocycles of K to coordinates of their classes, and back.

    Over Z the coordinates refer to the generators of H^q(K; Z); torsion
    coordinates are reduced mod their order.
    """

    def __init__(self, degree=1, coefficients="zp:2"):
        self.degree = degree
        self.coefficients = coefficients

    def fit(self, X, y=None):
        K = check_complex(X)
        p = check_coefficients(self.coefficients)
        self.complex_ = K
        self.modulus_ = p
        self.model_, self.contraction_ = minimal_model(K, p)
        self.presentations_ = homology_presentations(self.model_)
        if p:
            self.basis_ = cohomology_basis(K, p, self.degree)
        else:
            self.basis_ = integral_cohomology(K, self.degree)
        self.n_features_in_ = K.n_simplices(self.degree)
        self.n_classes_ = len(self.basis_)
        return self

    def transform(self, X):
        check_is_fitted(self, "basis_")
        arr = check_cochain_array(X, self.n_features_in_, self.modulus_)
        out = []
        for row in arr:
            c = Cochain.from_vector(self.complex_, self.degree, list(row), self.modulus_)
            if not coboundary(c).is_zero():
                raise ValueError("transform expects cocycles")
            out.append(self.basis_.coordinates(c))
        return np.array(out, dtype=object).reshape(len(out), self.n_classes_)

    def inverse_transform(self, X):
        check_is_fitted(self, "basis_")
        arr = check_cochain_array(X, self.n_classes_, self.modulus_)
        rows = [self.basis_.cocycle(list(r)).to_vector() for r in arr]
        return np.array(rows, dtype=object).reshape(len(rows), self.n_features_in_)


class CohomologyOperation(TransformerMixin, BaseEstimator):
    """Matrix of ``sq:i``, ``p1:p`` or the cup square on H^degree(K; Z/p).

    ``transform`` maps rows of source class coordinates to target coordinates.
    """

    def __init__(self, op="sq:1", degree=1, coefficients=None):
        self.op = op
        self.degree = degree
        self.coefficients = coefficients

    def _resolve(self):
        kind, k = check_operation(self.op)
        default = {"sq": 2, "p1": k}.get(kind, 2)
        p = default if self.coefficients is None else check_coefficients(self.coefficients)
        if kind == "sq" and p != 2:
            raise ValueError("Steenrod squares need coefficients zp:2")
        if kind == "p1" and p != k:
            raise ValueError(f"p1:{k} needs coefficients zp:{k}")
        if p == 0:
            raise ValueError("operations need prime-field coefficients")
        if kind == "sq":
            return p, (lambda c: sq_cochain(c, k))
        if kind == "p1":
            return p, (lambda c: p1_cochain(c, k))
        if p != 2:
            # the cup square is quadratic, hence linear on classes only mod 2
            raise ValueError("the cup square as a matrix needs coefficients zp:2")
        return p, (lambda c: cup(c, c))

    def fit(self, X, y=None):
        K = check_complex(X)
        p, fn = self._resolve()
        self.complex_ = K
        self.modulus_ = p
        self.operation_ = operation_matrix(K, fn, self.degree, p, name=self.op)
        self.matrix_ = np.array(self.operation_.matrix, dtype=object).reshape(self.operation_.shape)
        self.kernel_ = self.operation_.kernel
        self.image_ = self.operation_.image
        self.n_features_in_ = self.operation_.n_source
        return self

    def transform(self, X):
        check_is_fitted(self, "operation_")
        arr = check_cochain_array(X, self.n_features_in_, self.modulus_)
        rows = [self.operation_.apply(list(r)) for r in arr]
        return np.array(rows, dtype=object).reshape(len(rows), self.operation_.n_target)
