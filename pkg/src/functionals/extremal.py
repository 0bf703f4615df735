from .functional import VectorPair
from src.fock import (
    FockVector,
    Polynomial,
    enum_multiindices_up_to,
    enum_multiindices,
    monomial_norm_sq,
    norm,
    format_polynomial,
    polynomial_to_dict,
)
from src.multop import SamplingConfig, mult_matrix, sup_norm
from scipy.linalg import eigh
from typing import Dict, List

import pandas as pd
import numpy as np
import logging
import math

MAX_BASIS_SIZE = 2000
PHASE_THRESHOLD = 1e-8

OK = "ok"
INCONCLUSIVE = "inconclusive"
DEGENERATE = "degenerate"


class ExtremalResult(object):

    def __init__(
            self,
            truncation: int,
            eigenvalues: np.ndarray,
            eigenvectors: List[FockVector],
            dimension: int,
            status: str,
            sup_norm: float,
    ):
        self.truncation = truncation
        self.eigenvalues = eigenvalues
        self.eigenvectors = eigenvectors
        self.dimension = dimension
        self.status = status
        self.sup_norm = sup_norm

    @property
    def top_eigenvalue(self) -> float:
        return float(self.eigenvalues[0])

    @property
    def gap(self) -> float:
        if len(self.eigenvalues) < 2:
            return self.top_eigenvalue
        return float(self.eigenvalues[0] - self.eigenvalues[self.dimension if self.dimension else 1])

    def to_dict(self) -> Dict:
        return {
            "truncation": self.truncation,
            "top_eigenvalue": self.top_eigenvalue,
            "gap": self.gap,
            "dimension": self.dimension,
            "status": self.status,
            "sup_norm": self.sup_norm,
            "eigenvalues": [float(v) for v in self.eigenvalues[:max(self.dimension, 1) + 1]],
            "eigenvectors": [polynomial_to_dict(v) for v in self.eigenvectors],
        }


def _fix_phase(vector: np.ndarray) -> np.ndarray:
    """Rotates the first coefficient of modulus above PHASE_THRESHOLD (graded-lex order) onto the positive axis."""
    for value in vector:
        if abs(value) > PHASE_THRESHOLD:
            return vector * (abs(value) / value)
    return vector


def _to_fock_vector(d: int, truncation: int, vector: np.ndarray) -> FockVector:
    coeffs = {}
    for beta, value in zip(enum_multiindices_up_to(d, truncation), vector):
        if value != 0:
            coeffs[beta] = complex(value) / math.sqrt(monomial_norm_sq(beta))
    return FockVector(d, truncation, coeffs)


def extremal_subspace(f: Polynomial, truncation: int, tol: float = 1e-9, samples: SamplingConfig = None) -> ExtremalResult:
    """
    Eigen-decomposition of the truncated M_f* M_f for f of multiplier norm 1. Eigenvectors with eigenvalue
    above 1 - 10 tol span the estimate of N = ker(I - M_f* M_f); their count is a heuristic for dim N.
    """
    n_basis = len(enum_multiindices_up_to(f.d, truncation))
    if n_basis > MAX_BASIS_SIZE:
        raise ValueError(f"Truncation {truncation} gives {n_basis} basis elements, cap is {MAX_BASIS_SIZE}")

    matrix = mult_matrix(f, truncation).to_dense()
    values, vectors = eigh(matrix.conj().T @ matrix)
    order = np.argsort(-values, kind="stable")
    values, vectors = values[order], vectors[:, order]

    if values[0] > 1 + 10 * tol:
        raise ValueError(f"Top eigenvalue {values[0]} exceeds 1, normalize f to multiplier norm 1 first")

    sup_value = sup_norm(f, samples)
    dimension = int(np.count_nonzero(values > 1 - 10 * tol))
    if sup_value >= 1 - tol:
        logging.warning(f"Sup norm {sup_value} reaches 1, the extremal subspace need not be finite dimensional")
        status = DEGENERATE
    elif dimension == 0:
        status = INCONCLUSIVE
    else:
        status = OK

    eigenvectors = [_to_fock_vector(f.d, truncation, _fix_phase(vectors[:, i])) for i in range(dimension)]
    logging.info(f"Extremal subspace at N={truncation}: top eigenvalue {values[0]}, dim {dimension}, status {status}")
    return ExtremalResult(truncation, values, eigenvectors, dimension, status, sup_value)


def exposed_functional(f: Polynomial, xi: FockVector, tol: float = 1e-8) -> VectorPair:
    """[xi (f xi)*], the functional exposed by f when xi spans the extremal subspace."""
    if f.d != xi.d:
        raise ValueError(f"Dimension mismatch: f in {f.d}, xi in {xi.d} variables")
    if abs(norm(xi) - 1) > tol:
        raise ValueError(f"xi must have norm 1, got {norm(xi)}")

    image = FockVector.from_polynomial(f * xi, degree_bound=xi.degree_bound + f.degree)
    return VectorPair(xi, image)


def _random_homogeneous(rng: np.random.Generator, d: int, degree: int) -> Polynomial:
    support = enum_multiindices(d, degree)
    values = rng.standard_normal(len(support)) + 1j * rng.standard_normal(len(support))
    return Polynomial(d, dict(zip(support, values)))


def explore_extremal_dimensions(
        d: int = 2,
        degree: int = 2,
        n_trials: int = 10,
        truncation: int = 8,
        seed: int = 0,
        tol: float = 1e-9,
) -> pd.DataFrame:
    """
    Random search over homogeneous polynomials scaled to truncated multiplier norm 1, reporting the
    estimated dimension of the extremal subspace of each. Records findings only.
    """
    rng = np.random.default_rng(seed)
    rows = []
    for trial in range(n_trials):
        p = _random_homogeneous(rng, d, degree)
        matrix = mult_matrix(p, truncation).to_dense()
        top = float(eigh(matrix.conj().T @ matrix, eigvals_only=True)[-1])
        f = p / math.sqrt(top)

        result = extremal_subspace(f, truncation, tol=tol)
        rows.append({
            "trial": trial,
            "polynomial": format_polynomial(f),
            "sup_norm": result.sup_norm,
            "top_eigenvalue": result.top_eigenvalue,
            "gap": result.gap,
            "dimension": result.dimension,
            "status": result.status,
        })
    return pd.DataFrame(rows, columns=["trial", "polynomial", "sup_norm", "top_eigenvalue", "gap", "dimension", "status"])
