from .multi_index import MultiIndex, enum_multiindices_up_to, monomial_norm_sq, multinomial, degree
from .polynomial import Polynomial, Scalar
from fractions import Fraction
from numbers import Number
from typing import Mapping, Sequence

import pandas as pd
import numpy as np
import math


class FockVector(Polynomial):
    """
    Element of the symmetric Fock space H^2_d stored up to a degree bound. A vector flagged as
    truncated is a finite section of an infinite series (kernels), so pairings that need
    coefficients above its degree bound are refused.
    """

    def __init__(
            self,
            d: int,
            degree_bound: int,
            coefficients: Mapping[MultiIndex, Number] = None,
            truncated: bool = False,
    ):
        super().__init__(d, coefficients)
        if degree_bound < 0:
            raise ValueError(f"Degree bound must be non-negative, got {degree_bound}")

        for alpha in self._coefficients:
            if degree(alpha) > degree_bound:
                raise ValueError(f"Coefficient {alpha} exceeds degree bound {degree_bound}")

        self._degree_bound = degree_bound
        self._truncated = truncated

    @classmethod
    def from_polynomial(cls, p: Polynomial, degree_bound: int = None, truncated: bool = False):
        if degree_bound is None:
            degree_bound = p.degree
        return cls(p.d, degree_bound, p.coefficients, truncated=truncated)

    @property
    def degree_bound(self) -> int:
        return self._degree_bound

    @property
    def truncated(self) -> bool:
        return self._truncated

    def __repr__(self):
        return f"FockVector(d={self._d}, N={self._degree_bound}, terms={len(self._coefficients)})"


def inner_product(v: Polynomial, w: Polynomial) -> Scalar:
    """<v, w> = sum_alpha v_alpha conj(w_alpha) alpha!/|alpha|!, exact for rational inputs."""
    if v.d != w.d:
        raise ValueError(f"Dimension mismatch: {v.d} vs {w.d}")

    w_coeffs = w.coefficients
    total = Fraction(0)
    for alpha, value in v.items():
        other = w_coeffs.get(alpha)
        if other is None:
            continue
        total = total + value * other.conjugate() * monomial_norm_sq(alpha)
    return total


def norm(v: Polynomial) -> float:
    return math.sqrt(float(abs(inner_product(v, v))))


def _check_open_ball(z: Sequence[Number]):
    radius_sq = sum(abs(zi) ** 2 for zi in z)
    if not radius_sq < 1:
        raise ValueError(f"Point {tuple(z)} is not in the open unit ball")


def kernel_vector(z: Sequence[Number], degree_bound: int) -> FockVector:
    """Truncated reproducing kernel k_z: coefficient of w^alpha is (|alpha|!/alpha!) conj(z)^alpha."""
    _check_open_ball(z)
    d = len(z)
    conj_z = [zi.conjugate() for zi in z]

    coeffs = {}
    for alpha in enum_multiindices_up_to(d, degree_bound):
        value = Fraction(multinomial(alpha))
        for zi, ai in zip(conj_z, alpha):
            if ai:
                value = value * zi ** ai
        coeffs[alpha] = value
    return FockVector(d, degree_bound, coeffs, truncated=True)


def evaluate(v: Polynomial, z: Sequence[Number]) -> Scalar:
    return v.evaluate(z)


def reproducing_defect(p: Polynomial, z: Sequence[Number]) -> Scalar:
    """<p, k_z> - p(z) with the kernel truncated at deg p; exactly 0 for rational data."""
    return inner_product(p, kernel_vector(z, p.degree)) - p.evaluate(z)


def random_rational_polynomial(rng: np.random.Generator, d: int, degree_bound: int, denominator: int = 7) -> Polynomial:
    coeffs = {}
    for alpha in enum_multiindices_up_to(d, degree_bound):
        numerator = int(rng.integers(-denominator, denominator + 1))
        if numerator:
            coeffs[alpha] = Fraction(numerator, denominator)
    return Polynomial(d, coeffs)


def random_rational_point(rng: np.random.Generator, d: int, denominator: int = 11) -> tuple:
    """Rational point with |z_i| <= 1/(2d), so strictly inside the ball."""
    return tuple(Fraction(int(rng.integers(-denominator, denominator + 1)), 2 * d * denominator) for _ in range(d))


def reproducing_suite(d: int, degree_bound: int, n_trials: int = 50, seed: int = 0) -> pd.DataFrame:
    """<p, k_z> - p(z) for seeded random rational polynomials and points; every defect is exactly 0."""
    rng = np.random.default_rng(seed)
    rows = []
    for trial in range(n_trials):
        p = random_rational_polynomial(rng, d, degree_bound)
        z = random_rational_point(rng, d)
        defect = reproducing_defect(p, z)
        rows.append({"trial": trial, "point": str([str(x) for x in z]), "value": str(p.evaluate(z)), "defect": float(abs(defect))})
    return pd.DataFrame(rows, columns=["trial", "point", "value", "defect"])
