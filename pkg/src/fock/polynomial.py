from .multi_index import MultiIndex, check_dimension, check_multi_index, degree, add_indices, unit_index
from fractions import Fraction
from numbers import Number
from typing import Dict, Iterable, Mapping, Sequence, Union

import numpy as np

Scalar = Union[Fraction, complex]


def normalize_scalar(value) -> Scalar:
    """Exact inputs (int, Fraction) stay rational, everything else becomes a Python complex."""
    if isinstance(value, bool):
        raise TypeError("Boolean is not a valid coefficient")
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (float, complex, np.floating, np.complexfloating)):
        return complex(value)
    if isinstance(value, Number):
        return complex(value)
    raise TypeError(f"Unsupported coefficient type: {type(value)}")


def is_exact(value) -> bool:
    return isinstance(value, (int, Fraction)) and not isinstance(value, bool)


class Polynomial(object):
    """
    Sparse polynomial in d variables: a map from multi-indices to coefficients, absent keys are 0.
    Instances are immutable after construction.
    """

    def __init__(self, d: int, coefficients: Mapping[MultiIndex, Number] = None):
        check_dimension(d)
        self._d = d

        coeffs = {}
        for alpha, value in (coefficients or {}).items():
            alpha = tuple(int(a) for a in alpha)
            check_multi_index(alpha, d)
            value = normalize_scalar(value)
            if value != 0:
                coeffs[alpha] = value
        self._coefficients = coeffs

    @classmethod
    def constant(cls, d: int, value: Number = 1):
        return cls(d, {(0,) * d: value})

    @classmethod
    def monomial(cls, alpha: MultiIndex, value: Number = 1):
        return cls(len(alpha), {tuple(alpha): value})

    @classmethod
    def coordinate(cls, d: int, i: int):
        return cls(d, {unit_index(d, i): 1})

    @property
    def d(self) -> int:
        return self._d

    @property
    def coefficients(self) -> Dict[MultiIndex, Scalar]:
        return dict(self._coefficients)

    @property
    def support(self):
        return sorted(self._coefficients, key=lambda a: (degree(a), [-x for x in a]))

    @property
    def degree(self) -> int:
        if not self._coefficients:
            return 0
        return max(degree(alpha) for alpha in self._coefficients)

    @property
    def is_zero(self) -> bool:
        return not self._coefficients

    @property
    def is_exact(self) -> bool:
        return all(is_exact(c) for c in self._coefficients.values())

    @property
    def is_homogeneous(self) -> bool:
        return len({degree(alpha) for alpha in self._coefficients}) <= 1

    def coefficient(self, alpha: MultiIndex) -> Scalar:
        return self._coefficients.get(tuple(alpha), Fraction(0))

    def items(self):
        return [(alpha, self._coefficients[alpha]) for alpha in self.support]

    def homogeneous_components(self) -> Dict[int, "Polynomial"]:
        components = {}
        for alpha, value in self._coefficients.items():
            components.setdefault(degree(alpha), {})[alpha] = value
        return {k: Polynomial(self._d, v) for k, v in sorted(components.items())}

    def conjugate_coefficients(self) -> "Polynomial":
        return Polynomial(self._d, {a: c.conjugate() for a, c in self._coefficients.items()})

    def evaluate(self, z: Sequence[Number]) -> Scalar:
        if len(z) != self._d:
            raise ValueError(f"Point of length {len(z)} does not match dimension {self._d}")

        total = Fraction(0)
        for alpha, value in self._coefficients.items():
            term = value
            for zi, ai in zip(z, alpha):
                if ai:
                    term = term * zi ** ai
            total = total + term
        return total

    def evaluate_many(self, points: np.ndarray) -> np.ndarray:
        """Vectorized evaluation at the rows of an (n, d) complex array."""
        points = np.asarray(points, dtype=complex)
        if points.ndim != 2 or points.shape[1] != self._d:
            raise ValueError(f"Expected points of shape (n, {self._d}), got {points.shape}")

        values = np.zeros(points.shape[0], dtype=complex)
        for alpha, value in self._coefficients.items():
            term = np.full(points.shape[0], complex(value))
            for i, ai in enumerate(alpha):
                if ai:
                    term *= points[:, i] ** ai
            values += term
        return values

    def _check_compatible(self, other: "Polynomial"):
        if other.d != self._d:
            raise ValueError(f"Dimension mismatch: {self._d} vs {other.d}")

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self._d, other)
        self._check_compatible(other)
        coeffs = dict(self._coefficients)
        for alpha, value in other._coefficients.items():
            coeffs[alpha] = coeffs.get(alpha, 0) + value
        return Polynomial(self._d, coeffs)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self._d, {a: -c for a, c in self._coefficients.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            value = normalize_scalar(other)
            return Polynomial(self._d, {a: c * value for a, c in self._coefficients.items()})

        self._check_compatible(other)
        coeffs = {}
        for alpha, a_value in self._coefficients.items():
            for beta, b_value in other._coefficients.items():
                gamma = add_indices(alpha, beta)
                coeffs[gamma] = coeffs.get(gamma, 0) + a_value * b_value
        return Polynomial(self._d, coeffs)

    __rmul__ = __mul__

    def __truediv__(self, other):
        value = normalize_scalar(other)
        if value == 0:
            raise ZeroDivisionError("Division of a polynomial by zero")
        return self * (1 / value)

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError(f"Only non-negative integer powers are supported, got {exponent}")

        result = Polynomial.constant(self._d)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._d == other._d and self._coefficients == other._coefficients

    def __hash__(self):
        return hash((self._d, frozenset(self._coefficients.items())))

    def __repr__(self):
        if self.is_zero:
            return f"Polynomial(d={self._d}, 0)"
        terms = " + ".join(f"{c}*z^{a}" for a, c in self.items())
        return f"Polynomial(d={self._d}, {terms})"


def sum_polynomials(d: int, polynomials: Iterable[Polynomial]) -> Polynomial:
    total = Polynomial(d)
    for p in polynomials:
        total = total + p
    return total
