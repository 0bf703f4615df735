from src.fock import FockVector, MultiIndex, Polynomial, enum_multiindices_up_to, multinomial, degree
from scipy.special import betainc
from fractions import Fraction
from numbers import Number
from typing import Sequence

import math


def _check_closed_ball(zeta: Sequence[Number]):
    radius_sq = sum(abs(z) ** 2 for z in zeta)
    if radius_sq > 1 + 1e-12:
        raise ValueError(f"Point {tuple(zeta)} is outside the closed unit ball")


def kernel_weight(alpha: MultiIndex) -> int:
    """C(|alpha| + d - 1, d - 1) |alpha|! / alpha!, the coefficient of z^alpha conj(w)^alpha in (1 - <z, w>)^{-d}."""
    d = len(alpha)
    return math.comb(degree(alpha) + d - 1, d - 1) * multinomial(alpha)


def cauchy_coefficient(alpha: MultiIndex, zeta: Sequence[Number]):
    if len(alpha) != len(zeta):
        raise ValueError(f"Multi-index {alpha} does not match point of dimension {len(zeta)}")
    value = Fraction(kernel_weight(alpha))
    for z, a in zip(zeta, alpha):
        if a:
            value = value * z.conjugate() ** a
    return value


def cauchy_coeffs(zeta: Sequence[Number], degree_bound: int, d: int = None) -> FockVector:
    """Truncation of the Cauchy kernel Gamma(., zeta) = (1 - <., zeta>)^{-d} at degree_bound."""
    if d is not None and d != len(zeta):
        raise ValueError(f"Point of dimension {len(zeta)} given for d={d}")
    if degree_bound < 0:
        raise ValueError(f"Degree bound must be non-negative, got {degree_bound}")
    _check_closed_ball(zeta)

    coeffs = {alpha: cauchy_coefficient(alpha, zeta) for alpha in enum_multiindices_up_to(len(zeta), degree_bound)}
    return FockVector(len(zeta), degree_bound, coeffs, truncated=True)


def dilate(p: Polynomial, r: Number) -> Polynomial:
    """f_r(z) = f(r z)."""
    if not 0 <= r <= 1:
        raise ValueError(f"Dilation radius must lie in [0, 1], got {r}")
    return Polynomial(p.d, {alpha: value * r ** degree(alpha) for alpha, value in p.items()})


def kernel_tail_bound(r: float, d: int, degree_bound: int) -> float:
    """
    sum_{k > N} C(k + d - 1, d - 1) r^k = (1 - r)^{-d} I_r(N + 1, d): the sup over the sphere of the
    terms of Gamma(., r zeta) above degree N, measured with |<z, r zeta>| <= r.
    """
    if not 0 <= r < 1:
        raise ValueError(f"Tail bound needs 0 <= r < 1, got {r}")
    if r == 0:
        return 0.0
    return float((1 - r) ** (-d) * betainc(degree_bound + 1, d, r))
