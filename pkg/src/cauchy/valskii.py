from .kernel import cauchy_coeffs, kernel_tail_bound, kernel_weight
from .quadrature import sigma_integral
from src.fock import FockVector, Polynomial, degree, format_polynomial, normalize_scalar
from src.functionals import Functional, VectorPair, kernel_pair_functional
from fractions import Fraction
from numbers import Number
from typing import List, NamedTuple, Sequence, Tuple

import pandas as pd
import logging

VALSKII_TOLERANCE = 1e-9
MAX_TRUNCATION = 10 ** 6
DEFAULT_RADII = (0.9, 0.99, 0.999)


class TailBoundError(Exception):
    pass


class ValskiiValue(NamedTuple):
    value: complex
    tail_bound: float
    truncation: int


def _tail(scale: float, r: Number, d: int, truncation: int) -> float:
    if scale == 0:
        return 0.0
    return scale * kernel_tail_bound(float(r), d, truncation)


def _smallest_truncation(scale: float, r: Number, d: int, start: int, tol: float) -> int:
    """Smallest N >= start with tail bound <= tol: doubling, then bisection."""
    if _tail(scale, r, d, start) <= tol:
        return start

    low, high = start, max(2 * start, 1)
    while _tail(scale, r, d, high) > tol:
        if high >= MAX_TRUNCATION:
            raise TailBoundError(f"Kernel tail above {tol} at the truncation cap {MAX_TRUNCATION} (r={r})")
        low, high = high, min(2 * high, MAX_TRUNCATION)

    while high - low > 1:
        middle = (low + high) // 2
        if _tail(scale, r, d, middle) <= tol:
            high = middle
        else:
            low = middle
    return high


def valskii_approximant(
        phi: Functional,
        r: Number,
        f: Polynomial,
        truncation: int = None,
        tol: float = VALSKII_TOLERANCE,
) -> ValskiiValue:
    """
    Psi_r(f) = int f(zeta) phi(r zeta) dsigma(zeta) with phi(w) = Phi(Gamma(., w)). The Cauchy expansion of
    phi(r .) is paired with f through the exact sphere integrals, so only coefficients of z^alpha with alpha in
    the support of f survive and the value is computed from those terms alone, without assembling
    cauchy_coeffs up to the truncation (at r = 0.999 that is tens of thousands of degrees).

    The value therefore does not depend on truncation. The truncation is the certificate: the tail bound
    |Phi| sum |f_alpha| sup |Gamma tail| bounds every kernel term above it, and a truncation whose bound
    exceeds tol raises TailBoundError. Without an explicit truncation the smallest one meeting tol is chosen.
    """
    if phi.d != f.d:
        raise ValueError(f"Polynomial in {f.d} variables, functional on dimension {phi.d}")
    if not 0 <= r < 1:
        raise ValueError(f"Dilation radius must satisfy 0 <= r < 1, got {r}")
    if tol <= 0:
        raise ValueError(f"Tolerance must be positive, got {tol}")

    d = f.d
    scale = phi.upper_bound() * float(sum(abs(value) for _, value in f.items()))
    if truncation is None:
        truncation = _smallest_truncation(scale, r, d, max(f.degree, 0), tol)
    elif truncation < f.degree:
        raise ValueError(f"Truncation {truncation} is below the degree {f.degree} of f")

    tail_bound = _tail(scale, r, d, truncation)
    if tail_bound > tol:
        raise TailBoundError(f"Kernel tail bound {tail_bound} at N={truncation} exceeds tolerance {tol}")

    total = Fraction(0)
    for alpha, value in f.items():
        pairing = Fraction(kernel_weight(alpha)) * sigma_integral(alpha, alpha, d)
        total = total + value * pairing * r ** degree(alpha) * phi.evaluate(Polynomial.monomial(alpha))

    logging.debug(f"Valskii approximant at r={r}, N={truncation}: tail bound {tail_bound}")
    return ValskiiValue(normalize_scalar(total), tail_bound, truncation)


def cauchy_integral(f: Polynomial, z: Sequence[Number]):
    """int f(zeta) Gamma(z, zeta) dsigma(zeta) through the Cauchy expansion and the sphere integrals."""
    if len(z) != f.d:
        raise ValueError(f"Point of dimension {len(z)} for a polynomial in {f.d} variables")

    kernel = cauchy_coeffs(z, max(f.degree, 0))
    total = Fraction(0)
    for alpha, value in f.items():
        total = total + value * kernel.coefficient(alpha).conjugate() * sigma_integral(alpha, alpha, f.d)
    return total


def default_battery(d: int = 2) -> Tuple[List[Tuple[str, Functional]], List[Polynomial]]:
    """Vector functionals and polynomials used for the convergence table."""
    one = FockVector(d, 0, {(0,) * d: 1})
    z1 = Polynomial.coordinate(d, 1)
    w = [Fraction(1, 2 ** (i + 1)) for i in range(d)]

    functionals = [
        ("[1, z1*]", VectorPair(one, FockVector.from_polynomial(z1))),
        ("[1, 1*]", VectorPair(one, one)),
        ("[k_w, k_w*]", kernel_pair_functional(w, 4, 6)),
    ]
    polynomials = [Polynomial.constant(d), z1, (1 + z1) / 2, z1 ** 3]
    if d >= 2:
        z2 = Polynomial.coordinate(d, 2)
        eta = FockVector.from_polynomial(z1 * z2)
        functionals.append(("[z1, (z1 z2)*]", VectorPair(FockVector.from_polynomial(z1), eta)))
        polynomials += [z1 * z2, z2 ** 2 + z1 * z2]
    return functionals, polynomials


def valskii_convergence_table(
        functionals: List[Tuple[str, Functional]],
        polynomials: List[Polynomial],
        radii: Sequence[Number] = DEFAULT_RADII,
        tol: float = VALSKII_TOLERANCE,
) -> pd.DataFrame:
    """|Psi_r(f) - Phi(f)| along the radii, with the rate column error / (1 - r)."""
    rows = []
    for label, phi in functionals:
        for f in polynomials:
            exact = complex(phi.evaluate(f))
            for r in radii:
                approximant = valskii_approximant(phi, r, f, tol=tol)
                value = complex(approximant.value)
                error = abs(value - exact)
                rows.append({
                    "functional": label,
                    "polynomial": format_polynomial(f),
                    "r": float(r),
                    "truncation": approximant.truncation,
                    "tail_bound": approximant.tail_bound,
                    "approximant_re": value.real,
                    "approximant_im": value.imag,
                    "exact_re": exact.real,
                    "exact_im": exact.imag,
                    "error": error,
                    "rate": error / (1 - float(r)),
                })

    table = pd.DataFrame(rows)
    if len(table):
        logging.info(f"Valskii battery: {len(table)} rows, largest rate {table['rate'].max()}")
    return table
