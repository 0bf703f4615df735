from src.fock import (
    FockVector,
    Polynomial,
    enum_multiindices,
    inner_product,
    norm,
    normalize_scalar,
    polynomial_to_dict,
    polynomial_from_dict,
    PolynomialParseError,
)
from src.multop import multiplier_norm_bound
from src.peaklab import PeakSpec, peak_polynomial, circle_peak, householder_unitary, rotation_pullback
from numbers import Number
from typing import Dict, List, Sequence, Tuple

import numpy as np
import logging
import math

UNIT_NORM_TOLERANCE = 1e-12
BOUND_TOLERANCE = 1e-9
CANDIDATE_DEGREE = 6
CANDIDATE_POWERS = (1, 2, 4, 8, 16)
CESARO_CANDIDATES = (1, 2, 4)


class TruncationOverflowError(Exception):
    pass


class Functional(object):
    kind = None

    @property
    def d(self) -> int:
        raise NotImplementedError("This method is not implemented in base class.")

    def evaluate(self, p: Polynomial):
        raise NotImplementedError("This method is not implemented in base class.")

    def upper_bound(self) -> float:
        raise NotImplementedError("This method is not implemented in base class.")

    def to_dict(self) -> Dict:
        raise NotImplementedError("This method is not implemented in base class.")

    def _check_dimension(self, p: Polynomial):
        if p.d != self.d:
            raise ValueError(f"Polynomial in {p.d} variables, functional on dimension {self.d}")


class VectorPair(Functional):
    """[xi eta*]: p -> <M_p xi, eta>."""
    kind = "vector"

    def __init__(self, xi: FockVector, eta: FockVector):
        if xi.d != eta.d:
            raise ValueError(f"Dimension mismatch: xi in {xi.d}, eta in {eta.d} variables")
        self._xi = xi
        self._eta = eta

    @property
    def d(self) -> int:
        return self._xi.d

    @property
    def xi(self) -> FockVector:
        return self._xi

    @property
    def eta(self) -> FockVector:
        return self._eta

    def evaluate(self, p: Polynomial):
        self._check_dimension(p)
        needed = p.degree + self._xi.degree_bound
        if self._eta.truncated and needed > self._eta.degree_bound:
            raise TruncationOverflowError(
                f"Pairing needs eta up to degree {needed}, but eta is truncated at {self._eta.degree_bound}"
            )
        return inner_product(p * self._xi, self._eta)

    def upper_bound(self) -> float:
        return norm(self._xi) * norm(self._eta)

    def to_dict(self) -> Dict:
        return {"kind": self.kind, "xi": _vector_to_dict(self._xi), "eta": _vector_to_dict(self._eta)}


class AtomicMeasure(Functional):
    """p -> sum_i lambda_i p(zeta_i) for points zeta_i of the sphere."""
    kind = "atomic"

    def __init__(self, atoms: Sequence[Tuple[Number, Sequence[Number]]]):
        if not atoms:
            raise ValueError("An atomic measure needs at least one atom")

        checked = []
        for weight, zeta in atoms:
            zeta = tuple(zeta)
            radius = math.sqrt(sum(abs(complex(z)) ** 2 for z in zeta))
            if abs(radius - 1) > UNIT_NORM_TOLERANCE:
                raise ValueError(f"Atom {zeta} is not on the unit sphere (norm {radius})")
            checked.append((normalize_scalar(weight), zeta))

        dims = {len(zeta) for _, zeta in checked}
        if len(dims) != 1:
            raise ValueError(f"Atoms live in different dimensions: {sorted(dims)}")
        self._atoms = checked

    @property
    def d(self) -> int:
        return len(self._atoms[0][1])

    @property
    def atoms(self) -> List[Tuple[Number, tuple]]:
        return list(self._atoms)

    def evaluate(self, p: Polynomial):
        self._check_dimension(p)
        total = 0
        for weight, zeta in self._atoms:
            total = total + weight * p.evaluate(zeta)
        return total

    def upper_bound(self) -> float:
        return float(sum(abs(weight) for weight, _ in self._atoms))

    def to_dict(self) -> Dict:
        atoms = []
        for weight, zeta in self._atoms:
            weight = complex(weight)
            atoms.append({
                "lambda": [weight.real, weight.imag],
                "zeta": [[complex(z).real, complex(z).imag] for z in zeta],
            })
        return {"kind": self.kind, "atoms": atoms}


def eval_functional(phi: Functional, p: Polynomial):
    return phi.evaluate(p)


def _monomial_candidates(d: int, max_degree: int) -> List[Tuple[Polynomial, float]]:
    candidates = []
    for k in range(max_degree + 1):
        for alpha in enum_multiindices(d, k):
            p = Polynomial.monomial(alpha)
            candidates.append((p, multiplier_norm_bound(p)))
    return candidates


def _atom_candidates(phi: AtomicMeasure) -> List[Tuple[Polynomial, float]]:
    """Peak polynomials and powers of <z, zeta> at each atom; both have multiplier norm at most 1."""
    candidates = []
    for _, zeta in phi.atoms:
        zeta = np.asarray([complex(z) for z in zeta])
        candidates.append((peak_polynomial(PeakSpec.point(zeta)), 1.0))

        V = householder_unitary(zeta)
        for n in CANDIDATE_POWERS:
            coordinate_power = Polynomial.monomial(tuple(n if i == 0 else 0 for i in range(phi.d)))
            candidates.append((rotation_pullback(V, coordinate_power), 1.0))
    return candidates


def _cesaro_candidates() -> List[Tuple[Polynomial, float]]:
    return [(circle_peak(n), multiplier_norm_bound(circle_peak(n))) for n in CESARO_CANDIDATES]


def functional_norm_bounds(
        phi: Functional,
        max_degree: int = CANDIDATE_DEGREE,
        extra_candidates: List[Polynomial] = None,
) -> Tuple[float, float]:
    """
    Upper bound ||xi|| ||eta|| or sum |lambda_i|; lower bound max |Phi(p)| / B(p) over a candidate family
    of monomials, peak polynomials and rotated powers at the atoms, circle functions (d = 2) and any extra
    candidates. B(p) is a proven upper bound for ||p||_M: 1 for the peak polynomials and rotated powers,
    multiplier_norm_bound otherwise. Candidates whose pairing would overflow a truncated vector are skipped.
    """
    upper = phi.upper_bound()
    if upper == 0:
        return 0.0, 0.0

    candidates = _monomial_candidates(phi.d, max_degree)
    if isinstance(phi, AtomicMeasure):
        candidates += _atom_candidates(phi)
    if phi.d == 2:
        candidates += _cesaro_candidates()
    for p in extra_candidates or []:
        candidates.append((p, multiplier_norm_bound(p)))

    lower = 0.0
    for p, mult_norm in candidates:
        if mult_norm == 0:
            continue
        try:
            value = abs(complex(phi.evaluate(p))) / mult_norm
        except TruncationOverflowError:
            continue
        lower = max(lower, value)

    if lower > upper * (1 + BOUND_TOLERANCE):
        logging.warning(f"Candidate lower bound {lower} above upper bound {upper}")
    lower = min(lower, upper)
    return lower, upper


def _vector_to_dict(v: FockVector) -> Dict:
    data = polynomial_to_dict(v)
    data["N"] = v.degree_bound
    data["truncated"] = v.truncated
    return data


def _vector_from_dict(data: Dict) -> FockVector:
    p = polynomial_from_dict(data)
    degree_bound = int(data.get("N", p.degree))
    return FockVector(p.d, degree_bound, p.coefficients, truncated=bool(data.get("truncated", False)))


def functional_from_dict(data: Dict) -> Functional:
    try:
        kind = data["kind"]
        if kind == VectorPair.kind:
            return VectorPair(_vector_from_dict(data["xi"]), _vector_from_dict(data["eta"]))
        if kind == AtomicMeasure.kind:
            atoms = []
            for atom in data["atoms"]:
                weight = complex(*atom["lambda"])
                zeta = [complex(*z) for z in atom["zeta"]]
                atoms.append((weight, zeta))
            return AtomicMeasure(atoms)
    except (KeyError, TypeError) as e:
        raise PolynomialParseError(f"Invalid functional JSON: {e}")
    raise PolynomialParseError(f"Unknown functional kind: {data.get('kind')!r}")
