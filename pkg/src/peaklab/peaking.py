from .rotation import householder_unitary, rotation_pullback, check_unit_vector
from src.fock import Polynomial, sum_polynomials, unit_index
from src.multop import SamplingConfig, sphere_grid, max_modulus, truncated_multiplier_norm
from fractions import Fraction
from typing import Dict, List, Sequence

import pandas as pd
import numpy as np
import logging
import math

DEFAULT_TOLERANCE = 1e-9
DEFAULT_SERIES_LENGTH = math.ceil(math.log2(1 / DEFAULT_TOLERANCE))
EXCLUSION_RADIUS = 0.05

POINT = "point"
BALANCED_CIRCLE = "circle"
ROOTS_OF_UNITY = "roots"


class PeakSpec(object):
    """
    Target set of a peak construction: a point zeta of the sphere, the balanced circle
    {(z, conj z): |z| = 1/sqrt(2)} in C^2, or the m-th roots of unity on the first coordinate circle.
    """

    def __init__(self, kind: str, d: int, zeta: Sequence[complex] = None, series_length: int = DEFAULT_SERIES_LENGTH, m: int = 1):
        if kind not in (POINT, BALANCED_CIRCLE, ROOTS_OF_UNITY):
            raise ValueError(f"Unknown peak target: {kind}")
        if series_length < 1:
            raise ValueError(f"Series length must be at least 1, got {series_length}")
        if kind == BALANCED_CIRCLE and d != 2:
            raise ValueError(f"The balanced circle lives in C^2, got d={d}")
        if kind == ROOTS_OF_UNITY and m < 1:
            raise ValueError(f"Number of roots must be at least 1, got {m}")

        if kind == POINT:
            zeta = check_unit_vector(zeta)
            d = zeta.size
        self.kind = kind
        self.d = d
        self.zeta = zeta
        self.series_length = series_length
        self.m = m

    @classmethod
    def point(cls, zeta: Sequence[complex], series_length: int = DEFAULT_SERIES_LENGTH):
        return cls(POINT, len(zeta), zeta=zeta, series_length=series_length)

    @classmethod
    def balanced_circle(cls, series_length: int = DEFAULT_SERIES_LENGTH):
        return cls(BALANCED_CIRCLE, 2, series_length=series_length)

    @classmethod
    def roots_of_unity(cls, m: int, d: int = 2, series_length: int = DEFAULT_SERIES_LENGTH):
        return cls(ROOTS_OF_UNITY, d, series_length=series_length, m=m)

    @property
    def tail_bound(self) -> float:
        return 2.0 ** -self.series_length

    def target_points(self, count: int = 64) -> np.ndarray:
        if self.kind == POINT:
            return self.zeta[None, :]
        if self.kind == BALANCED_CIRCLE:
            return balanced_circle_points(count)
        points = np.zeros((self.m, self.d), dtype=complex)
        points[:, 0] = np.exp(2j * np.pi * np.arange(self.m) / self.m)
        return points

    def distance(self, points: np.ndarray) -> np.ndarray:
        """Euclidean distance from each row of points to the target set."""
        points = np.asarray(points, dtype=complex)
        if self.kind == BALANCED_CIRCLE:
            closeness = np.abs(points[:, 0] + np.conj(points[:, 1])) / math.sqrt(2)
            return np.sqrt(np.clip(2 - 2 * closeness, 0, None))
        targets = self.target_points()
        gaps = np.linalg.norm(points[:, None, :] - targets[None, :, :], axis=2)
        return gaps.min(axis=1)

    def to_dict(self) -> Dict:
        zeta = None if self.zeta is None else [[float(z.real), float(z.imag)] for z in self.zeta]
        return {"kind": self.kind, "d": self.d, "zeta": zeta, "M": self.series_length, "m": self.m}


class PeakReport(object):

    def __init__(
            self,
            value_on_target: complex,
            max_off_target: float,
            mult_norm: float,
            n_points: int,
            exclusion_radius: float,
            tail_bound: float,
    ):
        self.value_on_target = value_on_target
        self.max_off_target = max_off_target
        self.mult_norm = mult_norm
        self.n_points = n_points
        self.exclusion_radius = exclusion_radius
        self.tail_bound = tail_bound

    @property
    def margin(self) -> float:
        return 1.0 - self.max_off_target

    def to_dict(self) -> Dict:
        value = complex(self.value_on_target)
        return {
            "value_on_target": [value.real, value.imag],
            "max_off_target": self.max_off_target,
            "margin": self.margin,
            "mult_norm": self.mult_norm,
            "n_points": self.n_points,
            "exclusion_radius": self.exclusion_radius,
            "tail_bound": self.tail_bound,
        }


def _base_function(d: int, m: int = 1) -> Polynomial:
    """(1 + z1^m) / 2, equal to 1 exactly where z1^m = 1 on the sphere."""
    return Polynomial(d, {(0,) * d: Fraction(1, 2), tuple(m * a for a in unit_index(d, 1)): Fraction(1, 2)})


def geometric_peak_series(f: Polynomial, series_length: int) -> Polynomial:
    """sum_{n=1..M} 2^{-n} f^n."""
    terms, power = [], f
    for n in range(1, series_length + 1):
        terms.append(power * Fraction(1, 2 ** n))
        power = power * f
    return sum_polynomials(f.d, terms)


def peak_polynomial(spec: PeakSpec) -> Polynomial:
    """
    g_M = sum_{n<=M} 2^{-n} f^n for f = (1 + z1)/2, rotated so that it peaks at the target point.
    Exact rationals when no rotation is needed.
    """
    if spec.kind == BALANCED_CIRCLE:
        raise ValueError("The balanced circle peaks through circle_peak, not the geometric series")

    if spec.kind == ROOTS_OF_UNITY:
        return geometric_peak_series(_base_function(spec.d, spec.m), spec.series_length)

    g = geometric_peak_series(_base_function(spec.d), spec.series_length)
    e1 = np.eye(spec.d, dtype=complex)[0]
    if np.array_equal(spec.zeta, e1):
        return g
    return rotation_pullback(householder_unitary(spec.zeta), g)


def circle_peak(n: int) -> Polynomial:
    """Cesaro mean h_n = (1/n) sum_{k=1..n} (2 z1 z2)^k, equal to 1 on the balanced circle."""
    if n < 1:
        raise ValueError(f"Averaging length must be at least 1, got {n}")
    return Polynomial(2, {(k, k): Fraction(2 ** k, n) for k in range(1, n + 1)})


def balanced_circle_points(count: int) -> np.ndarray:
    theta = 2 * np.pi * np.arange(count) / count
    return np.stack([np.exp(1j * theta), np.exp(-1j * theta)], axis=1) / math.sqrt(2)


def _off_target(spec: PeakSpec, grid: SamplingConfig, exclusion_radius: float):
    points = sphere_grid(spec.d, grid)
    distances = spec.distance(points)
    if exclusion_radius > 0:
        mask = distances > exclusion_radius
    else:
        mask = np.ones(points.shape[0], dtype=bool)
    return points, distances, mask


def peak_verify(
        p: Polynomial,
        spec: PeakSpec,
        grid: SamplingConfig = None,
        exclusion_radius: float = EXCLUSION_RADIUS,
        norm_truncation: int = None,
) -> PeakReport:
    """
    |p| on the sphere grid outside a cap of exclusion_radius around the target set, the value on
    the target, and a truncated multiplier norm (dense solver, truncation deg p unless given).
    """
    if grid is None:
        grid = SamplingConfig()
    if p.d != spec.d:
        raise ValueError(f"Polynomial in {p.d} variables does not match target dimension {spec.d}")

    points, _, mask = _off_target(spec, grid, exclusion_radius)
    if not np.any(mask):
        raise ValueError(f"No grid point left outside the exclusion radius {exclusion_radius}")

    max_off = float(np.max(max_modulus(p, points[mask])))
    value = complex(p.evaluate(list(spec.target_points()[0])))
    if norm_truncation is None:
        norm_truncation = p.degree
    mult_norm = truncated_multiplier_norm(p, norm_truncation, method="dense")

    logging.info(f"Peak check ({spec.kind}): target value {value}, off-target max {max_off}, mult norm {mult_norm}")
    return PeakReport(value, max_off, mult_norm, int(np.count_nonzero(mask)), exclusion_radius, spec.tail_bound)


def grid_dump(p: Polynomial, spec: PeakSpec, grid: SamplingConfig = None, exclusion_radius: float = EXCLUSION_RADIUS) -> pd.DataFrame:
    if grid is None:
        grid = SamplingConfig()
    points, distances, mask = _off_target(spec, grid, exclusion_radius)

    data = {}
    for i in range(points.shape[1]):
        data[f"z{i + 1}_re"] = points[:, i].real
        data[f"z{i + 1}_im"] = points[:, i].imag
    data["distance"] = distances
    data["modulus"] = max_modulus(p, points)
    data["excluded"] = ~mask
    return pd.DataFrame(data)


def peak_separation(p: Polynomial, functionals: List) -> pd.DataFrame:
    """|Phi(p)| for norm-one functionals away from the target; values below 1 separate them from evaluation at the peak."""
    rows = [{"functional": idx, "kind": phi.kind, "value": abs(phi.evaluate(p))} for idx, phi in enumerate(functionals)]
    return pd.DataFrame(rows, columns=["functional", "kind", "value"])


def _power_steps(n_max: int) -> List[int]:
    steps, n = [], 1
    while n < n_max:
        steps.append(n)
        n *= 2
    steps.append(n_max)
    return steps


def supnorm_on_K_powers(
        g: Polynomial,
        f: Polynomial,
        zeta: Sequence[complex],
        n_max: int,
        truncation: int = None,
) -> pd.DataFrame:
    """
    Multiplier norms of g f^n and of g times the Cesaro mean (1/n) sum_{k<=n} f^k, both members of the convex
    hull of the powers of f, for n = 1, 2, 4, ..., n_max. All operators are compressed to the same domain
    truncation so the power column is non-increasing; each entry is at least |g h(zeta)|, a lower bound of the
    true norm. best_norm is the running minimum, which decreases toward |g(zeta)|.
    """
    if n_max < 1:
        raise ValueError(f"n_max must be at least 1, got {n_max}")
    if g.d != f.d:
        raise ValueError(f"Dimension mismatch: {g.d} vs {f.d}")
    zeta = list(check_unit_vector(zeta))
    if truncation is None:
        truncation = g.degree + f.degree * n_max

    target = abs(complex(g.evaluate(zeta)))
    rows, best = [], float("inf")
    powers = [Polynomial.constant(f.d)]
    for n in _power_steps(n_max):
        while len(powers) <= n:
            powers.append(powers[-1] * f)
        mean = sum_polynomials(f.d, powers[1:n + 1]) / n

        estimates = []
        for h in (powers[n], mean):
            q = g * h
            lower = abs(complex(q.evaluate(zeta)))
            estimates.append(max(truncated_multiplier_norm(q, truncation, method="dense"), lower))

        best = min(best, *estimates)
        rows.append({"n": n, "power_norm": estimates[0], "cesaro_norm": estimates[1], "best_norm": best, "target": target})
        logging.info(f"n={n}: ||g f^n|| ~ {estimates[0]}, ||g h_n|| ~ {estimates[1]}")
    return pd.DataFrame(rows, columns=["n", "power_norm", "cesaro_norm", "best_norm", "target"])
