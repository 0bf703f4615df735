from src.multop import parallel_map
from scipy.special import gammaln
from fractions import Fraction
from typing import Dict, List, NamedTuple, Tuple

import pandas as pd
import numpy as np
import logging
import math

STIRLING_K_MAX = 64
STIRLING_M_MAX = 1000


class ShiftWeight(NamedTuple):
    squared: Fraction
    value: float


def _check_indices(k: int, m: int, j: int = 0):
    if k < 1:
        raise ValueError(f"Shift power k must be at least 1, got {k}")
    if m < 0 or j < 0:
        raise ValueError(f"Chain indices must be non-negative, got m={m}, j={j}")


def alpha_weight(k: int, m: int) -> ShiftWeight:
    """M_{h_0^k} e_m = alpha(k, m) e_{m+k} with h_0 = 2 z1 z2 and e_m the normalized (z1 z2)^m."""
    _check_indices(k, m)
    squared = Fraction(4 ** k * math.comb(2 * m, m), math.comb(2 * m + 2 * k, m + k))
    return ShiftWeight(squared, math.sqrt(squared))


def beta_weight(k: int, m: int, j: int) -> ShiftWeight:
    """M_{h_0^k} f_{j,m} = beta(k, m, j) f_{j,m+k} with f_{j,m} the normalized z1^{m+j} z2^m."""
    _check_indices(k, m, j)
    f = math.factorial
    squared = (
        4 ** k
        * Fraction(f(2 * m + j), f(m) * f(m + j))
        * Fraction(f(m + k) * f(m + j + k), f(2 * m + j + 2 * k))
    )
    return ShiftWeight(squared, math.sqrt(squared))


def alpha_weight_array(k, m) -> np.ndarray:
    """Vectorized alpha(k, m) in floating point through log-gamma, for large grids."""
    k = np.asarray(k, dtype=float)
    m = np.asarray(m, dtype=float)
    log_sq = (
        k * math.log(4)
        + gammaln(2 * m + 1) - 2 * gammaln(m + 1)
        - gammaln(2 * m + 2 * k + 1) + 2 * gammaln(m + k + 1)
    )
    return np.exp(0.5 * log_sq)


class WeightTable(object):
    """Squared weights beta(k, m, j) on a grid, exact; j = 0 holds alpha(k, m)."""

    def __init__(self, k_values: List[int], m_values: List[int], j_values: List[int]):
        self._k_values = list(k_values)
        self._m_values = list(m_values)
        self._j_values = list(j_values)
        self._squared = {
            (k, m, j): beta_weight(k, m, j).squared
            for k in self._k_values for m in self._m_values for j in self._j_values
        }

    def alpha_sq(self, k: int, m: int) -> Fraction:
        return self._squared.get((k, m, 0)) or alpha_weight(k, m).squared

    def beta_sq(self, k: int, m: int, j: int) -> Fraction:
        return self._squared[(k, m, j)]

    def to_frame(self) -> pd.DataFrame:
        rows = []
        for (k, m, j), squared in self._squared.items():
            rows.append({"k": k, "m": m, "j": j, "squared": float(squared), "weight": math.sqrt(squared)})
        return pd.DataFrame(rows, columns=["k", "m", "j", "squared", "weight"])


class MonotonicityReport(object):

    def __init__(self, k_max: int, m_max: int, j_max: int, n_checked: int, violations: List[Dict]):
        self.k_max = k_max
        self.m_max = m_max
        self.j_max = j_max
        self.n_checked = n_checked
        self.violations = violations

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> Dict:
        return {
            "k_max": self.k_max,
            "m_max": self.m_max,
            "j_max": self.j_max,
            "n_checked": self.n_checked,
            "passed": self.passed,
            "violations": self.violations,
        }


def _check_power(k: int, m_max: int, j_max: int) -> Tuple[int, List[Dict]]:
    n_checked, violations = 0, []
    for m in range(m_max + 1):
        alpha_sq = alpha_weight(k, m).squared
        previous = alpha_sq
        for j in range(j_max + 1):
            current = beta_weight(k, m, j).squared
            if j == 0 and current != alpha_sq:
                violations.append({"k": k, "m": m, "j": j, "rule": "beta(k,m,0) == alpha(k,m)"})
            if current > previous:
                violations.append({"k": k, "m": m, "j": j, "rule": "beta(k,m,j) <= beta(k,m,j-1)"})
            if current > alpha_sq:
                violations.append({"k": k, "m": m, "j": j, "rule": "beta(k,m,j) <= alpha(k,m)"})
            previous = current
            n_checked += 1
    return n_checked, violations


def weight_monotonicity_check(k_max: int, m_max: int, j_max: int) -> MonotonicityReport:
    """Exact check of beta(k,m,j) <= beta(k,m,j-1) <= alpha(k,m) over k = 1..k_max, m = 0..m_max, j = 0..j_max."""
    if k_max < 1 or m_max < 0 or j_max < 0:
        raise ValueError(f"Invalid grid bounds: k_max={k_max}, m_max={m_max}, j_max={j_max}")

    results = parallel_map(lambda k: _check_power(k, m_max, j_max), range(1, k_max + 1))
    n_checked = sum(n for n, _ in results)
    violations = [v for _, found in results for v in found]

    if violations:
        logging.warning(f"Weight monotonicity violated at {len(violations)} grid points")
    else:
        logging.info(f"Weight monotonicity holds on {n_checked} grid points")
    return MonotonicityReport(k_max, m_max, j_max, n_checked, violations)


def alpha_monotone_in_m(k_max: int, m_max: int) -> bool:
    """Exact check that alpha(k, m) is non-increasing in m."""
    for k in range(1, k_max + 1):
        values = [alpha_weight(k, m).squared for m in range(m_max + 1)]
        if any(b > a for a, b in zip(values, values[1:])):
            return False
    return True


def stirling_ratio(k: int, m: int) -> float:
    """alpha(k, m) / ((m + k + 1) / (m + 1))^(1/4)."""
    _check_indices(k, m)
    return float(alpha_weight_array(k, m)) / ((m + k + 1) / (m + 1)) ** 0.25


def stirling_constant(k_max: int = STIRLING_K_MAX, m_max: int = STIRLING_M_MAX) -> Tuple[float, int, int]:
    """Empirical C1: the grid maximum of stirling_ratio with its argmax (k, m)."""
    k, m = np.meshgrid(np.arange(1, k_max + 1), np.arange(m_max + 1), indexing="ij")
    ratios = alpha_weight_array(k, m) / ((m + k + 1) / (m + 1)) ** 0.25
    idx = np.unravel_index(np.argmax(ratios), ratios.shape)
    return float(ratios[idx]), int(k[idx]), int(m[idx])
