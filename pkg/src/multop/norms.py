from .block_operator import BlockOperator, mult_matrix
from .parallel import parallel_map
from .sphere_sampling import SamplingConfig, sup_norm, sphere_grid
from src.fock import Polynomial, monomial_norm_sq
from scipy.linalg import svdvals, eigvalsh, eigh
from typing import Dict, List, Tuple

import pandas as pd
import numpy as np
import logging
import math

NORM_TOLERANCE = 1e-9
MAX_ITERATIONS = 100000
BLOCK_WIDTH = 4
GOLDEN = (math.sqrt(5) - 1) / 2


class NormComputationError(Exception):

    def __init__(self, message: str, trace: List[float]):
        super().__init__(message)
        self.trace = trace


def _is_diagonal(matrix: np.ndarray) -> bool:
    return np.count_nonzero(matrix - np.diag(np.diagonal(matrix))) == 0


def _seed_block(n: int) -> np.ndarray:
    """Orthonormalized deterministic start vectors: all-ones, a ramp, alternating signs and golden-ratio phases."""
    k = np.arange(n)
    seeds = [np.ones(n), k + 1.0, (-1.0) ** k, np.exp(2j * np.pi * GOLDEN * k)]
    block, _ = np.linalg.qr(np.column_stack(seeds[:min(BLOCK_WIDTH, n)]).astype(complex))
    return block


def power_iteration(gram: np.ndarray, tol: float = NORM_TOLERANCE, max_iter: int = MAX_ITERATIONS) -> float:
    """
    Largest eigenvalue of a positive semi-definite Hermitian matrix by block power iteration with
    Rayleigh-Ritz projection. The block starts from the all-ones vector plus three other fixed seeds,
    so symbols with a symmetry that traps the all-ones vector still reach the top eigenvalue.
    Stops once the residual of the top Ritz pair satisfies ||G u - q u|| <= tol * q.
    """
    X = _seed_block(gram.shape[0])

    trace = []
    for iteration in range(max_iter):
        Y = gram @ X
        projected = X.conj().T @ Y
        ritz_values, ritz_vectors = eigh((projected + projected.conj().T) / 2)
        quotient = float(ritz_values[-1])
        trace.append(quotient)
        if quotient <= 0:
            return 0.0

        top = ritz_vectors[:, -1]
        residual = float(np.linalg.norm(Y @ top - quotient * (X @ top)))
        if residual <= tol * quotient:
            logging.debug(f"Power iteration converged after {iteration + 1} iterations: {quotient} (residual {residual})")
            return quotient
        X, _ = np.linalg.qr(Y @ ritz_vectors[:, ::-1])

    raise NormComputationError(
        f"Power iteration did not converge within {max_iter} iterations (last quotient {trace[-1]})",
        trace=trace,
    )


def _gram_norm(gram: np.ndarray, tol: float, method: str, max_iter: int) -> float:
    if gram.size == 0:
        return 0.0
    if _is_diagonal(gram):
        return math.sqrt(max(0.0, float(np.max(np.real(np.diagonal(gram))))))
    if method == "dense":
        return math.sqrt(max(0.0, float(eigvalsh(gram)[-1])))
    return math.sqrt(power_iteration(gram, tol=tol, max_iter=max_iter))


def block_norms(T: BlockOperator, tol: float = NORM_TOLERANCE, method: str = "power", max_iter: int = MAX_ITERATIONS) -> List[float]:
    """Norm of T on each domain degree k = 0..N. Only meaningful as a decomposition when T is homogeneous."""
    if not T.is_homogeneous:
        raise ValueError("Block-wise norms need a homogeneous symbol")
    if T.is_zero:
        return [0.0] * (T.domain_bound + 1)

    m = T.component_degrees[0]

    def norm_of_block(k: int) -> float:
        block = T.block(m, k)
        return _gram_norm(block.conj().T @ block, tol, method, max_iter)

    return parallel_map(norm_of_block, range(T.domain_bound + 1))


def op_norm(T: BlockOperator, tol: float = NORM_TOLERANCE, method: str = "power", max_iter: int = MAX_ITERATIONS) -> float:
    """
    Largest singular value of T. For homogeneous symbols T*T is block diagonal per domain degree,
    so the norm is the largest block norm. method="dense" swaps power iteration for a dense
    eigen/singular value solver.
    """
    if tol <= 0:
        raise ValueError(f"Tolerance must be positive, got {tol}")
    if method not in ("power", "dense"):
        raise ValueError(f"Unknown norm method: {method}")
    if T.is_zero:
        return 0.0

    if T.is_homogeneous:
        return max(block_norms(T, tol=tol, method=method, max_iter=max_iter))

    matrix = T.to_dense()
    if method == "dense":
        return float(svdvals(matrix)[0])
    return _gram_norm(matrix.conj().T @ matrix, tol, method, max_iter)


def dense_norm(T: BlockOperator) -> float:
    """Reference value: dense SVD of the assembled matrix."""
    if T.is_zero:
        return 0.0
    return float(svdvals(T.to_dense())[0])


class NormEstimate(object):

    def __init__(self, value: float, sweep: List[Tuple[int, float]], converged: bool, tolerance: float):
        self.value = value
        self.sweep = sweep
        self.converged = converged
        self.tolerance = tolerance

    def to_dict(self) -> Dict:
        return {
            "value": self.value,
            "sweep": [[n, v] for n, v in self.sweep],
            "converged": self.converged,
            "tolerance": self.tolerance,
        }

    def __repr__(self):
        return f"NormEstimate(value={self.value}, converged={self.converged}, sweep_len={len(self.sweep)})"


def multiplier_norm(p: Polynomial, n_max: int, tol: float = NORM_TOLERANCE, method: str = "power") -> NormEstimate:
    """
    Sweep of the truncated operator norms of M_p for N = 0..n_max. The operator is assembled once at n_max
    and restricted, so every entry is the norm on polynomials of degree <= N.
    The converged flag is a two-point plateau heuristic: the last two entries differ by < tol * value.

    Every entry is a lower bound for the multiplier norm. Homogeneous symbols reach it at small N, but
    symbols mixing a constant with higher-degree terms approach it like 1/N^2 (for 1 + z in one variable
    the entry at N is 2 cos(pi / (2N + 4))), so the sweep can sit below the sup norm with converged False.
    """
    if n_max < 0:
        raise ValueError(f"Truncation must be non-negative, got {n_max}")
    if n_max < p.degree:
        logging.warning(f"Truncation N={n_max} is below deg p = {p.degree}, sweep may not reach the norm")

    T = mult_matrix(p, n_max)
    if T.is_homogeneous:
        running, values = 0.0, []
        for value in block_norms(T, tol=tol, method=method):
            running = max(running, value)
            values.append(running)
    else:
        values = [op_norm(T.restrict(n), tol=tol, method=method) for n in range(n_max + 1)]

    sweep = list(zip(range(n_max + 1), values))
    value = values[-1]
    if len(values) < 2 or value == 0:
        converged = True
    else:
        converged = abs(values[-1] - values[-2]) < tol * value

    logging.info(f"Multiplier norm sweep up to N={n_max}: {value} (converged={converged})")
    return NormEstimate(value, sweep, converged, tol)


def truncated_multiplier_norm(p: Polynomial, domain_bound: int, tol: float = NORM_TOLERANCE, method: str = "power") -> float:
    return op_norm(mult_matrix(p, domain_bound), tol=tol, method=method)


def multiplier_norm_bound(p: Polynomial) -> float:
    """
    Upper bound sum |p_alpha| ||z^alpha||_M from the triangle inequality. The multiplier norm of z^alpha is
    its H^2_d norm sqrt(alpha! / |alpha|!), so the bound is exact for monomials. Truncated norms only bound
    from below.
    """
    return float(sum(abs(complex(value)) * math.sqrt(monomial_norm_sq(alpha)) for alpha, value in p.items()))


class GapReport(object):

    def __init__(self, mult_norm: float, sup_norm: float, ratio: float, n_samples: int, degree: int):
        self.mult_norm = mult_norm
        self.sup_norm = sup_norm
        self.ratio = ratio
        self.n_samples = n_samples
        self.degree = degree

    def to_dict(self) -> Dict:
        return {
            "mult_norm": self.mult_norm,
            "sup_norm": self.sup_norm,
            "ratio": self.ratio,
            "n_samples": self.n_samples,
            "degree": self.degree,
        }


def norm_gap_report(p: Polynomial, n_max: int, samples: SamplingConfig = None, tol: float = NORM_TOLERANCE) -> GapReport:
    if samples is None:
        samples = SamplingConfig()

    estimate = multiplier_norm(p, n_max, tol=tol)
    sup_value = sup_norm(p, samples)
    ratio = estimate.value / sup_value if sup_value > 0 else 1.0
    n_samples = sphere_grid(p.d, samples).shape[0]
    return GapReport(estimate.value, sup_value, ratio, n_samples, n_max)


def gap_scaling_table(n_values: List[int], n_max: int = 4, samples: SamplingConfig = None, tol: float = NORM_TOLERANCE) -> pd.DataFrame:
    """Multiplier vs sup norm of (z1 z2)^n next to the reference growth (pi n)^(1/4)."""
    rows = []
    for n in n_values:
        p = Polynomial.monomial((n, n))
        report = norm_gap_report(p, n_max, samples=samples, tol=tol)
        reference = (math.pi * n) ** 0.25
        rows.append({
            "n": n,
            "mult_norm": report.mult_norm,
            "exact_mult_norm": math.sqrt(1 / math.comb(2 * n, n)),
            "sup_norm": report.sup_norm,
            "ratio": report.ratio,
            "reference": reference,
            "normalized_ratio": report.ratio / reference,
        })
    return pd.DataFrame(rows, columns=["n", "mult_norm", "exact_mult_norm", "sup_norm", "ratio", "reference", "normalized_ratio"])
