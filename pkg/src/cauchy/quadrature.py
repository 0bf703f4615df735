from src.fock import MultiIndex, alpha_factorial, check_multi_index, degree, enum_multiindices_up_to
from src.multop import parallel_map
from scipy.stats import norm, qmc
from fractions import Fraction
from typing import List, Tuple
from tqdm import tqdm

import pandas as pd
import numpy as np
import logging
import math

MONTE_CARLO_SAMPLES = 2 ** 23
CHUNK_SIZE = 2 ** 16
Z_THRESHOLD = 3.0
ROUNDING_TOLERANCE = 1e-12

IndexPair = Tuple[MultiIndex, MultiIndex]


def sigma_integral(alpha: MultiIndex, beta: MultiIndex, d: int = None) -> Fraction:
    """Integral of z^alpha conj(z)^beta against the normalized surface measure: delta (d-1)! alpha! / (d-1+|alpha|)!."""
    if d is None:
        d = len(alpha)
    check_multi_index(alpha, d)
    check_multi_index(beta, d)
    if tuple(alpha) != tuple(beta):
        return Fraction(0)
    return Fraction(math.factorial(d - 1) * alpha_factorial(alpha), math.factorial(d - 1 + degree(alpha)))


class SigmaIntegralTable(object):

    def __init__(self, d: int, max_degree: int):
        self._d = d
        self._max_degree = max_degree
        self._diagonal = {alpha: sigma_integral(alpha, alpha) for alpha in enum_multiindices_up_to(d, max_degree)}

    @property
    def d(self) -> int:
        return self._d

    def value(self, alpha: MultiIndex, beta: MultiIndex) -> Fraction:
        if tuple(alpha) != tuple(beta):
            return Fraction(0)
        if alpha in self._diagonal:
            return self._diagonal[alpha]
        return sigma_integral(alpha, beta, self._d)

    def to_frame(self) -> pd.DataFrame:
        rows = [{"alpha": str(list(a)), "value": float(v), "exact": str(v)} for a, v in self._diagonal.items()]
        return pd.DataFrame(rows, columns=["alpha", "value", "exact"])


def _sphere_chunk(d: int, size_log2: int, seed) -> np.ndarray:
    sampler = qmc.Sobol(d=2 * d, scramble=True, seed=np.random.default_rng(seed))
    u = np.clip(sampler.random_base2(size_log2), 1e-16, 1 - 1e-16)
    gauss = norm.ppf(u)
    z = gauss[:, :d] + 1j * gauss[:, d:]
    return z / np.linalg.norm(z, axis=1, keepdims=True)


def _monomial_values(z: np.ndarray, alpha: MultiIndex) -> np.ndarray:
    values = np.ones(z.shape[0], dtype=complex)
    for i, a in enumerate(alpha):
        if a:
            values = values * z[:, i] ** a
    return values


def _chunk_sums(d: int, pairs: List[IndexPair], size_log2: int, seed) -> np.ndarray:
    """Per pair: sum of re, im and of their squares over one scrambled Sobol chunk."""
    z = _sphere_chunk(d, size_log2, seed)
    sums = np.zeros((len(pairs), 4))
    for idx, (alpha, beta) in enumerate(pairs):
        values = _monomial_values(z, alpha) * np.conj(_monomial_values(z, beta))
        sums[idx] = [values.real.sum(), values.imag.sum(), (values.real ** 2).sum(), (values.imag ** 2).sum()]
    return sums


def monte_carlo_sigma(
        pairs: List[IndexPair],
        d: int,
        n_samples: int = MONTE_CARLO_SAMPLES,
        seed: int = 0,
        verbose: bool = False,
) -> pd.DataFrame:
    """
    Monte-Carlo means and standard errors of z^alpha conj(z)^beta over the sphere. Points are normalized complex
    Gaussians driven by independently scrambled Sobol chunks; the sample count is rounded down to a power of two
    and partial sums are reduced in chunk order. Standard errors use the i.i.d. formula.
    """
    if n_samples < 1:
        raise ValueError(f"Sample count must be at least 1, got {n_samples}")

    total_log2 = int(math.floor(math.log2(n_samples)))
    chunk_log2 = min(total_log2, int(math.log2(CHUNK_SIZE)))
    n_chunks = 2 ** (total_log2 - chunk_log2)
    seeds = np.random.SeedSequence(seed).spawn(n_chunks)

    partials = parallel_map(
        lambda s: _chunk_sums(d, pairs, chunk_log2, s),
        tqdm(seeds, desc="Sphere samples", disable=not verbose),
    )
    totals = np.zeros((len(pairs), 4))
    for partial in partials:
        totals += partial

    n = 2 ** total_log2
    mean = totals[:, :2] / n
    variance = np.clip(totals[:, 2:] / n - mean ** 2, 0, None)
    stderr = np.sqrt(variance / max(n - 1, 1))

    rows = []
    for idx, (alpha, beta) in enumerate(pairs):
        rows.append({
            "alpha": str(list(alpha)),
            "beta": str(list(beta)),
            "mc_mean_re": mean[idx, 0],
            "mc_mean_im": mean[idx, 1],
            "mc_stderr_re": stderr[idx, 0],
            "mc_stderr_im": stderr[idx, 1],
            "n_samples": n,
        })
    return pd.DataFrame(rows)


def _z_score(difference: float, stderr: float) -> float:
    if abs(difference) <= ROUNDING_TOLERANCE:
        return 0.0
    if stderr == 0:
        return math.inf
    return abs(difference) / stderr


def validation_pairs(d: int, max_degree: int) -> List[IndexPair]:
    """Every diagonal pair up to max_degree plus all off-diagonal pairs of degree <= 2."""
    indices = enum_multiindices_up_to(d, max_degree)
    pairs = [(alpha, alpha) for alpha in indices]
    low = enum_multiindices_up_to(d, min(max_degree, 2))
    pairs += [(alpha, beta) for alpha in low for beta in low if alpha != beta]
    return pairs


def validate_sigma_integrals(
        d_max: int = 3,
        max_degree: int = 6,
        n_samples: int = MONTE_CARLO_SAMPLES,
        seed: int = 0,
        z_threshold: float = Z_THRESHOLD,
        verbose: bool = False,
) -> pd.DataFrame:
    """Compares the closed-form sphere integrals with the Monte-Carlo estimate, real and imaginary parts separately."""
    frames = []
    for d in range(1, d_max + 1):
        pairs = validation_pairs(d, max_degree)
        table = monte_carlo_sigma(pairs, d, n_samples=n_samples, seed=seed, verbose=verbose)
        closed = [float(sigma_integral(alpha, beta)) for alpha, beta in pairs]
        table.insert(0, "d", d)
        table.insert(3, "closed_form", closed)
        table["z_score"] = [
            max(_z_score(row.mc_mean_re - row.closed_form, row.mc_stderr_re), _z_score(row.mc_mean_im, row.mc_stderr_im))
            for row in table.itertuples()
        ]
        table["passed"] = table["z_score"] <= z_threshold
        frames.append(table)

    result = pd.concat(frames, ignore_index=True)
    failed = int((~result["passed"]).sum())
    if failed:
        logging.warning(f"Sphere integral validation: {failed} of {len(result)} pairs outside {z_threshold} sigma")
    else:
        logging.info(f"Sphere integral validation passed for {len(result)} pairs")
    return result
