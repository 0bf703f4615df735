from .weights import alpha_weight_array, stirling_constant
from scipy.linalg import svdvals
from typing import Dict, List
from tqdm import tqdm

import pandas as pd
import numpy as np
import logging

TRUNCATION_FACTOR = 5
MIN_TRUNCATION_FACTOR = 4
SPLIT_FACTOR = 3


class CesaroRecord(object):

    def __init__(self, n: int, truncation: int, norm: float):
        self.n = n
        self.truncation = truncation
        self.norm = norm

    def to_dict(self) -> Dict:
        return {"n": self.n, "truncation": self.truncation, "norm": self.norm}

    def __repr__(self):
        return f"CesaroRecord(n={self.n}, truncation={self.truncation}, norm={self.norm})"


def cesaro_chain_matrix(n: int, truncation: int) -> np.ndarray:
    """
    (1/n) sum_{k=1..n} M_{h_0^k} on span{e_0, ..., e_truncation}, as a matrix into
    span{e_0, ..., e_{truncation + n}}: entry (m + k, m) is alpha(k, m) / n.
    """
    if n < 1:
        raise ValueError(f"Averaging length must be at least 1, got {n}")
    if truncation < 0:
        raise ValueError(f"Truncation must be non-negative, got {truncation}")

    m = np.arange(truncation + 1)
    matrix = np.zeros((truncation + 1 + n, truncation + 1))
    for k in range(1, n + 1):
        matrix[m + k, m] += alpha_weight_array(k, m) / n
    return matrix


def cesaro_operator_norm(n: int, truncation: int = None) -> CesaroRecord:
    if truncation is None:
        truncation = TRUNCATION_FACTOR * n
    if truncation < MIN_TRUNCATION_FACTOR * n:
        raise ValueError(f"Truncation {truncation} too small for n={n}, need at least {MIN_TRUNCATION_FACTOR * n}")

    norm = float(svdvals(cesaro_chain_matrix(n, truncation))[0])
    return CesaroRecord(n, truncation, norm)


def cesaro_sweep(n_values: List[int], truncation_factor: int = TRUNCATION_FACTOR, verbose: bool = False) -> pd.DataFrame:
    records = []
    for n in tqdm(n_values, desc="Cesaro sweep", disable=not verbose):
        record = cesaro_operator_norm(n, truncation_factor * n)
        logging.info(f"Cesaro mean n={n}: norm {record.norm}")
        records.append(record.to_dict())
    return pd.DataFrame(records, columns=["n", "truncation", "norm"])


def cesaro_split_norms(n: int, truncation: int = None) -> Dict:
    """
    Norms of the Cesaro operator on span{e_m : m <= 3n} and on span{e_m : m > 3n}, with the
    Stirling-type bound C1 (5/3)^(1/4) of the tail and the resulting bound of the whole operator.
    """
    if truncation is None:
        truncation = TRUNCATION_FACTOR * n
    if truncation <= SPLIT_FACTOR * n:
        raise ValueError(f"Truncation {truncation} leaves no tail beyond {SPLIT_FACTOR * n}")

    matrix = cesaro_chain_matrix(n, truncation)
    split = SPLIT_FACTOR * n + 1
    head = float(svdvals(matrix[:, :split])[0])
    tail = float(svdvals(matrix[:, split:])[0])
    c1, _, _ = stirling_constant()
    tail_bound = c1 * (5 / 3) ** 0.25

    return {
        "n": n,
        "truncation": truncation,
        "norm": float(svdvals(matrix)[0]),
        "head_norm": head,
        "tail_norm": tail,
        "tail_bound": tail_bound,
        "combined_bound": float(np.hypot(head, tail_bound)),
    }
