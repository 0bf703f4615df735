from .functional import AtomicMeasure, VectorPair
from src.fock import Polynomial, kernel_vector
from src.multop import truncated_multiplier_norm
from src.peaklab import householder_unitary, rotation_pullback
from typing import Dict, List, Sequence

import pandas as pd
import numpy as np
import logging

WITNESS_TRUNCATION = 4


def rotated_powers(zeta: Sequence[complex], n_max: int) -> List[Polynomial]:
    """f_n = z1^n pulled back by a unitary sending e1 to zeta, n = 1..n_max. No rotation at e1."""
    zeta = np.asarray([complex(z) for z in zeta])
    d = zeta.size
    powers = [Polynomial.monomial(tuple(n if i == 0 else 0 for i in range(d))) for n in range(1, n_max + 1)]
    if np.array_equal(zeta, np.eye(d)[0]):
        return powers
    V = householder_unitary(zeta)
    return [rotation_pullback(V, p) for p in powers]


def singular_witness(phi: AtomicMeasure, n_max: int, truncation: int = WITNESS_TRUNCATION) -> pd.DataFrame:
    """
    Rows (n, ||f_n||_M, |Phi(f_n)|) for the rotated coordinate powers f_n, which lie in the n-th power of the
    ideal generated by the coordinates. Norm one and |Phi(f_n)| = |lambda| for every n certifies singularity up to n_max.
    """
    if not isinstance(phi, AtomicMeasure) or len(phi.atoms) != 1:
        raise ValueError("Singular witnesses are built for single-atom measures only")
    if n_max < 1:
        raise ValueError(f"n_max must be at least 1, got {n_max}")

    _, zeta = phi.atoms[0]
    rows = []
    for n, f_n in enumerate(rotated_powers(zeta, n_max), start=1):
        rows.append({
            "n": n,
            "mult_norm": truncated_multiplier_norm(f_n, truncation),
            "value": abs(complex(phi.evaluate(f_n))),
        })
    return pd.DataFrame(rows, columns=["n", "mult_norm", "value"])


class DecayReport(object):

    def __init__(self, table: pd.DataFrame, n_max: int):
        self.table = table
        self.n_max = n_max

    @property
    def tail_max(self) -> float:
        tail = self.table[self.table["n"] > self.n_max / 2]
        return float(tail["value"].max()) if len(tail) else 0.0

    def to_dict(self) -> Dict:
        return {"n_max": self.n_max, "tail_max": self.tail_max, "rows": self.table.to_dict(orient="records")}


def henkin_decay(phi: VectorPair, n_max: int, zeta: Sequence[complex] = None) -> DecayReport:
    """
    |Phi(f_n)| on the rotated coordinate powers; for a Henkin functional the values tend to 0.
    The ratio column holds |Phi(f_n)| / |Phi(f_{n-1})| where the previous value is non-zero.
    """
    if not isinstance(phi, VectorPair):
        raise ValueError("Decay tables are built for vector functionals")
    if n_max < 1:
        raise ValueError(f"n_max must be at least 1, got {n_max}")
    if zeta is None:
        zeta = [1] + [0] * (phi.d - 1)

    rows, previous = [], None
    for n, f_n in enumerate(rotated_powers(zeta, n_max), start=1):
        value = abs(phi.evaluate(f_n))
        ratio = float(value / previous) if previous else np.nan
        rows.append({"n": n, "value": float(value), "ratio": ratio})
        previous = value

    report = DecayReport(pd.DataFrame(rows, columns=["n", "value", "ratio"]), n_max)
    logging.info(f"Decay table up to n={n_max}: tail max {report.tail_max}")
    return report


def kernel_pair_functional(w: Sequence, degree_bound: int, n_max: int) -> VectorPair:
    """[k_w, k_w*] with eta kept n_max degrees longer, so powers up to n_max never overflow."""
    return VectorPair(kernel_vector(w, degree_bound), kernel_vector(w, degree_bound + n_max))
