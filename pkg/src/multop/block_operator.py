from src.fock import (
    Polynomial,
    MultiIndex,
    enum_multiindices,
    count_multiindices,
    degree_offsets,
    monomial_norm_sq,
    add_indices,
    inner_product,
)
from functools import lru_cache
from typing import Dict, List, Tuple

import numpy as np
import math


@lru_cache(maxsize=None)
def _positions(d: int, k: int) -> Dict[MultiIndex, int]:
    return {alpha: idx for idx, alpha in enumerate(enum_multiindices(d, k))}


class BlockOperator(object):
    """
    M_p on polynomials of degree <= N, in the orthonormal basis z^alpha / ||z^alpha||.
    Block (m, k) maps the degree-k basis into the degree-(k + m) basis and holds the
    contribution of the homogeneous component p_m.
    """

    def __init__(self, d: int, domain_bound: int, symbol_degree: int, blocks: Dict[Tuple[int, int], np.ndarray]):
        self._d = d
        self._domain_bound = domain_bound
        self._symbol_degree = symbol_degree
        self._blocks = blocks

    @property
    def d(self) -> int:
        return self._d

    @property
    def domain_bound(self) -> int:
        return self._domain_bound

    @property
    def codomain_bound(self) -> int:
        return self._domain_bound + self._symbol_degree

    @property
    def blocks(self) -> Dict[Tuple[int, int], np.ndarray]:
        return dict(self._blocks)

    @property
    def component_degrees(self) -> List[int]:
        return sorted({m for m, _ in self._blocks})

    @property
    def is_zero(self) -> bool:
        return not self._blocks

    @property
    def is_homogeneous(self) -> bool:
        return len(self.component_degrees) <= 1

    @property
    def shape(self) -> Tuple[int, int]:
        rows = degree_offsets(self._d, self.codomain_bound)[-1]
        cols = degree_offsets(self._d, self._domain_bound)[-1]
        return rows, cols

    def block(self, m: int, k: int) -> np.ndarray:
        if (m, k) in self._blocks:
            return self._blocks[(m, k)]
        return np.zeros((count_multiindices(self._d, k + m), count_multiindices(self._d, k)), dtype=complex)

    def to_dense(self) -> np.ndarray:
        rows, cols = self.shape
        row_offsets = degree_offsets(self._d, self.codomain_bound)
        col_offsets = degree_offsets(self._d, self._domain_bound)

        matrix = np.zeros((rows, cols), dtype=complex)
        for (m, k), values in self._blocks.items():
            matrix[row_offsets[k + m]:row_offsets[k + m + 1], col_offsets[k]:col_offsets[k + 1]] += values
        return matrix

    def restrict(self, domain_bound: int) -> "BlockOperator":
        """Compression to polynomials of degree <= domain_bound, the operator mult_matrix(p, domain_bound) would build."""
        if not 0 <= domain_bound <= self._domain_bound:
            raise ValueError(f"Cannot restrict operator with N={self._domain_bound} to N={domain_bound}")
        blocks = {(m, k): v for (m, k), v in self._blocks.items() if k <= domain_bound}
        return BlockOperator(self._d, domain_bound, self._symbol_degree, blocks)

    def __matmul__(self, other: "BlockOperator") -> np.ndarray:
        """Dense product on the common truncation: self (restricted to other's codomain) times other."""
        if other.d != self._d:
            raise ValueError(f"Dimension mismatch: {self._d} vs {other.d}")
        if self._domain_bound < other.codomain_bound:
            raise ValueError(f"Left factor must act on degree <= {other.codomain_bound}, got N={self._domain_bound}")
        left = self.to_dense()[:, :other.shape[0]]
        return left @ other.to_dense()

    def __repr__(self):
        return f"BlockOperator(d={self._d}, N={self._domain_bound}, degrees={self.component_degrees})"


def _component_block(d: int, component: Dict[MultiIndex, complex], m: int, k: int) -> np.ndarray:
    rows = _positions(d, k + m)
    domain = enum_multiindices(d, k)

    values = np.zeros((len(rows), len(domain)), dtype=complex)
    for col, beta in enumerate(domain):
        beta_norm_sq = monomial_norm_sq(beta)
        for delta, coefficient in component.items():
            gamma = add_indices(beta, delta)
            ratio = monomial_norm_sq(gamma) / beta_norm_sq
            values[rows[gamma], col] += complex(coefficient) * math.sqrt(ratio)
    return values


def mult_matrix(p: Polynomial, domain_bound: int, d: int = None) -> BlockOperator:
    """
    Assembles M_p on polynomials of degree <= domain_bound. Entries are
    p_{gamma - beta} * ||z^gamma|| / ||z^beta||, the norm ratio taken exactly before the square root.
    """
    if d is not None and d != p.d:
        raise ValueError(f"Polynomial in {p.d} variables cannot act on dimension {d}")
    if domain_bound < 0:
        raise ValueError(f"Degree bound must be non-negative, got {domain_bound}")

    blocks = {}
    for m, component in p.homogeneous_components().items():
        coefficients = component.coefficients
        for k in range(domain_bound + 1):
            blocks[(m, k)] = _component_block(p.d, coefficients, m, k)
    return BlockOperator(p.d, domain_bound, p.degree, blocks)


def gram_blocks_exact(p: Polynomial, domain_bound: int) -> Dict[Tuple[int, int], List[List]]:
    """
    Exact Gram matrix <p z^beta, p z^beta'> in the monomial basis, grouped by the domain
    degrees (k, k') of beta and beta'. Zero blocks for k != k' mean T*T is block diagonal.
    """
    grouped = {}
    for k in range(domain_bound + 1):
        grouped[k] = [p * Polynomial.monomial(beta) for beta in enum_multiindices(p.d, k)]

    blocks = {}
    for k in range(domain_bound + 1):
        for kk in range(domain_bound + 1):
            blocks[(k, kk)] = [[inner_product(v, w) for w in grouped[kk]] for v in grouped[k]]
    return blocks
