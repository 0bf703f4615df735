from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Tuple

import math

MultiIndex = Tuple[int, ...]


def check_dimension(d: int):
    if not isinstance(d, int) or d < 1:
        raise ValueError(f"Invalid dimension: {d}")


def check_multi_index(alpha: MultiIndex, d: int = None):
    if d is not None and len(alpha) != d:
        raise ValueError(f"Multi-index {alpha} does not have length {d}")
    if len(alpha) < 1 or any(a < 0 for a in alpha):
        raise ValueError(f"Invalid multi-index: {alpha}")


def degree(alpha: MultiIndex) -> int:
    return sum(alpha)


def count_multiindices(d: int, k: int) -> int:
    """Number of multi-indices of length d and degree k."""
    check_dimension(d)
    return math.comb(k + d - 1, d - 1)


@lru_cache(maxsize=None)
def _enum(d: int, k: int) -> Tuple[MultiIndex, ...]:
    if d == 1:
        return ((k,),)

    result = []
    for first in range(k, -1, -1):
        for rest in _enum(d - 1, k - first):
            result.append((first,) + rest)
    return tuple(result)


def enum_multiindices(d: int, k: int) -> List[MultiIndex]:
    """
    All multi-indices of length d and degree k in graded-lexicographic order, e.g.
    (2, 2) -> [(2, 0), (1, 1), (0, 2)].
    """
    check_dimension(d)
    if k < 0:
        raise ValueError(f"Degree must be non-negative, got {k}")
    return list(_enum(d, k))


def enum_multiindices_up_to(d: int, n: int) -> List[MultiIndex]:
    result = []
    for k in range(n + 1):
        result.extend(enum_multiindices(d, k))
    return result


def basis_index(d: int, n: int) -> Dict[MultiIndex, int]:
    return {alpha: idx for idx, alpha in enumerate(enum_multiindices_up_to(d, n))}


def degree_offsets(d: int, n: int) -> List[int]:
    """Position of the first index of each degree 0..n+1 inside the graded basis."""
    offsets = [0]
    for k in range(n + 1):
        offsets.append(offsets[-1] + count_multiindices(d, k))
    return offsets


def alpha_factorial(alpha: MultiIndex) -> int:
    return math.prod(math.factorial(a) for a in alpha)


def multinomial(alpha: MultiIndex) -> int:
    return math.factorial(degree(alpha)) // alpha_factorial(alpha)


@lru_cache(maxsize=65536)
def monomial_norm_sq(alpha: MultiIndex) -> Fraction:
    """Squared Drury-Arveson norm of z^alpha: alpha! / |alpha|!."""
    check_multi_index(alpha)
    return Fraction(alpha_factorial(alpha), math.factorial(degree(alpha)))


def add_indices(alpha: MultiIndex, beta: MultiIndex) -> MultiIndex:
    return tuple(a + b for a, b in zip(alpha, beta))


def unit_index(d: int, i: int) -> MultiIndex:
    """The exponent of the coordinate z_i, letters counted from 1."""
    if not 1 <= i <= d:
        raise ValueError(f"Coordinate {i} out of range for dimension {d}")
    return tuple(1 if j == i - 1 else 0 for j in range(d))
