from .multi_index import MultiIndex, enum_multiindices_up_to, monomial_norm_sq, multinomial, degree, unit_index, add_indices
from fractions import Fraction
from itertools import permutations
from numbers import Number
from typing import Dict, List, Mapping, Tuple

import logging
import math

Word = Tuple[int, ...]

MAX_WORD_LENGTH = 8
MAX_FULL_FOCK_DIMENSION = 3


def check_full_fock_caps(d: int, length_bound: int):
    if d > MAX_FULL_FOCK_DIMENSION or length_bound > MAX_WORD_LENGTH:
        raise ValueError(
            f"Full Fock model is capped at d <= {MAX_FULL_FOCK_DIMENSION} and word length <= {MAX_WORD_LENGTH}, "
            f"got d={d}, length={length_bound}"
        )


class FullFockVector(object):
    """Finite element of the full Fock space: coefficients on words over the letters 1..d."""

    def __init__(self, d: int, length_bound: int, coefficients: Mapping[Word, Number] = None):
        self._d = d
        self._length_bound = length_bound

        coeffs = {}
        for word, value in (coefficients or {}).items():
            word = tuple(word)
            if len(word) > length_bound:
                raise ValueError(f"Word {word} longer than length bound {length_bound}")
            if any(not 1 <= letter <= d for letter in word):
                raise ValueError(f"Word {word} uses letters outside 1..{d}")
            if value != 0:
                coeffs[word] = value
        self._coefficients = coeffs

    @property
    def d(self) -> int:
        return self._d

    @property
    def length_bound(self) -> int:
        return self._length_bound

    @property
    def coefficients(self) -> Dict[Word, Number]:
        return dict(self._coefficients)

    def inner(self, other: "FullFockVector"):
        if other.d != self._d:
            raise ValueError(f"Dimension mismatch: {self._d} vs {other.d}")
        total = Fraction(0)
        for word, value in self._coefficients.items():
            if word in other._coefficients:
                total = total + value * other._coefficients[word].conjugate()
        return total

    def create(self, letter: int) -> "FullFockVector":
        """Left creation operator L_k: xi_w -> xi_{kw}."""
        return FullFockVector(
            self._d,
            self._length_bound + 1,
            {(letter,) + word: value for word, value in self._coefficients.items()},
        )

    def __repr__(self):
        return f"FullFockVector(d={self._d}, N={self._length_bound}, words={len(self._coefficients)})"


def words_of(alpha: MultiIndex) -> List[Word]:
    """All distinct words whose letter multiplicities are alpha, in lexicographic order."""
    letters = [i + 1 for i, a in enumerate(alpha) for _ in range(a)]
    return sorted(set(permutations(letters)))


def symmetric_image(alpha: MultiIndex, length_bound: int = MAX_WORD_LENGTH) -> FullFockVector:
    """
    The isometric image of z^alpha in the full Fock space,
    (alpha!/|alpha|!) * sum of xi_w over the words w with multiplicities alpha. All coefficients are rational.
    """
    d = len(alpha)
    check_full_fock_caps(d, length_bound)
    if degree(alpha) > length_bound:
        raise ValueError(f"Degree {degree(alpha)} of {alpha} exceeds length bound {length_bound}")

    weight = Fraction(1, multinomial(alpha))
    return FullFockVector(d, length_bound, {word: weight for word in words_of(alpha)})


def symmetric_embedding(alpha: MultiIndex, length_bound: int = MAX_WORD_LENGTH) -> FullFockVector:
    """Unit vector: the normalized symmetrization of any word with letter multiplicities alpha."""
    d = len(alpha)
    check_full_fock_caps(d, length_bound)
    if degree(alpha) > length_bound:
        raise ValueError(f"Degree {degree(alpha)} of {alpha} exceeds length bound {length_bound}")

    words = words_of(alpha)
    weight = 1.0 / math.sqrt(len(words))
    return FullFockVector(d, length_bound, {word: weight for word in words})


class CompressionReport(object):

    def __init__(self, d: int, letter: int, length_bound: int, max_deviation: Fraction, n_entries: int):
        self.d = d
        self.letter = letter
        self.length_bound = length_bound
        self.max_deviation = max_deviation
        self.n_entries = n_entries

    def to_dict(self) -> Dict:
        return {
            "d": self.d,
            "letter": self.letter,
            "length_bound": self.length_bound,
            "max_deviation": float(self.max_deviation),
            "n_entries": self.n_entries,
        }

    def __repr__(self):
        return f"CompressionReport(d={self.d}, k={self.letter}, N={self.length_bound}, dev={self.max_deviation})"


def compression_check(d: int, letter: int, length_bound: int) -> CompressionReport:
    """
    Compares P_sym L_k restricted to the symmetric image of polynomials of degree < N with the
    matrix of M_{z_k} in the monomial basis, entry by entry in exact rationals.
    """
    check_full_fock_caps(d, length_bound)
    if not 1 <= letter <= d:
        raise ValueError(f"Letter {letter} out of range 1..{d}")
    if length_bound < 1:
        raise ValueError(f"Length bound must be at least 1, got {length_bound}")

    domain = enum_multiindices_up_to(d, length_bound - 1)
    codomain = enum_multiindices_up_to(d, length_bound)
    images = {gamma: symmetric_image(gamma, length_bound) for gamma in codomain}
    shift = unit_index(d, letter)

    max_deviation = Fraction(0)
    n_entries = 0
    for beta in domain:
        created = symmetric_image(beta, length_bound).create(letter)
        target = add_indices(beta, shift)
        for gamma in codomain:
            compressed = created.inner(images[gamma]) / monomial_norm_sq(gamma)
            expected = Fraction(1) if gamma == target else Fraction(0)
            max_deviation = max(max_deviation, abs(compressed - expected))
            n_entries += 1

    logging.info(f"Compression check d={d}, k={letter}, N={length_bound}: max deviation {max_deviation}")
    return CompressionReport(d, letter, length_bound, max_deviation, n_entries)
