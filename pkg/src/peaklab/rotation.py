from src.fock import Polynomial, sum_polynomials
from typing import Sequence

import numpy as np

UNITARY_TOLERANCE = 1e-10
UNIT_NORM_TOLERANCE = 1e-12


def check_unitary(U: np.ndarray, tol: float = UNITARY_TOLERANCE) -> np.ndarray:
    U = np.asarray(U, dtype=complex)
    if U.ndim != 2 or U.shape[0] != U.shape[1]:
        raise ValueError(f"Expected a square matrix, got shape {U.shape}")
    deviation = np.max(np.abs(U.conj().T @ U - np.eye(U.shape[0])))
    if deviation > tol:
        raise ValueError(f"Matrix is not unitary: max deviation {deviation:.3e} > {tol}")
    return U


def check_unit_vector(zeta: Sequence[complex], tol: float = UNIT_NORM_TOLERANCE) -> np.ndarray:
    zeta = np.asarray(zeta, dtype=complex)
    if zeta.ndim != 1 or zeta.size < 1:
        raise ValueError(f"Expected a point of C^d, got shape {zeta.shape}")
    if abs(np.linalg.norm(zeta) - 1) > tol:
        raise ValueError(f"Point {tuple(zeta)} is not on the unit sphere (norm {np.linalg.norm(zeta)})")
    return zeta


def householder_unitary(zeta: Sequence[complex]) -> np.ndarray:
    """
    Unitary V with V e1 = zeta: a phase omega = zeta_1 / |zeta_1| times the Householder reflection
    sending e1 to conj(omega) zeta. zeta = -e1 gives V = -I.
    """
    zeta = check_unit_vector(zeta)
    d = zeta.size

    omega = zeta[0] / abs(zeta[0]) if zeta[0] != 0 else 1.0
    y = np.conj(omega) * zeta
    w = np.eye(d, dtype=complex)[0] - y
    w_norm_sq = np.real(np.vdot(w, w))
    if w_norm_sq == 0:
        H = np.eye(d, dtype=complex)
    else:
        H = np.eye(d, dtype=complex) - 2 * np.outer(w, w.conj()) / w_norm_sq
    return omega * H


def linear_forms(U: np.ndarray):
    """The coordinates of U* z as polynomials: l_k(z) = sum_j conj(U_jk) z_j."""
    d = U.shape[0]
    return [
        Polynomial(d, {tuple(1 if i == j else 0 for i in range(d)): complex(np.conj(U[j, k])) for j in range(d)})
        for k in range(d)
    ]


def rotation_pullback(U: np.ndarray, p: Polynomial) -> Polynomial:
    """p(U* z), expanded monomial by monomial."""
    U = check_unitary(U)
    if U.shape[0] != p.d:
        raise ValueError(f"Unitary of size {U.shape[0]} cannot act on polynomials in {p.d} variables")

    forms = linear_forms(U)
    terms = []
    for alpha, value in p.items():
        term = Polynomial.constant(p.d, value)
        for form, a in zip(forms, alpha):
            if a:
                term = term * form ** a
        terms.append(term)
    return sum_polynomials(p.d, terms)
