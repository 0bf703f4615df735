from .parallel import parallel_map
from src.fock import Polynomial
from scipy.optimize import minimize_scalar
from typing import Dict

import numpy as np
import logging
import math

# generalized golden ratio for three-dimensional Kronecker sequences
KRONECKER_RATIO = 1.22074408460575947536
CHUNK_SIZE = 8192


class SamplingConfig(object):
    """
    Deterministic sample of the unit sphere. For d = 2 a (theta, phi, t) grid of
    (e^{i theta} cos t, e^{i phi} sin t) plus Kronecker points; otherwise seeded complex Gaussians.
    """

    def __init__(
            self,
            n_theta: int = 24,
            n_phi: int = 24,
            n_t: int = 33,
            n_kronecker: int = 4096,
            n_random: int = 20000,
            seed: int = 0,
            refine: bool = True,
            n_starts: int = 4,
            n_sweeps: int = 6,
    ):
        if min(n_theta, n_phi, n_t) < 1 or n_kronecker < 0 or n_random < 1:
            raise ValueError("Sample count must be at least 1")
        if n_t % 2 == 0:
            n_t += 1
        self.n_theta = n_theta
        self.n_phi = n_phi
        self.n_t = n_t
        self.n_kronecker = n_kronecker
        self.n_random = n_random
        self.seed = seed
        self.refine = refine
        self.n_starts = n_starts
        self.n_sweeps = n_sweeps

    def to_dict(self) -> Dict:
        return dict(vars(self))


def _torus_grid(config: SamplingConfig) -> np.ndarray:
    theta = 2 * np.pi * np.arange(config.n_theta) / config.n_theta
    phi = 2 * np.pi * np.arange(config.n_phi) / config.n_phi
    t = (np.pi / 2) * np.arange(config.n_t) / max(config.n_t - 1, 1)

    tt, th, ph = np.meshgrid(t, theta, phi, indexing="ij")
    z1 = np.exp(1j * th) * np.cos(tt)
    z2 = np.exp(1j * ph) * np.sin(tt)
    return np.stack([z1.ravel(), z2.ravel()], axis=1)


def _kronecker_points(count: int) -> np.ndarray:
    g = KRONECKER_RATIO
    steps = np.array([1 / g, 1 / g ** 2, 1 / g ** 3])
    u = np.mod(0.5 + np.outer(np.arange(1, count + 1), steps), 1.0)
    t = np.arcsin(np.sqrt(u[:, 2]))
    z1 = np.exp(2j * np.pi * u[:, 0]) * np.cos(t)
    z2 = np.exp(2j * np.pi * u[:, 1]) * np.sin(t)
    return np.stack([z1, z2], axis=1)


def _gaussian_points(d: int, count: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((count, d)) + 1j * rng.standard_normal((count, d))
    z = z / np.linalg.norm(z, axis=1, keepdims=True)
    return np.concatenate([np.eye(d, dtype=complex), z], axis=0)


def sphere_grid(d: int, config: SamplingConfig = None) -> np.ndarray:
    if config is None:
        config = SamplingConfig()
    if d == 2:
        return np.concatenate([_torus_grid(config), _kronecker_points(config.n_kronecker)], axis=0)
    return _gaussian_points(d, config.n_random, config.seed)


def max_modulus(p: Polynomial, points: np.ndarray) -> np.ndarray:
    """|p| on the rows of points, evaluated chunk-wise."""
    chunks = [points[i:i + CHUNK_SIZE] for i in range(0, points.shape[0], CHUNK_SIZE)]
    values = parallel_map(lambda chunk: np.abs(p.evaluate_many(chunk)), chunks)
    if not values:
        return np.zeros(0)
    return np.concatenate(values)


def _normalize(z: np.ndarray) -> np.ndarray:
    return z / np.linalg.norm(z)


def refine_point(p: Polynomial, z: np.ndarray, n_sweeps: int, step: float = 0.1):
    """Coordinate ascent of |p| along the real and imaginary directions of each coordinate, staying on the sphere."""
    best_z = _normalize(np.asarray(z, dtype=complex))
    best_value = abs(p.evaluate_many(best_z[None, :])[0])

    for _ in range(n_sweeps):
        for direction in np.concatenate([np.eye(p.d), 1j * np.eye(p.d)]):
            def objective(s):
                return -abs(p.evaluate_many(_normalize(best_z + s * direction)[None, :])[0])

            result = minimize_scalar(objective, bounds=(-step, step), method="bounded")
            if -result.fun > best_value:
                best_value = -result.fun
                best_z = _normalize(best_z + result.x * direction)
        step /= 2
    return best_z, best_value


def sup_norm(p: Polynomial, samples: SamplingConfig = None) -> float:
    """
    Lower estimate of the supremum of |p| over the sphere: the maximum over the deterministic grid,
    improved by local refinement from the best grid points. Every reported value is |p| at a point of the sphere.
    """
    if samples is None:
        samples = SamplingConfig()
    if p.is_zero:
        return 0.0

    points = sphere_grid(p.d, samples)
    values = max_modulus(p, points)
    best = float(np.max(values))

    if samples.refine and p.degree > 0:
        for idx in np.argsort(-values, kind="stable")[:samples.n_starts]:
            _, value = refine_point(p, points[idx], samples.n_sweeps)
            best = max(best, float(value))

    logging.debug(f"Sup norm estimate over {points.shape[0]} points: {best}")
    return best
