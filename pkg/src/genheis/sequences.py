"""Seeded sequence generators for the DLP experiments.

A bounded sequence in a finite-dimensional space has convergent
subsequences; :func:`cluster_sequence` realizes that with finitely many
cluster points visited in random order plus a perturbation that decays
geometrically in the index. Which cluster each term visits is random, so the
sequence itself does not converge and the DLP engine has to extract
subsequences before any limit exists.
"""

from __future__ import annotations

from typing import Callable

import numpy as np


def _unit_rows(rng: np.random.Generator, count: int, dim: int, norm: Callable) -> np.ndarray:
    v = rng.normal(size=(count, dim))
    n = np.asarray(norm(v), dtype=float)
    return v / n[:, None]


def cluster_sequence(
    rng: np.random.Generator,
    count: int,
    dim: int,
    bound: float,
    norm: Callable,
    clusters: int = 3,
    decay=(0.5, 0.8),
) -> np.ndarray:
    """``count x dim`` array whose rows have ``norm <= bound``.

    Row ``n`` (1-based) is ``c[k_n] + bound/2 * rho**n * z_n`` with cluster
    centers of norm at most ``bound/2``, random labels ``k_n``, unit ``z_n`` and
    a decay rate ``rho`` drawn from ``decay``.
    """
    centers = _unit_rows(rng, clusters, dim, norm) * rng.uniform(0, bound / 2, size=(clusters, 1))
    labels = rng.integers(clusters, size=count)
    rho = rng.uniform(*decay)
    scale = (bound / 2) * rho ** np.arange(1, count + 1)
    noise = _unit_rows(rng, count, dim, norm) * scale[:, None]
    return centers[labels] + noise


def cluster_scalars(rng, count: int, bound: float, clusters: int = 3, decay=(0.5, 0.8)) -> np.ndarray:
    return cluster_sequence(rng, count, 1, bound, lambda v: np.abs(v).max(axis=-1), clusters, decay)[:, 0]


def unbounded_sequence(rng, count: int, dim: int, norm: Callable, growth: float = 3.0) -> np.ndarray:
    """Rows ``n**growth * z`` for one random unit direction ``z``; ``||row_n|| = n**growth``."""
    z = _unit_rows(rng, 1, dim, norm)[0]
    return np.arange(1, count + 1, dtype=float)[:, None] ** growth * z[None, :]


def ray_family(direction: np.ndarray, norm: Callable) -> Callable[[int], np.ndarray]:
    """``n -> n * y0 / ||y0||``, so the n-th term has norm exactly ``n`` up to rounding."""
    unit = np.asarray(direction, dtype=float) / float(norm(direction))
    return lambda n: n * unit
