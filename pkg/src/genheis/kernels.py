"""Positive-definiteness checks for ``exp(-||x - y||_p^p)``.

Schoenberg: ``exp(-||.||^p)`` is positive definite on L_p for ``1 <= p <= 2``.
For ``p > 2`` it is not, already in one dimension, and
:func:`search_counterexample` looks for a point set whose Gram matrix has a
negative eigenvalue.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import DimensionError, DomainError
from .seeding import rng_for

ACCEPT_TOL = 1e-9
CLAIM_TOL = 1e-6
SYMMETRY_TOL = 1e-12


@dataclass(frozen=True)
class GramReport:
    p: float
    points: tuple
    min_eigenvalue: float
    psd: bool
    tolerance: float
    dim: int = 0
    trial: Optional[int] = None

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "dim": self.dim,
            "points": [list(pt) for pt in self.points],
            "min_eigenvalue": self.min_eigenvalue,
            "psd": self.psd,
            "tolerance": self.tolerance,
            "trial": self.trial,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "GramReport":
        return cls(
            p=data["p"],
            points=tuple(tuple(pt) for pt in data["points"]),
            min_eigenvalue=data["min_eigenvalue"],
            psd=data["psd"],
            tolerance=data["tolerance"],
            dim=data.get("dim", len(data["points"][0])),
            trial=data.get("trial"),
        )

    def reverify(self) -> "GramReport":
        """Rebuild the Gram matrix from the stored points and re-run the eigenvalue check."""
        pts = np.array(self.points, dtype=float)
        rep = psd_check(gram_matrix(pts, self.p), self.tolerance)
        return GramReport(self.p, self.points, rep.min_eigenvalue, rep.psd, self.tolerance,
                          self.dim, self.trial)


def gram_matrix(points, p: float, weight: float = 1.0) -> np.ndarray:
    """``G[i, j] = exp(-sum_k |x_ik - x_jk|^p * weight)``; exactly symmetric, unit diagonal."""
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2:
        raise DimensionError(f"points must be a 2-d array, got shape {pts.shape}")
    if not p >= 1:
        raise DomainError(f"p must be >= 1, got {p}")
    diff = np.abs(pts[:, None, :] - pts[None, :, :])
    return np.exp(-(diff ** p).sum(axis=-1) * weight)


def min_eigenvalue(G: np.ndarray) -> float:
    return float(np.linalg.eigvalsh(G)[0])


def psd_check(G: np.ndarray, tol: float = ACCEPT_TOL, p: float = float("nan"), points=()) -> GramReport:
    G = np.asarray(G, dtype=float)
    if G.ndim != 2 or G.shape[0] != G.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {G.shape}")
    if np.max(np.abs(G - G.T), initial=0.0) > SYMMETRY_TOL:
        raise DomainError("matrix is not symmetric")
    lam = min_eigenvalue(G)
    pts = tuple(tuple(float(c) for c in row) for row in np.asarray(points, dtype=float))
    dim = len(pts[0]) if pts else 0
    return GramReport(p, pts, lam, lam >= -tol, tol, dim)


def _sample_points(rng, n_points: int, dim: int) -> np.ndarray:
    scale = np.exp(rng.uniform(np.log(0.1), np.log(3.0)))
    return rng.normal(size=(n_points, dim)) * scale


def schoenberg_sweep(
    p_values: Sequence[float],
    dims: Sequence[int],
    n_points: int = 8,
    trials: int = 200,
    seed: int = 0,
    tol: float = ACCEPT_TOL,
) -> list:
    """Worst Gram report per ``(p, dim)`` over ``trials`` random point sets."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    reports = []
    for p in p_values:
        for dim in dims:
            worst = None
            for t in range(trials):
                pts = _sample_points(rng_for(seed, "schoenberg", p, dim, t), n_points, dim)
                rep = psd_check(gram_matrix(pts, p), tol, p, pts)
                if worst is None or rep.min_eigenvalue < worst.min_eigenvalue:
                    worst = GramReport(p, rep.points, rep.min_eigenvalue, rep.psd, tol, dim, t)
            reports.append(worst)
    return reports


def search_counterexample(
    p: float,
    dim: int,
    n_points: int,
    budget: int = 100_000,
    seed: int = 0,
    threshold: float = CLAIM_TOL,
    restart_every: int = 200,
) -> Optional[GramReport]:
    """Random restarts plus greedy local perturbation of the point set.

    Minimizes the least Gram eigenvalue and returns the first configuration
    below ``-threshold``, or ``None`` after ``budget`` eigenvalue evaluations.
    Two points can never work (``1 - exp(-d^p) > 0``), so that case returns
    ``None`` at once.
    """
    if n_points <= 2:
        return None
    evals = 0
    restart = 0
    while evals < budget:
        rng = rng_for(seed, "search", p, dim, n_points, restart)
        pts = _sample_points(rng, n_points, dim)
        lam = min_eigenvalue(gram_matrix(pts, p))
        evals += 1
        step = 0.3 * float(np.std(pts)) + 1e-3
        for _ in range(restart_every):
            if lam < -threshold or evals >= budget:
                break
            trial = pts + rng.normal(size=pts.shape) * step
            lam_t = min_eigenvalue(gram_matrix(trial, p))
            evals += 1
            if lam_t < lam:
                pts, lam = trial, lam_t
            else:
                step *= 0.97
        if lam < -threshold:
            rep = psd_check(gram_matrix(pts, p), threshold, p, pts)
            return GramReport(p, rep.points, rep.min_eigenvalue, rep.psd, threshold, dim, restart)
        restart += 1
    return None
