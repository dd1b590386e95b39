"""Computational kernels behind relative minimality and the separating function.

* :func:`power_blowup` - the projection ``q(a, x, f) = (x, f)`` of ``u^n`` is
  ``(n x, n f)``, so its max-norm grows like ``n * max(||x||, ||f||)``.
* :func:`center_surjectivity` - a small covector paired against a long
  enough vector reaches any prescribed central value through one commutator.
* :func:`phi` and :func:`phi_dlp_experiment` - the bounded function
  ``1 / (1 + |a| + ||x|| + ||f||)`` and its double-limit checks, together with
  the three pieces its product splits into.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from . import dlp
from .errors import DomainError
from .group import GroupElement, HeisenbergGroup
from .seeding import rng_for
from .sequences import cluster_scalars, cluster_sequence, ray_family, unbounded_sequence
from .spaces import FLOAT, PairingSpace


@dataclass(frozen=True)
class BlowupReport:
    element: GroupElement
    n: int
    q_norm: object
    lower_bound: object
    exact_scaling: bool

    def to_dict(self, space: PairingSpace) -> dict:
        return {
            "n": self.n,
            "q_norm": str(self.q_norm) if space.exact else float(self.q_norm),
            "lower_bound": str(self.lower_bound) if space.exact else float(self.lower_bound),
            "exact_scaling": self.exact_scaling,
        }


def q_norm(space: PairingSpace, u: GroupElement):
    """``max(||x||, ||f||)``: the norm of ``q(u) = (x, f)`` in ``E x F``."""
    return max(space.norm(u.x), space.dual_norm(u.f))


def power_blowup(group: HeisenbergGroup, u: GroupElement, n_max: int) -> list:
    """Reports for ``u^1 .. u^n_max``.

    ``exact_scaling`` records whether ``q(u^n) == (n x, n f)`` coordinate by
    coordinate; with exact scalars it is an equality of rationals.
    """
    space = group.space
    delta = q_norm(space, u)
    if delta == 0:
        raise DomainError("u is central (x = 0 and f = 0); q(u^n) stays at 0")
    out = []
    for n in range(1, n_max + 1):
        un = group.power(u, n)
        scaled = np.array_equal(un.x, n * u.x) and np.array_equal(un.f, n * u.f)
        out.append(BlowupReport(un, n, q_norm(space, un), n * delta, scaled))
    return out


@dataclass(frozen=True)
class CenterWitness:
    target: float
    f: np.ndarray
    element: GroupElement
    commutator_result: GroupElement
    index: int = 0

    def to_dict(self) -> dict:
        return {
            "target": float(self.target),
            "index": self.index,
            "f": [float(c) for c in self.f],
            "y": [float(c) for c in self.element.x],
            "commutator": [float(self.commutator_result.a),
                           float(np.max(np.abs(self.commutator_result.x))),
                           float(np.max(np.abs(self.commutator_result.f)))],
        }


def center_surjectivity(
    space: PairingSpace,
    target: float,
    epsilon0: float = 0.5,
    family: Optional[Callable[[int], np.ndarray]] = None,
    seed: int = 0,
    check_tol: float = 1e-12,
) -> CenterWitness:
    """Realize ``(target, 0, 0)`` as ``[(0, 0, f), (0, y_n, 0)]`` with ``||f|| <= epsilon0``.

    ``family(n)`` must return vectors with ``||y_n|| >= n``; the default is a
    ray in a seeded random direction. ``f`` is the norming functional of
    ``y_n`` scaled by ``target / ||y_n||``.
    """
    if not epsilon0 > 0:
        raise DomainError("epsilon0 must be positive")
    group = HeisenbergGroup(space)
    zero = space.zeros()
    if family is None:
        direction = rng_for(seed, "center", "direction").normal(size=space.dim)
        family = ray_family(direction, space.norm)
    if target == 0:
        y = space.vector(family(1))
        u = GroupElement(space.scalar(0), y, zero)
        g = GroupElement(space.scalar(0), zero, zero)
        return CenterWitness(0.0, zero, u, group.commutator(g, u), 1)
    need = abs(target) / epsilon0
    n = max(1, int(np.ceil(need)))
    while True:
        y = space.vector(family(n))
        ny = space.norm(y)
        if ny < n * (1 - 1e-12):
            raise DomainError(f"family violates ||y_n|| >= n at n={n} (got {ny})")
        if ny >= need:
            break
        n += 1
    f = space.vector((target / ny) * space.norming_functional(y))
    g = GroupElement(space.scalar(0), zero, f)
    u = GroupElement(space.scalar(0), y, zero)
    result = group.commutator(g, u)
    expected = GroupElement(space.scalar(target), zero, zero)
    if not group.close(result, expected, check_tol * max(1.0, abs(target))):
        raise AssertionError(f"commutator {result} misses target {target}")
    return CenterWitness(target, f, u, result, n)


def phi(u: GroupElement, space: PairingSpace):
    """``1 / (1 + |a| + ||x|| + ||f||)``; also evaluates batch elements elementwise."""
    a = np.abs(np.asarray(u.a, dtype=float))
    value = 1.0 / (1.0 + a + np.asarray(space.norm(u.x), dtype=float)
                   + np.asarray(space.dual_norm(u.f), dtype=float))
    return float(value) if np.ndim(value) == 0 else value


def separates_identity(group: HeisenbergGroup, u: GroupElement) -> bool:
    """``phi(u) == 1`` exactly when ``u`` is the identity."""
    return (phi(u, group.space) == 1.0) == (u == group.identity)


# -- the double-limit experiment ---------------------------------------------


def _elements(space, a, xs, fs):
    return [GroupElement(float(a[i]), xs[i], fs[i]) for i in range(len(a))]


def _generate(space: PairingSpace, root: int, label: str, count: int, bound: float, unbounded: bool):
    rng = rng_for(root, "phi", label)
    if unbounded:
        a = unbounded_sequence(rng, count, 1, lambda v: np.abs(v).max(axis=-1))[:, 0]
        xs = unbounded_sequence(rng, count, space.dim, space.norm)
        fs = unbounded_sequence(rng, count, space.dim, space.dual_norm)
    else:
        a = cluster_scalars(rng, count, bound)
        xs = cluster_sequence(rng, count, space.dim, bound, space.norm)
        fs = cluster_sequence(rng, count, space.dim, bound, space.dual_norm)
    return a, xs, fs


def _limit_along(values: np.ndarray, tol: float, window: int):
    k = len(values)
    tail_len = dlp._tail_length(k, window)
    if tail_len > k:
        return float(values[-1]), False
    tail = values[k - tail_len:]
    return float(values[-1]), bool(tail.max() - tail.min() <= tol / 2)


def phi_dlp_experiment(
    space: PairingSpace,
    seeds: Sequence[int],
    bound: float = 10.0,
    tol: float = dlp.DEFAULT_TOL,
    window: int = dlp.DEFAULT_WINDOW,
    count: int = 300,
    unbounded: bool = False,
) -> dict:
    """DLP of ``phi(u_n v_m)`` and of its three ingredients, per seed.

    Bounded mode runs four checks per seed: ``phi`` itself through
    :func:`dlp.wap_check`, then (a) ``||p_n + q_m||`` in the dual norm,
    (b) ``||x_n + y_m||``, (c) ``p_n(y_m)``. On the subarray extracted for
    ``phi`` the three pieces and the central coordinates are also recombined
    into ``phi``'s two iterated limits (the ``assembled`` entry).

    Unbounded mode (terms growing like ``n^3``) only estimates both iterated
    limits of ``phi(u_n v_m)``; both tend to 0.
    """
    if space.mode != FLOAT:
        space = PairingSpace(space.dim, space.p, float(space.weight), FLOAT)
    group = HeisenbergGroup(space)
    runs = []
    for s in seeds:
        a, xs, ps = _generate(space, s, "u", count, bound, unbounded)
        b, ys, qs = _generate(space, s, "v", count, bound, unbounded)
        us, vs = _elements(space, a, xs, ps), _elements(space, b, ys, qs)
        if unbounded:
            vals = phi(group.product_table(us, vs), space)
            seq = dlp.DoubleSequence.from_array(vals, 1.0, "phi")
            est = [dlp.iterated_limit(seq, o, tol, window) for o in dlp.ORDERS]
            runs.append({
                "seed": s,
                "s1": est[0].value, "s1_converged": est[0].converged,
                "s2": est[1].value, "s2_converged": est[1].converged,
            })
            continue
        phi_v = dlp.wap_check(group, lambda t: phi(t, space), us, vs, tol, window, 1.0, s)
        seq_a = dlp.norm_sum_sequence(space, ps, qs, dual=True, bound=2 * bound)
        seq_b = dlp.norm_sum_sequence(space, xs, ys, bound=2 * bound)
        seq_c = dlp.pairing_sequence(space, ys, ps, bound=bound * bound).transpose()
        checks = {
            "phi": phi_v,
            "a_dual_norm": dlp.dlp_check(seq_a, tol, window, s),
            "b_norm": dlp.dlp_check(seq_b, tol, window, s),
            "c_pairing": dlp.dlp_check(seq_c, tol, window, s),
        }
        run = {"seed": s}
        run.update({k: v.to_dict() for k, v in checks.items()})
        run["assembled"] = _assemble(phi_v, a, b, seq_a, seq_b, seq_c, tol, window)
        runs.append(run)
    return {
        "space": space.describe(),
        "bound": None if unbounded else bound,
        "unbounded": unbounded,
        "tol": tol,
        "window": window,
        "count": count,
        "runs": runs,
        "verdict": _overall(runs, unbounded),
    }


def _assemble(phi_v, a, b, seq_a, seq_b, seq_c, tol, window) -> dict:
    w = phi_v.witness
    if w is None:
        return {"available": False}
    rows = np.asarray(w.row_indices) - 1
    cols = np.asarray(w.col_indices) - 1
    lim_a, ok_a = _limit_along(a[rows], tol, window)
    lim_b, ok_b = _limit_along(b[cols], tol, window)
    parts = {}
    ok = ok_a and ok_b
    for name, seq in (("a", seq_a), ("b", seq_b), ("c", seq_c)):
        sub = seq.values()[np.ix_(rows, cols)]
        pair = []
        for order in dlp.ORDERS:
            val, conv, _ = dlp._estimate_oriented(sub, order, tol, window)
            pair.append(val)
            ok = ok and conv
        parts[name] = pair
    out = {"available": True, "converged": ok}
    if ok:
        s = [1.0 / (1.0 + abs(lim_a + lim_b + parts["c"][i]) + parts["b"][i] + parts["a"][i])
             for i in range(2)]
        out.update(s1=s[0], s2=s[1], gap=abs(s[0] - s[1]), sound=abs(s[0] - s[1]) <= tol)
    return out


def _overall(runs, unbounded: bool) -> str:
    if unbounded:
        return dlp.PASS if all(r["s1_converged"] and r["s2_converged"] for r in runs) else dlp.INCONCLUSIVE
    verdicts = [r[k]["verdict"] for r in runs for k in ("phi", "a_dual_norm", "b_norm", "c_pairing")]
    if dlp.FAIL in verdicts:
        return dlp.FAIL
    return dlp.PASS if all(v == dlp.PASS for v in verdicts) else dlp.INCONCLUSIVE
