"""Seeded experiments. Each returns a report body with a ``verdict`` key.

Verdicts: ``PASS``, ``FAIL`` (a law broke, a DLP failure was detected, or a
counterexample was found), ``INCONCLUSIVE``.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from . import dlp, kernels
from .dlp import FAIL, INCONCLUSIVE, PASS
from .group import HeisenbergGroup
from .seeding import rng_for
from .sequences import cluster_sequence
from .spaces import PairingSpace
from .witness import center_surjectivity, phi_dlp_experiment, power_blowup, q_norm


def _space(p, dim, mode, interval=False):
    if interval:
        return PairingSpace.lp_interval(p, dim, mode)
    return PairingSpace.ell(p, dim, mode)


def _element_json(space, u):
    if space.exact:
        return {"a": str(u.a), "x": space.to_json(u.x), "f": space.to_json(u.f)}
    return {"a": float(u.a), "x": space.to_json(u.x), "f": space.to_json(u.f)}


def group_axioms(p=2, dim=3, mode="exact", trials=1000, seed=0, tol=1e-9):
    space = _space(p, dim, mode)
    G = HeisenbergGroup(space)
    rng = rng_for(seed, "group-axioms", dim)
    e = G.identity
    failures = {k: 0 for k in ("associativity", "identity", "inverse", "nilpotency", "closed_form")}
    witnesses = []
    for _ in range(trials):
        u, v, w = (G.random_element(rng) for _ in range(3))
        scale = 1.0 if space.exact else tol
        u_inv = G.inverse(u)
        uv = G.multiply(u, v)
        comm = G.commutator(u, v)
        checks = {
            "associativity": G.close(G.multiply(uv, w), G.multiply(u, G.multiply(v, w)), scale),
            "identity": G.close(G.multiply(u, e), u, scale) and G.close(G.multiply(e, u), u, scale),
            "inverse": G.close(G.multiply(u, u_inv), e, scale) and G.close(G.multiply(u_inv, u), e, scale),
            "nilpotency": G.close(G.commutator(comm, w), e, scale),
            "closed_form": G.close(comm, G.commutator_closed_form(u, v), scale),
        }
        for name, ok in checks.items():
            if not ok:
                failures[name] += 1
                if len(witnesses) < 5:
                    witnesses.append({"law": name, "u": _element_json(space, u),
                                      "v": _element_json(space, v), "w": _element_json(space, w)})
    return {
        "verdict": PASS if not any(failures.values()) else FAIL,
        "details": {"space": space.describe(), "trials": trials, "failures": failures},
        "witnesses": witnesses,
    }


def matrix_rep(dim=1, mode="exact", trials=1000, seed=0):
    space = PairingSpace.ell(2, dim, mode)
    G = HeisenbergGroup(space)
    rng = rng_for(seed, "matrix-rep", dim)
    bad = []
    seen = {}
    injective = True
    for _ in range(trials):
        u, v = G.random_element(rng), G.random_element(rng)
        lhs = G.matrix_rep(G.multiply(u, v))
        rhs = np.dot(G.matrix_rep(u), G.matrix_rep(v))
        if not np.array_equal(lhs, rhs):
            bad.append({"u": _element_json(space, u), "v": _element_json(space, v)})
        key = tuple(str(c) for c in G.matrix_rep(u).ravel())
        if key in seen and not seen[key] == u:
            injective = False
        seen[key] = u
        if not G.from_matrix(G.matrix_rep(u)) == u:
            injective = False
    return {
        "verdict": PASS if not bad and injective else FAIL,
        "details": {"space": space.describe(), "trials": trials, "homomorphism_failures": len(bad),
                    "injective": injective},
        "witnesses": bad[:5],
    }


def blowup(p=1, dim=3, mode="exact", trials=100, n_max=1000, seed=0, rtol=1e-12):
    """``||q(u^n)|| == n * delta`` over ``trials`` random elements.

    Exact equality is required whenever both norms are rational (the
    l_1 / sup pairing in exact mode); otherwise coordinates must scale exactly
    and the float norms agree to ``rtol``.
    """
    space = _space(p, dim, mode)
    G = HeisenbergGroup(space)
    rng = rng_for(seed, "blowup", dim)
    exact_norms = space.exact and (space.p == 1 or space.p == float("inf"))
    failures, witnesses, tested = 0, [], 0
    for _ in range(trials):
        u = G.random_element(rng)
        if q_norm(space, u) == 0:
            continue
        tested += 1
        for rep in power_blowup(G, u, n_max):
            if exact_norms:
                ok = rep.q_norm == rep.lower_bound
            else:
                ok = abs(float(rep.q_norm) - float(rep.lower_bound)) <= rtol * float(rep.lower_bound)
            ok = ok and rep.exact_scaling
            if not ok:
                failures += 1
                if len(witnesses) < 5:
                    witnesses.append({"u": _element_json(space, u), **rep.to_dict(space)})
    return {
        "verdict": PASS if failures == 0 else FAIL,
        "details": {"space": space.describe(), "elements": tested, "n_max": n_max,
                    "exact_norms": exact_norms, "failures": failures},
        "witnesses": witnesses,
    }


def center(p=4, dim=4, epsilon0=0.5, grid=100, target_min=-100.0, target_max=100.0, seed=0, tol=1e-12):
    space = _space(p, dim, "float")
    G = HeisenbergGroup(space)
    targets = np.linspace(target_min, target_max, grid)
    worst_err, worst_norm, bad = 0.0, 0.0, []
    for i, t in enumerate(targets):
        w = center_surjectivity(space, float(t), epsilon0, seed=seed + i)
        err = abs(float(w.commutator_result.a) - float(t))
        fnorm = float(space.dual_norm(w.f))
        worst_err = max(worst_err, err)
        worst_norm = max(worst_norm, fnorm)
        ok = (err <= tol and fnorm <= epsilon0 + tol
              and G.close(w.commutator_result, G.element(t, space.zeros(), space.zeros()), tol))
        if not ok:
            bad.append(w.to_dict())
    return {
        "verdict": PASS if not bad else FAIL,
        "details": {"space": space.describe(), "epsilon0": epsilon0, "targets": int(grid),
                    "max_center_error": worst_err, "max_f_norm": worst_norm},
        "witnesses": bad[:5],
    }


def c0(N=200, M=100, tol=1e-9, window=5, seed=0):
    v = dlp.dlp_check(dlp.c0_counterexample(N, M), tol, window, seed)
    out = v.to_dict()
    return {
        "verdict": v.verdict,
        "c1": v.c1,
        "c2": v.c2,
        "details": {k: out[k] for k in ("tol", "window", "caps")},
        "witnesses": [{"row_indices": out["row_indices"], "col_indices": out["col_indices"]}],
    }


def _dlp_batch(build, trials, seed, label, tol, window):
    runs = []
    for t in range(trials):
        seq = build(rng_for(seed, label, t), t)
        v = dlp.dlp_check(seq, tol, window, t)
        runs.append(v.to_dict())
    verdicts = [r["verdict"] for r in runs]
    if FAIL in verdicts:
        verdict = FAIL
    elif all(x == PASS for x in verdicts):
        verdict = PASS
    else:
        verdict = INCONCLUSIVE
    counts = {k: verdicts.count(k) for k in (PASS, FAIL, INCONCLUSIVE)}
    fails = [r for r in runs if r["verdict"] == FAIL]
    return verdict, counts, runs, fails


def dlp_pairing(p=4, dim=16, trials=10, caps=300, bound=1.0, tol=1e-6, window=5, seed=0):
    space = _space(p, dim, "float")

    def build(rng, t):
        xs = cluster_sequence(rng, caps, dim, bound, space.norm)
        fs = cluster_sequence(rng, caps, dim, bound, space.dual_norm)
        return dlp.pairing_sequence(space, xs, fs, bound * bound)

    verdict, counts, runs, fails = _dlp_batch(build, trials, seed, "dlp-pairing", tol, window)
    return {"verdict": verdict, "details": {"space": space.describe(), "counts": counts, "runs": runs},
            "witnesses": fails[:5]}


def dlp_norm(p=4, dim=64, trials=10, caps=300, bound=1.0, tol=1e-6, window=5, seed=0):
    space = _space(p, dim, "float", interval=True)

    def build(rng, t):
        xs = cluster_sequence(rng, caps, dim, bound, space.norm)
        ys = cluster_sequence(rng, caps, dim, bound, space.norm)
        return dlp.norm_sum_sequence(space, xs, ys, bound=2 * bound)

    verdict, counts, runs, fails = _dlp_batch(build, trials, seed, "dlp-norm", tol, window)
    return {"verdict": verdict, "details": {"space": space.describe(), "counts": counts, "runs": runs},
            "witnesses": fails[:5]}


def phi_experiment(p=4, dim=8, trials=10, caps=300, bound=10.0, tol=1e-6, window=5, seed=0,
                   unbounded=False):
    space = _space(p, dim, "float")
    seeds = [int(s) for s in rng_for(seed, "phi-seeds").integers(2**31, size=trials)]
    rep = phi_dlp_experiment(space, seeds, bound, tol, window, caps, unbounded)
    fails = [r for r in rep["runs"] if not unbounded
             and any(r[k]["verdict"] == FAIL for k in ("phi", "a_dual_norm", "b_norm", "c_pairing"))]
    return {"verdict": rep.pop("verdict"), "details": rep, "witnesses": fails[:5]}


def schoenberg(p=(1.0, 1.5, 2.0), dims=(2, 8), n_points=8, trials=200, tol=1e-8, seed=0,
               search=False, budget=100_000, dim=2):
    if search:
        found = []
        for pv in p:
            rep = kernels.search_counterexample(pv, dim, n_points, budget, seed)
            if rep is not None:
                found.append(rep.to_dict())
        return {
            "verdict": FAIL if found else PASS,
            "details": {"mode": "search", "p": list(p), "dim": dim, "n_points": n_points,
                        "budget": budget, "found": len(found)},
            "witnesses": found,
        }
    reports = kernels.schoenberg_sweep(p, dims, n_points, trials, seed, tol)
    bad = [r.to_dict() for r in reports if not r.psd]
    return {
        "verdict": PASS if not bad else FAIL,
        "details": {"mode": "sweep", "trials": trials, "n_points": n_points, "tolerance": tol,
                    "worst": [{"p": r.p, "dim": r.dim, "min_eigenvalue": r.min_eigenvalue,
                               "trial": r.trial} for r in reports]},
        "witnesses": bad,
    }


def kernel_search(p=4.0, dim=2, n_points=4, budget=100_000, seed=0):
    rep = kernels.search_counterexample(p, dim, n_points, budget, seed)
    return {
        "verdict": FAIL if rep is not None else PASS,
        "details": {"p": p, "dim": dim, "n_points": n_points, "budget": budget,
                    "found": rep is not None,
                    "min_eigenvalue": rep.min_eigenvalue if rep else None},
        "witnesses": [rep.to_dict()] if rep else [],
    }


def as_number(text):
    """Parse ``"4/3"``, ``"1e-6"`` or ``"2"`` into a float."""
    return float(Fraction(text)) if "/" in str(text) else float(text)
