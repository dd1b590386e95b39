"""Exit criteria of the build, one test per criterion.

Each test prints one ``criterion N PASS/FAIL`` line (collected in the terminal
summary) and asserts at the stated tolerance and runtime budget. Every run goes
through the CLI ``resolve``/``run`` path, so the reports checked here are the
JSON reports a user would get.
"""

import json
import time
from pathlib import Path

import pytest

from genheis import GramReport, HeisenbergGroup, PairingSpace
from genheis.cli import dumps, resolve, run

pytestmark = pytest.mark.acceptance

WITNESS = Path(__file__).parent / "data" / "p4_witness.json"

CONFIGS = {
    "c1-d1": ("group-axioms", {"dim": "1", "trials": "10000", "seed": "1"}),
    "c1-d3": ("group-axioms", {"dim": "3", "trials": "10000", "seed": "1"}),
    "c1-d8": ("group-axioms", {"dim": "8", "trials": "10000", "seed": "1"}),
    "c2-d1": ("matrix-rep", {"dim": "1", "trials": "1000", "seed": "2"}),
    "c2-d4": ("matrix-rep", {"dim": "4", "trials": "1000", "seed": "2"}),
    "c3": ("blowup", {"p": "1", "dim": "3", "trials": "100", "n_max": "1000", "seed": "3"}),
    "c4": ("c0", {"N": "200", "M": "100", "tol": "1e-9"}),
    "c5-4/3": ("center", {"p": "4/3", "epsilon0": "0.5", "grid": "100", "seed": "5"}),
    "c5-2": ("center", {"p": "2", "epsilon0": "0.5", "grid": "100", "seed": "5"}),
    "c5-4": ("center", {"p": "4", "epsilon0": "0.5", "grid": "100", "seed": "5"}),
    "c6-sweep": ("schoenberg", {"p": "1,1.5,2", "dims": "2,8", "n_points": "8", "trials": "200",
                                "tol": "1e-8", "seed": "6"}),
    "c6-search": ("kernel-search", {"p": "4", "dim": "2", "n_points": "4", "budget": "100000", "seed": "6"}),
    "c7-d4": ("dlp-pairing", {"p": "4", "dim": "4", "trials": "100", "tol": "1e-6", "seed": "7"}),
    "c7-d16": ("dlp-pairing", {"p": "4", "dim": "16", "trials": "100", "tol": "1e-6", "seed": "7"}),
    "c8-L2": ("dlp-norm", {"p": "2", "dim": "64", "trials": "100", "tol": "1e-6", "seed": "8"}),
    "c8-L4": ("dlp-norm", {"p": "4", "dim": "64", "trials": "100", "tol": "1e-6", "seed": "8"}),
    "c9-bounded": ("phi", {"p": "4", "dim": "8", "trials": "50", "bound": "10", "tol": "1e-6", "seed": "9"}),
    "c9-unbounded": ("phi", {"p": "4", "dim": "8", "trials": "50", "unbounded": "true", "seed": "9"}),
}

_REPORTS = {}


def execute(key):
    exp, flags = CONFIGS[key]
    report, code = run(exp, resolve(exp, flags))
    _REPORTS[key] = report
    return report, code


def timed(keys):
    start = time.perf_counter()
    out = {k: execute(k) for k in keys}
    return out, time.perf_counter() - start


def test_criterion_01_exact_group_laws(record):
    out, elapsed = timed(["c1-d1", "c1-d3", "c1-d8"])
    failures = {k: r["details"]["failures"] for k, (r, _) in out.items()}
    ok_laws = all(r["verdict"] == "PASS" and r["details"]["trials"] == 10_000 for r, _ in out.values())
    ok = ok_laws and elapsed < 10
    record(1, "exact group laws, 10^4 triples, d in {1,3,8}", ok, f"{elapsed:.2f}s")
    assert ok_laws, failures
    assert elapsed < 10


def test_criterion_02_matrix_homomorphism(record):
    out, elapsed = timed(["c2-d1", "c2-d4"])
    G = HeisenbergGroup(PairingSpace.ell(2, 1))
    a, b, c = 3, -5, 7
    shape_ok = G.matrix_rep(G.element(c, [b], [a])).tolist() == [[1, a, c], [0, 1, b], [0, 0, 1]]
    laws = all(r["verdict"] == "PASS" and r["details"]["homomorphism_failures"] == 0 for r, _ in out.values())
    ok = laws and shape_ok and elapsed < 5
    record(2, "matrix model homomorphism, 10^3 pairs, d in {1,4}", ok, f"{elapsed:.2f}s")
    assert laws and shape_ok
    assert elapsed < 5


def test_criterion_03_power_blowup(record):
    out, elapsed = timed(["c3"])
    r = out["c3"][0]
    laws = r["verdict"] == "PASS" and r["details"]["exact_norms"] and r["details"]["elements"] == 100
    ok = laws and elapsed < 5
    record(3, "power blow-up equality, 100 elements, n <= 1000", ok, f"{elapsed:.2f}s")
    assert laws, r["details"]
    assert elapsed < 5


def test_criterion_04_c0_counterexample(record):
    out, elapsed = timed(["c4"])
    r, code = out["c4"]
    laws = r["c1"] == 1 and r["c2"] == 2 and r["verdict"] == "FAIL" and code == 1
    ok = laws and elapsed < 1
    record(4, "c0 counterexample c1 = 1, c2 = 2, FAIL", ok, f"{elapsed:.3f}s")
    assert laws, (r["c1"], r["c2"], r["verdict"])
    assert elapsed < 1


def test_criterion_05_center_surjectivity(record):
    out, elapsed = timed(["c5-4/3", "c5-2", "c5-4"])
    worst_err = max(r["details"]["max_center_error"] for r, _ in out.values())
    worst_norm = max(r["details"]["max_f_norm"] for r, _ in out.values())
    laws = all(r["verdict"] == "PASS" and r["details"]["targets"] == 100 for r, _ in out.values())
    laws = laws and worst_err <= 1e-12 and worst_norm <= 0.5 + 1e-12
    ok = laws and elapsed < 5
    record(5, "center surjectivity, 100 targets, p in {4/3,2,4}", ok,
           f"max error {worst_err:.1e}, max ||f|| {worst_norm:.6f}, {elapsed:.2f}s")
    assert laws
    assert elapsed < 5


def test_criterion_06_schoenberg(record):
    out, elapsed = timed(["c6-sweep", "c6-search"])
    sweep, _ = out["c6-sweep"]
    worst = min(w["min_eigenvalue"] for w in sweep["details"]["worst"])
    psd_ok = sweep["verdict"] == "PASS" and worst >= -1e-8 and len(sweep["details"]["worst"]) == 6
    search, code = out["c6-search"]
    found = code == 1 and search["witnesses"] and search["witnesses"][0]["min_eigenvalue"] < -1e-6
    reverified = False
    if found:
        fresh = GramReport.from_dict(json.loads(json.dumps(search["witnesses"][0]))).reverify()
        frozen = GramReport.from_dict(json.loads(WITNESS.read_text())).reverify()
        reverified = fresh.min_eigenvalue < -1e-6 and not fresh.psd and frozen.min_eigenvalue < -1e-6
    ok = psd_ok and found and reverified and elapsed < 60
    record(6, "Schoenberg sweep PSD; p = 4 witness re-verifies", ok,
           f"worst sweep eigenvalue {worst:.2e}, {elapsed:.2f}s")
    assert psd_ok and found and reverified
    assert elapsed < 60


def _no_fail(reports):
    return all(r["details"]["counts"]["FAIL"] == 0 for r in reports)


def test_criterion_07_pairing_dlp(record):
    out, elapsed = timed(["c7-d4", "c7-d16"])
    counts = {k: r["details"]["counts"] for k, (r, _) in out.items()}
    laws = _no_fail([r for r, _ in out.values()])
    ok = laws and elapsed < 30
    record(7, "reflexive pairing DLP, 100 pairs each for d in {4,16}", ok, f"{counts}, {elapsed:.2f}s")
    assert laws, counts
    assert elapsed < 30


def test_criterion_08_norm_dlp(record):
    out, elapsed = timed(["c8-L2", "c8-L4"])
    counts = {k: r["details"]["counts"] for k, (r, _) in out.items()}
    laws = _no_fail([r for r, _ in out.values()])
    ok = laws and elapsed < 30
    record(8, "L_2 / L_4 norm DLP, 100 pairs each, dim 64", ok, f"{counts}, {elapsed:.2f}s")
    assert laws, counts
    assert elapsed < 30


def test_criterion_09_phi_wap(record):
    out, elapsed = timed(["c9-bounded", "c9-unbounded"])
    bounded, _ = out["c9-bounded"]
    checks = ("phi", "a_dual_norm", "b_norm", "c_pairing")
    verdicts = [run_[k]["verdict"] for run_ in bounded["details"]["runs"] for k in checks]
    no_fail = len(bounded["details"]["runs"]) == 50 and "FAIL" not in verdicts
    unbounded, _ = out["c9-unbounded"]
    est = [max(r_["s1"], r_["s2"]) for r_ in unbounded["details"]["runs"]]
    small = len(est) == 50 and max(est) <= 1e-3
    ok = no_fail and small and elapsed < 60
    passes = verdicts.count("PASS")
    record(9, "phi double limits on H(l_4^8), 50 seeds", ok,
           f"{passes}/{len(verdicts)} PASS, rest INCONCLUSIVE; unbounded max {max(est):.1e}; {elapsed:.2f}s")
    assert no_fail and small
    assert elapsed < 60


def test_criterion_10_determinism(record):
    mismatched = []
    for key in CONFIGS:
        first = _REPORTS.get(key) or execute(key)[0]
        exp, flags = CONFIGS[key]
        second, _ = run(exp, resolve(exp, flags))
        a, b = dict(first), dict(second)
        a.pop("wall_time")
        b.pop("wall_time")
        if dumps(a) != dumps(b):
            mismatched.append(key)
    ok = not mismatched
    record(10, "byte-identical reports on re-run (wall time excluded)", ok,
           f"{len(CONFIGS)} configurations" + (f", mismatched {mismatched}" if mismatched else ""))
    assert ok
