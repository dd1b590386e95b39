import numpy as np
import pytest

from genheis import (
    COL_THEN_ROW,
    FAIL,
    INCONCLUSIVE,
    PASS,
    ROW_THEN_COL,
    BoundViolationError,
    DoubleSequence,
    ExtractionFailedError,
    GroupElement,
    HeisenbergGroup,
    PairingSpace,
    c0_counterexample,
    dlp_check,
    extract_double_subsequence,
    iterated_limit,
    wap_check,
)
from genheis.dlp import gap, norm_sum_sequence, pairing_sequence
from genheis.seeding import rng_for
from genheis.sequences import cluster_sequence


def seq(func, n=2000, m=2000, bound=None, name=""):
    return DoubleSequence(func, n, m, bound if bound is not None else 10.0, vectorized=True, name=name)


def c0_oracle(n, m):
    """Literal sup norm of e_n + e_1 + ... + e_m."""
    v = np.zeros(max(n, m) + 1)
    v[n] += 1
    v[1 : m + 1] += 1
    return float(np.max(np.abs(v)))


class TestDoubleSequence:
    def test_lazy_block_growth(self):
        calls = []

        def f(n, m):
            calls.append(n.size * m.size)
            return n + 0.0 * m

        s = DoubleSequence(f, 100, 100, 100, vectorized=True)
        assert s.block(3, 4).shape == (3, 4)
        s.block(5, 4)
        assert s[5, 4] == 5.0
        assert sum(calls) == 20

    def test_scalar_function(self):
        s = DoubleSequence(lambda n, m: n * m, 4, 4, 16)
        assert s[3, 4] == 12.0

    def test_bound_violation(self):
        s = DoubleSequence(lambda n, m: n + m, 10, 10, 5, vectorized=True)
        with pytest.raises(BoundViolationError):
            s.block(10, 10)

    def test_index_errors(self):
        s = c0_counterexample(5, 5)
        with pytest.raises(IndexError):
            s[6, 1]
        with pytest.raises(ValueError):
            DoubleSequence(lambda n, m: 0, 0, 5, 1)

    def test_subsequence_and_transpose(self):
        s = seq(lambda n, m: 10.0 * n + m, 20, 20, bound=300)
        sub = s.subsequence([2, 4], [1, 3, 5])
        assert sub.values().tolist() == [[21, 23, 25], [41, 43, 45]]
        assert s.transpose()[2, 7] == s[7, 2]


class TestIteratedLimit:
    def test_harmonic_sum(self):
        s = seq(lambda n, m: 1.0 / n + 1.0 / m, bound=2)
        for order in (ROW_THEN_COL, COL_THEN_ROW):
            est = iterated_limit(s, order, tol=5e-3)
            assert est.converged and abs(est.value) <= 5e-3

    def test_asymmetric_ratio(self):
        s = seq(lambda n, m: n / (n + m), bound=1)
        inner_n = iterated_limit(s, ROW_THEN_COL, tol=1e-2)
        inner_m = iterated_limit(s, COL_THEN_ROW, tol=1e-2)
        assert inner_n.converged and inner_m.converged
        assert inner_n.value == pytest.approx(1.0, abs=1e-2)
        assert inner_m.value == pytest.approx(0.0, abs=1e-2)

    def test_constant_at_minimal_block(self):
        est = iterated_limit(seq(lambda n, m: 0.0 * n * m + 3.25), ROW_THEN_COL)
        assert est.converged and est.value == 3.25 and est.indices_used == (10, 10)

    def test_oscillation_not_converged(self):
        est = iterated_limit(seq(lambda n, m: (-1.0) ** n + 0.0 * m, 200, 200, bound=1), ROW_THEN_COL)
        assert not est.converged

    def test_bad_parameters(self):
        s = c0_counterexample(20, 20)
        with pytest.raises(ValueError):
            iterated_limit(s, "diagonal")
        with pytest.raises(ValueError):
            iterated_limit(s, tol=0)
        with pytest.raises(ValueError):
            iterated_limit(s, window=1)


class TestExtraction:
    def test_constant_identity(self):
        res = extract_double_subsequence(seq(lambda n, m: 0.0 * n * m - 1.5))
        assert res.identity and res.c1 == res.c2 == -1.5

    def test_alternating_rows(self):
        res = extract_double_subsequence(seq(lambda n, m: (-1.0) ** n + 0.0 * m, 200, 200, bound=1))
        parity = {i % 2 for i in res.row_indices}
        assert len(parity) == 1
        assert res.c1 == res.c2 == (1.0 if parity == {0} else -1.0)

    def test_sine_product(self):
        s = seq(lambda n, m: np.sin(n) * np.sin(m), 500, 500, bound=1)
        res = extract_double_subsequence(s, tol=1e-2)
        assert res.converged
        assert -1 <= res.c1 <= 1 and -1 <= res.c2 <= 1
        assert list(res.row_indices) == sorted(set(res.row_indices))
        assert abs(res.c1 - res.c2) <= 1e-2

    def test_too_short(self):
        s = seq(lambda n, m: np.sin(n) * np.sin(m), 30, 30, bound=1)
        with pytest.raises(ExtractionFailedError):
            extract_double_subsequence(s, tol=1e-9)


class TestC0Counterexample:
    def test_entries_match_literal_norm(self):
        s = c0_counterexample(30, 20)
        for n in range(1, 31):
            for m in range(1, 21):
                assert s[n, m] == c0_oracle(n, m)
        assert s[3, 5] == 2 and s[5, 3] == 1

    def test_iterated_limits(self):
        s = c0_counterexample(200, 100)
        assert iterated_limit(s, ROW_THEN_COL, 1e-9).value == 1.0
        assert iterated_limit(s, COL_THEN_ROW, 1e-9).value == 2.0

    def test_verdict(self):
        v = dlp_check(c0_counterexample(200, 100), tol=1e-9)
        assert v.verdict == FAIL and v.c1 == 1.0 and v.c2 == 2.0
        assert gap(v) == 1.0
        d = v.to_dict()
        assert set(d) == {"verdict", "c1", "c2", "tol", "window", "caps", "row_indices", "col_indices", "seed"}

    @pytest.mark.parametrize("n,m", [(10, 10), (12, 40), (64, 11), (200, 100)])
    def test_fail_above_twice_window(self, n, m):
        assert dlp_check(c0_counterexample(n, m), tol=1e-9, window=5).verdict == FAIL


class TestVerdicts:
    def test_reciprocal_sum_passes(self):
        v = dlp_check(seq(lambda n, m: 1.0 / (n + m), bound=1), tol=1e-3)
        assert v.verdict == PASS and abs(v.c1) <= 1e-3 and abs(v.c2) <= 1e-3

    def test_reciprocal_sum_fine_tolerance_is_not_fail(self):
        # polynomial decay cannot settle within 1e-6 inside the caps
        v = dlp_check(seq(lambda n, m: 1.0 / (n + m), bound=1), tol=1e-6)
        assert v.verdict in (PASS, INCONCLUSIVE)

    def test_pairing_sequences_pass(self):
        sp = PairingSpace.ell(4, 6, mode="float")
        for t in range(5):
            r = rng_for(9, "pairing-test", t)
            xs = cluster_sequence(r, 300, 6, 1.0, sp.norm)
            fs = cluster_sequence(r, 300, 6, 1.0, sp.dual_norm)
            s = pairing_sequence(sp, xs, fs, 1.0)
            assert s[2, 3] == pytest.approx(float(np.dot(xs[1], fs[2])))
            assert dlp_check(s).verdict == PASS

    def test_norm_sum_sequence_entries(self):
        sp = PairingSpace.lp_interval(4, 8, mode="float")
        r = rng_for(1, "norm-sum")
        xs, ys = r.normal(size=(5, 8)), r.normal(size=(6, 8))
        s = norm_sum_sequence(sp, xs, ys)
        assert s[4, 2] == pytest.approx(float(sp.norm(xs[3] + ys[1])))
        d = norm_sum_sequence(sp, xs, ys, dual=True)
        assert d[1, 6] == pytest.approx(float(sp.dual_norm(xs[0] + ys[5])))


class TestWapCheck:
    def test_constant_phi(self, rng):
        G = HeisenbergGroup(PairingSpace.ell(4, 3, mode="float"))
        us = [G.random_element(rng) for _ in range(40)]
        v = wap_check(G, lambda t: np.full(np.shape(t.a), 0.5), us, us)
        assert v.verdict == PASS and v.c1 == v.c2 == 0.5

    def test_c0_model_fails(self):
        N, M = 60, 40
        sp = PairingSpace.c0(N, mode="float")
        G = HeisenbergGroup(sp)
        zero = sp.zeros()
        us = [GroupElement(0.0, sp.basis(n), zero) for n in range(N)]
        vs = [GroupElement(0.0, sp.vector(np.r_[np.ones(m), np.zeros(N - m)]), zero) for m in range(1, M + 1)]
        v = wap_check(G, lambda t: np.abs(t.x).max(axis=-1), us, vs, tol=1e-9, bound=2.0)
        assert v.verdict == FAIL and (v.c1, v.c2) == (1.0, 2.0)

    def test_bound_enforced(self, rng):
        G = HeisenbergGroup(PairingSpace.ell(2, 2, mode="float"))
        us = [G.random_element(rng) for _ in range(12)]
        with pytest.raises(BoundViolationError):
            wap_check(G, lambda t: np.full(np.shape(t.a), 3.0), us, us, bound=1.0)
