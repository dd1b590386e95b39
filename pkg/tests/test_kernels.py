import json
import math
from pathlib import Path

import numpy as np
import pytest

from genheis import DimensionError, DomainError, GramReport, gram_matrix, psd_check, schoenberg_sweep, search_counterexample
from genheis.kernels import min_eigenvalue

WITNESS = Path(__file__).parent / "data" / "p4_witness.json"


class TestGramMatrix:
    def test_single_point(self):
        assert gram_matrix([[0.3, -1.0]], 4).tolist() == [[1.0]]

    @pytest.mark.parametrize("p", [1.0, 1.5, 2.0, 4.0])
    def test_two_points(self, p):
        d = 0.7
        G = gram_matrix([[0.0], [d]], p)
        k = math.exp(-(d ** p))
        assert np.allclose(G, [[1, k], [k, 1]], atol=1e-15)
        assert np.allclose(np.linalg.eigvalsh(G), [1 - k, 1 + k], atol=1e-15)
        assert psd_check(G).psd

    def test_symmetric_unit_diagonal(self, rng):
        for _ in range(100):
            pts = rng.normal(size=(7, 3))
            G = gram_matrix(pts, rng.uniform(1, 5))
            assert np.array_equal(G, G.T)
            assert np.all(np.diag(G) == 1.0)

    def test_weight_scales_exponent(self):
        G = gram_matrix([[0.0, 0.0], [1.0, 1.0]], 2, weight=0.5)
        assert G[0, 1] == pytest.approx(math.exp(-1.0))

    def test_errors(self):
        with pytest.raises(DimensionError):
            gram_matrix([1.0, 2.0], 2)
        with pytest.raises(DomainError):
            gram_matrix([[1.0], [2.0]], 0.5)


class TestPsdCheck:
    def test_identity(self):
        rep = psd_check(np.eye(4))
        assert rep.min_eigenvalue == 1.0 and rep.psd

    def test_rank_one(self):
        rep = psd_check(np.ones((2, 2)), tol=0.0)
        assert abs(rep.min_eigenvalue) <= 1e-15 and rep.psd

    def test_rejects_bad_input(self):
        with pytest.raises(DimensionError):
            psd_check(np.ones((2, 3)))
        with pytest.raises(DomainError):
            psd_check(np.array([[1.0, 0.2], [0.1, 1.0]]))


class TestSchoenberg:
    def test_gaussian_always_psd(self):
        for rep in schoenberg_sweep([2.0], [1, 3, 8], n_points=10, trials=50, seed=4):
            assert rep.psd

    def test_laplace_dim4(self):
        (rep,) = schoenberg_sweep([1.0], [4], n_points=8, trials=200, seed=0, tol=1e-9)
        assert rep.min_eigenvalue >= -1e-9

    def test_worst_case_is_reproducible(self):
        (a,) = schoenberg_sweep([1.5], [2], trials=20, seed=11)
        (b,) = schoenberg_sweep([1.5], [2], trials=20, seed=11)
        assert a == b
        assert a.reverify().min_eigenvalue == a.min_eigenvalue

    def test_trials_positive(self):
        with pytest.raises(ValueError):
            schoenberg_sweep([1.0], [2], trials=0)


class TestSearch:
    def test_quartic_counterexample(self):
        rep = search_counterexample(4.0, 2, 4, budget=100_000, seed=0)
        assert rep is not None and not rep.psd and rep.min_eigenvalue < -1e-6
        again = GramReport.from_dict(json.loads(rep.to_json())).reverify()
        assert again.min_eigenvalue == rep.min_eigenvalue

    def test_two_points_never(self):
        assert search_counterexample(4.0, 3, 2, budget=1000) is None

    def test_gaussian_not_found(self):
        assert search_counterexample(2.0, 2, 5, budget=2000, seed=1) is None

    def test_frozen_witness(self):
        data = json.loads(WITNESS.read_text())
        frozen = GramReport.from_dict(data)
        assert frozen.min_eigenvalue < -1e-6 and not frozen.psd
        pts = np.array(frozen.points)
        assert min_eigenvalue(gram_matrix(pts, 4.0)) == pytest.approx(frozen.min_eigenvalue, abs=1e-12)
        # the search itself still reproduces the frozen configuration
        s = data["search"]
        rerun = search_counterexample(s["p"], s["dim"], s["n_points"], s["budget"], s["seed"])
        assert rerun.points == frozen.points
