import numpy as np

from genheis.seeding import derive_seed, rng_for, split
from genheis.sequences import cluster_sequence, ray_family, unbounded_sequence


def test_same_labels_same_stream():
    assert np.array_equal(rng_for(7, "a", 1).random(5), rng_for(7, "a", 1).random(5))


def test_labels_and_roots_separate_streams():
    base = rng_for(7, "a", 1).random(5)
    assert not np.array_equal(base, rng_for(7, "a", 2).random(5))
    assert not np.array_equal(base, rng_for(8, "a", 1).random(5))


def test_split_is_a_seed_sequence():
    assert isinstance(split(0, "x"), np.random.SeedSequence)
    s = derive_seed(3, "y")
    assert 0 <= s < 2**63 and s == derive_seed(3, "y")


def test_cluster_sequence_is_bounded():
    norm = lambda v: np.abs(v).max(axis=-1)
    xs = cluster_sequence(rng_for(1, "c"), 500, 4, 2.0, norm)
    assert xs.shape == (500, 4) and norm(xs).max() <= 2.0 + 1e-12


def test_unbounded_growth_and_ray():
    norm = lambda v: np.sqrt((v**2).sum(axis=-1))
    xs = unbounded_sequence(rng_for(1, "u"), 10, 3, norm)
    assert np.allclose(norm(xs), np.arange(1, 11) ** 3)
    ray = ray_family(np.array([3.0, 4.0]), norm)
    assert np.allclose(ray(5), [3.0, 4.0])
