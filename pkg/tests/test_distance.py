import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from dissim.distance import Kernel, distance_matrix, euclidean, mam, mam_directed, pair_distances
from dissim.errors import DimensionMismatch, KernelError
from dissim.geometry import Dataset


def brute_directed(a, b):
    """Independent pure-Python evaluation of the directed minimum average distance."""
    total = 0.0
    for x in a:
        total += min(math.dist(x, y) for y in b)
    return total / len(a)


def brute_mam(a, b):
    return 0.5 * (brute_directed(a, b) + brute_directed(b, a))


def streamlines(dim=2, max_len=12):
    coords = st.floats(-100, 100, allow_nan=False, allow_infinity=False)
    return st.integers(1, max_len).flatmap(
        lambda n: arrays(np.float64, (n, dim), elements=coords))


A = [[0.0, 0.0], [1.0, 0.0]]
B = [[0.0, 1.0]]


class TestEuclidean:
    def test_values(self):
        assert euclidean([0, 0], [0, 0]) == 0.0
        assert euclidean([0, 0], [3, 4]) == 5.0
        assert euclidean([1, 2, 2], [0, 0, 0]) == 3.0

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            euclidean([0, 0], [0, 0, 0])

    def test_rejects_polylines(self):
        with pytest.raises(KernelError):
            euclidean(A, B)
        with pytest.raises(KernelError):
            distance_matrix([A], [B], Kernel.EUCLIDEAN)


class TestMam:
    def test_worked_example(self):
        # Nearest distances from A to B are 1 and sqrt(2); from B to A it is 1.
        assert brute_directed(A, B) == pytest.approx((1 + math.sqrt(2)) / 2, abs=1e-15)
        assert mam_directed(A, B) == pytest.approx(1.2071067811865475, abs=1e-12)
        assert mam_directed(B, A) == 1.0
        assert mam(A, B) == pytest.approx(brute_mam(A, B), abs=1e-12)
        assert mam(A, B) == pytest.approx(1.1035533905932737, abs=1e-9)

    def test_length_one_reduces_to_euclidean(self):
        assert mam([[0, 0]], [[3, 4]]) == 5.0

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            mam(A, [[0, 0, 0]])

    @settings(max_examples=200, deadline=None)
    @given(streamlines(), streamlines())
    def test_matches_brute_force(self, a, b):
        assert mam(a, b) == pytest.approx(brute_mam(a, b), rel=1e-12, abs=1e-12)
        assert mam_directed(a, b) == pytest.approx(brute_directed(a, b), rel=1e-12, abs=1e-12)

    @settings(max_examples=200, deadline=None)
    @given(streamlines(3), streamlines(3))
    def test_symmetric_exactly(self, a, b):
        assert mam(a, b) == mam(b, a)
        assert mam(a, b) >= 0.0

    @settings(max_examples=100, deadline=None)
    @given(streamlines(3))
    def test_identity(self, a):
        assert mam(a, a) == 0.0
        assert mam_directed(a, a) == 0.0

    @settings(max_examples=200, deadline=None)
    @given(streamlines(3, max_len=1), streamlines(3, max_len=1))
    def test_reduction_full_precision(self, a, b):
        assert mam(a, b) == euclidean(a[0], b[0])


class TestDistanceMatrix:
    def test_points(self):
        m = distance_matrix([[[0, 0]], [[3, 4]]], [[[0, 0]], [[3, 4]]], Kernel.EUCLIDEAN)
        assert m.tolist() == [[0.0, 5.0], [5.0, 0.0]]

    def test_single_mam_entry(self):
        m = distance_matrix([A], [B])
        assert m.shape == (1, 1)
        assert m[0, 0] == pytest.approx(1.1035533905932737, abs=1e-9)

    def test_empty_cols(self):
        assert distance_matrix([A, B], []).shape == (2, 0)
        assert distance_matrix([], [A]).shape == (0, 1)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            distance_matrix([A], [[[0, 0, 0]]])

    @pytest.mark.parametrize("seed", range(5))
    def test_oracle_equivalence_bit_exact(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(2, 21))
        ds = Dataset([rng.normal(size=(int(rng.integers(1, 15)), 3)) for _ in range(n)])
        m = distance_matrix(ds, ds)
        loops = np.array([[mam(ds[i], ds[j]) for j in range(n)] for i in range(n)])
        assert np.array_equal(m, loops)
        assert np.array_equal(m, m.T)
        assert np.all(np.diag(m) == 0.0)
        ii, jj = np.triu_indices(n, 1)
        assert np.array_equal(pair_distances(ds, ii, jj), m[ii, jj])

    def test_euclidean_oracle_equivalence(self, rng):
        pts = rng.normal(size=(20, 2))
        ds = Dataset([[p] for p in pts])
        m = distance_matrix(ds, ds, "euclidean")
        loops = np.array([[euclidean(a, b) for b in pts] for a in pts])
        assert np.array_equal(m, loops)
        assert np.array_equal(m, distance_matrix(ds, ds, "mam"))

    def test_thread_count_does_not_change_bits(self, rng):
        import numba

        from dissim.distance import set_threads
        ds = Dataset([rng.normal(size=(int(rng.integers(1, 20)), 3)) for _ in range(15)])
        ref = distance_matrix(ds, ds)
        before = numba.get_num_threads()
        try:
            set_threads(1)
            assert np.array_equal(distance_matrix(ds, ds), ref)
        finally:
            set_threads(before)
