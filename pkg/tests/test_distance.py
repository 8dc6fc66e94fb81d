import pytest
from hypothesis import given, settings, strategies as st

from helpers import GRID_A, random_dataset, transpose
from semagg.distance import (
    PairDistance,
    dataset_centroid,
    intersection_cardinality,
    record_distance,
    symmetric_difference,
)
from semagg.semantics import PairSimilarityMatrix, greedy_match, matching_pairs


def _matrix(cells, left=1, right=2, threshold=0.8):
    cells = tuple(tuple(r) for r in cells)
    return PairSimilarityMatrix(left, right, cells, greedy_match(cells, threshold))


def _pd(left, right, delta):
    return PairDistance(left, right, 1, 1, 1, 1, 1.0, delta)


def test_worked_pair_grid():
    m = _matrix(transpose(GRID_A))
    assert m.shape == (3, 4)
    assert intersection_cardinality(m) == 2
    pd = record_distance(m)
    assert pd.n_union == 5
    assert pd.n_intersect == 2
    assert pd.sym_diff == 2.5
    assert pd.delta == 0.5


def test_intersection_identical_and_empty():
    assert intersection_cardinality(_matrix([[1.0, 0], [0, 1.0]])) == 2
    assert intersection_cardinality(_matrix([[0.1, 0.2]])) == 0


@pytest.mark.parametrize("union,inter,expected", [(5, 2, 2.5), (4, 4, 1.0), (6, 3, 2.0)])
def test_symmetric_difference(union, inter, expected):
    assert symmetric_difference(union, inter) == expected


def test_symmetric_difference_empty_intersection():
    with pytest.raises(ValueError):
        symmetric_difference(5, 0)
    with pytest.raises(ValueError):
        record_distance(_matrix([[0.1]]))


def test_single_match_distance_one():
    assert record_distance(_matrix([[0.9, 0.1], [0.2, 0.3]])).delta == 1.0


def test_identical_four_reps():
    eye = [[1.0 if i == j else 0.0 for j in range(4)] for i in range(4)]
    pd = record_distance(_matrix(eye))
    assert (pd.n_union, pd.n_intersect) == (4, 4)
    assert pd.delta == 0.25


def test_centroid_exact_hit():
    pairs = [_pd(1, 2, 0.2), _pd(3, 4, 0.5), _pd(5, 6, 0.8)]
    c = dataset_centroid(pairs)
    assert c.mean_delta == pytest.approx(0.5)
    assert c.centroid_pair == (3, 4)


def test_centroid_tie_goes_to_lower_ids():
    c = dataset_centroid([_pd(3, 4, 0.5), _pd(1, 2, 0.25)])
    assert c.mean_delta == 0.375
    assert c.centroid_pair == (1, 2)


def test_centroid_single_and_empty():
    c = dataset_centroid([_pd(1, 9, 0.7)])
    assert (c.mean_delta, c.centroid_pair) == (0.7, (1, 9))
    with pytest.raises(ValueError):
        dataset_centroid([])


@given(st.lists(st.sampled_from([0.1, 0.2, 0.25, 1 / 3, 0.5, 1.0]), min_size=1, max_size=30), st.randoms())
def test_centroid_permutation_invariant(deltas, rnd):
    pairs = [_pd(i, i + 100, d) for i, d in enumerate(deltas)]
    shuffled = pairs[:]
    rnd.shuffle(shuffled)
    assert dataset_centroid(pairs) == dataset_centroid(shuffled)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 100_000))
def test_identity_and_range(seed):
    tax, dds = random_dataset(seed, 12)
    for m in matching_pairs(dds, tax):
        pd = record_distance(m)
        assert pd.n_intersect == pd.n_left + pd.n_right - pd.n_union
        assert pd.n_intersect >= 1
        assert 0 < pd.delta <= 1
        assert abs(pd.delta * pd.n_intersect - 1) <= 1e-12


def test_delta_non_increasing_in_intersection():
    for n in range(1, 8):
        deltas = []
        for k in range(1, n + 1):
            eye = [[1.0 if (i == j and i < k) else 0.0 for j in range(n)] for i in range(n)]
            deltas.append(record_distance(_matrix(eye)).delta)
        assert deltas == sorted(deltas, reverse=True)
