"""Radius derivation and neighbor set construction."""

import numpy as np
import pytest

from conftest import make_sample, random_fitness, random_mixed_rows
from hpofla.errors import InputError
from hpofla.gower import distance_matrix, distances_to_optima, find_optima
from hpofla.ingest import CATEGORICAL, NUMERIC
from hpofla.neighborhood import NeighborhoodSpec, build_neighborhoods, compute_spec


def pipeline(sample):
    matrix = distance_matrix(sample)
    optima = find_optima(sample)
    dstar = distances_to_optima(matrix, optima)
    spec = compute_spec(dstar, sample.params.c_const)
    return matrix, build_neighborhoods(matrix, spec)


def test_compute_spec_uses_farthest_row():
    dstar = np.array([0.0, 0.2, 0.4, 0.8])
    spec = compute_spec(dstar, 40)
    assert spec.max_dist == 0.8
    assert spec.delta == 0.8 / 40
    assert spec.c_const == 40


def test_compute_spec_all_optimal_collapses_to_zero():
    spec = compute_spec(np.zeros(5), 40)
    assert spec.max_dist == 0.0
    assert spec.delta == 0.0


def test_all_optimal_landscape_has_empty_neighborhoods():
    rows = [(0.0,), (1.0,), (2.0,)]
    sample = make_sample(rows, [5.0, 5.0, 5.0], [NUMERIC])
    _, nbhd = pipeline(sample)
    assert nbhd.empty_count() == 3
    assert list(nbhd.counts()) == [0, 0, 0]


def test_inclusion_is_strictly_below_delta():
    # distances from row 0: 0.25, 0.5, 1.0 with range (0, 4)
    rows = [(0.0,), (1.0,), (2.0,), (4.0,)]
    sample = make_sample(rows, [1.0, 2.0, 3.0, 4.0], [NUMERIC])
    matrix = distance_matrix(sample)
    spec = NeighborhoodSpec(max_dist=matrix.get(0, 2) * 40, delta=matrix.get(0, 2), c_const=40)
    nbhd = build_neighborhoods(matrix, spec)
    # row 1 sits at exactly delta/2 from row 0; row 2 at exactly delta: excluded
    assert list(nbhd.neighbors[0]) == [1]


def test_self_is_never_a_neighbor():
    rows = [(1.0,), (1.0,), (3.0,)]
    sample = make_sample(rows, [1.0, 2.0, 3.0], [NUMERIC])
    matrix = distance_matrix(sample)
    nbhd = build_neighborhoods(matrix, NeighborhoodSpec(4.0, 0.1, 40))
    # rows 0 and 1 coincide (distance 0 < delta) but neither lists itself
    assert list(nbhd.neighbors[0]) == [1]
    assert list(nbhd.neighbors[1]) == [0]
    for i, nb in enumerate(nbhd.neighbors):
        assert i not in nb


def test_neighbor_lists_are_sorted_and_symmetric():
    rng = np.random.default_rng(4)
    kinds = [NUMERIC, NUMERIC, CATEGORICAL]
    rows = random_mixed_rows(rng, 60, kinds, missing_rate=0.1)
    sample = make_sample(rows, random_fitness(rng, 60), kinds)
    _, nbhd = pipeline(sample)
    seen = set()
    for i, nb in enumerate(nbhd.neighbors):
        assert list(nb) == sorted(nb)
        for j in nb:
            assert i in nbhd.neighbors[j]
            seen.add((min(i, int(j)), max(i, int(j))))
    assert seen, "fixture should produce at least one neighboring pair"


def test_growing_delta_never_shrinks_neighborhoods():
    rng = np.random.default_rng(9)
    kinds = [NUMERIC, CATEGORICAL]
    rows = random_mixed_rows(rng, 40, kinds)
    sample = make_sample(rows, random_fitness(rng, 40), kinds)
    matrix = distance_matrix(sample)
    prev = None
    for delta in (0.01, 0.05, 0.2, 0.7):
        nbhd = build_neighborhoods(matrix, NeighborhoodSpec(delta * 40, delta, 40))
        if prev is not None:
            for small, big in zip(prev.neighbors, nbhd.neighbors):
                assert set(small) <= set(big)
        prev = nbhd


def test_delta_above_one_links_everything():
    rng = np.random.default_rng(2)
    kinds = [NUMERIC, CATEGORICAL]
    rows = random_mixed_rows(rng, 15, kinds)
    sample = make_sample(rows, random_fitness(rng, 15), kinds)
    matrix = distance_matrix(sample)
    nbhd = build_neighborhoods(matrix, NeighborhoodSpec(80.0, 2.0, 40))
    assert list(nbhd.counts()) == [14] * 15


def test_neighbors_match_brute_force():
    rng = np.random.default_rng(17)
    kinds = [NUMERIC, NUMERIC, CATEGORICAL, CATEGORICAL]
    rows = random_mixed_rows(rng, 50, kinds, missing_rate=0.15)
    sample = make_sample(rows, random_fitness(rng, 50), kinds)
    matrix = distance_matrix(sample)
    optima = find_optima(sample)
    dstar = distances_to_optima(matrix, optima)
    spec = compute_spec(dstar, sample.params.c_const)
    nbhd = build_neighborhoods(matrix, spec)
    for i in range(sample.n):
        expected = [j for j in range(sample.n)
                    if j != i and matrix.get(i, j) < spec.delta]
        assert list(nbhd.neighbors[i]) == expected
    assert nbhd.empty_count() == sum(1 for nb in nbhd.neighbors if len(nb) == 0)


def test_spec_validates_consistency():
    with pytest.raises(InputError):
        NeighborhoodSpec(max_dist=0.8, delta=0.5, c_const=40)
    with pytest.raises(InputError):
        NeighborhoodSpec(max_dist=-1.0, delta=-0.025, c_const=40)
