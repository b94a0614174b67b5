"""Splitting vertex, guaranteed component sizes, split-based bounds."""

import math
import random
from fractions import Fraction

import pytest

from algconn.families import bethe_tree, double_binary_tree, path, random_tree, star
from algconn.graphs import from_edges, max_degree
from algconn.spectral import algebraic_connectivity
from algconn.treetools import (
    SplitResult,
    find_splitting_vertex,
    is_well_balanced,
    split_component_floor,
    split_spectral_bound,
)


def test_splitting_vertex_path():
    # odd path: the middle vertex, leaving two equal halves
    res = find_splitting_vertex(path(9))
    assert res.vertex == 4
    assert res.component_sizes == (4, 4)
    # even path: both central edge endpoints tie at n/2; lower index wins
    res = find_splitting_vertex(path(10))
    assert res.vertex == 4
    assert res.component_sizes == (5, 4)


def test_splitting_vertex_star_and_spider():
    res = find_splitting_vertex(star(6))
    assert res.vertex == 0
    assert res.component_sizes == (1, 1, 1, 1, 1)
    # three legs of length 3 from a hub: hub must be the splitting vertex
    edges = [(0, 1), (1, 2), (2, 3), (0, 4), (4, 5), (5, 6), (0, 7), (7, 8), (8, 9)]
    res = find_splitting_vertex(from_edges(10, edges))
    assert res.vertex == 0
    assert res.component_sizes == (3, 3, 3)


def test_splitting_vertex_bethe():
    res = find_splitting_vertex(bethe_tree(3, 3))
    assert res.vertex == 0
    assert res.component_sizes == (7, 7, 7)


def test_splitting_vertex_rejects_non_trees():
    with pytest.raises(ValueError):
        find_splitting_vertex(from_edges(3, [(0, 1), (1, 2), (2, 0)]))
    with pytest.raises(ValueError):
        find_splitting_vertex(path(2))


def test_split_guarantee_random_trees():
    # at least two components of size >= (n-2)/(2(d-1)), exactly
    rng = random.Random(61)
    for _ in range(120):
        n = rng.randrange(3, 40)
        d_max = rng.randrange(2, 6)
        t = random_tree(n, d_max, rng.randrange(10**6))
        d = max(2, max_degree(t))
        res = find_splitting_vertex(t)
        floor = split_component_floor(n, d)
        big = [s for s in res.component_sizes if s >= floor]
        assert len(big) >= 2, (n, d, res)
        assert sum(res.component_sizes) == n - 1


def test_split_component_floor_values():
    assert split_component_floor(22, 3) == Fraction(5)
    assert split_component_floor(10, 4) == Fraction(4, 3)
    with pytest.raises(ValueError):
        split_component_floor(2, 3)


def test_split_spectral_bound_dominates_lambda2():
    rng = random.Random(67)
    for _ in range(80):
        n = rng.randrange(3, 34)
        t = random_tree(n, rng.randrange(2, 5), rng.randrange(10**6))
        bound = split_spectral_bound(t)
        assert algebraic_connectivity(t) <= bound + 1e-9, t


def test_split_spectral_bound_path_value():
    # P3 split at the middle: components are single vertices, quotient 1
    assert split_spectral_bound(path(3)) == pytest.approx(1.0)
    # long paths: bound far below the trivial 2 - 2cos(pi/3) scale but
    # above the true value
    t = path(30)
    assert algebraic_connectivity(t) < split_spectral_bound(t) < 0.5


def test_is_well_balanced():
    assert is_well_balanced(bethe_tree(3, 3))  # root leaves {7,7,7}, (n-1)/d = 7
    assert is_well_balanced(star(4))  # removing hub: {1,1,1} vs (n-1)/d = 1
    # spider with legs (1,1,2): every removal leaves at most one component
    # of size >= (n-1)/d = 4/3
    assert not is_well_balanced(from_edges(5, [(0, 1), (0, 2), (0, 3), (3, 4)]))
    with pytest.raises(ValueError):
        is_well_balanced(path(5))  # max degree 2
    with pytest.raises(ValueError):
        is_well_balanced(from_edges(3, [(0, 1), (1, 2), (2, 0)]))


def test_bethe_balanced_but_doubled_tree_is_not():
    # the root of a Bethe tree splits it into d equal parts, exactly meeting
    # the (n-1)/d threshold; a doubled binary tree's best split gives one
    # half and two quarters, and the quarters miss the threshold
    for K in (2, 3, 4):
        assert is_well_balanced(bethe_tree(3, K))
        assert not is_well_balanced(double_binary_tree(K))
