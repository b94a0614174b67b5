"""Greedy spectral edge augmentation and the family comparison table."""

import numpy as np
import pytest

from algconn.augment import (
    AugmentationTrace,
    FamilyComparison,
    compare_families,
    edge_augmentation,
    largest_bipartite_part,
)
from algconn.graphs import is_connected
from algconn.spectral import algebraic_connectivity


def test_trivial_trace():
    tr = edge_augmentation(2, 1)
    assert isinstance(tr, AugmentationTrace)
    assert tr.steps == (((0, 1), 2.0),)
    assert tr.final.n == 2 and tr.final.m == 1


def test_augments_to_complete_graph():
    tr = edge_augmentation(4, 6)
    assert len(tr.steps) == 6
    assert tr.final.m == 6
    assert tr.steps[-1][1] == pytest.approx(4.0)  # K_4


def test_recorded_values_match_replay():
    tr = edge_augmentation(8, 16)
    from algconn.graphs import from_edges

    edges = []
    for (i, j), val in tr.steps:
        edges.append((i, j))
        assert val == pytest.approx(
            algebraic_connectivity(from_edges(8, edges)), abs=1e-9
        )
    assert from_edges(8, edges) == tr.final


def test_connectivity_arrives_at_tree_size_then_monotone():
    n, m = 12, 30
    tr = edge_augmentation(n, m)
    vals = [v for _, v in tr.steps]
    # the first n-2 additions leave the graph disconnected, the (n-1)th
    # completes a spanning tree
    assert all(abs(v) <= 1e-9 for v in vals[: n - 2])
    assert vals[n - 2] > 1e-9
    for a, b in zip(vals[n - 2 :], vals[n - 1 :]):
        assert b >= a - 1e-9
    assert is_connected(tr.final)


def test_no_duplicate_edges_and_determinism():
    tr1 = edge_augmentation(10, 25)
    tr2 = edge_augmentation(10, 25)
    assert tr1 == tr2
    pairs = [e for e, _ in tr1.steps]
    assert len(pairs) == len(set(pairs)) == 25
    assert all(0 <= i < j < 10 for i, j in pairs)


def test_degree_concentration():
    # the greedy rule keeps gluing the far ends of the second eigenvector
    # onto a hub, producing a star-like core
    tr = edge_augmentation(30, 120)
    degs = sorted(tr.final.degree(v) for v in range(30))
    assert degs[-1] >= 3 * float(np.median(degs))


def test_augmentation_rejects_bad_input():
    with pytest.raises(ValueError):
        edge_augmentation(1, 0)
    with pytest.raises(ValueError):
        edge_augmentation(4, 7)


def test_largest_bipartite_part():
    assert largest_bipartite_part(10, 24) == 4  # 4*6 = 24, 5*5 = 25 > 24
    assert largest_bipartite_part(10, 25) == 5
    assert largest_bipartite_part(10, 9) == 1
    assert largest_bipartite_part(2, 1) == 1
    with pytest.raises(ValueError):
        largest_bipartite_part(10, 8)


def test_compare_families_rows():
    cmp = compare_families(20, [40, 64])
    assert isinstance(cmp, FamilyComparison) and cmp.n == 20
    r40, r64 = cmp.rows
    # m = 40: 2m/n = 4 is an integer, so the regular column is populated
    assert r40.m == 40 and r40.regular_d == 4
    assert r40.regular_reference == pytest.approx(4 - 2 * np.sqrt(3))
    assert r40.regular_min <= r40.regular_mean <= r40.regular_max
    assert r40.bipartite_b == 2 and r40.bipartite == 2.0
    assert r40.note == ""
    # m = 64: 2m/n = 6.4 is not, so it is skipped and flagged
    assert r64.regular_d is None and r64.regular_mean is None
    assert "not an integer" in r64.note
    assert r64.bipartite_b == 4 and r64.bipartite == 4.0
    assert r64.augmented > 0


def test_compare_families_thread_invariance():
    a = compare_families(14, [20, 28])
    b = compare_families(14, [20, 28], threads=3)
    assert a == b


def test_compare_families_rejects_bad_budgets():
    with pytest.raises(ValueError):
        compare_families(20, [18])  # cannot connect 20 vertices
    with pytest.raises(ValueError):
        compare_families(5, [11])
    with pytest.raises(ValueError):
        compare_families(1, [0])
