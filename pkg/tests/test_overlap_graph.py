import itertools
import math

import pytest

from upword.overlap_graph import (Edge, build_clustered_graph, double_edge_cycles, double_edge_successor,
                                  find_twins, is_twins, twins_of_signature)
from upword.perm_core import reduce


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_clusters_and_degrees(n):
    g = build_clustered_graph(n)
    assert len(g.clusters) == math.factorial(n - 1)
    assert len(g.edges) == math.factorial(n)
    assert set(g.degrees().values()) == {(n, n)}
    assert g.is_balanced() and g.is_strongly_connected()


def test_edges_connect_prefix_to_suffix():
    e = Edge.of((2, 4, 1, 3))
    assert e.src == (2, 3, 1) and e.dst == (3, 1, 2)


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_one_twin_pair_per_cluster_by_exhaustive_check(n):
    g = build_clustered_graph(n)
    for sig, cluster in g.clusters.items():
        pairs = [pair for pair in itertools.combinations(cluster.members, 2) if is_twins(*pair)]
        assert len(pairs) == 1
        assert tuple(sorted(pairs[0])) == find_twins(cluster) == twins_of_signature(sig)


def test_twin_examples():
    assert is_twins((1, 3, 4, 2), (2, 3, 4, 1))
    assert not is_twins((1, 2, 3), (1, 3, 2))
    assert not is_twins((1, 2, 3), (1, 2, 3))


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_double_edge_cycles_partition(n):
    g = build_clustered_graph(n)
    cycles = double_edge_cycles(g)
    assert len(cycles) == math.factorial(n - 2)
    assert all(len(c) == n - 1 for c in cycles)
    seen = [s for c in cycles for s in c.signatures]
    assert sorted(seen) == sorted(g.clusters)
    for c in cycles:
        for a, b in zip(c.signatures, c.signatures[1:] + c.signatures[:1]):
            assert double_edge_successor(a) == b
    mult = g.edge_multiplicities()
    assert max(mult.values()) == 2
    assert sum(1 for v in mult.values() if v == 2) == math.factorial(n - 1)


def test_small_cases_match_figures():
    assert [c.signatures for c in double_edge_cycles(build_clustered_graph(3))] == [((1, 2), (2, 1))]
    sigs = [c.signatures for c in double_edge_cycles(build_clustered_graph(4))]
    assert sigs == [((1, 2, 3), (2, 3, 1), (3, 1, 2)), ((1, 3, 2), (3, 2, 1), (2, 1, 3))]


def test_n_out_of_range():
    with pytest.raises(ValueError):
        build_clustered_graph(1)
    with pytest.raises(ValueError):
        build_clustered_graph(9)


def test_dot_export():
    dot = build_clustered_graph(3).to_dot()
    assert dot.startswith("digraph") and dot.count("->") == 6
