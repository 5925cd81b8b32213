from __future__ import annotations

import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import small_connected, to_nx
from pancover.graph import (
    Graph, GraphFormatError, MultiGraph, blocks, cubic_core, induced_subgraph, is_induced_cycle,
    is_induced_path, parse_graph, r_neighborhood, serialize_graph, shortest_cycle, verify_multicycle,
)


@st.composite
def graphs(draw, max_n: int = 12):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    return Graph.from_edges(n, chosen)


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i % n + 1) for i in range(1, n + 1)])


def test_parse_triangle():
    g = parse_graph("p ind 3 3\ne 1 2\ne 2 3\ne 1 3\n")
    assert g.edges() == [(1, 2), (1, 3), (2, 3)]


def test_parse_edgeless():
    g = parse_graph("c nothing here\np ind 2 0\n")
    assert g.n == 2 and g.edges() == []


@pytest.mark.parametrize("text", [
    "p ind 4 1\ne 1 5\n",          # endpoint out of range
    "p ind 3 1\ne 2 2\n",          # loop
    "p ind 3 2\ne 1 2\ne 1 2\n",   # duplicate
    "p ind 3 2\ne 1 2\n",          # edge count mismatch
    "e 1 2\np ind 3 1\n",          # header not first
    "p ind x 1\n",
])
def test_parse_rejects(text):
    with pytest.raises(GraphFormatError):
        parse_graph(text)


def test_parse_error_names_line():
    with pytest.raises(GraphFormatError, match="line 3"):
        parse_graph("p ind 4 2\ne 1 2\ne 1 5\n")


@given(graphs())
def test_serialize_round_trip(g):
    text = serialize_graph(g, ["a comment"])
    assert parse_graph(text) == g
    assert serialize_graph(parse_graph(text), ["a comment"]) == text


def test_induced_subgraph_examples():
    k4 = Graph.from_edges(4, [(a, b) for a in range(1, 5) for b in range(a + 1, 5)])
    tri, ids = induced_subgraph(k4, [1, 3, 4])
    assert tri.m == 3 and ids[1:] == (1, 3, 4)
    path, _ = induced_subgraph(cycle_graph(5), [1, 2, 3])
    assert path.edges() == [(1, 2), (2, 3)]
    same, _ = induced_subgraph(k4, range(1, 5))
    assert same == k4


def test_r_neighborhood_cycle():
    c6 = cycle_graph(6)
    assert r_neighborhood(c6, [1], 0) == (1,)
    assert r_neighborhood(c6, [1], 1) == (1, 2, 6)
    assert r_neighborhood(c6, [1], 3) == tuple(range(1, 7))


@given(graphs(10), st.integers(0, 10))
def test_r_neighborhood_monotone(g, r):
    small = set(r_neighborhood(g, [1], r))
    large = set(r_neighborhood(g, [1], r + 1))
    assert small <= large
    if r >= g.n:
        assert small == nx.node_connected_component(to_nx(g), 1)


def test_blocks_examples():
    pendant = Graph.from_edges(4, [(1, 2), (2, 3), (1, 3), (3, 4)])
    bct = blocks(pendant)
    assert sorted(map(sorted, bct.blocks)) == [[1, 2, 3], [3, 4]]
    assert bct.cut_vertices == {3}
    tree = Graph.from_edges(5, [(1, 2), (2, 3), (2, 4), (4, 5)])
    assert len(blocks(tree).blocks) == 4
    assert len(blocks(cycle_graph(6)).blocks) == 1


@settings(max_examples=300)
@given(graphs())
def test_blocks_match_networkx(g):
    bct = blocks(g)
    ref = nx.Graph(g.edges())
    assert sorted(map(sorted, bct.blocks)) == sorted(map(sorted, nx.biconnected_components(ref)))
    assert set(bct.cut_vertices) == set(nx.articulation_points(ref))


def test_blocks_partition_edges_on_small_corpus():
    for g in small_connected(7):
        bct = blocks(g)
        seen = [e for group in bct.block_edges for e in group]
        assert sorted(seen) == g.edges()
        for block in bct.blocks:
            if len(block) >= 3:
                sub = nx.Graph(g.edges()).subgraph(block)
                assert nx.is_biconnected(sub)


def test_shortest_cycle_examples():
    k4 = MultiGraph.from_graph(Graph.from_edges(4, [(a, b) for a in range(1, 5) for b in range(a + 1, 5)]))
    assert len(shortest_cycle(k4)) == 3
    tree = MultiGraph.from_graph(Graph.from_edges(4, [(1, 2), (2, 3), (2, 4)]))
    assert shortest_cycle(tree) is None
    petersen = MultiGraph.from_graph(Graph.from_edges(10, [(u + 1, v + 1) for u, v in nx.petersen_graph().edges()]))
    assert len(shortest_cycle(petersen)) == 5
    assert len(shortest_cycle(MultiGraph(2, ((1, 2), (1, 2))))) == 2
    assert len(shortest_cycle(MultiGraph(1, ((1, 1),)))) == 1


@settings(max_examples=300)
@given(graphs())
def test_girth_matches_networkx(g):
    m = MultiGraph.from_graph(g)
    found = shortest_cycle(m)
    girth = nx.girth(to_nx(g))
    if girth == float("inf"):
        assert found is None
    else:
        assert len(found) == girth and verify_multicycle(m, found)


def test_cubic_core_examples():
    assert not cubic_core(MultiGraph.from_graph(cycle_graph(5))).alive
    k4_edges = [(a, b) for a in range(1, 5) for b in range(a + 1, 5)]
    core = cubic_core(MultiGraph(4, tuple(k4_edges)))
    assert core.alive == {1, 2, 3, 4} and len(core.core.edges) == 6
    subdivided = [e for e in k4_edges if e != (1, 2)] + [(1, 5), (5, 2)]
    core = cubic_core(MultiGraph(5, tuple(subdivided)))
    assert core.alive == {1, 2, 3, 4} and len(core.core.edges) == 6


def test_cubic_core_lifts_cycles():
    rng = random.Random(11)
    for _ in range(1500):
        n = rng.randint(1, 30)
        degree = [0] * (n + 1)
        edges = []
        for _ in range(rng.randint(0, 2 * n)):
            u, v = rng.randint(1, n), rng.randint(1, n)
            if degree[u] < 3 and degree[v] < 3 and (u != v or degree[u] < 2):
                edges.append((u, v))
                degree[u] += 1 + (u == v)
                degree[v] += (u != v)
        m = MultiGraph(n, tuple(edges))
        core = cubic_core(m)
        assert all(core.core.degree(v) >= 3 for v in core.alive)
        cycle = shortest_cycle(core.core)
        if cycle is not None:
            assert verify_multicycle(core.core, cycle)
            assert verify_multicycle(m, core.lift(cycle))


def test_induced_checks():
    c5 = cycle_graph(5)
    assert is_induced_cycle(c5, [1, 2, 3, 4, 5])
    assert is_induced_path(c5, [1, 2, 3])
    chorded = Graph.from_edges(5, c5.edges() + [(1, 3)])
    assert not is_induced_cycle(chorded, [1, 2, 3, 4, 5])
    assert not is_induced_path(chorded, [1, 2, 3])
