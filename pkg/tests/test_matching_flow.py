from __future__ import annotations

import random

import networkx as nx

from corpus import random_graph, to_nx
from pancover.flow import disjoint_st_paths, fan_paths
from pancover.graph import is_path, to_mask
from pancover.matching import gallai_edmonds_deficient, max_matching, matching_size


def _adj(g):
    return [list(g.neighbors(v)) if v else [] for v in range(g.n + 1)]


def test_matching_against_networkx_and_deficiency():
    rng = random.Random(1)
    for _ in range(1500):
        n = rng.randint(2, 12)
        g = random_graph(rng, n, rng.random())
        adj = _adj(g)
        mate = max_matching(adj)
        assert all(mate[v] == -1 or (mate[mate[v]] == v and g.has_edge(v, mate[v])) for v in range(n + 1))
        size = matching_size(mate)
        assert size == len(nx.max_weight_matching(to_nx(g), maxcardinality=True))
        deficient = gallai_edmonds_deficient(adj, mate)
        for v in range(1, n + 1):
            without = [[u for u in adj[w] if u != v] if w != v else [] for w in range(n + 1)]
            # v is missed by some maximum matching iff deleting it keeps the matching number
            assert deficient[v] == (matching_size(max_matching(without)) == size)


def _fan_reference(g, source, targets):
    flow = nx.DiGraph()
    for v in g.vertices():
        flow.add_edge((v, "in"), (v, "out"), capacity=1)
    for u, v in g.edges():
        for a, b in ((u, v), (v, u)):
            if a not in targets:
                flow.add_edge((a, "out"), (b, "in"), capacity=1)
    for t in targets:
        flow.add_edge((t, "out"), "sink", capacity=1)
    return nx.maximum_flow_value(flow, (source, "out"), "sink")


def test_fan_paths_are_maximum():
    rng = random.Random(2)
    for _ in range(1500):
        n = rng.randint(2, 12)
        g = random_graph(rng, n, rng.random())
        source = rng.randint(1, n)
        targets = [v for v in g.vertices() if v != source and rng.random() < 0.4]
        if not targets:
            continue
        paths = fan_paths(g, source, to_mask(targets), 30)
        used: set[int] = set()
        for p in paths:
            assert p[0] == source and p[-1] in targets and is_path(g, p)
            assert not set(p[1:-1]) & set(targets)
            assert not used & set(p[1:])
            used |= set(p[1:])
        assert len(paths) == _fan_reference(g, source, targets)


def test_fan_paths_respects_need():
    rng = random.Random(3)
    g = random_graph(rng, 12, 0.8)
    assert len(fan_paths(g, 1, to_mask(range(2, 13)), 3)) == 3


def test_disjoint_st_paths_are_maximum():
    rng = random.Random(4)
    for _ in range(1500):
        n = rng.randint(2, 12)
        g = random_graph(rng, n, rng.random())
        s, t = rng.sample(range(1, n + 1), 2)
        paths = disjoint_st_paths(g, s, t, 30)
        ref_graph = to_nx(g)
        extra = 0
        if g.has_edge(s, t):
            ref_graph.remove_edge(s, t)
            extra = 1
        ref = extra + (len(list(nx.node_disjoint_paths(ref_graph, s, t))) if nx.has_path(ref_graph, s, t) else 0)
        assert len(paths) == ref
        inner: set[int] = set()
        for p in paths:
            assert p[0] == s and p[-1] == t and is_path(g, p)
            assert not inner & set(p[1:-1])
            inner |= set(p[1:-1])
