from __future__ import annotations

import itertools
import random
from collections import deque

import pytest

from corpus import random_graph, small_connected
from oracles import adjacency, is_diamond_subdivision, is_pan_subdivision, min_diamond_order, min_pan_order
from pancover.detect import (
    DIAMOND, PAN1, PAN2, BudgetExceeded, Model, Pattern, PreconditionError, QClaw, check_pan, check_qclaw,
    detect_diamond, diamond_from_qclaw, extract_pan1, extract_pan2, find_min_pan, find_model,
    induced_cycle_keeping_marked_edge, load_pattern, verify_model,
)
from pancover.flow import fan_paths
from pancover.graph import Graph, is_induced_cycle, is_induced_path, to_mask

DIAMOND_GRAPH = DIAMOND.graph
PAN1_GRAPH = Graph.from_edges(4, [(1, 2), (2, 3), (2, 4), (3, 4)])
K4 = Graph.from_edges(4, [(a, b) for a in range(1, 5) for b in range(a + 1, 5)])


def cycle(n: int, offset: int = 0) -> list[tuple[int, int]]:
    return [(offset + i, offset + i % n + 1) for i in range(1, n + 1)]


def planted(rng: random.Random, h: Pattern, noise: int) -> tuple[Graph, Model]:
    """Random noise graph plus a subdivided copy of ``h`` as a separate component."""
    edges = [(u, v) for u in range(1, noise + 1) for v in range(u + 1, noise + 1) if rng.random() < 0.4]
    nxt = noise + 1
    branch = tuple(range(nxt, nxt + h.n))
    nxt += h.n
    paths = {}
    for s, t in h.graph.edges():
        route = [branch[s - 1]]
        for _ in range(rng.randint(0, 3)):
            route.append(nxt)
            nxt += 1
        route.append(branch[t - 1])
        edges += list(zip(route, route[1:]))
        paths[(s, t)] = tuple(route)
    return Graph.from_edges(nxt - 1, edges), Model(branch, paths)


# ---------------------------------------------------------------------------
# verify_model and find_model


def test_identity_model_of_diamond():
    ident = Model((1, 2, 3, 4), {e: e for e in DIAMOND_GRAPH.edges()})
    assert verify_model(DIAMOND_GRAPH, DIAMOND, ident)


def test_k4_is_never_a_diamond_model():
    for perm in itertools.permutations(range(1, 5)):
        model = Model(perm, {(s, t): (perm[s - 1], perm[t - 1]) for s, t in DIAMOND_GRAPH.edges()})
        check = verify_model(K4, DIAMOND, model)
        assert not check and check.condition == "non-adjacent branch images"


@pytest.mark.parametrize("h", [PAN1, PAN2, DIAMOND], ids=lambda h: h.name)
def test_planted_subdivisions_verify(h):
    rng = random.Random(h.n)
    for _ in range(100):
        g, model = planted(rng, h, rng.randint(0, 8))
        assert verify_model(g, h, model)
        found = find_model(g, h)
        assert found is not None and verify_model(g, h, found)


def test_find_model_examples():
    assert find_model(Graph.from_edges(5, cycle(5)), DIAMOND) is None
    found = find_model(PAN1_GRAPH, PAN1)
    assert found is not None and sorted(found.vertices()) == [1, 2, 3, 4]


def test_find_model_budget_is_explicit():
    big = Graph.from_edges(14, cycle(14) + [(1, 8), (3, 11)])
    with pytest.raises(BudgetExceeded):
        find_model(big, load_pattern("diamond"), budget=3)


@pytest.mark.parametrize("h,accepts", [
    (PAN1, lambda adj, s: is_pan_subdivision(adj, s, 1)),
    (PAN2, lambda adj, s: is_pan_subdivision(adj, s, 2)),
    (DIAMOND, is_diamond_subdivision),
], ids=["pan1", "pan2", "diamond"])
def test_find_model_agrees_with_subset_enumeration(h, accepts):
    for g in small_connected(7):
        adj = adjacency(g)
        exists = any(accepts(adj, s) for r in range(h.n, g.n + 1)
                     for s in itertools.combinations(range(1, g.n + 1), r))
        found = find_model(g, h)
        assert (found is not None) == exists, g.edges()
        if found is not None:
            assert verify_model(g, h, found) and accepts(adj, found.vertices())


# ---------------------------------------------------------------------------
# minimum pans


def test_min_pan_examples():
    pan = find_min_pan(PAN1_GRAPH, 1)
    assert pan.order == 4 and sorted(pan.vertices()) == [1, 2, 3, 4]
    assert find_min_pan(K4, 1) is None
    assert find_min_pan(Graph.from_edges(6, [(a, b) for a in range(1, 7) for b in range(a + 1, 7)]), 2) is None


def _tuple_scan(g: Graph, p: int):
    """Direct search over (v_1..v_p, w1, w2, w3) tuples with a BFS for the closing path."""
    best = None
    for tup in itertools.permutations(g.vertices(), p + 3):
        tail, (w1, w2, w3) = tup[:p], tup[p:]
        if not is_induced_path(g, tail + (w2,)):
            continue
        if not (g.has_edge(w1, w2) and g.has_edge(w3, w2)):
            continue
        if any(g.has_edge(w, v) for w in (w1, w3) for v in tail):
            continue
        banned = set(tail) | {w2}
        for x in tail + (w2,):
            banned |= set(g.neighbors(x))
        banned -= {w1, w3}
        dist, todo = {w1: 0}, deque([w1])
        while todo:
            x = todo.popleft()
            for y in g.neighbors(x):
                if y not in banned and y not in dist:
                    dist[y] = dist[x] + 1
                    todo.append(y)
        if w3 in dist:
            key = (p + 1 + dist[w3] + 1, tail, w1, w2, w3)
            best = key if best is None or key < best else best
    return best


def test_min_pan_matches_tuple_scan_and_tie_rule():
    rng = random.Random(9)
    for _ in range(120):
        g = random_graph(rng, rng.randint(6, 10), rng.uniform(0.15, 0.6))
        for p in (1, 2):
            found, ref = find_min_pan(g, p), _tuple_scan(g, p)
            if found is None:
                assert ref is None
                continue
            assert (found.order, found.tail, found.cycle[1], found.cycle[0], found.cycle[-1]) == ref


def test_min_pan_order_matches_subset_minimum():
    rng = random.Random(3)
    for _ in range(200):
        g = random_graph(rng, rng.randint(3, 10), rng.uniform(0.1, 0.7))
        for p in (1, 2):
            found = find_min_pan(g, p)
            assert (found.order if found else None) == min_pan_order(g, p)
            if found:
                assert check_pan(g, found) and verify_model(g, PAN1 if p == 1 else PAN2, found.model())


def test_min_pan_neighbours_see_one_cycle_vertex():
    rng = random.Random(17)
    reached = 0
    for _ in range(400):
        g = random_graph(rng, rng.randint(8, 20), rng.uniform(0.08, 0.2))
        pan = find_min_pan(g, 1)
        if pan is None or len(pan.cycle) < 5:
            continue
        reached += 1
        cmask = to_mask(pan.cycle)
        for v in g.vertices():
            if v not in pan.cycle:
                assert (g.masks[v] & cmask).bit_count() <= 1
    assert reached > 10


# ---------------------------------------------------------------------------
# extraction lemmas


def test_extract_pan1_examples():
    g = Graph.from_edges(5, cycle(4) + [(5, 3)])
    pan = extract_pan1(g, (1, 2, 3, 4), 5)
    assert pan.tail == (5,) and sorted(pan.cycle) == [1, 2, 3, 4]
    g = Graph.from_edges(7, cycle(6) + [(7, 3), (7, 5)])
    pan = extract_pan1(g, (1, 2, 3, 4, 5, 6), 7)
    assert sorted(pan.vertices()) == [2, 3, 4, 5, 7] and check_pan(g, pan)
    with pytest.raises(PreconditionError):
        extract_pan1(g, (1, 2, 3, 4, 5, 6), 3)


def test_extract_pan1_random():
    rng = random.Random(4)
    for _ in range(500):
        m = rng.randint(4, 10)
        edges = cycle(m) + [(m + 1, 3)]
        edges += [(m + 1, i) for i in range(5, m + 1) if rng.random() < 0.4]
        g = Graph.from_edges(m + 1, edges)
        pan = extract_pan1(g, tuple(range(1, m + 1)), m + 1)
        assert check_pan(g, pan) and verify_model(g, PAN1, pan.model())


def test_extract_pan2_examples():
    clean = Graph.from_edges(9, cycle(5) + [(2, 6), (6, 7), (7, 8), (8, 9)])
    pan = extract_pan2(clean, (1, 2, 3, 4, 5), (6, 7, 8, 9))
    assert pan.tail == (7, 6)
    reentry = Graph.from_edges(9, cycle(5) + [(2, 6), (6, 7), (7, 8), (8, 9), (5, 6)])
    pan = extract_pan2(reentry, (1, 2, 3, 4, 5), (6, 7, 8, 9))
    assert check_pan(reentry, pan) and pan.p == 2


def test_extract_pan2_random():
    rng = random.Random(5)
    for _ in range(1000):
        m = rng.randint(4, 11)
        w = tuple(range(m + 1, m + 5))
        edges = cycle(m) + [(2, w[0])] + list(zip(w, w[1:]))
        for i in range(5, m + 1):
            if rng.random() < 0.35:
                edges.append((i, rng.choice(w)))
        g = Graph.from_edges(m + 4, edges)
        pan = extract_pan2(g, tuple(range(1, m + 1)), w)
        assert check_pan(g, pan) and pan.p == 2 and verify_model(g, PAN2, pan.model())
        assert set(pan.vertices()) <= set(range(1, m + 5))


def test_marked_cycle_examples():
    c5 = Graph.from_edges(5, cycle(5))
    assert induced_cycle_keeping_marked_edge(c5, (1, 2, 3, 4, 5), [(1, 2)]) == (1, 2, 3, 4, 5)
    chorded = Graph.from_edges(5, cycle(5) + [(1, 3)])
    assert sorted(induced_cycle_keeping_marked_edge(chorded, (1, 2, 3, 4, 5), [(1, 2)])) == [1, 2, 3]


def test_marked_cycle_random():
    rng = random.Random(6)
    for _ in range(1000):
        m = rng.randint(3, 14)
        edges = cycle(m) + [(a, b) for a in range(1, m + 1) for b in range(a + 2, m + 1)
                            if rng.random() < 0.15 and (a, b) != (1, m)]
        g = Graph.from_edges(m, edges)
        marked = [e for e in cycle(m) if rng.random() < 0.3] or [(1, 2)]
        out = induced_cycle_keeping_marked_edge(g, tuple(range(1, m + 1)), marked)
        assert is_induced_cycle(g, out) and len(out) <= m
        assert any(frozenset((out[i], out[(i + 1) % len(out)])) in {frozenset(e) for e in marked}
                   for i in range(len(out)))


# ---------------------------------------------------------------------------
# diamonds


def test_diamond_from_qclaw_base_case():
    g = Graph.from_edges(4, [(1, 2), (2, 3), (4, 1), (4, 2), (4, 3)])
    model = diamond_from_qclaw(g, (1, 2, 3), QClaw(4, ((4, 1), (4, 2), (4, 3))))
    assert sorted(model.vertices()) == [1, 2, 3, 4] and verify_model(g, DIAMOND, model)


def test_diamond_from_qclaw_with_crossing_edge():
    # q = 1..5, legs 6-7-1, 6-3, 6-8-5 and a chord from leg interior 7 to q-vertex 2
    g = Graph.from_edges(8, [(1, 2), (2, 3), (3, 4), (4, 5), (6, 7), (7, 1), (6, 3), (6, 8), (8, 5), (7, 2)])
    claw = QClaw(6, ((6, 7, 1), (6, 3), (6, 8, 5)))
    assert check_qclaw(g, (1, 2, 3, 4, 5), claw) == ""
    model = diamond_from_qclaw(g, (1, 2, 3, 4, 5), claw)
    assert verify_model(g, DIAMOND, model) and set(model.vertices()) <= set(range(1, 9))


def test_diamond_from_random_qclaws():
    rng = random.Random(7)
    built = 0
    for _ in range(2000):
        g = random_graph(rng, rng.randint(5, 14), rng.uniform(0.15, 0.6))
        q = [rng.randint(1, g.n)]
        while rng.random() > 0.2:
            options = [w for w in g.neighbors(q[-1])
                       if w not in q and not any(g.has_edge(w, x) for x in q[:-1])]
            if not options:
                break
            q.append(rng.choice(options))
        if len(q) < 3:
            continue
        for centre in g.vertices():
            if centre in q:
                continue
            legs = fan_paths(g, centre, to_mask(q), 3)
            if len(legs) == 3:
                claw = QClaw(centre, tuple(legs))
                model = diamond_from_qclaw(g, q, claw)
                assert verify_model(g, DIAMOND, model)
                assert set(model.vertices()) <= set(q) | set(claw.vertices())
                built += 1
                break
    assert built > 300


def test_detect_diamond_examples():
    found = detect_diamond(DIAMOND_GRAPH)
    assert found is not None and len(found.vertices()) == 4
    assert detect_diamond(K4) is None


def test_detect_diamond_minimum_agrees_with_subsets():
    for g in small_connected(7):
        found = detect_diamond(g)
        smallest = min_diamond_order(g)
        assert (found is None) == (smallest is None)
        if found is not None:
            assert verify_model(g, DIAMOND, found)
            assert is_diamond_subdivision(adjacency(g), found.vertices())
