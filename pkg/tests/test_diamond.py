from __future__ import annotations

import random

import networkx as nx
import pytest

from corpus import random_graph
from oracles import adjacency, has_diamond_meeting, is_diamond_subdivision
from pancover.certificate import verify_certificate
from pancover.detect import DIAMOND, PreconditionError, QClaw, check_qclaw, detect_diamond, verify_model
from pancover.diamond import (
    NotEnoughStructure, TutteBridge, bridge_cycle_two_paths, cover_or_pack_given_model, cover_or_pack_on_path,
    diamond_from_bridge_cycle, diamond_from_bridge_pair, diamonds_from_qclaws, qclaw_from_bridge, solve_diamond,
    tutte_bridges,
)
from pancover.graph import Graph, from_mask, is_induced_path, shortest_path, to_mask
from pancover.oracle import nu_exact
from pancover.policy import DEFAULT_POLICY, ThresholdPolicy

RELAXED = ThresholdPolicy(ncap_coeff=1, ncap_exponent=0, aclaw_cover_coeff=1)


def path_edges(length: int) -> list[tuple[int, int]]:
    return [(i, i + 1) for i in range(1, length)]


def hang_theta(edges: list, start: int, left: int, right: int) -> int:
    """A 4-cycle ``start..start+3`` joined to path vertices ``left`` and ``right``; returns next free id."""
    c = [start, start + 1, start + 2, start + 3]
    edges += [(c[i], c[(i + 1) % 4]) for i in range(4)]
    edges += [(left, c[0]), (c[2], right)]
    return start + 4


def is_valid_diamond(g: Graph, model) -> bool:
    return bool(verify_model(g, DIAMOND, model)) and is_diamond_subdivision(adjacency(g), model.vertices())


def disjoint(models) -> bool:
    seen = [v for m in models for v in m.vertices()]
    return len(seen) == len(set(seen))


# ---------------------------------------------------------------------------
# Tutte bridges


def test_tutte_bridges_examples():
    c6 = Graph.from_edges(6, [(i, i % 6 + 1) for i in range(1, 7)])
    found = tutte_bridges(c6, [1, 4])
    assert len(found) == 2 and all(b.attachments == (1, 4) for b in found)
    star = Graph.from_edges(5, [(1, v) for v in range(2, 6)])
    found = tutte_bridges(star, [1])
    assert sorted(b.interior for b in found) == [(2,), (3,), (4,), (5,)]
    assert all(b.attachments == (1,) for b in found)


def test_tutte_bridges_random():
    rng = random.Random(1)
    for _ in range(300):
        g = random_graph(rng, rng.randint(2, 14), rng.random() * 0.5)
        a = {v for v in g.vertices() if rng.random() < 0.3}
        found = tutte_bridges(g, a)
        ref = nx.Graph()
        ref.add_nodes_from(v for v in g.vertices() if v not in a)
        ref.add_edges_from((u, v) for u, v in g.edges() if u not in a and v not in a)
        assert sorted(set(b.interior) for b in found) == sorted(map(set, nx.connected_components(ref)), key=sorted)
        for b in found:
            touch = {x for v in b.interior for x in g.neighbors(v) if x in a}
            assert set(b.attachments) == touch


def _bridge_oracle(g: Graph, bridge: TutteBridge) -> bool:
    """Some cycle of the bridge reached from both attachments by disjoint paths (max flow)."""
    v, w = bridge.attachments
    inner = set(bridge.interior)
    allowed = inner | {v, w}
    graph = nx.Graph()
    graph.add_edges_from((x, y) for x, y in g.edges() if x in allowed and y in allowed and (x in inner or y in inner))
    for cycle in nx.cycle_basis(graph) + [c for c in nx.simple_cycles(graph) if len(c) >= 3]:
        flow = nx.DiGraph()
        for x in graph:
            flow.add_edge((x, "in"), (x, "out"), capacity=1)
        for x, y in graph.edges():
            flow.add_edge((x, "out"), (y, "in"), capacity=1)
            flow.add_edge((y, "out"), (x, "in"), capacity=1)
        for c in cycle:
            flow.add_edge((c, "out"), "sink", capacity=1)
        flow.add_edge("source", (v, "in"), capacity=1)
        flow.add_edge("source", (w, "in"), capacity=1)
        if nx.maximum_flow_value(flow, "source", "sink") == 2:
            return True
    return False


def test_bridge_cycle_examples():
    edges = path_edges(7)
    hang_theta(edges, 8, 2, 6)
    g = Graph.from_edges(11, edges)
    (bridge,) = [b for b in tutte_bridges(g, range(1, 8)) if b.interior]
    assert bridge_cycle_two_paths(g, bridge)
    bare = Graph.from_edges(9, path_edges(7) + [(2, 8), (8, 9), (9, 6)])
    (bridge,) = tutte_bridges(bare, range(1, 8))
    assert not bridge_cycle_two_paths(bare, bridge)
    hanging = Graph.from_edges(11, path_edges(7) + [(2, 8), (8, 9), (9, 6), (8, 10), (10, 11), (8, 11)])
    (bridge,) = tutte_bridges(hanging, range(1, 8))
    assert not bridge_cycle_two_paths(hanging, bridge)


def test_bridge_cycle_precondition():
    g = Graph.from_edges(4, [(1, 2), (1, 3), (2, 3), (3, 4), (1, 4), (2, 4)])
    with pytest.raises(PreconditionError):
        bridge_cycle_two_paths(g, TutteBridge((3, 4), (1, 2)))


def _random_path(g: Graph, rng: random.Random):
    return shortest_path(g, rng.randint(1, g.n), 1 << rng.randint(1, g.n))


def test_bridge_cycle_against_flow_oracle():
    rng = random.Random(3)
    outcomes = set()
    for _ in range(600):
        g = random_graph(rng, rng.randint(5, 10), 0.3)
        q = _random_path(g, rng)
        if not q or len(q) < 3:
            continue
        for b in tutte_bridges(g, q):
            if len(b.attachments) == 2 and not g.has_edge(*b.attachments):
                answer = bridge_cycle_two_paths(g, b)
                assert answer == _bridge_oracle(g, b)
                outcomes.add(answer)
    assert outcomes == {True, False}


# ---------------------------------------------------------------------------
# claws and bridge diamonds


def test_qclaw_from_bridge_examples():
    q = tuple(range(1, 6))
    g = Graph.from_edges(6, path_edges(5) + [(6, 1), (6, 3), (6, 5)])
    (bridge,) = tutte_bridges(g, q)
    claw = qclaw_from_bridge(g, q, bridge)
    assert claw.center == 6 and check_qclaw(g, q, claw) == ""
    g = Graph.from_edges(8, path_edges(5) + [(6, 7), (7, 8), (6, 1), (7, 3), (8, 5)])
    (bridge,) = tutte_bridges(g, q)
    claw = qclaw_from_bridge(g, q, bridge)
    assert check_qclaw(g, q, claw) == ""
    with pytest.raises(PreconditionError):
        qclaw_from_bridge(g, q, TutteBridge((6,), (1, 3)))


def test_diamond_from_bridge_cycle_examples():
    edges = path_edges(9)
    hang_theta(edges, 10, 2, 8)
    g = Graph.from_edges(13, edges)
    q = tuple(range(1, 10))
    (bridge,) = [b for b in tutte_bridges(g, q) if b.interior]
    model = diamond_from_bridge_cycle(g, q, bridge)
    assert is_valid_diamond(g, model)
    assert set(model.vertices()) <= set(bridge.interior) | set(range(2, 9))
    # a K4 sitting on two consecutive path vertices
    k4 = Graph.from_edges(7, path_edges(5) + [(2, 6), (2, 7), (3, 6), (3, 7), (6, 7)])
    (bridge,) = tutte_bridges(k4, range(1, 6))
    with pytest.raises(PreconditionError):
        diamond_from_bridge_cycle(k4, tuple(range(1, 6)), bridge)


def test_diamond_from_bridge_pair_examples():
    q = tuple(range(1, 11))
    overlapping = Graph.from_edges(12, path_edges(10) + [(2, 11), (11, 6), (4, 12), (12, 8)])
    b1, b2 = tutte_bridges(overlapping, q)
    assert is_valid_diamond(overlapping, diamond_from_bridge_pair(overlapping, q, b1, b2))
    nested = Graph.from_edges(13, path_edges(10) + [(2, 11), (11, 8), (2, 12), (12, 13), (13, 8)])
    b1, b2 = tutte_bridges(nested, q)
    assert is_valid_diamond(nested, diamond_from_bridge_pair(nested, q, b1, b2))
    apart = Graph.from_edges(12, path_edges(10) + [(1, 11), (11, 3), (5, 12), (12, 8)])
    b1, b2 = tutte_bridges(apart, q)
    with pytest.raises(PreconditionError):
        diamond_from_bridge_pair(apart, q, b1, b2)


def test_bridge_constructions_random():
    rng = random.Random(4)
    counts = {"claw": 0, "cycle": 0, "pair": 0}
    for _ in range(3000):
        g = random_graph(rng, rng.randint(6, 16), rng.choice([0.15, 0.2, 0.3]))
        q = _random_path(g, rng)
        if not q or len(q) < 3:
            continue
        assert is_induced_path(g, q)
        pos = {v: i for i, v in enumerate(q)}
        found = tutte_bridges(g, q)
        for b in found:
            if len(b.attachments) >= 3:
                assert check_qclaw(g, q, qclaw_from_bridge(g, q, b)) == ""
                counts["claw"] += 1
            elif len(b.attachments) == 2 and not g.has_edge(*b.attachments) and bridge_cycle_two_paths(g, b):
                assert is_valid_diamond(g, diamond_from_bridge_cycle(g, q, b))
                counts["cycle"] += 1
        two = [b for b in found if len(b.attachments) == 2]
        for i, b1 in enumerate(two):
            for b2 in two[i + 1:]:
                (a1, e1), (a2, e2) = (sorted(pos[v] for v in b.attachments) for b in (b1, b2))
                if max(a1, a2) < min(e1, e2):
                    assert is_valid_diamond(g, diamond_from_bridge_pair(g, q, b1, b2))
                    counts["pair"] += 1
    assert all(counts.values())


# ---------------------------------------------------------------------------
# claw families


def _claw_family(rng: random.Random, length: int, triples) -> tuple[Graph, list[QClaw]]:
    edges = path_edges(length)
    n = length
    claws = []
    for triple in triples:
        n += 1
        center = n
        legs = []
        for leaf in triple:
            prev, leg = center, [center]
            for _ in range(rng.randint(0, 2)):
                n += 1
                edges.append((prev, n))
                prev = n
                leg.append(n)
            edges.append((prev, leaf))
            leg.append(leaf)
            legs.append(tuple(leg))
        claws.append(QClaw(center, tuple(legs)))
    return Graph.from_edges(n, edges), claws


def test_diamonds_from_separated_claws():
    rng = random.Random(5)
    q = tuple(range(1, 40))
    for k, count in ((1, 3), (3, 9)):
        g, claws = _claw_family(rng, 39, [(4 * i + 1, 4 * i + 2, 4 * i + 3) for i in range(count)])
        models = diamonds_from_qclaws(g, q, claws, k, RELAXED)
        assert len(models) == k and disjoint(models) and all(is_valid_diamond(g, m) for m in models)


def test_diamonds_from_nested_and_interleaved_claws():
    rng = random.Random(6)
    q = tuple(range(1, 31))
    nested = [(1, 15, 30), (2, 14, 29), (3, 13, 28)]
    interleaved = [(1 + i, 11 + i, 21 + i) for i in range(3)]
    for triples in (nested, interleaved):
        g, claws = _claw_family(rng, 30, triples)
        (model,) = diamonds_from_qclaws(g, q, claws, 1, RELAXED)
        assert is_valid_diamond(g, model)


def test_diamonds_from_random_claw_families():
    rng = random.Random(7)
    built = 0
    for _ in range(300):
        length = rng.randint(12, 40)
        spots = list(range(1, length + 1))
        rng.shuffle(spots)
        triples = [tuple(sorted(spots[3 * i:3 * i + 3])) for i in range(min(rng.randint(3, 9), length // 3))]
        g, claws = _claw_family(rng, length, triples)
        q = tuple(range(1, length + 1))
        for k in (1, 2, 3):
            try:
                models = diamonds_from_qclaws(g, q, claws, k, RELAXED)
            except NotEnoughStructure:
                continue
            built += 1
            assert len(models) == k and disjoint(models) and all(is_valid_diamond(g, m) for m in models)
    assert built > 30


def test_diamonds_from_qclaws_rejects_overlap():
    g, claws = _claw_family(random.Random(0), 10, [(1, 3, 5)])
    with pytest.raises(PreconditionError):
        diamonds_from_qclaws(g, tuple(range(1, 11)), claws + claws, 1, RELAXED)


# ---------------------------------------------------------------------------
# path and model propositions


def test_cover_or_pack_on_bare_path():
    g = Graph.from_edges(8, path_edges(8))
    out = cover_or_pack_on_path(g, tuple(range(1, 9)), 2)
    assert not out.is_packing and out.cover == ()


def test_cover_or_pack_on_path_two_thetas():
    edges = path_edges(20)
    nxt = hang_theta(edges, 21, 2, 6)
    hang_theta(edges, nxt, 12, 16)
    g = Graph.from_edges(28, edges)
    out = cover_or_pack_on_path(g, tuple(range(1, 21)), 2, RELAXED)
    assert out.is_packing and len(out.models) == 2 and disjoint(out.models)
    assert all(is_valid_diamond(g, m) for m in out.models)


def test_cover_or_pack_on_path_single_theta():
    edges = path_edges(8)
    hang_theta(edges, 9, 2, 6)
    g = Graph.from_edges(12, edges)
    p = tuple(range(1, 9))
    for policy in (DEFAULT_POLICY, RELAXED):
        out = cover_or_pack_on_path(g, p, 2, policy)
        assert not out.is_packing and len(out.cover) <= policy.g2(2)
        assert not has_diamond_meeting(g, out.cover, p)


def test_cover_or_pack_on_path_windowed_completeness():
    rng = random.Random(8)
    for _ in range(250):
        g = random_graph(rng, rng.randint(5, 10), rng.uniform(0.2, 0.45))
        p = _random_path(g, rng)
        if not p:
            continue
        for k in (1, 2):
            out = cover_or_pack_on_path(g, p, k, RELAXED)
            if out.is_packing:
                assert len(out.models) >= k and disjoint(out.models)
                assert all(is_valid_diamond(g, m) for m in out.models)
            else:
                assert len(out.cover) <= RELAXED.g2(k)
                assert not has_diamond_meeting(g, out.cover, p)


def test_given_model_on_the_diamond_itself():
    g = Graph.from_edges(4, [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4)])
    model = detect_diamond(g)
    # one diamond already answers k=1; k=2 must fall back to a cover hitting it
    out = cover_or_pack_given_model(g, model, 1)
    assert out.is_packing and is_valid_diamond(g, out.models[0])
    out = cover_or_pack_given_model(g, model, 2)
    assert not out.is_packing and 0 < len(out.cover) <= DEFAULT_POLICY.g1(2)
    assert detect_diamond(g, within=g.all_mask & ~to_mask(out.cover)) is None


def test_given_model_with_planted_diamonds():
    # a long theta whose direct route carries two small thetas
    edges = path_edges(20) + [(1, 21), (21, 20), (1, 22), (22, 23), (23, 20)]
    nxt = hang_theta(edges, 24, 3, 7)
    hang_theta(edges, nxt, 12, 16)
    g = Graph.from_edges(31, edges)
    model = detect_diamond(g, within=to_mask(range(1, 24)))
    assert model is not None and set(model.vertices()) >= set(range(1, 21))
    out = cover_or_pack_given_model(g, model, 2, RELAXED)
    assert out.is_packing and disjoint(out.models[:2]) and all(is_valid_diamond(g, m) for m in out.models)


def test_given_model_precondition():
    two = Graph.from_edges(8, [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (5, 6), (5, 7), (5, 8), (6, 7), (6, 8)])
    model = detect_diamond(two, within=to_mask([1, 2, 3, 4]))
    with pytest.raises(PreconditionError):
        cover_or_pack_given_model(two, model, 1)


def test_given_model_cover_branch_random():
    rng = random.Random(9)
    seen = 0
    for _ in range(400):
        g = random_graph(rng, rng.randint(5, 12), rng.uniform(0.2, 0.4))
        model = detect_diamond(g)
        if model is None or detect_diamond(g, within=g.all_mask & ~to_mask(model.vertices())) is not None:
            continue
        out = cover_or_pack_given_model(g, model, 2, RELAXED)
        if not out.is_packing:
            seen += 1
            assert detect_diamond(g, within=g.all_mask & ~to_mask(out.cover)) is None
    assert seen > 20


# ---------------------------------------------------------------------------
# the full solver


K4_MINUS = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4)]


@pytest.mark.parametrize("k", [1, 2, 3])
def test_solve_diamond_disjoint_copies(k):
    g = Graph.from_edges(4 * k, [(u + 4 * i, v + 4 * i) for i in range(k) for u, v in K4_MINUS])
    cert = solve_diamond(g, k)
    assert cert.is_packing and len(cert.groups) == k and verify_certificate(g, cert).ok


def test_solve_diamond_trees_and_cliques():
    tree = Graph.from_edges(7, [(1, 2), (1, 3), (2, 4), (2, 5), (3, 6), (3, 7)])
    k6 = Graph.from_edges(6, [(a, b) for a in range(1, 7) for b in range(a + 1, 7)])
    for g in (tree, k6):
        for k in (1, 2, 3):
            cert = solve_diamond(g, k)
            assert not cert.is_packing and cert.cover == ()


def test_solve_diamond_random_against_oracle():
    rng = random.Random(10)
    for _ in range(200):
        g = random_graph(rng, rng.randint(4, 12), rng.uniform(0.15, 0.5))
        nu = nu_exact(g, DIAMOND).size
        for k in (1, 2):
            cert = solve_diamond(g, k)
            assert verify_certificate(g, cert).ok
            if cert.is_packing:
                assert nu >= k and all(is_valid_diamond(g, m) for m in cert.models)
            else:
                assert detect_diamond(g, within=g.all_mask & ~to_mask(cert.cover)) is None
                assert len(cert.cover) <= DEFAULT_POLICY.g(k)
            if nu < k:
                assert not cert.is_packing


def test_solve_diamond_policies_and_claw_families():
    rng = random.Random(11)
    for _ in range(300):
        g = random_graph(rng, rng.randint(4, 16), rng.choice([0.15, 0.25, 0.35]))
        for policy in (DEFAULT_POLICY, RELAXED):
            for k in (1, 2, 3):
                cert = solve_diamond(g, k, policy)
                assert verify_certificate(g, cert).ok
    for _ in range(60):
        length = rng.randint(12, 30)
        g, _ = _claw_family(rng, length, [(i, i + 2, i + 4) for i in range(1, length - 4, 6)])
        for k in (1, 2, 3):
            cert = solve_diamond(g, k, RELAXED)
            assert verify_certificate(g, cert).ok
            if not cert.is_packing:
                assert detect_diamond(g, within=g.all_mask & ~to_mask(cert.cover)) is None


def test_from_mask_round_trip_used_by_models():
    assert from_mask(to_mask([3, 1, 2])) == (1, 2, 3)
