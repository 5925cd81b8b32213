from __future__ import annotations

import itertools
import random

import pytest

from corpus import random_graph
from oracles import adjacency, is_diamond_subdivision, is_pan_subdivision
from pancover.certificate import verify_certificate
from pancover.detect import DIAMOND, PAN1, PAN2, BudgetExceeded, Pattern, PreconditionError, find_model, verify_model
from pancover.graph import Graph, to_mask
from pancover.oracle import duality, is_star_forest, nu_exact, solve_star_forest, tau_exact

SHAPES = {
    "pan1": lambda adj, s: is_pan_subdivision(adj, s, 1),
    "pan2": lambda adj, s: is_pan_subdivision(adj, s, 2),
    "diamond": is_diamond_subdivision,
}
P3 = Pattern("p3", Graph.from_edges(3, [(1, 2), (2, 3)]))
SPIDER = Pattern("spider", Graph.from_edges(7, [(1, 2), (2, 3), (1, 4), (4, 5), (1, 6), (6, 7)]))


def shape_sets(g: Graph, name: str) -> list[frozenset[int]]:
    adj = adjacency(g)
    accepts = SHAPES[name]
    return [frozenset(s) for r in range(4, g.n + 1)
            for s in itertools.combinations(range(1, g.n + 1), r) if accepts(adj, s)]


def brute_nu(sets: list[frozenset[int]]) -> int:
    best = 0

    def grow(start: int, used: frozenset[int], count: int) -> None:
        nonlocal best
        best = max(best, count)
        for j in range(start, len(sets)):
            if not sets[j] & used:
                grow(j + 1, used | sets[j], count + 1)

    grow(0, frozenset(), 0)
    return best


def brute_survives(sets: list[frozenset[int]], removed) -> bool:
    removed = set(removed)
    return any(not s & removed for s in sets)


def test_examples():
    two = Graph.from_edges(8, [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (5, 6), (5, 7), (5, 8), (6, 7), (6, 8)])
    assert nu_exact(two, DIAMOND).size == 2
    c5 = Graph.from_edges(5, [(i, i % 5 + 1) for i in range(1, 6)])
    assert nu_exact(c5, PAN1).size == 0
    pan = Graph.from_edges(4, [(1, 2), (2, 3), (2, 4), (3, 4)])
    assert tau_exact(pan, PAN1).size == 1
    tree = Graph.from_edges(5, [(1, 2), (2, 3), (2, 4), (4, 5)])
    assert tau_exact(tree, DIAMOND).size == 0


@pytest.mark.parametrize("pattern", [PAN1, PAN2, DIAMOND], ids=lambda p: p.name)
def test_nu_and_tau_against_subset_enumeration(pattern):
    rng = random.Random({"pan1": 1, "pan2": 2, "diamond": 3}[pattern.name])
    for _ in range(200):
        g = random_graph(rng, rng.randint(4, 10), rng.choice([0.2, 0.35, 0.5]))
        sets = shape_sets(g, pattern.name)
        packed = nu_exact(g, pattern)
        assert packed.size == brute_nu(sets)
        assert all(verify_model(g, pattern, m) for m in packed.models)
        seen = [v for m in packed.models for v in m.vertices()]
        assert len(seen) == len(set(seen))
        cover = tau_exact(g, pattern)
        assert cover.size == len(cover.cover) >= packed.size
        assert not brute_survives(sets, cover.cover)
        if cover.size:
            for smaller in itertools.combinations(g.vertices(), cover.size - 1):
                assert brute_survives(sets, smaller)


def test_budget_is_explicit():
    g = random_graph(random.Random(4), 12, 0.5)
    with pytest.raises(BudgetExceeded):
        nu_exact(g, DIAMOND, budget=5)
    with pytest.raises(BudgetExceeded):
        tau_exact(g, DIAMOND, budget=5)


def test_duality_report_format():
    g = Graph.from_edges(8, [(1, 2), (2, 3), (3, 4), (2, 4), (5, 6), (6, 7), (7, 8), (6, 8)])
    report = duality(g, PAN1)
    assert report.nu == 2 and report.tau == 2
    text = report.format()
    lines = text.splitlines()
    assert lines[0] == "nu 2" and lines[1] == "tau 2"
    assert any(line.startswith("c expansions nu=") for line in lines)


def test_star_forest_recognition():
    assert is_star_forest(P3) and is_star_forest(SPIDER)
    assert not is_star_forest(PAN1)
    double = Pattern("double", Graph.from_edges(8, [(1, 2), (1, 3), (1, 4), (1, 5), (5, 6), (5, 7), (5, 8)]))
    assert not is_star_forest(double)
    with pytest.raises(PreconditionError):
        solve_star_forest(Graph.from_edges(3, [(1, 2)]), double, 1)


def test_star_forest_examples():
    g = Graph.from_edges(9, [(1, 2), (2, 3), (4, 5), (5, 6), (7, 8), (8, 9)])
    cert = solve_star_forest(g, P3, 3)
    assert cert.is_packing and len(cert.groups) == 3
    k4 = Graph.from_edges(4, [(a, b) for a in range(1, 5) for b in range(a + 1, 5)])
    cert = solve_star_forest(k4, P3, 1)
    assert not cert.is_packing and cert.cover == ()


def test_star_forest_random():
    rng = random.Random(9)
    for _ in range(150):
        g = random_graph(rng, rng.randint(5, 11), 0.25)
        for h in (P3, SPIDER):
            for k in (1, 2, 3):
                cert = solve_star_forest(g, h, k)
                assert verify_certificate(g, cert, h).ok
                if not cert.is_packing:
                    assert find_model(g, h, within=g.all_mask & ~to_mask(cert.cover)) is None
                    assert len(cert.cover) <= nu_exact(g, h).size * h.n
