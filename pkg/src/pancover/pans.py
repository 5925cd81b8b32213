"""Packing/covering of induced subdivisions of the 1-pan and the 2-pan."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .certificate import Certificate, VerificationFailed, covering, packing, verify_certificate
from .detect import (
    PanSubdivision, PreconditionError, extract_pan1, extract_pan2,
    find_min_pan, induced_cycle_keeping_marked_edge,
)
from .graph import Graph, MultiGraph, r_neighborhood, to_mask
from .policy import DEFAULT_POLICY, ThresholdPolicy
from .toolbox import InsufficientGraph, gallai_apaths, simonovits_pack


class ThinningExhausted(RuntimeError):
    """Too few A-paths survive the distance thinning."""


class PolicyTooWeak(RuntimeError):
    """The packing branch fired with thresholds too small for the packing
    lemma to apply (only possible under a non-default policy)."""


def cycle_dominators(g: Graph, cycle: Sequence[int]) -> tuple[int, ...]:
    """Vertices outside ``cycle`` adjacent to all of it."""
    cmask = to_mask(cycle)
    return tuple(v for v in g.vertices() if not cmask >> v & 1 and g.masks[v] & cmask == cmask)


def restrict(g: Graph, alive: int) -> Graph:
    """Same vertex ids; vertices outside ``alive`` become isolated."""
    masks = tuple(m & alive if alive >> v & 1 else 0 for v, m in enumerate(g.masks))
    return Graph(g.n, masks)


def _without_cycle_edges(g: Graph, cycle: Sequence[int]) -> Graph:
    masks = list(g.masks)
    m = len(cycle)
    for i, v in enumerate(cycle):
        w = cycle[(i + 1) % m]
        masks[v] &= ~(1 << w)
        masks[w] &= ~(1 << v)
    return Graph(g.n, tuple(masks))


def _cycle_distance(pos_a: int, pos_b: int, length: int) -> int:
    d = abs(pos_a - pos_b)
    return min(d, length - d)


def thin_paths(cycle: Sequence[int], paths: Sequence[Sequence[int]], gap: int) -> list[tuple[int, ...]]:
    """Keep a path, discard every path with an endpoint within ``gap`` of its
    endpoints along the cycle; sweep in order of smaller endpoint position."""
    pos = {v: i for i, v in enumerate(cycle)}
    m = len(cycle)
    order = sorted(paths, key=lambda p: (min(pos[p[0]], pos[p[-1]]), max(pos[p[0]], pos[p[-1]])))
    kept: list[tuple[int, ...]] = []
    for p in order:
        ends = (pos[p[0]], pos[p[-1]])
        if all(_cycle_distance(a, b, m) > gap
               for q in kept for a in ends for b in (pos[q[0]], pos[q[-1]])):
            kept.append(tuple(p))
    return kept


def _union_cycles(cycle: Sequence[int], paths: Sequence[Sequence[int]], k: int,
                  policy: ThresholdPolicy) -> list[tuple[int, ...]]:
    """Disjoint cycles of C plus the paths, as vertex sequences, none equal to C."""
    edges = [(cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle))]
    for p in paths:
        edges.extend(zip(p, p[1:]))
    n = max(max(e) for e in edges)
    multi = MultiGraph(n, tuple(edges))
    cyc_set = set(cycle)
    if k == 1:
        # any path closes a cycle with the shorter arc; it differs from C
        p = paths[0]
        pos = {v: i for i, v in enumerate(cycle)}
        i, j = sorted((pos[p[0]], pos[p[-1]]))
        inner = list(cycle[i:j + 1])
        outer = list(cycle[j:]) + list(cycle[:i + 1])
        arc = inner if len(inner) <= len(outer) else outer
        if arc[0] != p[-1]:
            arc.reverse()
        return [tuple(p) + tuple(arc[1:-1])]
    found = simonovits_pack(multi, k, policy, check_size=False)
    out = []
    for c in found:
        if set(c.vertices) == cyc_set:
            raise AssertionError("a packed cycle equals C although k >= 2")
        out.append(c.vertices)
    return out


def pack_pan1_from_apaths(g: Graph, h: PanSubdivision, paths: Sequence[Sequence[int]], k: int,
                          policy: ThresholdPolicy = DEFAULT_POLICY) -> list[PanSubdivision]:
    """``k`` disjoint induced 1-pan subdivisions from many disjoint V(C)-paths of g - E(C)."""
    cycle = h.cycle
    if h.p != 1 or len(cycle) < 5:
        raise PreconditionError("need a minimum 1-pan subdivision with |C| >= 5")
    if len(paths) < policy.apaths1(k):
        raise PreconditionError(f"need at least apaths1({k}) = {policy.apaths1(k)} paths")
    thinned = thin_paths(cycle, paths, 2)
    if 9 * len(thinned) < policy.apaths1(k):
        raise ThinningExhausted(f"{len(thinned)} paths survive thinning")
    cset = set(cycle)
    c_edges = [(cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle))]
    pans = []
    for raw in _union_cycles(cycle, thinned, k, policy):
        u_cyc = induced_cycle_keeping_marked_edge(g, raw, c_edges)
        pans.append(_pan1_from_cycle(g, cycle, cset, u_cyc))
    return pans


def _pan1_from_cycle(g: Graph, cycle: Sequence[int], cset: set[int], u_cyc: Sequence[int]) -> PanSubdivision:
    m = len(u_cyc)
    pos = {v: i for i, v in enumerate(cycle)}
    for seq in (tuple(u_cyc), tuple(reversed(u_cyc))):
        for i in range(m):
            u, v, w = seq[i], seq[(i + 1) % m], seq[(i + 2) % m]
            if u in cset or v not in cset or w not in cset:
                continue
            pv = pos[v]
            nb = (cycle[(pv - 1) % len(cycle)], cycle[(pv + 1) % len(cycle)])
            q = nb[0] if nb[1] == w else nb[1]
            # z w v u ... so that q sees position 2 only among the first four
            rot = seq[(i + 1) % m:] + seq[:(i + 1) % m]     # v w z ... u
            ordered = tuple(reversed(rot))                   # u ... z w v
            ordered = ordered[-3:] + ordered[:-3]            # z w v u ...
            return extract_pan1(g, ordered, q)
    raise AssertionError("no consecutive u v w with vw on C and u off C")


def pack_pan2_from_apaths(g: Graph, h: PanSubdivision, paths: Sequence[Sequence[int]], k: int,
                          policy: ThresholdPolicy = DEFAULT_POLICY) -> list[PanSubdivision]:
    """``k`` disjoint induced 2-pan subdivisions from many disjoint V(C)-paths of g - E(C) - D."""
    cycle = h.cycle
    if h.p != 2 or len(cycle) < 11:
        raise PreconditionError("need a minimum 2-pan subdivision with |C| >= 11")
    if len(paths) < policy.apaths2(k):
        raise PreconditionError(f"need at least apaths2({k}) = {policy.apaths2(k)} paths")
    dom = to_mask(cycle_dominators(g, cycle))
    if any(to_mask(p) & dom for p in paths):
        raise PreconditionError("paths must avoid the cycle dominators")
    g = restrict(g, g.all_mask & ~dom)
    thinned = thin_paths(cycle, paths, 8)
    if 33 * len(thinned) < policy.apaths2(k):
        raise ThinningExhausted(f"{len(thinned)} paths survive thinning")
    cset = set(cycle)
    c_edges = [(cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle))]
    reduced = [induced_cycle_keeping_marked_edge(g, raw, c_edges)
               for raw in _union_cycles(cycle, thinned, k, policy)]
    owner = {v: idx for idx, u in enumerate(reduced) for v in u}
    pans = []
    for idx, u_cyc in enumerate(reduced[:k]):
        pans.append(_pan2_from_cycle(g, cycle, cset, u_cyc, idx, owner))
    return pans


def _pan2_from_cycle(g: Graph, cycle: Sequence[int], cset: set[int], u_cyc: Sequence[int],
                     idx: int, owner: dict[int, int]) -> PanSubdivision:
    m = len(cycle)
    pos = {v: i for i, v in enumerate(cycle)}
    mine = set(u_cyc)
    ulen = len(u_cyc)
    upos = {v: i for i, v in enumerate(u_cyc)}
    for b in u_cyc:
        if b not in cset:
            continue
        pb = pos[b]
        for step in (1, -1):
            back = cycle[(pb - step) % m]
            if back not in mine or cycle[(pb + step) % m] in mine:
                continue  # b must end a run of U along C, with the run behind it
            run = []
            x = pb
            while True:
                x = (x + step) % m
                y = cycle[x]
                if y in owner:
                    break
                run.append(y)
            if owner.get(y) == idx or len(run) < 4:
                continue
            # abcd on U with b = t1 and c the C-neighbour behind b
            c_vert = back
            i = upos[b]
            if u_cyc[(i + 1) % ulen] == c_vert:
                seq = u_cyc[i:] + u_cyc[:i]
                seq = seq[-1:] + seq[:-1]
            else:
                seq = tuple(reversed(u_cyc[:i + 1])) + tuple(reversed(u_cyc[i + 1:]))
                seq = seq[-1:] + seq[:-1]
            return extract_pan2(g, seq, tuple(run[:4]))
    if len(owner) == ulen:
        # a single cycle: any long free run next to a run end will do
        for b in u_cyc:
            if b not in cset:
                continue
            pb = pos[b]
            for step in (1, -1):
                back = cycle[(pb - step) % m]
                run = [cycle[(pb + step * t) % m] for t in range(1, 5)]
                if back in mine and not set(run) & mine:
                    i = upos[b]
                    if u_cyc[(i + 1) % ulen] == back:
                        seq = u_cyc[i:] + u_cyc[:i]
                    else:
                        seq = tuple(reversed(u_cyc[:i + 1])) + tuple(reversed(u_cyc[i + 1:]))
                    seq = seq[-1:] + seq[:-1]
                    return extract_pan2(g, seq, tuple(run))
    raise AssertionError("no free run of four cycle vertices next to the packed cycle")


@dataclass
class _Layer:
    pan: PanSubdivision
    alive: int          # vertex mask of G_j


def _peel(g: Graph, p: int, k: int) -> list[_Layer]:
    layers: list[_Layer] = []
    alive = g.all_mask
    while len(layers) < k:
        pan = find_min_pan(g, p, within=alive)
        if pan is None:
            break
        layers.append(_Layer(pan, alive))
        alive &= ~to_mask(pan.vertices())
    return layers


def _window_sweep(g: Graph, p: int, k: int, cycle: Sequence[int], base: int, hitting: int
                  ) -> tuple[list[PanSubdivision], set[int]]:
    """Slide windows of ``p + 3`` consecutive cycle vertices; test the inner
    ``p + 1`` of them (minus the Gallai cover) together with everything off C."""
    m = len(cycle)
    cmask = to_mask(cycle)
    outside = base & ~cmask
    used: set[int] = set()
    hits: list[PanSubdivision] = []
    width = p + 3
    for i in range(m):
        window = [cycle[(i + t) % m] for t in range(width)]
        test = [v for v in window[1:-1] if not hitting >> v & 1 and base >> v & 1]
        if not test or used & set(test):
            continue
        found = find_min_pan(g, p, within=outside | to_mask(test))
        if found is None:
            continue
        hits.append(found)
        used.update(window)
        if len(hits) == k:
            break
    return hits, used


def _solve_pan(g: Graph, k: int, p: int, policy: ThresholdPolicy) -> Certificate:
    if k < 1:
        raise ValueError("k must be positive")
    name = "pan1" if p == 1 else "pan2"
    header = policy.header(k)
    layers = _peel(g, p, k)
    if len(layers) >= k:
        return packing(name, k, [layer.pan.model() for layer in layers[:k]], header)
    small = 5 if p == 1 else 12
    target = policy.apaths1(k) if p == 1 else policy.apaths2(k)
    cover: set[int] = set()
    for layer in reversed(layers):
        pan = layer.pan
        current = layer.alive & ~to_mask(cover)
        if pan.order <= small:
            cover.update(pan.vertices())
            continue
        cycle = pan.cycle
        sub = restrict(g, current)
        dom = to_mask(cycle_dominators(sub, cycle)) if p == 2 else 0
        gallai_alive = current & ~dom & ~(to_mask(pan.tail) if p == 2 else 0)
        aux = _without_cycle_edges(restrict(g, gallai_alive), cycle)
        result = gallai_apaths(aux, cycle, target)
        if result.is_packing:
            extract = pack_pan1_from_apaths if p == 1 else pack_pan2_from_apaths
            try:
                pans = extract(sub, pan, result.paths, k, policy)
            except InsufficientGraph as exc:
                raise PolicyTooWeak(f"packing extraction failed under policy {header}: {exc}") from exc
            return packing(name, k, [x.model() for x in pans], header)
        s_mask = to_mask(result.cover)
        reduced = current & ~dom & ~s_mask & ~to_mask(pan.tail)
        hits, used = _window_sweep(g, p, k, cycle, reduced, s_mask)
        if len(hits) >= k:
            return packing(name, k, [x.model() for x in hits[:k]], header)
        nearby = set(r_neighborhood(_cycle_graph(g.n, cycle), used, p)) if used else set()
        step = set(result.cover) | set(pan.tail) | nearby
        if not step & set(cycle):
            step.add(cycle[0])  # pans whose cycle is C itself
        cover |= step
    bound = k * (policy.mu1(k) if p == 1 else policy.mu2(k))
    return covering(name, k, cover, header, bound)


def _cycle_graph(n: int, cycle: Sequence[int]) -> Graph:
    m = len(cycle)
    return Graph.from_edges(n, [(cycle[i], cycle[(i + 1) % m]) for i in range(m)])


def _checked(g: Graph, cert: Certificate) -> Certificate:
    check = verify_certificate(g, cert)
    if not check.ok:
        raise VerificationFailed(check.reason)
    return cert


def solve_pan1(g: Graph, k: int, policy: ThresholdPolicy = DEFAULT_POLICY) -> Certificate:
    """``k`` disjoint induced 1-pan subdivisions, or a set meeting all of them."""
    return _checked(g, _solve_pan(g, k, 1, policy))


def solve_pan2(g: Graph, k: int, policy: ThresholdPolicy = DEFAULT_POLICY) -> Certificate:
    """``k`` disjoint induced 2-pan subdivisions, or a set meeting all of them."""
    return _checked(g, _solve_pan(g, k, 2, policy))
