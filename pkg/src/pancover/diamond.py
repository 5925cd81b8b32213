"""Packing/covering of induced subdivisions of the diamond.

The pipeline anchors on an induced path ``P``: A-claws on ``P``, Tutte bridges
holding a well-attached cycle, pairs of bridges with overlapping windows, and
finally diamonds meeting ``P`` in at most two consecutive vertices.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .certificate import Certificate, VerificationFailed, covering, packing, verify_certificate
from .detect import (
    DIAMOND, Model, PreconditionError, QClaw, check_qclaw, detect_diamond, diamond_from_qclaw,
    verify_model,
)
from .flow import fan_paths
from .graph import Graph, blocks, component_masks, from_mask, iter_bits, shortest_path, to_mask
from .pans import restrict
from .policy import DEFAULT_POLICY, ThresholdPolicy
from .toolbox import aclaw_ep, find_regular_subsequence


class NotEnoughStructure(RuntimeError):
    """The regular-subsequence search found no usable pattern under the cap."""


@dataclass(frozen=True)
class TutteBridge:
    interior: tuple[int, ...]
    attachments: tuple[int, ...]

    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted(self.interior + self.attachments))


def tutte_bridges(g: Graph, a, within: int | None = None) -> list[TutteBridge]:
    """One bridge per component of ``g - a`` (inside ``within``)."""
    alive = g.all_mask if within is None else within
    a_mask = to_mask(a) & alive
    out = []
    for comp in component_masks(g, alive & ~a_mask):
        touch = 0
        for v in iter_bits(comp):
            touch |= g.masks[v]
        out.append(TutteBridge(from_mask(comp), from_mask(touch & a_mask)))
    return out


def _bridge_graph(g: Graph, bridge: TutteBridge) -> Graph:
    """Interior plus attachments, without edges among attachments."""
    inner = to_mask(bridge.interior)
    att = to_mask(bridge.attachments)
    masks = [0] * (g.n + 1)
    for v in bridge.interior:
        masks[v] = g.masks[v] & (inner | att)
    for v in bridge.attachments:
        masks[v] = g.masks[v] & inner
    return Graph(g.n, tuple(masks))


def bridge_cycle_two_paths(g: Graph, bridge: TutteBridge) -> bool:
    """Does the bridge hold a cycle joined to both attachments by disjoint paths?

    True iff a block on the block-cut path between the attachments has at
    least three vertices.
    """
    if len(bridge.attachments) != 2:
        raise PreconditionError("bridge must have exactly two attachments")
    v, w = bridge.attachments
    if g.has_edge(v, w):
        raise PreconditionError("attachments must be non-adjacent")
    tree = blocks(_bridge_graph(g, bridge))
    route = tree.block_path(v, w)
    if route is None:
        return False
    return any(len(tree.blocks[i]) >= 3 for i in route)


def qclaw_from_bridge(g: Graph, q: Sequence[int], bridge: TutteBridge) -> QClaw:
    """A claw on ``q`` from a bridge with at least three attachments."""
    if len(bridge.attachments) < 3:
        raise PreconditionError("bridge needs at least three attachments")
    pos = {v: i for i, v in enumerate(q)}
    a, b, c = sorted(bridge.attachments, key=lambda v: pos[v])[:3]
    inner = to_mask(bridge.interior)

    def foot(x: int) -> int:
        return min(iter_bits(g.masks[x] & inner))

    fa, fb, fc = foot(a), foot(b), foot(c)
    ab = shortest_path(g, fa, 1 << fb, inner) if fa != fb else (fa,)
    joint = shortest_path(g, fc, to_mask(ab), inner) if fc not in ab else (fc,)
    center = joint[-1]
    i = ab.index(center)
    legs = (
        tuple(reversed(ab[:i + 1])) + (a,),
        ab[i:] + (b,),
        tuple(reversed(joint)) + (c,),
    )
    claw = QClaw(center, legs)
    err = check_qclaw(g, q, claw)
    if err:
        raise AssertionError(f"bridge claw invalid: {err}")
    return claw


def _subpath(q: Sequence[int], x: int, y: int) -> tuple[int, ...]:
    pos = {v: i for i, v in enumerate(q)}
    i, j = sorted((pos[x], pos[y]))
    return tuple(q[i:j + 1])


def _checked_model(g: Graph, model: Model | None, where: str) -> Model:
    if model is None:
        raise AssertionError(f"no diamond found {where}")
    check = verify_model(g, DIAMOND, model)
    if not check.ok:
        raise AssertionError(f"invalid diamond {where}: {check.condition}")
    return model


def diamond_from_bridge_cycle(g: Graph, q: Sequence[int], bridge: TutteBridge) -> Model:
    """Diamond inside the bridge plus the subpath of ``q`` between its attachments.

    Existence is guaranteed by the hypotheses; the model is located by the
    detector restricted to that vertex set.
    """
    if not bridge_cycle_two_paths(g, bridge):
        raise PreconditionError("bridge has no cycle reachable by two disjoint paths")
    sub = _subpath(q, *bridge.attachments)
    found = detect_diamond(g, within=to_mask(bridge.interior) | to_mask(sub))
    return _checked_model(g, found, "in a bridge with a cycle")


def _ends(q_pos: dict[int, int], bridge: TutteBridge) -> tuple[int, int]:
    i, j = sorted(q_pos[v] for v in bridge.attachments)
    return i, j


def diamond_from_bridge_pair(g: Graph, q: Sequence[int], first: TutteBridge, second: TutteBridge) -> Model:
    """Diamond from two two-attachment bridges whose windows on ``q`` share an edge.

    With ``a1 <= a2``: the path ``x1 - q[a1..a2] - x2`` is induced, and ``q[j]``
    with ``j = min(b1, b2)`` reaches it by three disjoint paths.
    """
    q = tuple(q)
    pos = {v: i for i, v in enumerate(q)}
    for br in (first, second):
        if len(br.attachments) != 2:
            raise PreconditionError("each bridge must have exactly two attachments")
    (a1, b1), (a2, b2) = _ends(pos, first), _ends(pos, second)
    if (a1, b1) > (a2, b2):
        first, second = second, first
        (a1, b1), (a2, b2) = (a2, b2), (a1, b1)
    if not max(a1, a2) < min(b1, b2):
        raise PreconditionError("windows must share an edge")

    def route(br: TutteBridge, lo: int, hi: int) -> tuple[int, ...]:
        inner = to_mask(br.interior)
        x = min(iter_bits(g.masks[q[lo]] & inner))
        path = shortest_path(g, x, g.masks[q[hi]] & inner, inner)
        return path  # from the neighbour of q[lo] to a neighbour of q[hi]

    r1, r2 = route(first, a1, b1), route(second, a2, b2)
    base = (r1[0],) + q[a1:a2 + 1] + (r2[0],)
    j = min(b1, b2)
    back = tuple(q[t] for t in range(j, a2 - 1, -1))
    if b1 <= b2:
        leg1 = (q[j],) + tuple(reversed(r1))
        leg2 = q[j:b2 + 1] + tuple(reversed(r2))
    else:
        leg1 = q[j:b1 + 1] + tuple(reversed(r1))
        leg2 = (q[j],) + tuple(reversed(r2))
    claw = QClaw(q[j], (back, leg1, leg2))
    err = check_qclaw(g, base, claw)
    if err:
        raise AssertionError(f"bridge-pair claw invalid: {err}")
    return _checked_model(g, diamond_from_qclaw(g, base, claw), "from a bridge pair")


# ---------------------------------------------------------------------------
# families of structures on the path


@dataclass(frozen=True)
class _Structure:
    """Something hanging on the path: its vertices and its positions on the path."""

    vertices: tuple[int, ...]
    positions: tuple[int, ...]


def _diamond_in(g: Graph, q: Sequence[int], vertex_set: int, center_first: Sequence[int]) -> Model:
    """A diamond inside ``vertex_set`` via a claw on ``q``; detector as backstop."""
    qmask = to_mask(q)
    order = list(center_first) + [v for v in iter_bits(vertex_set & ~qmask) if v not in center_first]
    for center in order:
        if qmask >> center & 1:
            continue
        legs = fan_paths(g, center, qmask, 3, within=vertex_set)
        if len(legs) == 3:
            claw = QClaw(center, tuple(legs))
            if not check_qclaw(g, q, claw):
                return _checked_model(g, diamond_from_qclaw(g, q, claw), "from a crossing claw")
    found = detect_diamond(g, within=vertex_set)
    if found is None:
        raise NotEnoughStructure("crossing construction found no diamond")
    return _checked_model(g, found, "in a crossing group")


def _separated(items: Sequence[_Structure], k: int) -> list[_Structure] | None:
    """``k`` items with pairwise disjoint spans on the path, picked by earliest right end."""
    picked: list[_Structure] = []
    last = -1
    for item in sorted(items, key=lambda s: (max(s.positions), min(s.positions))):
        if min(item.positions) > last:
            picked.append(item)
            last = max(item.positions)
            if len(picked) == k:
                return picked
    return None


def _pack_from_structures(g: Graph, path: Sequence[int], items: Sequence[_Structure], arity: int,
                          k: int, per_item, policy: ThresholdPolicy, partition: bool = True) -> list[Model]:
    """Shared regular-partition step: order 1 gives one diamond per item,
    higher order groups consecutive triples across the first two parts.

    Items whose spans are already pairwise disjoint skip the partition; each
    diamond stays inside its item plus its span.
    """
    path = tuple(path)
    spread = _separated(items, k)
    if spread is not None:
        return [per_item(item) for item in spread]
    if not partition:
        raise NotEnoughStructure("too few structures for a regular partition")
    seq = [tuple(sorted(s.positions)) for s in items]
    found = find_regular_subsequence(seq, arity, 3 * k, cap=max(len(seq), policy.ncap(arity, 3 * k)),
                                     interval=(0, len(path) - 1))
    if found is None:
        raise NotEnoughStructure(f"no regular subsequence of length {3 * k}")
    picked, part = found
    chosen = [items[i] for i in picked]
    models = []
    if part.order == 1:
        for item in chosen[:k]:
            models.append(per_item(item))
        return models
    (lo1, hi1, _), (lo2, hi2, _) = part.parts[0], part.parts[1]
    for t in range(k):
        triple = chosen[3 * t:3 * t + 3]
        in1 = [p for s in triple for p in s.positions if lo1 <= p <= hi1]
        in2 = [p for s in triple for p in s.positions if lo2 <= p <= hi2]
        s_path = path[min(in1):max(in1) + 1]
        r_path = path[min(in2):max(in2) + 1]
        mask = to_mask(s_path) | to_mask(r_path)
        for s in triple:
            mask |= to_mask(s.vertices)
        middle = [path[p] for p in triple[1].positions if lo2 <= p <= hi2]
        models.append(_diamond_in(g, s_path, mask, middle))
    return models


def _disjoint(models: Sequence[Model]) -> bool:
    seen = 0
    for m in models:
        mask = to_mask(m.vertices())
        if mask & seen:
            return False
        seen |= mask
    return True


def diamonds_from_qclaws(g: Graph, q: Sequence[int], claws: Sequence[QClaw], k: int,
                         policy: ThresholdPolicy = DEFAULT_POLICY) -> list[Model]:
    """``k`` disjoint diamonds from disjoint claws on the induced path ``q``."""
    q = tuple(q)
    pos = {v: i for i, v in enumerate(q)}
    seen = 0
    for claw in claws:
        err = check_qclaw(g, q, claw)
        if err:
            raise PreconditionError(f"invalid claw: {err}")
        mask = to_mask(claw.vertices())
        if mask & seen:
            raise PreconditionError("claws must be pairwise disjoint")
        seen |= mask
    items = [_Structure(claw.vertices(), tuple(sorted(pos[x] for x in claw.leaves()))) for claw in claws]
    by_vertices = {item.vertices: claw for item, claw in zip(items, claws)}

    def one(item: _Structure) -> Model:
        window = q[item.positions[0]:item.positions[-1] + 1]
        return _checked_model(g, diamond_from_qclaw(g, window, by_vertices[item.vertices]), "from a claw")

    models = _pack_from_structures(g, q, items, 3, k, one, policy)
    if not _disjoint(models):
        raise AssertionError("claw diamonds overlap")
    return models


# ---------------------------------------------------------------------------
# the path proposition


@dataclass(frozen=True)
class PathOutcome:
    models: tuple[Model, ...] | None
    cover: tuple[int, ...] | None
    stages: tuple[tuple[str, int], ...] = ()

    @property
    def is_packing(self) -> bool:
        return self.models is not None


def _two_attachment_bridges(g: Graph, path: Sequence[int], alive: int) -> list[TutteBridge]:
    return [b for b in tutte_bridges(g, [v for v in path if alive >> v & 1], alive)
            if len(b.attachments) == 2]


def cover_or_pack_on_path(g: Graph, path: Sequence[int], k: int,
                          policy: ThresholdPolicy = DEFAULT_POLICY,
                          within: int | None = None) -> PathOutcome:
    """``k`` disjoint diamonds, or a set meeting every diamond that meets ``path``."""
    path = tuple(path)
    alive = g.all_mask if within is None else within
    if to_mask(path) & ~alive:
        raise PreconditionError("path must lie inside the working vertex set")
    pos = {v: i for i, v in enumerate(path)}
    stages = []
    l3 = 3 * k

    # stage 1: claws on the path
    target = policy.ncap(3, l3)
    h0 = restrict(g, alive)
    res = aclaw_ep(h0, path, target, cover_limit=policy.aclaw_cover(target))
    if res.is_packing:
        try:
            models = diamonds_from_qclaws(h0, path, res.claws, k, policy)
            return PathOutcome(tuple(models), None, (("claws", len(res.claws)),))
        except NotEnoughStructure:
            pass
    x1 = set(res.hitting)
    stages.append(("claws", len(x1)))
    alive1 = alive & ~to_mask(x1)
    h1 = restrict(g, alive1)

    # stage 2: bridges carrying a cycle reachable by two disjoint paths
    chosen: list[TutteBridge] = []
    used = 0
    for br in _two_attachment_bridges(h1, path, alive1):
        v, w = br.attachments
        if abs(pos[v] - pos[w]) == 1 or not _span_alive(path, pos, br, alive1):
            continue
        mask = to_mask(br.vertices())
        if mask & used or not bridge_cycle_two_paths(h1, br):
            continue
        chosen.append(br)
        used |= mask
    if chosen:
        items = [_Structure(b.vertices(), tuple(sorted(pos[x] for x in b.attachments))) for b in chosen]
        lookup = {item.vertices: b for item, b in zip(items, chosen)}
        try:
            models = _pack_from_structures(
                h1, path, items, 2, k, lambda it: diamond_from_bridge_cycle(h1, path, lookup[it.vertices]), policy,
                partition=len(chosen) >= policy.ncap(2, l3))
            if _disjoint(models):
                return PathOutcome(tuple(models), None, tuple(stages) + (("cycle-bridges", len(chosen)),))
        except NotEnoughStructure:
            pass
    x2 = {v for b in chosen for v in b.attachments}
    stages.append(("cycle-bridges", len(x2)))
    alive2 = alive1 & ~to_mask(x2)
    h2 = restrict(g, alive2)

    # stage 3: pairs of bridges whose windows share an edge
    two = [b for b in _two_attachment_bridges(h2, path, alive2) if _span_alive(path, pos, b, alive2)]
    pairs: list[tuple[TutteBridge, TutteBridge]] = []
    used = 0
    for i, b1 in enumerate(two):
        if to_mask(b1.vertices()) & used:
            continue
        lo1, hi1 = _ends(pos, b1)
        for b2 in two[i + 1:]:
            lo2, hi2 = _ends(pos, b2)
            mask = to_mask(b1.vertices()) | to_mask(b2.vertices())
            if max(lo1, lo2) < min(hi1, hi2) and not mask & used:
                pairs.append((b1, b2))
                used |= mask
                break
    if pairs:
        by_type: dict[int, list[tuple[TutteBridge, TutteBridge]]] = {}
        for b1, b2 in pairs:
            by_type.setdefault(len(set(b1.attachments) | set(b2.attachments)), []).append((b1, b2))
        arity, group = max(by_type.items(), key=lambda kv: (len(kv[1]), -kv[0]))
        items = [_Structure(tuple(sorted(set(b1.vertices()) | set(b2.vertices()))),
                            tuple(sorted(pos[x] for x in set(b1.attachments) | set(b2.attachments))))
                 for b1, b2 in group]
        lookup = {item.vertices: pair for item, pair in zip(items, group)}
        try:
            models = _pack_from_structures(
                h2, path, items, arity, k,
                lambda it: diamond_from_bridge_pair(h2, path, *lookup[it.vertices]), policy,
                partition=len(group) >= policy.ncap(4, l3) and len(pairs) >= 4 * policy.ncap(4, l3))
            if _disjoint(models):
                return PathOutcome(tuple(models), None, tuple(stages) + (("bridge-pairs", len(pairs)),))
        except NotEnoughStructure:
            pass
    x3 = {v for b1, b2 in pairs for v in b1.attachments + b2.attachments}
    stages.append(("bridge-pairs", len(x3)))
    alive3 = alive2 & ~to_mask(x3)

    # stage 4: diamonds meeting the path in at most two consecutive vertices
    windows = _windows(path, alive3)
    bridges = tutte_bridges(restrict(g, alive3), [v for v in path if alive3 >> v & 1], alive3)
    hits: list[Model] = []
    taken = 0
    x4: set[int] = set()
    for win in windows:
        test = _window_graph(win, bridges) & ~taken
        found = detect_diamond(g, within=test)
        if found is None:
            continue
        hits.append(found)
        taken |= to_mask(found.vertices())
        x4.update(win)
        if len(hits) == k:
            return PathOutcome(tuple(hits), None, tuple(stages) + (("windows", len(hits)),))
    for win in windows:
        if x4.issuperset(win):
            continue
        test = _window_graph(win, bridges) & ~to_mask(x4)
        if detect_diamond(g, within=test) is not None:
            x4.update(win)
    stages.append(("windows", len(x4)))
    return PathOutcome(None, tuple(sorted(x1 | x2 | x3 | x4)), tuple(stages))


def _span_alive(path: Sequence[int], pos: dict[int, int], br: TutteBridge, alive: int) -> bool:
    lo, hi = _ends(pos, br)
    return not to_mask(path[lo:hi + 1]) & ~alive


def _windows(path: Sequence[int], alive: int) -> list[tuple[int, ...]]:
    out = []
    for i, v in enumerate(path):
        if not alive >> v & 1:
            continue
        if i + 1 < len(path) and alive >> path[i + 1] & 1:
            out.append((v, path[i + 1]))
        elif not (i > 0 and alive >> path[i - 1] & 1):
            out.append((v,))
    return out


def _window_graph(window: Sequence[int], bridges: Sequence[TutteBridge]) -> int:
    wmask = to_mask(window)
    mask = wmask
    for br in bridges:
        if to_mask(br.attachments) & wmask:
            mask |= to_mask(br.interior)
    return mask


def diamond_routes(model: Model) -> tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]:
    """Three induced paths covering a diamond model.

    The direct path joins the two degree-3 branch vertices; the other two run
    from the first branch vertex around a degree-2 branch vertex and stop one
    short of the second, so an edge between the branch vertices is no chord.
    """
    p = model.paths
    direct = p[(1, 2)]
    via3 = p[(1, 3)] + tuple(reversed(p[(2, 3)]))[1:-1]
    via4 = p[(1, 4)] + tuple(reversed(p[(2, 4)]))[1:-1]
    return direct, via3, via4


def cover_or_pack_given_model(g: Graph, model: Model, k: int,
                              policy: ThresholdPolicy = DEFAULT_POLICY,
                              within: int | None = None) -> PathOutcome:
    """Given a diamond whose removal leaves no diamond: ``k`` disjoint diamonds or a cover."""
    alive = g.all_mask if within is None else within
    if detect_diamond(g, within=alive & ~to_mask(model.vertices())) is not None:
        raise PreconditionError("removing the model must leave the graph diamond-free")
    cover: set[int] = set()
    stages = []
    for route in diamond_routes(model):
        out = cover_or_pack_on_path(g, route, k, policy, within=alive)
        if out.is_packing:
            return out
        cover.update(out.cover)
        stages.extend(out.stages)
    # Safety net: any diamond surviving the staged cover loses its route vertices.
    extra = 0
    route_mask = to_mask(model.vertices())
    while True:
        left = detect_diamond(g, within=alive & ~to_mask(cover))
        if left is None:
            break
        cover.update(from_mask(to_mask(left.vertices()) & route_mask))
        extra += 1
    if extra:
        stages.append(("backstop", extra))
    return PathOutcome(None, tuple(sorted(cover)), tuple(stages))


def solve_diamond(g: Graph, k: int, policy: ThresholdPolicy = DEFAULT_POLICY) -> Certificate:
    """``k`` disjoint induced diamond subdivisions, or a set meeting all of them."""
    if k < 1:
        raise ValueError("k must be positive")
    header = policy.header(k)
    layers: list[tuple[Model, int]] = []
    alive = g.all_mask
    while len(layers) < k:
        found = detect_diamond(g, within=alive)
        if found is None:
            break
        layers.append((found, alive))
        alive &= ~to_mask(found.vertices())
    if len(layers) >= k:
        cert = packing("diamond", k, [m for m, _ in layers[:k]], header)
    else:
        cover: set[int] = set()
        cert = None
        for model, layer_alive in reversed(layers):
            out = cover_or_pack_given_model(g, model, k, policy, within=layer_alive & ~to_mask(cover))
            if out.is_packing:
                cert = packing("diamond", k, list(out.models[:k]), header)
                break
            cover.update(out.cover)
        if cert is None:
            cert = covering("diamond", k, cover, header, k * policy.g1(k))
    check = verify_certificate(g, cert)
    if not check.ok:
        raise VerificationFailed(check.reason)
    return cert
