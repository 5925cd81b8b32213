"""Erdős–Pósa machinery shared by the solvers.

Cycle packing in cubic multigraphs, Gallai's A-path packing/covering via the
auxiliary matching graph, regular-partition subsequence search, and A-claw
packing/covering.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .detect import PreconditionError, QClaw
from .flow import fan_paths
from .graph import (
    Graph, MultiCycle, MultiGraph, component_masks, cubic_core, from_mask,
    iter_bits, shortest_cycle, shortest_path, to_mask,
)
from .matching import gallai_edmonds_deficient, matching_size, max_matching
from .policy import DEFAULT_POLICY, ThresholdPolicy

AClaw = QClaw


class InsufficientGraph(RuntimeError):
    """Peeling stalled: the input did not satisfy the packing hypothesis."""


class CoverExtractionFailed(RuntimeError):
    """No cover within the promised bound was found (a bug, never expected)."""


# ---------------------------------------------------------------------------
# cycle packing


def simonovits_pack(m: MultiGraph, k: int, policy: ThresholdPolicy = DEFAULT_POLICY,
                    check_size: bool = True) -> list[MultiCycle]:
    """``k`` vertex-disjoint cycles by repeatedly peeling a shortest cycle of the core."""
    if k < 1:
        raise ValueError("k must be positive")
    first = cubic_core(m)
    if check_size and len(first.alive) < policy.simonovits(k):
        raise PreconditionError(
            f"core has {len(first.alive)} vertices, fewer than simonovits({k}) = {policy.simonovits(k)}")
    alive = set(range(1, m.n + 1))
    cycles: list[MultiCycle] = []
    while len(cycles) < k:
        keep = [i for i, (u, v) in enumerate(m.edges) if u in alive and v in alive]
        sub = MultiGraph(m.n, tuple(m.edges[i] for i in keep))
        core = cubic_core(sub)
        cyc = shortest_cycle(core.core, to_mask(core.alive)) if core.alive else None
        if cyc is None:
            # a core-free remainder may still hold a cycle of the original
            cyc_plain = shortest_cycle(sub)
            if cyc_plain is None:
                raise InsufficientGraph(f"only {len(cycles)} disjoint cycles found, {k} requested")
            lifted = cyc_plain
        else:
            lifted = core.lift(cyc)
        cycles.append(MultiCycle(lifted.vertices, tuple(keep[e] for e in lifted.edge_ids)))
        alive -= set(lifted.vertices)
    return cycles


# ---------------------------------------------------------------------------
# A-paths


def _is_apath(g: Graph, a_mask: int, path: Sequence[int]) -> bool:
    if len(path) < 2 or len(set(path)) != len(path):
        return False
    if not (a_mask >> path[0] & 1 and a_mask >> path[-1] & 1):
        return False
    if to_mask(path[1:-1]) & a_mask:
        return False
    return all(g.has_edge(x, y) for x, y in zip(path, path[1:]))


def check_apath_packing(g: Graph, a: Iterable[int], paths: Sequence[Sequence[int]]) -> bool:
    a_mask = to_mask(a)
    seen = 0
    for p in paths:
        if not _is_apath(g, a_mask, p):
            return False
        pm = to_mask(p)
        if pm & seen:
            return False
        seen |= pm
    return True


def has_apath(g: Graph, a: Iterable[int], removed: Iterable[int] = ()) -> bool:
    """Does ``g - removed`` contain an A-path?  Equivalent to some component
    holding two vertices of ``A``."""
    a_mask = to_mask(a) & ~to_mask(removed)
    alive = g.all_mask & ~to_mask(removed)
    return any((comp & a_mask).bit_count() >= 2 for comp in component_masks(g, alive))


@dataclass
class _Aux:
    """Gallai's auxiliary graph: A-vertices once, other vertices twice."""

    adj: list[list[int]]
    node_vertex: list[int]
    first_copy: dict[int, int] = field(default_factory=dict)
    a_node: dict[int, int] = field(default_factory=dict)


def _auxiliary(g: Graph, a_mask: int) -> _Aux:
    node_vertex: list[int] = []
    a_node: dict[int, int] = {}
    first_copy: dict[int, int] = {}
    for v in g.vertices():
        if a_mask >> v & 1:
            a_node[v] = len(node_vertex)
            node_vertex.append(v)
        else:
            first_copy[v] = len(node_vertex)
            node_vertex.extend((v, v))
    adj: list[list[int]] = [[] for _ in node_vertex]

    def link(x: int, y: int) -> None:
        adj[x].append(y)
        adj[y].append(x)

    for v, c in first_copy.items():
        link(c, c + 1)
    for u, v in g.edges():
        ua, va = a_mask >> u & 1, a_mask >> v & 1
        if ua and va:
            link(a_node[u], a_node[v])
        elif ua:
            link(a_node[u], first_copy[v])
            link(a_node[u], first_copy[v] + 1)
        elif va:
            link(a_node[v], first_copy[u])
            link(a_node[v], first_copy[u] + 1)
        else:
            link(first_copy[u], first_copy[v])
            link(first_copy[u] + 1, first_copy[v] + 1)
    for row in adj:
        row.sort()
    return _Aux(adj, node_vertex, first_copy, a_node)


def max_apath_packing(g: Graph, a: Iterable[int]) -> list[tuple[int, ...]]:
    """A maximum family of vertex-disjoint A-paths, read off a maximum matching
    of the auxiliary graph (its symmetric difference with the copy matching)."""
    a_mask = to_mask(a) & g.all_mask
    aux = _auxiliary(g, a_mask)
    mate = max_matching(aux.adj)
    return _paths_from_matching(aux, mate)


def _paths_from_matching(aux: _Aux, mate: list[int]) -> list[tuple[int, ...]]:
    copy_mate = [-1] * len(aux.node_vertex)
    for c in aux.first_copy.values():
        copy_mate[c], copy_mate[c + 1] = c + 1, c
    paths = []
    for v, start in sorted(aux.a_node.items()):
        if mate[start] == -1:
            continue
        # alternate: matching edge, copy edge, matching edge ...
        nodes = [start]
        cur = mate[start]
        use_matching = False
        while True:
            nodes.append(cur)
            nxt = mate[cur] if use_matching else copy_mate[cur]
            if nxt == -1:
                break
            if not use_matching and mate[cur] == nxt:
                break  # doubly matched copy pair cannot occur on a path
            cur = nxt
            use_matching = not use_matching
        end_vertex = aux.node_vertex[nodes[-1]]
        if nodes[-1] in aux.a_node.values() and end_vertex in aux.a_node and aux.a_node[end_vertex] == nodes[-1]:
            if end_vertex <= v:
                continue  # each path is found from both ends; keep one
            verts: list[int] = []
            for node in nodes:
                x = aux.node_vertex[node]
                if not verts or verts[-1] != x:
                    verts.append(x)
            paths.append(tuple(verts))
    paths.sort()
    return paths


def apath_packing_number(g: Graph, a: Iterable[int]) -> int:
    """Matching size minus the number of non-A vertices."""
    a_mask = to_mask(a) & g.all_mask
    aux = _auxiliary(g, a_mask)
    mate = max_matching(aux.adj)
    return matching_size(mate) - len(aux.first_copy)


@dataclass(frozen=True)
class APathResult:
    paths: tuple[tuple[int, ...], ...] | None
    cover: tuple[int, ...] | None
    method: str = ""

    @property
    def is_packing(self) -> bool:
        return self.paths is not None


def gallai_apaths(g: Graph, a: Iterable[int], k: int) -> APathResult:
    """``k`` disjoint A-paths, or at most ``2k - 2`` vertices meeting every A-path."""
    if k < 1:
        raise ValueError("k must be positive")
    a = sorted(set(a))
    a_mask = to_mask(a) & g.all_mask
    aux = _auxiliary(g, a_mask)
    mate = max_matching(aux.adj)
    paths = _paths_from_matching(aux, mate)
    if len(paths) >= k:
        return APathResult(tuple(paths[:k]), None, "matching")
    cover = _gallai_edmonds_cover(g, a_mask, aux, mate)
    if len(cover) <= 2 * len(paths) and not has_apath(g, a, cover):
        return APathResult(None, tuple(cover), "gallai-edmonds")
    cover = exact_apath_cover(g, a, upper=2 * len(paths))
    if cover is None or len(cover) > 2 * k - 2:
        raise CoverExtractionFailed("no A-path cover within 2k-2 found")
    return APathResult(None, tuple(cover), "branch-and-bound")


def _gallai_edmonds_cover(g: Graph, a_mask: int, aux: _Aux, mate: list[int]) -> list[int]:
    deficient = gallai_edmonds_deficient(aux.adj, mate)
    size = len(aux.node_vertex)
    tutte = [False] * size
    for x in range(size):
        if not deficient[x] and any(deficient[y] for y in aux.adj[x]):
            tutte[x] = True
    cover = set()
    for v, node in aux.a_node.items():
        if tutte[node]:
            cover.add(v)
    for v, c in aux.first_copy.items():
        if tutte[c] and tutte[c + 1]:
            cover.add(v)
    # components of the auxiliary graph minus the Tutte set
    seen = [False] * size
    for start in range(size):
        if seen[start] or tutte[start]:
            continue
        stack, comp = [start], []
        seen[start] = True
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in aux.adj[x]:
                if not seen[y] and not tutte[y]:
                    seen[y] = True
                    stack.append(y)
        a_vertices = sorted(aux.node_vertex[x] for x in comp if aux.node_vertex[x] in aux.a_node
                            and aux.a_node[aux.node_vertex[x]] == x)
        cover.update(a_vertices[1:])
    return sorted(cover)


def exact_apath_cover(g: Graph, a: Iterable[int], upper: int | None = None) -> list[int] | None:
    """Minimum vertex set meeting every A-path (iterative deepening), or None
    if none of size at most ``upper`` exists."""
    a = sorted(set(a))
    a_mask = to_mask(a)
    limit = g.n if upper is None else upper

    def witness(removed: int) -> tuple[int, ...] | None:
        alive = g.all_mask & ~removed
        for comp in component_masks(g, alive):
            hits = comp & a_mask
            if hits.bit_count() >= 2:
                src = from_mask(hits)[0]
                return shortest_path(g, src, hits & ~(1 << src), comp & ~a_mask)
        return None

    def search(removed: int, budget: int) -> int | None:
        path = witness(removed)
        if path is None:
            return removed
        if budget == 0:
            return None
        for v in path:
            found = search(removed | 1 << v, budget - 1)
            if found is not None:
                return found
        return None

    for size in range(limit + 1):
        found = search(0, size)
        if found is not None:
            return list(from_mask(found))
    return None


# ---------------------------------------------------------------------------
# regular partitions

TAGS = ("RP1", "RP2", "RP3")


@dataclass(frozen=True)
class RegularPartition:
    """Consecutive integer intervals ``(lo, hi)`` with a tag each."""

    parts: tuple[tuple[int, int, str], ...]

    @property
    def order(self) -> int:
        return len(self.parts)


def _part_tag(traces: Sequence[tuple[int, ...]]) -> str | None:
    if any(not t for t in traces):
        return None
    if all(t == traces[0] for t in traces):
        return "RP1"
    if len({len(t) for t in traces}) != 1:
        return None
    if all(traces[j][-1] < traces[j + 1][0] for j in range(len(traces) - 1)):
        return "RP2"
    if all(traces[j + 1][-1] < traces[j][0] for j in range(len(traces) - 1)):
        return "RP3"
    return None


def _tag_holds(tag: str, traces: Sequence[tuple[int, ...]]) -> bool:
    if any(not t for t in traces):
        return False
    if tag == "RP1":
        return all(t == traces[0] for t in traces)
    if len({len(t) for t in traces}) != 1:
        return False
    if tag == "RP2":
        return all(max(traces[j]) < min(traces[j + 1]) for j in range(len(traces) - 1))
    if tag == "RP3":
        return all(max(traces[j + 1]) < min(traces[j]) for j in range(len(traces) - 1))
    return False


def check_regular_partition(seq: Sequence[Iterable[int]], part: RegularPartition,
                            interval: tuple[int, int] | None = None) -> bool:
    """Literal check: consecutive intervals covering every element, each part
    satisfying its tag."""
    sets = [sorted(set(s)) for s in seq]
    if not part.parts:
        return False
    for (lo, hi, _), (lo2, _, _) in zip(part.parts, part.parts[1:]):
        if lo2 != hi + 1:
            return False
    if any(lo > hi for lo, hi, _ in part.parts):
        return False
    first, last = part.parts[0][0], part.parts[-1][1]
    if interval is not None and (first, last) != interval:
        return False
    for s in sets:
        if any(x < first or x > last for x in s):
            return False
    for lo, hi, tag in part.parts:
        traces = [tuple(x for x in s if lo <= x <= hi) for s in sets]
        if tag not in TAGS or not _tag_holds(tag, traces):
            return False
    return True


def regular_partition_of(seq: Sequence[Iterable[int]], max_order: int,
                         interval: tuple[int, int] | None = None) -> RegularPartition | None:
    """A regular partition of order at most ``max_order``, fewest parts first."""
    sets = [tuple(sorted(set(s))) for s in seq]
    elems = sorted(set().union(*sets)) if sets else []
    if not elems:
        return None
    t = len(elems)
    # parts are runs elems[i:j]
    best: list[tuple[int, list[tuple[int, int, str]]] | None] = [None] * (t + 1)
    best[0] = (0, [])
    for i in range(t):
        if best[i] is None or best[i][0] >= max_order:
            continue
        for j in range(i + 1, t + 1):
            lo, hi = elems[i], elems[j - 1]
            traces = [tuple(x for x in s if lo <= x <= hi) for s in sets]
            tag = _part_tag(traces)
            if tag is None:
                continue
            cand = (best[i][0] + 1, best[i][1] + [(i, j - 1, tag)])
            if best[j] is None or cand[0] < best[j][0]:
                best[j] = cand
    if best[t] is None:
        return None
    runs = best[t][1]
    lo_all = elems[0] if interval is None else interval[0]
    hi_all = elems[-1] if interval is None else interval[1]
    parts = []
    for idx, (i, j, tag) in enumerate(runs):
        lo = lo_all if idx == 0 else elems[i]
        hi = hi_all if idx == len(runs) - 1 else elems[runs[idx + 1][0]] - 1
        parts.append((lo, hi, tag))
    return RegularPartition(tuple(parts))


class CapExceeded(RuntimeError):
    """Input too large for the exact subsequence search."""


def find_regular_subsequence(seq: Sequence[Iterable[int]], n: int, length: int,
                             cap: int | None = None, interval: tuple[int, int] | None = None
                             ) -> tuple[tuple[int, ...], RegularPartition] | None:
    """First (lexicographic) ``length``-subsequence admitting a regular partition
    of order at most ``n``; returns ``(indices, partition)``.

    Having such a partition is inherited by subsequences, so prefixes without
    one are abandoned.
    """
    sets = [tuple(sorted(set(s))) for s in seq]
    if any(len(s) != n for s in sets):
        raise ValueError(f"every set must have exactly {n} elements")
    if cap is not None and len(sets) > cap:
        raise CapExceeded(f"{len(sets)} sets exceed the cap {cap}")
    if length <= 0:
        return (), RegularPartition(())

    def grow(chosen: list[int], start: int) -> tuple[int, ...] | None:
        if len(chosen) == length:
            return tuple(chosen)
        for i in range(start, len(sets) - (length - len(chosen)) + 1):
            chosen.append(i)
            if regular_partition_of([sets[j] for j in chosen], n, interval) is not None:
                found = grow(chosen, i + 1)
                if found is not None:
                    return found
            chosen.pop()
        return None

    picked = grow([], 0)
    if picked is None:
        return None
    part = regular_partition_of([sets[j] for j in picked], n, interval)
    return picked, part


# ---------------------------------------------------------------------------
# A-claws


def check_aclaw(g: Graph, a: Iterable[int], claw: AClaw) -> str:
    """Empty string for a valid A-claw, else the complaint."""
    a_mask = to_mask(a)
    if a_mask >> claw.center & 1:
        return "center lies in A"
    if len(claw.legs) != 3:
        return "need three legs"
    seen = 1 << claw.center
    for leg in claw.legs:
        if len(leg) < 2 or leg[0] != claw.center or len(set(leg)) != len(leg):
            return "leg must be a path from the center"
        if not all(g.has_edge(x, y) for x, y in zip(leg, leg[1:])):
            return "leg uses a non-edge"
        if not a_mask >> leg[-1] & 1 or to_mask(leg[:-1]) & a_mask:
            return "leg must meet A exactly at its end"
        rest = to_mask(leg[1:])
        if rest & seen:
            return "legs overlap"
        seen |= rest
    return ""


def find_aclaw(g: Graph, a: Iterable[int], removed: Iterable[int] = ()) -> AClaw | None:
    """An A-claw of ``g - removed`` (centers tried in increasing order)."""
    gone = to_mask(removed)
    a_mask = to_mask(a) & ~gone
    alive = g.all_mask & ~gone
    for v in iter_bits(alive & ~a_mask):
        if (g.masks[v] & alive).bit_count() < 3:
            continue
        legs = fan_paths(g, v, a_mask, 3, within=alive)
        if len(legs) == 3:
            return AClaw(v, tuple(legs))
    return None


def _forest_degrees(adj: dict[int, set[int]]) -> dict[int, int]:
    return {v: len(nb) for v, nb in adj.items()}


def _claw_in_tree(adj: dict[int, set[int]], center: int) -> AClaw:
    """Follow three branches from a degree-3 vertex down to leaves."""
    legs = []
    for first in sorted(adj[center]):
        leg = [center, first]
        while len(adj[leg[-1]]) > 1:
            nxt = min(w for w in adj[leg[-1]] if w != leg[-2])
            leg.append(nxt)
        legs.append(tuple(leg))
    return AClaw(center, tuple(legs))


def claws_from_leafy_forest(f: Graph, leaves: Iterable[int], k: int,
                            vertices: Iterable[int] | None = None) -> list[AClaw]:
    """``k`` disjoint claws with leaves in ``leaves`` from a forest of maximum
    degree 3 in which every component has a degree-3 vertex.

    Each round roots the first component at a degree-3 vertex, takes a deepest
    branch vertex ``v``, cuts the claw found below ``v``'s parent ``w`` and
    deletes that subtree together with the degree-2 route above ``w``.
    """
    alive = set(f.vertices() if vertices is None else vertices)
    leaf_set = set(leaves)
    adj = {v: {w for w in f.neighbors(v) if w in alive} for v in alive}
    for v, nb in adj.items():
        if len(nb) > 3:
            raise PreconditionError("forest must have maximum degree 3")
        if len(nb) == 1 and v not in leaf_set:
            raise PreconditionError("every leaf must belong to the leaf set")
    edges = sum(len(nb) for nb in adj.values()) // 2
    comps = _components(adj)
    if edges != len(adj) - len(comps):
        raise PreconditionError("input is not a forest")
    if any(all(len(adj[v]) < 3 for v in comp) for comp in comps):
        raise PreconditionError("every component needs a degree-3 vertex")
    leaf_count = sum(1 for v in adj if len(adj[v]) == 1)
    if leaf_count < 6 * k:
        raise PreconditionError(f"need at least {6 * k} leaves, found {leaf_count}")
    claws: list[AClaw] = []
    while len(claws) < k:
        _prune(adj)
        if not adj:
            raise AssertionError("forest exhausted before k claws")
        comp = _components(adj)[0]
        root = min(v for v in comp if len(adj[v]) == 3)
        parent, depth, order = _root_tree(adj, root)
        branch = [v for v in order if len(adj[v]) == 3]
        v = max(branch, key=lambda x: (depth[x], -x))
        if v == root:
            claws.append(_claw_in_tree(adj, root))
            _delete(adj, comp)
            continue
        # climb to the parent branch vertex w
        w = parent[v]
        while len(adj[w]) == 2:
            w = parent[w]
        subtree = _descendants(adj, parent, w)
        claws.append(_claw_below(adj, parent, v, subtree))
        if w == root:
            _delete(adj, comp)
            continue
        gone = set(subtree)
        x = parent[w]
        while len(adj[x]) == 2:
            gone.add(x)
            x = parent[x]
        _delete(adj, gone)
    return claws


def _components(adj: dict[int, set[int]]) -> list[list[int]]:
    seen: set[int] = set()
    out = []
    for s in sorted(adj):
        if s in seen:
            continue
        comp, stack = [], [s]
        seen.add(s)
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        out.append(sorted(comp))
    return out


def _prune(adj: dict[int, set[int]]) -> None:
    """Drop components without a degree-3 vertex."""
    for comp in _components(adj):
        if all(len(adj[v]) < 3 for v in comp):
            _delete(adj, comp)


def _delete(adj: dict[int, set[int]], verts: Iterable[int]) -> None:
    verts = set(verts)
    for v in verts:
        for w in adj.pop(v, set()):
            if w not in verts and w in adj:
                adj[w].discard(v)


def _root_tree(adj: dict[int, set[int]], root: int):
    parent = {root: 0}
    depth = {root: 0}
    order = [root]
    for x in order:
        for y in sorted(adj[x]):
            if y not in parent:
                parent[y] = x
                depth[y] = depth[x] + 1
                order.append(y)
    return parent, depth, order


def _descendants(adj: dict[int, set[int]], parent: dict[int, int], top: int) -> list[int]:
    out, stack = [], [top]
    while stack:
        x = stack.pop()
        out.append(x)
        stack.extend(y for y in adj[x] if parent.get(y) == x)
    return out


def _claw_below(adj: dict[int, set[int]], parent: dict[int, int], v: int, subtree: list[int]) -> AClaw:
    """Claw centered at ``v``: two legs down to leaves, one up through the
    parent branch vertex and down its other child."""
    inside = set(subtree)
    legs = []
    for child in sorted(y for y in adj[v] if parent.get(y) == v):
        leg = [v, child]
        while len(adj[leg[-1]]) > 1:
            leg.append(min(y for y in adj[leg[-1]] if parent.get(y) == leg[-1]))
        legs.append(tuple(leg))
    up = [v]
    x = parent[v]
    up.append(x)
    while len(adj[x]) == 2:
        x = parent[x]
        up.append(x)
    # x is the branch vertex w; descend through its other child
    other = min(y for y in adj[x] if parent.get(y) == x and y in inside and y != up[-2])
    up.append(other)
    while len(adj[up[-1]]) > 1:
        up.append(min(y for y in adj[up[-1]] if parent.get(y) == up[-1]))
    legs.append(tuple(up))
    return AClaw(v, tuple(legs))


@dataclass(frozen=True)
class AClawResult:
    claws: tuple[AClaw, ...] | None
    cover: tuple[int, ...] | None
    # the forest's degree-1/degree-3 set; hits every A-claw even when claws are returned
    hitting: tuple[int, ...] = ()

    @property
    def is_packing(self) -> bool:
        return self.claws is not None


def aclaw_ep(g: Graph, a: Iterable[int], k: int, cover_limit: int | None = None) -> AClawResult:
    """``k`` disjoint A-claws, or a set of at most ``14k`` vertices meeting all A-claws.

    Grows a forest ``F`` from claws avoiding ``S`` (the degree-1 and degree-3
    vertices of ``F``): a claw meeting ``F`` contributes only a path from ``F``
    to ``A``, any other claw is added whole.
    """
    if k < 1:
        raise ValueError("k must be positive")
    a = sorted(set(a))
    a_set = set(a)
    limit = 14 * k if cover_limit is None else cover_limit
    adj: dict[int, set[int]] = {}
    s_set: set[int] = set()

    def add_path(path: Sequence[int]) -> None:
        for x, y in zip(path, path[1:]):
            adj.setdefault(x, set()).add(y)
            adj.setdefault(y, set()).add(x)

    while True:
        claw = find_aclaw(g, a, s_set)
        if claw is None:
            break
        touching = set(claw.vertices()) & set(adj)
        if touching:
            for leg in claw.legs:
                hits = [i for i, x in enumerate(leg) if x in adj]
                if hits:
                    add_path(leg[hits[-1]:])
                    break
        else:
            for leg in claw.legs:
                add_path(leg)
        s_set = {v for v, nb in adj.items() if len(nb) in (1, 3)}
    hitting = tuple(sorted(s_set))
    comps = _components(adj)
    # every component already holds a claw, so enough of them settle it either way
    if len(s_set) <= limit and len(comps) < k:
        return AClawResult(None, hitting, hitting)
    if len(comps) >= k:
        claws = []
        for comp in comps[:k]:
            sub = {v: adj[v] for v in comp}
            center = min(v for v in comp if len(adj[v]) == 3)
            claws.append(_claw_in_tree(sub, center))
        return AClawResult(tuple(claws), None, hitting)
    forest = Graph.from_edges(g.n, [(x, y) for x in adj for y in adj[x] if x < y])
    leaves = [v for v, nb in adj.items() if len(nb) == 1]
    assert all(v in a_set for v in leaves)
    claws = claws_from_leafy_forest(forest, leaves, k, vertices=adj.keys())
    return AClawResult(tuple(claws), None, hitting)
