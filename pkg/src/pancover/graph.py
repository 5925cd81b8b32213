"""Graph substrate: simple graphs, multigraphs and the elementary routines.

Vertices are dense integers ``1..n``.  Adjacency is stored as one integer
bitmask per vertex (bit ``v`` set when ``v`` is a neighbor), which keeps set
algebra on neighborhoods cheap.  Values are immutable; removing vertices means
building an induced subgraph together with a remapping table.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence


class GraphFormatError(ValueError):
    """Malformed graph text; ``line`` is 1-based (0 when not line specific)."""

    def __init__(self, message: str, line: int = 0) -> None:
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the positions of set bits in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def from_mask(mask: int) -> tuple[int, ...]:
    return tuple(iter_bits(mask))


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``1..n``.

    ``masks[v]`` is the neighbor bitmask of ``v``; ``masks[0]`` is always 0.
    """

    n: int
    masks: tuple[int, ...]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        masks = [0] * (n + 1)
        for u, v in edges:
            if not (1 <= u <= n and 1 <= v <= n):
                raise ValueError(f"edge ({u}, {v}) out of range 1..{n}")
            if u == v:
                raise ValueError(f"loop at {u}")
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return cls(n, tuple(masks))

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls(n, (0,) * (n + 1))

    @property
    def all_mask(self) -> int:
        return ((1 << (self.n + 1)) - 1) ^ 1

    @property
    def m(self) -> int:
        return sum(mask.bit_count() for mask in self.masks) // 2

    def vertices(self) -> range:
        return range(1, self.n + 1)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return from_mask(self.masks[v])

    def degree(self, v: int) -> int:
        return self.masks[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.masks[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for u in range(1, self.n + 1):
            for v in iter_bits(self.masks[u] >> (u + 1) << (u + 1)):
                out.append((u, v))
        return out

    def check_vertices(self, vertices: Iterable[int]) -> None:
        for v in vertices:
            if not 1 <= v <= self.n:
                raise ValueError(f"vertex {v} out of range 1..{self.n}")

    def without(self, removed: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
        """Induced subgraph on the complement of ``removed``."""
        gone = to_mask(removed)
        keep = [v for v in self.vertices() if not gone >> v & 1]
        return induced_subgraph(self, keep)


@dataclass(frozen=True)
class MultiGraph:
    """Undirected multigraph; loops and parallel edges are allowed.

    Edges are identified by their index in ``edges``.  A loop adds 2 to the
    degree of its vertex.
    """

    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        for u, v in self.edges:
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise ValueError(f"edge ({u}, {v}) out of range 1..{self.n}")

    @classmethod
    def from_graph(cls, g: Graph) -> MultiGraph:
        return cls(g.n, tuple(g.edges()))

    def degree(self, v: int) -> int:
        return sum((a == v) + (b == v) for a, b in self.edges)

    def incidence(self) -> list[list[int]]:
        """Per vertex, the incident edge ids (a loop appears twice)."""
        inc: list[list[int]] = [[] for _ in range(self.n + 1)]
        for i, (u, v) in enumerate(self.edges):
            inc[u].append(i)
            inc[v].append(i)
        return inc


@dataclass(frozen=True)
class MultiCycle:
    """A cycle of a multigraph: ``vertices[i]`` and ``vertices[i+1]`` (cyclically)
    are joined by edge ``edge_ids[i]``.  A loop has one vertex, a parallel pair two."""

    vertices: tuple[int, ...]
    edge_ids: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.vertices)


# ---------------------------------------------------------------------------
# parsing and serialization


def _decode(text: str | bytes) -> str:
    return text.decode("utf-8") if isinstance(text, (bytes, bytearray)) else text


def parse_graph(text: str | bytes, kind: str = "ind") -> Graph:
    """Parse the line format ``p <kind> n m`` followed by ``e u v`` lines."""
    graph, _ = parse_graph_with_comments(text, kind)
    return graph


def parse_graph_with_comments(text: str | bytes, kind: str = "ind") -> tuple[Graph, list[str]]:
    """Like :func:`parse_graph` but also returns comment lines (without the ``c``)."""
    comments: list[str] = []
    header: tuple[int, int] | None = None
    masks: list[int] = []
    seen_edges = 0
    for lineno, raw in enumerate(_decode(text).splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        tokens = line.split()
        tag = tokens[0]
        if tag == "c":
            comments.append(line[1:].strip())
            continue
        if tag == "p":
            if header is not None:
                raise GraphFormatError("second header line", lineno)
            if len(tokens) != 4 or tokens[1] != kind:
                raise GraphFormatError(f"header must read 'p {kind} <n> <m>'", lineno)
            try:
                n, m = int(tokens[2]), int(tokens[3])
            except ValueError:
                raise GraphFormatError("non-integer header field", lineno) from None
            if n < 0 or m < 0:
                raise GraphFormatError("negative header field", lineno)
            header = (n, m)
            masks = [0] * (n + 1)
            continue
        if tag == "e":
            if header is None:
                raise GraphFormatError("edge before header", lineno)
            if len(tokens) != 3:
                raise GraphFormatError("edge line must read 'e <u> <v>'", lineno)
            try:
                u, v = int(tokens[1]), int(tokens[2])
            except ValueError:
                raise GraphFormatError("non-integer endpoint", lineno) from None
            n = header[0]
            if u == v:
                raise GraphFormatError(f"loop at vertex {u}", lineno)
            if not (1 <= u <= n and 1 <= v <= n):
                raise GraphFormatError(f"endpoint out of range 1..{n}", lineno)
            if u > v:
                raise GraphFormatError("endpoints must satisfy u < v", lineno)
            if masks[u] >> v & 1:
                raise GraphFormatError(f"duplicate edge {u} {v}", lineno)
            masks[u] |= 1 << v
            masks[v] |= 1 << u
            seen_edges += 1
            continue
        raise GraphFormatError(f"unknown line tag {tag!r}", lineno)
    if header is None:
        raise GraphFormatError("missing header line")
    if seen_edges != header[1]:
        raise GraphFormatError(f"header announces {header[1]} edges, found {seen_edges}")
    return Graph(header[0], tuple(masks)), comments


def serialize_graph(g: Graph, comments: Sequence[str] = (), kind: str = "ind") -> str:
    lines = [f"c {c}" if c else "c" for c in comments]
    edges = g.edges()
    lines.append(f"p {kind} {g.n} {len(edges)}")
    lines.extend(f"e {u} {v}" for u, v in edges)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# elementary routines


def induced_subgraph(g: Graph, s: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """Return ``(h, old_of)`` where ``old_of[i]`` is the original id of vertex ``i`` of ``h``.

    Vertices of ``s`` are renumbered in increasing order; ``old_of[0]`` is 0.
    """
    keep = sorted(set(s))
    g.check_vertices(keep)
    new_of = {v: i for i, v in enumerate(keep, start=1)}
    masks = [0]
    keep_mask = to_mask(keep)
    for v in keep:
        mask = 0
        for w in iter_bits(g.masks[v] & keep_mask):
            mask |= 1 << new_of[w]
        masks.append(mask)
    return Graph(len(keep), tuple(masks)), (0, *keep)


def bfs_layers(g: Graph, sources: int, within: int | None = None) -> list[int]:
    """Breadth-first layers (as bitmasks) from the ``sources`` mask inside ``within``."""
    allowed = g.all_mask if within is None else within
    frontier = sources & allowed
    seen = frontier
    layers = []
    masks = g.masks
    while frontier:
        layers.append(frontier)
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= masks[v]
        nxt &= allowed & ~seen
        seen |= nxt
        frontier = nxt
    return layers


def r_neighborhood(g: Graph, s: Iterable[int], r: int, within: int | None = None) -> tuple[int, ...]:
    """All vertices at distance at most ``r`` from ``s``."""
    if r < 0:
        raise ValueError("radius must be non-negative")
    s = list(s)
    g.check_vertices(s)
    reached = 0
    for i, layer in enumerate(bfs_layers(g, to_mask(s), within)):
        if i > r:
            break
        reached |= layer
    return from_mask(reached)


def component_masks(g: Graph, within: int | None = None) -> list[int]:
    """Connected components of ``g[within]`` as bitmasks, ordered by smallest vertex."""
    rest = g.all_mask if within is None else within & g.all_mask
    comps = []
    masks = g.masks
    while rest:
        low = rest & -rest
        comp = low
        frontier = low
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= masks[v]
            nxt &= rest & ~comp
            comp |= nxt
            frontier = nxt
        comps.append(comp)
        rest &= ~comp
    return comps


def is_connected_mask(g: Graph, mask: int) -> bool:
    if not mask:
        return True
    low = mask & -mask
    return bfs_reach(g, low, mask) == mask


def bfs_reach(g: Graph, sources: int, within: int) -> int:
    seen = sources & within
    frontier = seen
    masks = g.masks
    while frontier:
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= masks[v]
        nxt &= within & ~seen
        seen |= nxt
        frontier = nxt
    return seen


def shortest_path(g: Graph, source: int, targets: int, within: int | None = None) -> tuple[int, ...] | None:
    """Shortest path from ``source`` to the nearest vertex of the ``targets`` mask.

    Interior vertices must lie in ``within``; ``source`` and the reached target
    are always allowed.  Ties prefer smaller vertex ids.
    """
    allowed = (g.all_mask if within is None else within) | targets | (1 << source)
    if targets >> source & 1:
        return (source,)
    parent = {source: 0}
    queue = deque([source])
    masks = g.masks
    while queue:
        v = queue.popleft()
        for w in iter_bits(masks[v] & allowed):
            if w in parent:
                continue
            parent[w] = v
            if targets >> w & 1:
                path = [w]
                while path[-1] != source:
                    path.append(parent[path[-1]])
                return tuple(reversed(path))
            if within is None or within >> w & 1:
                queue.append(w)
    return None


def is_path(g: Graph, path: Sequence[int]) -> bool:
    return len(set(path)) == len(path) and all(g.has_edge(a, b) for a, b in zip(path, path[1:]))


def is_induced_path(g: Graph, path: Sequence[int]) -> bool:
    if not is_path(g, path):
        return False
    pos = {v: i for i, v in enumerate(path)}
    mask = to_mask(path)
    for i, v in enumerate(path):
        for w in iter_bits(g.masks[v] & mask):
            if abs(pos[w] - i) != 1:
                return False
    return True


def is_cycle(g: Graph, cycle: Sequence[int]) -> bool:
    return len(cycle) >= 3 and is_path(g, cycle) and g.has_edge(cycle[-1], cycle[0])


def is_induced_cycle(g: Graph, cycle: Sequence[int]) -> bool:
    if not is_cycle(g, cycle):
        return False
    mask = to_mask(cycle)
    return all((g.masks[v] & mask).bit_count() == 2 for v in cycle)


# ---------------------------------------------------------------------------
# block-cut decomposition


@dataclass(frozen=True)
class BlockCutTree:
    """Blocks (2-connected pieces and bridge edges) plus the cut vertices.

    ``tree`` is the bipartite block-cut tree: node ``("B", i)`` for block ``i``
    and ``("C", v)`` for cut vertex ``v``.
    """

    blocks: tuple[frozenset[int], ...]
    block_edges: tuple[tuple[tuple[int, int], ...], ...]
    cut_vertices: frozenset[int]
    tree: dict = field(compare=False, repr=False)

    def blocks_of(self, v: int) -> list[int]:
        return [i for i, b in enumerate(self.blocks) if v in b]

    def block_path(self, v: int, w: int) -> list[int] | None:
        """Indices of the blocks on the tree path between a block holding ``v`` and
        one holding ``w`` (choosing the endpoints that make the path shortest)."""
        starts = [("B", i) for i in self.blocks_of(v)]
        goals = {("B", i) for i in self.blocks_of(w)}
        if not starts or not goals:
            return None
        parent = {s: None for s in starts}
        queue = deque(starts)
        while queue:
            node = queue.popleft()
            if node in goals:
                out = []
                while node is not None:
                    if node[0] == "B":
                        out.append(node[1])
                    node = parent[node]
                out.reverse()
                # drop leading blocks that also contain v and trailing that contain w
                while len(out) > 1 and v in self.blocks[out[1]]:
                    out.pop(0)
                while len(out) > 1 and w in self.blocks[out[-2]]:
                    out.pop()
                return out
            for nxt in self.tree.get(node, ()):
                if nxt not in parent:
                    parent[nxt] = node
                    queue.append(nxt)
        return None


def blocks(g: Graph) -> BlockCutTree:
    """Hopcroft-Tarjan biconnected components (iterative)."""
    n = g.n
    disc = [0] * (n + 1)
    low = [0] * (n + 1)
    timer = 1
    edge_stack: list[tuple[int, int]] = []
    found: list[list[tuple[int, int]]] = []
    cuts: set[int] = set()
    for root in range(1, n + 1):
        if disc[root]:
            continue
        disc[root] = low[root] = timer
        timer += 1
        root_children = 0
        stack = [(root, 0, iter(g.neighbors(root)))]
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if not disc[w]:
                    edge_stack.append((v, w))
                    disc[w] = low[w] = timer
                    timer += 1
                    if v == root:
                        root_children += 1
                    stack.append((w, v, iter(g.neighbors(w))))
                    advanced = True
                    break
                if w != parent and disc[w] < disc[v]:
                    edge_stack.append((v, w))
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if stack:
                u = stack[-1][0]
                low[u] = min(low[u], low[v])
                if low[v] >= disc[u]:
                    if u != root:
                        cuts.add(u)
                    comp = []
                    while True:
                        e = edge_stack.pop()
                        comp.append(e)
                        if e == (u, v):
                            break
                    found.append(comp)
        if root_children > 1:
            cuts.add(root)
    block_sets = []
    block_edges = []
    for comp in found:
        verts = frozenset(x for e in comp for x in e)
        block_sets.append(verts)
        block_edges.append(tuple(sorted((min(a, b), max(a, b)) for a, b in comp)))
    order = sorted(range(len(block_sets)), key=lambda i: (min(block_sets[i]), sorted(block_sets[i])))
    block_sets = [block_sets[i] for i in order]
    block_edges = [block_edges[i] for i in order]
    tree: dict = {}
    for i, b in enumerate(block_sets):
        for v in b:
            if v in cuts:
                tree.setdefault(("B", i), []).append(("C", v))
                tree.setdefault(("C", v), []).append(("B", i))
    return BlockCutTree(tuple(block_sets), tuple(block_edges), frozenset(cuts), tree)


# ---------------------------------------------------------------------------
# cubic core and shortest cycles of multigraphs


@dataclass(frozen=True)
class CubicCore:
    """Result of :func:`cubic_core`.

    ``core`` uses the original vertex ids (vertices that were removed simply
    have no incident edges).  ``routes[i]`` lifts core edge ``i`` to the original
    multigraph as ``(vertices, edge_ids)``: a walk from one endpoint of the core
    edge to the other.
    """

    core: MultiGraph
    routes: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]
    alive: frozenset[int]

    def lift(self, cycle: MultiCycle) -> MultiCycle:
        verts: list[int] = []
        eids: list[int] = []
        for i, ce in enumerate(cycle.edge_ids):
            start = cycle.vertices[i]
            rv, re = self.routes[ce]
            if rv[0] != start:
                rv, re = tuple(reversed(rv)), tuple(reversed(re))
            verts.extend(rv[:-1])
            eids.extend(re)
        return MultiCycle(tuple(verts), tuple(eids))


def cubic_core(m: MultiGraph) -> CubicCore:
    """Delete degree <= 1 vertices and suppress degree-2 vertices until stable.

    A vertex whose only incident edge is a single loop (degree 2) is deleted.
    """
    ends: dict[int, tuple[int, int]] = {}
    routes: dict[int, tuple[tuple[int, ...], tuple[int, ...]]] = {}
    inc: list[set[int]] = [set() for _ in range(m.n + 1)]
    for i, (u, v) in enumerate(m.edges):
        ends[i] = (u, v)
        routes[i] = ((u, v), (i,))
        inc[u].add(i)
        inc[v].add(i)
    next_id = len(m.edges)

    def degree(v: int) -> int:
        return sum(2 if ends[e][0] == ends[e][1] else 1 for e in inc[v])

    alive = {v for v in range(1, m.n + 1)}
    queue = deque(range(1, m.n + 1))
    while queue:
        v = queue.popleft()
        if v not in alive:
            continue
        d = degree(v)
        if d <= 1 or (d == 2 and len(inc[v]) == 1):
            alive.discard(v)
            for e in list(inc[v]):
                a, b = ends.pop(e)
                routes.pop(e)
                other = b if a == v else a
                inc[a].discard(e)
                inc[b].discard(e)
                if other != v:
                    queue.append(other)
            continue
        if d == 2:
            e1, e2 = sorted(inc[v])
            a = ends[e1][1] if ends[e1][0] == v else ends[e1][0]
            b = ends[e2][1] if ends[e2][0] == v else ends[e2][0]
            r1v, r1e = routes[e1]
            if r1v[-1] != v:
                r1v, r1e = tuple(reversed(r1v)), tuple(reversed(r1e))
            r2v, r2e = routes[e2]
            if r2v[0] != v:
                r2v, r2e = tuple(reversed(r2v)), tuple(reversed(r2e))
            for e in (e1, e2):
                x, y = ends.pop(e)
                routes.pop(e)
                inc[x].discard(e)
                inc[y].discard(e)
            alive.discard(v)
            ends[next_id] = (a, b)
            routes[next_id] = (r1v + r2v[1:], r1e + r2e)
            inc[a].add(next_id)
            inc[b].add(next_id)
            next_id += 1
            queue.append(a)
            if b != a:
                queue.append(b)
    ids = sorted(ends)
    core_edges = tuple(ends[e] for e in ids)
    core_routes = tuple(routes[e] for e in ids)
    return CubicCore(MultiGraph(m.n, core_edges), core_routes, frozenset(alive))


def shortest_cycle(m: MultiGraph, alive: int | None = None) -> MultiCycle | None:
    """A minimum-length cycle (loop = 1, parallel pair = 2), or None for a forest.

    ``alive`` optionally restricts to a vertex bitmask.  Ties: first found when
    scanning loops, then parallel pairs, then BFS roots in increasing order.
    """
    def ok(v: int) -> bool:
        return alive is None or bool(alive >> v & 1)

    edges = [(i, u, v) for i, (u, v) in enumerate(m.edges) if ok(u) and ok(v)]
    for i, u, v in edges:
        if u == v:
            return MultiCycle((u,), (i,))
    first_edge: dict[tuple[int, int], int] = {}
    for i, u, v in edges:
        key = (min(u, v), max(u, v))
        if key in first_edge:
            return MultiCycle(key, (first_edge[key], i))
        first_edge[key] = i
    adj: list[list[tuple[int, int]]] = [[] for _ in range(m.n + 1)]
    for (u, v), i in sorted(first_edge.items()):
        adj[u].append((v, i))
        adj[v].append((u, i))
    best: MultiCycle | None = None
    best_len = m.n + 1
    for root in range(1, m.n + 1):
        if not adj[root]:
            continue
        dist = {root: 0}
        parent: dict[int, tuple[int, int]] = {}
        queue = deque([root])
        while queue:
            x = queue.popleft()
            if 2 * dist[x] + 1 >= best_len:
                break
            for y, e in adj[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    parent[y] = (x, e)
                    queue.append(y)
                elif (parent.get(x, (0, -1))[1] != e and parent.get(y, (0, -1))[1] != e
                      and dist[y] >= dist[x]):
                    length = dist[x] + dist[y] + 1
                    if length < best_len:
                        cyc = _tree_cycle(root, x, y, e, parent)
                        if cyc is not None:
                            best, best_len = cyc, length
    return best


def _tree_cycle(root: int, x: int, y: int, e: int, parent: dict[int, tuple[int, int]]) -> MultiCycle | None:
    def climb(v: int) -> tuple[list[int], list[int]]:
        vs, es = [v], []
        while v != root:
            p, pe = parent[v]
            es.append(pe)
            vs.append(p)
            v = p
        return vs, es

    xv, xe = climb(x)
    yv, ye = climb(y)
    if set(xv[:-1]) & set(yv[:-1]):
        return None
    # root ... x, then edge e to y, then y ... back to root
    verts = list(reversed(xv)) + yv[:-1]
    eids = list(reversed(xe)) + [e] + ye
    return MultiCycle(tuple(verts), tuple(eids))


def verify_multicycle(m: MultiGraph, cycle: MultiCycle) -> bool:
    k = len(cycle.vertices)
    if k == 0 or len(cycle.edge_ids) != k or len(set(cycle.vertices)) != k:
        return False
    if len(set(cycle.edge_ids)) != k:
        return False
    for i, e in enumerate(cycle.edge_ids):
        if not 0 <= e < len(m.edges):
            return False
        a, b = cycle.vertices[i], cycle.vertices[(i + 1) % k]
        if {a, b} != set(m.edges[e]) or (a == b) != (m.edges[e][0] == m.edges[e][1]):
            return False
    return True
