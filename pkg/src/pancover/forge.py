"""Generators for the counterexample families and their witness models.

Every generator returns a :class:`LabeledGraph`: the host graph, named vertex
roles (``a.3``, ``u.0``, ``x.1.4`` ...), vertex groups (columns, rows, paths)
and, where the construction glues copies of a pattern, the canonical model of
each copy.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Sequence

from .detect import Model, Pattern, verify_model
from .graph import (
    Graph, GraphFormatError, component_masks, from_mask, is_induced_cycle, iter_bits,
    parse_graph_with_comments, serialize_graph, shortest_path, to_mask,
)


class ConstructionError(ValueError):
    """Parameters or pattern do not meet a generator's precondition."""


class ThresholdExceeded(ValueError):
    """The avoided set is too large for the family's witness guarantee."""


@dataclass
class LabeledGraph:
    family: str
    graph: Graph
    params: dict[str, int] = field(default_factory=dict)
    roles: dict[str, int] = field(default_factory=dict)
    groups: dict[str, tuple[int, ...]] = field(default_factory=dict)
    pattern: Pattern | None = None
    copies: dict[str, Model] = field(default_factory=dict)

    def role(self, name: str, *index: int) -> int:
        return self.roles[".".join([name, *map(str, index)])]

    def comments(self) -> list[str]:
        lines = [f"family {self.family}"]
        lines += [f"param {k} {v}" for k, v in self.params.items()]
        for key, vertex in self.roles.items():
            name, _, index = key.partition(".")
            lines.append(f"role {name} {index or '-'} {vertex}")
        lines += [f"group {name} " + " ".join(map(str, vs)) for name, vs in self.groups.items()]
        return lines

    def serialize(self) -> str:
        return serialize_graph(self.graph, self.comments())


def parse_labeled(text: str) -> LabeledGraph:
    """Rebuild roles and groups from a serialized labeled graph (copies are not stored)."""
    graph, comments = parse_graph_with_comments(text)
    out = LabeledGraph("unknown", graph)
    for line in comments:
        tok = line.split()
        if not tok:
            continue
        try:
            if tok[0] == "family":
                out.family = tok[1]
            elif tok[0] == "param":
                out.params[tok[1]] = int(tok[2])
            elif tok[0] == "role":
                key = tok[1] if tok[2] == "-" else f"{tok[1]}.{tok[2]}"
                out.roles[key] = int(tok[3])
            elif tok[0] == "group":
                out.groups[tok[1]] = tuple(int(x) for x in tok[2:])
        except (IndexError, ValueError):
            raise GraphFormatError(f"malformed label comment: {line!r}") from None
    return out


class _Builder:
    """Incremental vertex/edge collection with role bookkeeping."""

    def __init__(self) -> None:
        self.n = 0
        self.edges: set[tuple[int, int]] = set()
        self.roles: dict[str, int] = {}

    def vertex(self, role: str | None = None) -> int:
        self.n += 1
        if role is not None:
            self.roles[role] = self.n
        return self.n

    def edge(self, u: int, v: int) -> None:
        self.edges.add((min(u, v), max(u, v)))

    def path(self, vs: Sequence[int]) -> None:
        for u, v in zip(vs, vs[1:]):
            self.edge(u, v)

    def graph(self, extra_masks: dict[int, int] | None = None) -> Graph:
        masks = [0] * (self.n + 1)
        for u, v in self.edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        for v, m in (extra_masks or {}).items():
            masks[v] |= m
        return Graph(self.n, tuple(masks))


def _complete_between(parts: Sequence[int], masks: dict[int, int]) -> None:
    """Join every pair of distinct parts (vertex masks) completely."""
    union = 0
    for p in parts:
        union |= p
    for p in parts:
        others = union & ~p
        for v in iter_bits(p):
            masks[v] = masks.get(v, 0) | others


# ---------------------------------------------------------------------------
# garlands and the triangle-wall


def _add_garland(b: _Builder, n: int, prefix: str) -> list[tuple[int, int, int]]:
    triples = []
    for i in range(n):
        x = b.vertex(f"x{prefix}.{i}")
        y = b.vertex(f"y{prefix}.{i}")
        z = b.vertex(f"z{prefix}.{i}")
        b.edge(x, y)
        b.edge(x, z)
        b.edge(y, z)
        if triples:
            b.edge(triples[-1][1], x)
        triples.append((x, y, z))
    return triples


def garland(n: int) -> LabeledGraph:
    """Path x0 y0 ... x_{n-1} y_{n-1} with a vertex z_i on each edge x_i y_i."""
    if n < 2:
        raise ConstructionError("a garland needs n >= 2")
    b = _Builder()
    _add_garland(b, n, "")
    return LabeledGraph("garland", b.graph(), {"n": n}, b.roles)


def _wall_into(b: _Builder, n: int) -> dict[str, tuple[int, ...]]:
    rows = []
    for i in range(n):
        rows.append(_add_garland(b, 2 * n, f".{i}"))
    for i in range(n - 1):
        for j in range(2 * n):
            if (i % 2 == 0 and j % 2 == 1) or (i % 2 == 1 and j % 2 == 0):
                b.edge(rows[i][j][2], rows[i + 1][j][2])
    last = n - 1
    for i in range(n):
        b.roles[f"a.{i}"] = rows[0][2 * i][2]
        j = 2 * (n - i - 1) if n % 2 == 0 else 2 * (n - i) - 1
        b.roles[f"b.{i}"] = rows[last][j][2]
    groups = {}
    for c in range(n):
        groups[f"C.{c}"] = tuple(sorted(v for row in rows for j in (2 * c, 2 * c + 1) for v in row[j]))
    for i in range(n):
        groups[f"Q.{i}"] = tuple(v for t in rows[i] for v in t)
    return groups


def triangle_wall(n: int) -> LabeledGraph:
    """n rows, each a 2n-garland, joined through z-vertices with alternating parity."""
    if n < 2:
        raise ConstructionError("the triangle-wall needs n >= 2")
    b = _Builder()
    groups = _wall_into(b, n)
    return LabeledGraph("triangle-wall", b.graph(), {"n": n}, b.roles, groups)


def wall_cell(lg: LabeledGraph, vertex: int) -> tuple[int, int]:
    """(row, column) of a triangle-wall vertex."""
    n = lg.params["n"] if lg.family == "triangle-wall" else lg.params["wall"]
    offset = vertex - 1
    row, rest = divmod(offset, 6 * n)
    if row >= n:
        raise KeyError(vertex)
    return row, rest // 6


# ---------------------------------------------------------------------------
# K_{2,r}


def k2r_pattern(r: int) -> Pattern:
    """Vertices 1 and 2 are the two high-degree sides."""
    return Pattern(f"k2_{r}", Graph.from_edges(r + 2, [(s, t) for s in (1, 2) for t in range(3, r + 3)]))


def build_k2r_ce(r: int, n: int) -> LabeledGraph:
    if r < 3:
        raise ConstructionError("r must be at least 3")
    if n < 1:
        raise ConstructionError("n must be positive")
    size = r * n
    b = _Builder()
    groups = _wall_into(b, size)
    us = [b.vertex(f"u.{i}") for i in range(n)]
    vs = [b.vertex(f"v.{i}") for i in range(n)]
    for i in range(n):
        for t in range(i * r, (i + 1) * r):
            b.edge(us[i], b.roles[f"a.{t}"])
            b.edge(vs[i], b.roles[f"b.{t}"])
    for i, j in itertools.combinations(range(n), 2):
        for p in (us[i], vs[i]):
            for q in (us[j], vs[j]):
                b.edge(p, q)
    return LabeledGraph("k2r", b.graph(), {"r": r, "n": n, "wall": size}, b.roles, groups, k2r_pattern(r))


# ---------------------------------------------------------------------------
# forests with two branch vertices in one component


@dataclass(frozen=True)
class ForestSplit:
    u: int
    u2: int
    v: int
    v2: int
    tree: tuple[int, ...]       # T, containing v
    tree2: tuple[int, ...]      # T', containing v'
    rest: tuple[int, ...]       # D
    leafy: tuple[int, ...]      # F = T minus the u..v path
    leafy2: tuple[int, ...]     # F'


def _is_forest(h: Graph) -> bool:
    return len(h.edges()) == h.n - len(component_masks(h))


def split_forest(h: Pattern) -> ForestSplit:
    """Locate u, u' (degree >= 3, same component, closest) and the edge vv' next to u."""
    g = h.graph
    if not _is_forest(g):
        raise ConstructionError("pattern is not a forest")
    big = [w for w in range(1, g.n + 1) if g.degree(w) >= 3]
    best = None
    for s, t in itertools.combinations(big, 2):
        path = shortest_path(g, s, 1 << t)
        if path is not None and (best is None or len(path) < len(best)):
            best = path
    if best is None:
        raise ConstructionError("no component has two vertices of degree at least 3")
    u, u2 = best[0], best[-1]
    v, v2 = best[0], best[1]
    alive = g.all_mask
    cut = Graph(g.n, tuple(m & ~((1 << v2) if w == v else (1 << v) if w == v2 else 0)
                           for w, m in enumerate(g.masks)))
    comps = component_masks(cut, alive)
    t_mask = next(c for c in comps if c >> v & 1)
    t2_mask = next(c for c in comps if c >> v2 & 1)
    rest = alive & ~t_mask & ~t2_mask
    # u..v and u'..v' paths inside the tree halves
    pv = shortest_path(g, u, 1 << v, t_mask)
    pv2 = shortest_path(g, u2, 1 << v2, t2_mask)
    return ForestSplit(u, u2, v, v2, from_mask(t_mask), from_mask(t2_mask), from_mask(rest),
                       from_mask(t_mask & ~to_mask(pv)), from_mask(t2_mask & ~to_mask(pv2)))


def build_forest_ce(h: Pattern, n: int) -> LabeledGraph:
    if n < 1:
        raise ConstructionError("n must be positive")
    split = split_forest(h)
    pat = h.graph
    wall = max(n, 2)
    b = _Builder()
    groups = _wall_into(b, wall)
    copy: list[dict[int, int]] = []
    parts = []
    for i in range(n):
        image = {w: b.vertex(f"copy.{i}.{w}") for w in range(1, pat.n + 1)}
        for s, t in pat.edges():
            if {s, t} != {split.v, split.v2}:
                b.edge(image[s], image[t])
        b.edge(image[split.v], b.roles[f"a.{i}"])
        b.edge(image[split.v2], b.roles[f"b.{i}"])
        copy.append(image)
        parts.append(to_mask(image[w] for w in split.leafy + split.leafy2 + split.rest))
        groups[f"T.{i}"] = tuple(image[w] for w in split.tree)
        groups[f"T'.{i}"] = tuple(image[w] for w in split.tree2)
        groups[f"D.{i}"] = tuple(image[w] for w in split.rest)
    extra: dict[int, int] = {}
    _complete_between(parts, extra)
    params = {"n": n, "wall": wall, "v": split.v, "v2": split.v2}
    return LabeledGraph("forest", b.graph(extra), params, b.roles, groups, h)


# ---------------------------------------------------------------------------
# cycles in small patterns


def all_cycles(g: Graph) -> list[tuple[int, ...]]:
    """Every cycle once, starting at its smallest vertex, second vertex < last."""
    out = []
    for start in range(1, g.n + 1):
        higher = g.all_mask & ~((1 << (start + 1)) - 1)
        stack = [(start, (start,), 1 << start)]
        while stack:
            v, path, used = stack.pop()
            for w in iter_bits(g.masks[v]):
                if w == start and len(path) >= 3 and path[1] < path[-1]:
                    out.append(path)
                elif higher >> w & 1 and not used >> w & 1:
                    stack.append((w, path + (w,), used | (1 << w)))
    return sorted(out)


def count_cycles(g: Graph) -> int:
    return len(all_cycles(g))


def subdivide_edge(g: Graph, u: int, v: int) -> Graph:
    """Replace the edge uv by a path u - (n+1) - v."""
    if not g.has_edge(u, v):
        raise ValueError(f"{u}{v} is not an edge")
    edges = [e for e in g.edges() if set(e) != {u, v}] + [(u, g.n + 1), (v, g.n + 1)]
    return Graph.from_edges(g.n + 1, edges)


def _far_vertices(g: Graph, cycle: Sequence[int]) -> int:
    cmask = to_mask(cycle)
    near = cmask
    for c in cycle:
        near |= g.masks[c]
    return g.all_mask & ~near


def longcycle_choice(h: Pattern, theorem: str = "auto") -> tuple[tuple[int, ...], str]:
    """The cycle C to stretch and which hypothesis it meets."""
    g = h.graph
    cycles = all_cycles(g)
    if theorem in ("auto", "long-cycle"):
        for c in cycles:
            if len(c) >= 5 and is_induced_cycle(g, c):
                return c, "long-cycle"
    if theorem in ("auto", "far-edge"):
        for c in cycles:
            far = _far_vertices(g, c)
            if any(g.masks[w] & far for w in iter_bits(far)):
                return c, "far-edge"
    raise ConstructionError("pattern has neither an induced cycle of length >= 5 "
                            "nor a cycle with an edge far from it")


def threefar_choice(h: Pattern) -> tuple[int, ...]:
    g = h.graph
    for c in all_cycles(g):
        if _far_vertices(g, c).bit_count() >= 3:
            return c
    raise ConstructionError("pattern has no cycle with three vertices far from it")


# ---------------------------------------------------------------------------
# stretched copies of a pattern


def _stretched_copy(b: _Builder, h: Pattern, length: int, fixed: dict[int, int],
                    path_edge: tuple[int, int], path_vertices: Sequence[int], tag: str) -> Model:
    """Copy of ``h`` with every edge a path of ``length`` edges; the copy of
    ``path_edge`` (oriented) runs through ``path_vertices``."""
    g = h.graph
    u, v = path_edge
    branch = {}
    for w in range(1, g.n + 1):
        if w == u:
            branch[w] = path_vertices[0]
        elif w == v:
            branch[w] = path_vertices[-1]
        else:
            branch[w] = fixed.get(w) or b.vertex(f"{tag}.{w}")
    paths = {}
    for s, t in g.edges():
        if (s, t) == (min(u, v), max(u, v)):
            route = tuple(path_vertices) if s == u else tuple(reversed(path_vertices))
        else:
            inner = [b.vertex() for _ in range(length - 1)]
            route = (branch[s], *inner, branch[t])
            b.path(route)
        paths[(s, t)] = route
    return Model(tuple(branch[w] for w in range(1, g.n + 1)), paths)


def build_ub(k: int, max_paths: int = 200) -> LabeledGraph:
    """Bipartite UB_k: A = 1..2k-1, one path p1 a1 p2 ... ak p_{k+1} per k-subset."""
    if k < 1:
        raise ConstructionError("k must be positive")
    count = comb(2 * k - 1, k)
    if count > max_paths:
        raise ConstructionError(f"UB_{k} needs {count} paths, above the cap of {max_paths}")
    b = _Builder()
    a_vertices = [b.vertex(f"A.{i}") for i in range(1, 2 * k)]
    groups = {"A": tuple(a_vertices)}
    for idx, subset in enumerate(itertools.combinations(range(1, 2 * k), k)):
        seq = []
        for t, a in enumerate(subset):
            seq.append(b.vertex(f"p.{idx}.{t + 1}"))
            seq.append(a_vertices[a - 1])
        seq.append(b.vertex(f"p.{idx}.{k + 1}"))
        b.path(seq)
        groups["P." + "-".join(map(str, subset))] = tuple(seq)
    return LabeledGraph("ub", b.graph(), {"k": k, "paths": count}, b.roles, groups)


def build_longcycle_ce(h: Pattern, n: int, theorem: str = "auto", max_paths: int = 200) -> LabeledGraph:
    if n < h.n:
        raise ConstructionError(f"n must be at least |h| = {h.n}")
    cycle, which = longcycle_choice(h, theorem)
    edge = (cycle[0], cycle[1])
    ub = build_ub(n, max_paths)
    b = _Builder()
    b.n = ub.graph.n
    b.edges = set(ub.graph.edges())
    b.roles = dict(ub.roles)
    a_mask = to_mask(ub.groups["A"])
    copies: dict[str, Model] = {}
    parts = []
    groups = dict(ub.groups)
    for name, seq in ub.groups.items():
        if not name.startswith("P."):
            continue
        before = b.n
        model = _stretched_copy(b, h, 2 * n, {}, edge, seq, "H" + name[1:])
        copies["H" + name[1:]] = model
        members = to_mask(model.vertices())
        parts.append(members & ~a_mask)
        groups["H" + name[1:]] = model.vertices()
        assert b.n > before
    extra: dict[int, int] = {}
    _complete_between(parts, extra)
    params = {"n": n, "paths": ub.params["paths"], "u": edge[0], "v": edge[1]}
    lg = LabeledGraph("hyper", b.graph(extra), params, b.roles, groups, h, copies)
    lg.params["theorem"] = 0 if which == "long-cycle" else 1
    return lg


def semigrid_paths(n: int) -> list[list[tuple[int, int]]]:
    """P_i as index pairs: v_{i,1}..v_{i,i} then v_{i+1,i}..v_{n,i}."""
    return [[(i, j) for j in range(1, i + 1)] + [(t, i) for t in range(i + 1, n + 1)] for i in range(1, n + 1)]


def build_semigrid(n: int) -> LabeledGraph:
    if n < 3:
        raise ConstructionError("the semi-grid needs n >= 3")
    b = _Builder()
    ids = {}
    for i in range(1, n + 1):
        for j in range(1, i + 1):
            ids[(i, j)] = b.vertex(f"v.{i}.{j}")
    paths = [[ids[p] for p in route] for route in semigrid_paths(n)]
    for route in paths:
        b.path(route)
    on = {v: set() for v in ids.values()}
    for i, route in enumerate(paths):
        for v in route:
            on[v].add(i)
    for v, w in itertools.combinations(sorted(ids.values()), 2):
        if not on[v] & on[w]:
            b.edge(v, w)
    groups = {f"P.{i + 1}": tuple(route) for i, route in enumerate(paths)}
    return LabeledGraph("semigrid", b.graph(), {"n": n}, b.roles, groups)


def build_3far_ce(h: Pattern, n: int) -> LabeledGraph:
    if n < h.n + 2:
        raise ConstructionError(f"n must be at least |h| + 2 = {h.n + 2}")
    cycle = threefar_choice(h)
    u, v = cycle[0], cycle[1]
    sg = build_semigrid(n)
    b = _Builder()
    b.n = sg.graph.n
    b.edges = set(sg.graph.edges())
    b.roles = dict(sg.roles)
    groups = dict(sg.groups)
    copies: dict[str, Model] = {}
    bodies = []
    for j in range(1, n + 1):
        route = groups[f"P.{j}"]
        su = b.vertex(f"H{j}.{u}")
        sv = b.vertex(f"H{j}.{v}")
        b.edge(su, route[0])
        b.edge(route[-1], sv)
        model = _stretched_copy(b, h, n + 1, {u: su, v: sv}, (u, v), (su, *route, sv), f"H{j}")
        copies[f"H.{j}"] = model
        groups[f"H.{j}"] = model.vertices()
        bodies.append(to_mask(model.vertices()) & ~to_mask(route))
    everything = (1 << (b.n + 1)) - 2
    extra: dict[int, int] = {}
    for j, body in enumerate(bodies, 1):
        outside = everything & ~to_mask(copies[f"H.{j}"].vertices())
        for w in iter_bits(body):
            extra[w] = extra.get(w, 0) | outside
        for w in iter_bits(outside):
            extra[w] = extra.get(w, 0) | body
    params = {"n": n, "u": u, "v": v}
    return LabeledGraph("3far", b.graph(extra), params, b.roles, groups, h, copies)


# ---------------------------------------------------------------------------
# witnesses


def _k2r_witness(lg: LabeledGraph, avoid: int) -> Model | None:
    g = lg.graph
    r, n, size = lg.params["r"], lg.params["n"], lg.params["wall"]
    free_rows = [i for i in range(size) if not to_mask(lg.groups[f"Q.{i}"]) & avoid]
    for block in range(n):
        hub_u, hub_v = lg.role("u", block), lg.role("v", block)
        if avoid >> hub_u & 1 or avoid >> hub_v & 1:
            continue
        tops = [block * r + j for j in range(r)]
        bottoms = [(block + 1) * r - 1 - j for j in range(r)]
        a_cols = tops
        b_cols = [size - t - 1 for t in bottoms]
        straight = a_cols == b_cols
        if not straight and set(a_cols) & set(b_cols):
            continue
        rightward = b_cols[0] > a_cols[0]
        # straight columns need no turning rows
        choices = [(size - 1,) * r] if straight else itertools.combinations(free_rows, r)
        for rows in choices:
            depth = list(reversed(rows)) if rightward else list(rows)
            routes = []
            used = avoid
            for j in range(r):
                region = _route_region(lg, a_cols[j], b_cols[j], depth[j], size) & ~used
                start, end = lg.role("a", tops[j]), lg.role("b", bottoms[j])
                if not (region >> start & 1 and region >> end & 1):
                    break
                path = shortest_path(g, start, 1 << end, region)
                if path is None:
                    break
                routes.append(path)
                used |= to_mask(path)
            else:
                model = _k2r_model(hub_u, hub_v, routes)
                if verify_model(g, lg.pattern, model):
                    return model
    return None


def _route_region(lg: LabeledGraph, col_a: int, col_b: int, row: int, size: int) -> int:
    mask = 0
    lo, hi = sorted((col_a, col_b))
    for v in lg.groups[f"C.{col_a}"]:
        if wall_cell(lg, v)[0] <= row:
            mask |= 1 << v
    for v in lg.groups[f"C.{col_b}"]:
        if wall_cell(lg, v)[0] >= row:
            mask |= 1 << v
    for v in lg.groups[f"Q.{row}"]:
        if lo <= wall_cell(lg, v)[1] <= hi:
            mask |= 1 << v
    return mask


def _k2r_model(hub_u: int, hub_v: int, routes: Sequence[Sequence[int]]) -> Model:
    branch = [hub_u, hub_v]
    paths = {}
    for t, route in enumerate(routes, 3):
        branch.append(route[0])
        paths[(1, t)] = (hub_u, route[0])
        paths[(2, t)] = (hub_v, *reversed(route))
    return Model(tuple(branch), paths)


def _forest_witness(lg: LabeledGraph, avoid: int) -> Model | None:
    g, h = lg.graph, lg.pattern
    pat = h.graph
    v, v2 = lg.params["v"], lg.params["v2"]
    for i in range(lg.params["n"]):
        image = {w: lg.role("copy", i, w) for w in range(1, pat.n + 1)}
        if to_mask(image.values()) & avoid:
            continue
        a, b = lg.role("a", i), lg.role("b", i)
        wall_mask = 0
        for c in range(lg.params["wall"]):
            wall_mask |= to_mask(lg.groups[f"C.{c}"])
        region = wall_mask & ~avoid
        if not (region >> a & 1 and region >> b & 1):
            continue
        link = shortest_path(g, a, 1 << b, region)
        if link is None:
            continue
        paths = {}
        for s, t in pat.edges():
            if {s, t} == {v, v2}:
                route = (image[v], *link, image[v2])
                paths[(s, t)] = route if s == v else tuple(reversed(route))
            else:
                paths[(s, t)] = (image[s], image[t])
        model = Model(tuple(image[w] for w in range(1, pat.n + 1)), paths)
        if verify_model(g, h, model):
            return model
    return None


def _copy_witness(lg: LabeledGraph, avoid: int) -> Model | None:
    for model in lg.copies.values():
        if not to_mask(model.vertices()) & avoid:
            return model
    return None


def witness_threshold(lg: LabeledGraph) -> int:
    """Largest avoided-set size for which the family guarantees a witness."""
    n = lg.params["n"]
    if lg.family in ("k2r", "forest"):
        return (n + 1) // 2 - 1
    if lg.family == "hyper":
        return n - 1
    if lg.family == "3far":
        return (n - 1) // 2
    raise ConstructionError(f"family {lg.family} has no witness rule")


def witness_avoiding(lg: LabeledGraph, avoid: Iterable[int] = (), strict: bool = False) -> Model | None:
    """An induced model of the family's pattern disjoint from ``avoid``.

    The routing is attempted for any ``avoid``; ``strict`` refuses sets larger
    than the family's guaranteed threshold instead.
    """
    avoid = set(avoid)
    if lg.pattern is None:
        raise ConstructionError(f"family {lg.family} has no target pattern")
    if strict and len(avoid) > witness_threshold(lg):
        raise ThresholdExceeded(f"|x| = {len(avoid)} exceeds the guarantee {witness_threshold(lg)}")
    mask = to_mask(avoid)
    if lg.family == "k2r":
        found = _k2r_witness(lg, mask)
    elif lg.family == "forest":
        found = _forest_witness(lg, mask)
    else:
        found = _copy_witness(lg, mask)
    if found is not None:
        check = verify_model(lg.graph, lg.pattern, found)
        if not check.ok or to_mask(found.vertices()) & mask:
            raise AssertionError(f"witness failed verification: {check.condition}")
    return found


FAMILIES = ("triangle-wall", "garland", "k2r", "forest", "hyper", "semigrid", "3far")
