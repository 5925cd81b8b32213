"""Recognition and extraction of induced subdivisions.

Models follow the usual definition: pattern vertices map to host vertices
("branch vertices") and pattern edges map to induced host paths whose
interiors are pairwise non-adjacent and avoid the other branch vertices.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .flow import fan_paths
from .graph import (
    Graph, blocks, from_mask, is_connected_mask, is_induced_cycle,
    is_induced_path, iter_bits, parse_graph, serialize_graph, to_mask,
)


class BudgetExceeded(RuntimeError):
    """A search hit its node-expansion cap; the answer is unknown."""


class PreconditionError(ValueError):
    """An extraction routine was called outside its stated hypotheses."""


# ---------------------------------------------------------------------------
# patterns


@dataclass(frozen=True)
class Pattern:
    name: str
    graph: Graph

    @property
    def n(self) -> int:
        return self.graph.n

    def edges(self) -> list[tuple[int, int]]:
        return self.graph.edges()


# pendant vertex 1, triangle {2, 3, 4} attached at 2
PAN1 = Pattern("pan1", Graph.from_edges(4, [(1, 2), (2, 3), (2, 4), (3, 4)]))
# tail 1-2, triangle {3, 4, 5} attached at 3
PAN2 = Pattern("pan2", Graph.from_edges(5, [(1, 2), (2, 3), (3, 4), (3, 5), (4, 5)]))
# 1 and 2 are the degree-3 vertices
DIAMOND = Pattern("diamond", Graph.from_edges(4, [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4)]))

PRESETS = {"pan1": PAN1, "pan2": PAN2, "diamond": DIAMOND}


def load_pattern(name_or_text: str) -> Pattern:
    """A preset name, or pattern-file text with header ``p pat <n> <m>``."""
    key = name_or_text.strip().lower()
    if key in PRESETS:
        return PRESETS[key]
    return Pattern("custom", parse_graph(name_or_text, kind="pat"))


def pattern_text(pattern: Pattern) -> str:
    return serialize_graph(pattern.graph, kind="pat")


# ---------------------------------------------------------------------------
# models


@dataclass(frozen=True)
class Model:
    """``branch[u - 1]`` is the image of pattern vertex ``u``; ``paths[(u, w)]``
    (with ``u < w``) runs from ``branch[u - 1]`` to ``branch[w - 1]``."""

    branch: tuple[int, ...]
    paths: dict[tuple[int, int], tuple[int, ...]]

    def image(self, u: int) -> int:
        return self.branch[u - 1]

    def vertices(self) -> tuple[int, ...]:
        seen = set(self.branch)
        for path in self.paths.values():
            seen.update(path)
        return tuple(sorted(seen))

    def __hash__(self) -> int:
        return hash((self.branch, tuple(sorted(self.paths.items()))))


@dataclass(frozen=True)
class ModelCheck:
    ok: bool
    condition: str = ""
    witness: tuple[int, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


def verify_model(g: Graph, h: Pattern, model: Model) -> ModelCheck:
    """Check every model condition; report the first violation with witnesses."""
    pat = h.graph
    if len(model.branch) != pat.n:
        return ModelCheck(False, "branch map size", ())
    g.check_vertices(model.branch)
    if len(set(model.branch)) != pat.n:
        return ModelCheck(False, "injective branch map", model.branch)
    edges = pat.edges()
    if set(model.paths) != set(edges):
        return ModelCheck(False, "edge map domain", ())
    branch_mask = to_mask(model.branch)
    interiors: dict[tuple[int, int], int] = {}
    claimed = branch_mask
    for (u, w) in edges:
        path = model.paths[(u, w)]
        g.check_vertices(path)
        if len(path) < 2 or path[0] != model.image(u) or path[-1] != model.image(w):
            return ModelCheck(False, "path endpoints", (u, w))
        if not is_induced_path(g, path):
            return ModelCheck(False, "edge path induced", tuple(path))
        inner = to_mask(path[1:-1])
        if inner & claimed:
            return ModelCheck(False, "injective interiors", from_mask(inner & claimed))
        claimed |= inner
        interiors[(u, w)] = inner
    masks = g.masks
    keys = list(interiors)
    for i, e1 in enumerate(keys):
        for e2 in keys[i + 1:]:
            for x in iter_bits(interiors[e1]):
                hit = masks[x] & interiors[e2]
                if hit:
                    return ModelCheck(False, "interiors non-adjacent", (x, from_mask(hit)[0]))
    for (u, w), inner in interiors.items():
        for z in pat.vertices():
            if z in (u, w):
                continue
            hit = masks[model.image(z)] & inner
            if hit:
                return ModelCheck(False, "branch avoids foreign interiors", (model.image(z), from_mask(hit)[0]))
    for u in pat.vertices():
        for w in range(u + 1, pat.n + 1):
            if not pat.has_edge(u, w) and g.has_edge(model.image(u), model.image(w)):
                return ModelCheck(False, "non-adjacent branch images", (model.image(u), model.image(w)))
    # the union must induce exactly the subdivision
    expected = sum(len(p) - 1 for p in model.paths.values())
    found = sum((masks[v] & claimed).bit_count() for v in iter_bits(claimed)) // 2
    if found != expected:
        return ModelCheck(False, "image induces the subdivision", model.vertices())
    return ModelCheck(True)


def theta_model(x: int, y: int, routes: Sequence[Sequence[int]]) -> Model:
    """DIAMOND model from two branch vertices joined by three paths."""
    routes = sorted((tuple(r) for r in routes), key=lambda r: (len(r), r))
    for r in routes:
        if r[0] != x or r[-1] != y:
            raise ValueError("routes must run from x to y")
    direct, second, third = routes
    mid3, mid4 = second[1], third[1]
    return Model(
        (x, y, mid3, mid4),
        {
            (1, 2): direct,
            (1, 3): (x, mid3),
            (1, 4): (x, mid4),
            (2, 3): tuple(reversed(second[1:])),
            (2, 4): tuple(reversed(third[1:])),
        },
    )


# ---------------------------------------------------------------------------
# shape recognition for the presets (independent of model search)


def _degrees_in(g: Graph, mask: int) -> dict[int, int]:
    return {v: (g.masks[v] & mask).bit_count() for v in iter_bits(mask)}


def is_pan_shape(g: Graph, vertices: Iterable[int], p: int) -> bool:
    """Does ``g[vertices]`` form a cycle plus a pendant path of at least ``p`` edges?"""
    mask = to_mask(vertices)
    if not mask or not is_connected_mask(g, mask):
        return False
    deg = _degrees_in(g, mask)
    if sum(deg.values()) // 2 != len(deg):
        return False
    ones = [v for v, d in deg.items() if d == 1]
    threes = [v for v, d in deg.items() if d == 3]
    if len(ones) != 1 or len(threes) != 1 or any(d not in (1, 2, 3) for d in deg.values()):
        return False
    # walk the tail from the degree-1 end to the attachment vertex
    length, prev, cur = 0, 0, ones[0]
    while cur != threes[0]:
        nxt = [w for w in iter_bits(g.masks[cur] & mask) if w != prev]
        prev, cur = cur, nxt[0]
        length += 1
    return length >= p


def is_theta_shape(g: Graph, vertices: Iterable[int]) -> bool:
    """Does ``g[vertices]`` form a subdivision of the diamond (an induced theta)?"""
    mask = to_mask(vertices)
    if not mask or not is_connected_mask(g, mask):
        return False
    deg = _degrees_in(g, mask)
    if sum(deg.values()) // 2 != len(deg) + 1:
        return False
    if sorted(d for d in deg.values() if d != 2) != [3, 3]:
        return False
    # theta is 2-connected; the two-cycle "handcuff" is not
    return all(is_connected_mask(g, mask & ~(1 << v)) for v in deg)


def is_induced_subdivision(g: Graph, vertices: Iterable[int], h: Pattern, budget: int = 10**7) -> bool:
    """Is ``g[vertices]`` exactly a subdivision of ``h``?"""
    vertices = list(vertices)
    g.check_vertices(vertices)
    if len(set(vertices)) != len(vertices):
        return False
    if h is PAN1 or h.graph == PAN1.graph:
        return is_pan_shape(g, vertices, 1)
    if h is PAN2 or h.graph == PAN2.graph:
        return is_pan_shape(g, vertices, 2)
    if h is DIAMOND or h.graph == DIAMOND.graph:
        return is_theta_shape(g, vertices)
    return find_model(g, h, within=to_mask(vertices), spanning=True, budget=budget) is not None


# ---------------------------------------------------------------------------
# generic model search


def _pattern_order(pat: Graph) -> list[int]:
    order: list[int] = []
    remaining = set(pat.vertices())
    while remaining:
        placed = to_mask(order)
        best = max(remaining, key=lambda u: ((pat.masks[u] & placed).bit_count(), pat.degree(u), -u))
        order.append(best)
        remaining.discard(best)
    return order


class _ModelSearch:
    def __init__(self, g: Graph, h: Pattern, within: int, spanning: bool, budget: int) -> None:
        self.g = g
        self.pat = h.graph
        self.within = within
        self.spanning = spanning
        self.budget = budget
        self.steps = 0
        self.order = _pattern_order(self.pat)
        # for each placement step, the pattern edges that become routable
        self.routes_after: list[list[tuple[int, int]]] = []
        placed: set[int] = set()
        for u in self.order:
            placed.add(u)
            self.routes_after.append(sorted(
                (min(u, w), max(u, w)) for w in self.pat.neighbors(u) if w in placed))
        self.image = [0] * (self.pat.n + 1)
        self.paths: dict[tuple[int, int], tuple[int, ...]] = {}

    def tick(self) -> None:
        self.steps += 1
        if self.steps > self.budget:
            raise BudgetExceeded(f"model search exceeded {self.budget} expansions")

    def run(self) -> Model | None:
        if self.pat.n == 0:
            return Model((), {})
        found = self._place(0, 0, 0, 0)
        return found

    def _place(self, idx: int, used: int, branch: int, inner: int) -> Model | None:
        if idx == len(self.order):
            if self.spanning and used != self.within:
                return None
            return Model(tuple(self.image[1:]), dict(self.paths))
        self.tick()
        pat, masks = self.pat, self.g.masks
        u = self.order[idx]
        inner_nbrs = 0
        for x in iter_bits(inner):
            inner_nbrs |= masks[x]
        forbidden = used | inner_nbrs
        for w in self.order[:idx]:
            if not pat.has_edge(u, w):
                forbidden |= masks[self.image[w]]
        need = pat.degree(u)
        for x in iter_bits(self.within & ~forbidden):
            if (masks[x] & self.within & ~(used & ~branch)).bit_count() < need:
                continue
            self.image[u] = x
            found = self._route(idx, 0, used | 1 << x, branch | 1 << x, inner)
            if found is not None:
                return found
        self.image[u] = 0
        return None

    def _route(self, idx: int, edge_pos: int, used: int, branch: int, inner: int) -> Model | None:
        todo = self.routes_after[idx]
        if edge_pos == len(todo):
            return self._place(idx + 1, used, branch, inner)
        u, w = todo[edge_pos]
        a, b = self.image[u], self.image[w]
        masks = self.g.masks
        if masks[a] >> b & 1:
            self.paths[(u, w)] = (a, b)
            found = self._route(idx, edge_pos + 1, used, branch, inner)
            if found is None:
                del self.paths[(u, w)]
            return found
        blocked = used
        for x in iter_bits(inner):
            blocked |= masks[x]
        for z in iter_bits(branch & ~(1 << a) & ~(1 << b)):
            blocked |= masks[z]
        allowed = self.within & ~blocked
        return self._extend(idx, edge_pos, (a,), masks[a], allowed, b, used, branch, inner)

    def _extend(self, idx: int, edge_pos: int, path: tuple[int, ...], near: int, allowed: int,
                target: int, used: int, branch: int, inner: int) -> Model | None:
        """Grow an induced path; ``near`` is the neighborhood of ``path`` minus the end."""
        self.tick()
        masks = self.g.masks
        end = path[-1]
        u, w = self.routes_after[idx][edge_pos]
        prior = near & ~masks[end] if len(path) > 1 else 0
        for x in iter_bits(masks[end] & allowed & ~prior):
            if len(path) > 1 and near >> x & 1 and not masks[end] >> x & 1:
                continue
            # x must not touch earlier path vertices
            earlier = 0
            for y in path[:-1]:
                earlier |= masks[y]
            if earlier >> x & 1:
                continue
            new_path = path + (x,)
            if masks[x] >> target & 1:
                self.paths[(u, w)] = new_path + (target,)
                inner_new = inner | to_mask(new_path[1:])
                found = self._route(idx, edge_pos + 1, used | to_mask(new_path[1:]), branch, inner_new)
                if found is not None:
                    return found
                del self.paths[(u, w)]
                continue
            found = self._extend(idx, edge_pos, new_path, near | masks[x], allowed & ~(1 << x),
                                 target, used, branch, inner)
            if found is not None:
                return found
        return None


def find_model(g: Graph, h: Pattern, within: int | None = None, spanning: bool = False,
               budget: int = 10**7) -> Model | None:
    """Exhaustive backtracking search for a model of ``h``.

    ``within`` restricts the host vertices; with ``spanning`` the image must be
    all of ``within``.  Raises :class:`BudgetExceeded` past ``budget`` expansions.
    """
    allowed = g.all_mask if within is None else within & g.all_mask
    return _ModelSearch(g, h, allowed, spanning, budget).run()


# ---------------------------------------------------------------------------
# pans


@dataclass(frozen=True)
class PanSubdivision:
    """An induced subdivision of the ``p``-pan.

    ``tail`` runs from the degree-1 vertex towards the cycle; its last vertex
    is adjacent to ``cycle[0]``, the attachment vertex.
    """

    tail: tuple[int, ...]
    cycle: tuple[int, ...]

    @property
    def p(self) -> int:
        return len(self.tail)

    @property
    def order(self) -> int:
        return len(self.tail) + len(self.cycle)

    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted(self.tail + self.cycle))

    def model(self) -> Model:
        """Model of the p-pan pattern; the triangle maps onto cycle[0], cycle[1], cycle[-1]."""
        cyc = self.cycle
        if self.p == 1:
            u = self.tail[0]
            return Model((u, cyc[0], cyc[1], cyc[-1]), {
                (1, 2): (u, cyc[0]),
                (2, 3): (cyc[0], cyc[1]),
                (2, 4): (cyc[0], cyc[-1]),
                (3, 4): cyc[1:],
            })
        if self.p == 2:
            v1, v2 = self.tail
            return Model((v1, v2, cyc[0], cyc[1], cyc[-1]), {
                (1, 2): (v1, v2),
                (2, 3): (v2, cyc[0]),
                (3, 4): (cyc[0], cyc[1]),
                (3, 5): (cyc[0], cyc[-1]),
                (4, 5): cyc[1:],
            })
        raise ValueError("model conversion is defined for p in {1, 2}")


def check_pan(g: Graph, pan: PanSubdivision) -> bool:
    """Structural check of a PanSubdivision against ``g``."""
    if len(set(pan.tail + pan.cycle)) != pan.order or not pan.tail:
        return False
    if not is_induced_cycle(g, pan.cycle):
        return False
    if not is_induced_path(g, pan.tail + (pan.cycle[0],)):
        return False
    cyc = to_mask(pan.cycle)
    for i, t in enumerate(pan.tail):
        touch = g.masks[t] & cyc
        expected = 1 << pan.cycle[0] if i == len(pan.tail) - 1 else 0
        if touch != expected:
            return False
    return True


def pan_model(pan: PanSubdivision) -> Model:
    return pan.model()


def _induced_paths(g: Graph, length: int, within: int) -> Iterable[tuple[int, ...]]:
    """All induced paths on ``length`` vertices in ``g[within]``, lexicographic order."""
    masks = g.masks

    def grow(path: tuple[int, ...], near: int) -> Iterable[tuple[int, ...]]:
        if len(path) == length:
            yield path
            return
        end = path[-1]
        for x in iter_bits(masks[end] & within & ~near):
            yield from grow(path + (x,), near | masks[end] | 1 << end)

    for v in iter_bits(within):
        if length == 1:
            yield (v,)
        else:
            # ``near`` excludes the path and neighbors of all but the last vertex
            yield from grow((v,), 1 << v)


def find_min_pan(g: Graph, p: int, within: int | None = None) -> PanSubdivision | None:
    """Minimum-order induced subdivision of the ``p``-pan, or None.

    Scans tuples ``(v_1..v_p, w_1, w_2, w_3)``: ``v_1..v_p w_2`` an induced
    path, ``w_1, w_3`` neighbors of ``w_2`` and non-adjacent to every ``v_i``,
    closed by a shortest ``w_1``-``w_3`` path avoiding the closed
    neighborhood of ``{v_1..v_p, w_2}``.  Among minimum orders the
    lexicographically least tuple wins.
    """
    if p < 1:
        raise ValueError("p must be positive")
    allowed = g.all_mask if within is None else within & g.all_mask
    masks = g.masks
    best_key: tuple | None = None
    best: PanSubdivision | None = None
    floor = p + 3
    for head in _induced_paths(g, p + 1, allowed):
        tail, w2 = head[:-1], head[-1]
        if best_key is not None and best_key[0] == floor and tail > best_key[1]:
            break
        closed_tail = to_mask(tail)
        for v in tail:
            closed_tail |= masks[v]
        ends = masks[w2] & allowed & ~closed_tail
        if ends.bit_count() < 2:
            continue
        region = allowed & ~closed_tail & ~masks[w2] & ~(1 << w2)
        for w1 in iter_bits(ends):
            limit = None if best_key is None else best_key[0] - floor
            if best_key is not None and best_key[0] == floor and (tail, w1) > best_key[1:3]:
                break
            targets = ends & ~(1 << w1)
            hit = _layered_hit(masks, w1, targets, region, limit)
            if hit is None:
                continue
            depth, w3, layers = hit
            key = (floor + depth, tail, w1, w2, w3)
            if best_key is None or key < best_key:
                best_key = key
                route = _trace_back(masks, layers, w3)
                best = PanSubdivision(tail, (w2,) + route)
    return best


def _layered_hit(masks: Sequence[int], source: int, targets: int, region: int,
                 limit: int | None) -> tuple[int, int, list[int]] | None:
    """BFS from ``source`` through ``region``; returns ``(depth, target, layers)``
    for the least target at minimum depth, where depth counts region vertices."""
    if masks[source] & targets:
        return 0, from_mask(masks[source] & targets)[0], [1 << source]
    layers = [1 << source]
    seen = 1 << source
    frontier = masks[source] & region
    depth = 0
    while frontier:
        depth += 1
        if limit is not None and depth > limit:
            return None
        layers.append(frontier)
        seen |= frontier
        reach = 0
        for x in iter_bits(frontier):
            reach |= masks[x]
        if reach & targets:
            return depth, from_mask(reach & targets)[0], layers
        frontier = reach & region & ~seen
    return None


def _trace_back(masks: Sequence[int], layers: list[int], target: int) -> tuple[int, ...]:
    """Path from the BFS source through ``layers`` to ``target`` (smallest ids)."""
    out = [target]
    cur = target
    for layer in reversed(layers):
        cur = from_mask(masks[cur] & layer)[0]
        out.append(cur)
    out.reverse()
    return tuple(out)


def extract_pan1(g: Graph, cycle: Sequence[int], v: int) -> PanSubdivision:
    """1-pan inside ``g[V(cycle) + v]`` when ``v`` sees ``cycle[2]`` but none of
    ``cycle[0]``, ``cycle[1]``, ``cycle[3]``."""
    c = tuple(cycle)
    if len(c) < 4 or not is_induced_cycle(g, c):
        raise PreconditionError("cycle must be induced with length >= 4")
    if v in c:
        raise PreconditionError("v must lie outside the cycle")
    if not g.has_edge(v, c[2]) or any(g.has_edge(v, c[i]) for i in (0, 1, 3)):
        raise PreconditionError("v must see v3 and none of v1, v2, v4")
    later = [i for i in range(4, len(c)) if g.has_edge(v, c[i])]
    if not later:
        return PanSubdivision((v,), c[2:] + c[:2])
    i = later[0]
    return PanSubdivision((c[1],), c[2:i + 1] + (v,))


def extract_pan2(g: Graph, cycle: Sequence[int], hanging: Sequence[int]) -> PanSubdivision:
    """2-pan inside ``g[V(cycle) + hanging]`` for a path ``w1..w4`` hanging at ``cycle[1]``."""
    c = tuple(cycle)
    w = tuple(hanging)
    m = len(c)
    if m < 4 or not is_induced_cycle(g, c):
        raise PreconditionError("cycle must be induced with length >= 4")
    if len(w) != 4 or set(w) & set(c):
        raise PreconditionError("need four vertices outside the cycle")
    if not is_induced_path(g, (c[1],) + w):
        raise PreconditionError("v2 w1 w2 w3 w4 must be an induced path")
    wmask = to_mask(w)
    for i in range(4):
        touch = g.masks[c[i]] & wmask
        if touch != (1 << w[0] if i == 1 else 0):
            raise PreconditionError("v2 w1 must be the only edge between v1..v4 and w1..w4")
    if any((g.masks[x] & wmask).bit_count() > 1 for x in c):
        raise PreconditionError("each cycle vertex sees at most one of w1..w4")
    w1, w2, w3, w4 = w
    near = (1 << w1) | (1 << w2)
    sees = [bool(g.masks[x] & near) for x in c]
    if not any(sees[4:]):
        return PanSubdivision((w2, w1), c[1:] + c[:1])
    # largest index (0-based, >= 4) whose vertex sees w1 or w2
    i = max(j for j in range(4, m) if sees[j])
    vi = c[i]
    arc = c[i:] + c[:2]          # v_i ... v_m v_1 v_2
    closing = (w1,) if g.has_edge(vi, w1) else (w1, w2)
    if i > 4:
        # cycle through v_i and v_2 avoiding v_3..v_{i-1}; tail v4 v3 at v2
        cyc = (c[1],) + tuple(reversed(arc[:-1])) + tuple(reversed(closing))
        return _checked(g, PanSubdivision((c[3], c[2]), cyc))
    # i is v5 (0-based 4)
    if m >= 7:
        cyc = (c[4],) + tuple(reversed(c[1:4])) + closing
        return _checked(g, PanSubdivision((c[6], c[5]), cyc))
    if m == 6 and g.masks[c[5]] & ((1 << w3) | (1 << w4)):
        seg = (w1, w2, w3) if g.has_edge(c[5], w3) else (w1, w2, w3, w4)
        cyc = (c[1],) + seg + (c[5], c[0])
        return _checked(g, PanSubdivision((c[3], c[2]), cyc))
    # cycle v5 .. v_m v1 v2 closed through w1 (and w2)
    if g.has_edge(vi, w1):
        return _checked(g, PanSubdivision((w3, w2), (w1,) + tuple(reversed(c[4:] + c[:2]))))
    return _checked(g, PanSubdivision((w4, w3), (w2,) + c[4:] + c[:2] + (w1,)))


def _checked(g: Graph, pan: PanSubdivision) -> PanSubdivision:
    if not check_pan(g, pan):
        raise AssertionError(f"extraction produced an invalid pan: {pan}")
    return pan


def induced_cycle_keeping_marked_edge(g: Graph, cycle: Sequence[int],
                                      marked: Iterable[tuple[int, int]]) -> tuple[int, ...]:
    """Shortcut chords of ``cycle`` while keeping a side with a marked edge."""
    marks = {frozenset(e) for e in marked}
    cyc = list(cycle)

    def has_mark(seq: Sequence[int]) -> bool:
        return any(frozenset((seq[i], seq[(i + 1) % len(seq)])) in marks for i in range(len(seq)))

    if not has_mark(cyc):
        raise PreconditionError("cycle carries no marked edge")
    while True:
        chord = None
        pos = {v: i for i, v in enumerate(cyc)}
        mask = to_mask(cyc)
        for i, v in enumerate(cyc):
            for w in iter_bits(g.masks[v] & mask):
                j = pos[w]
                if j > i + 1 and not (i == 0 and j == len(cyc) - 1):
                    chord = (i, j)
                    break
            if chord:
                break
        if chord is None:
            return tuple(cyc)
        i, j = chord
        left = cyc[i:j + 1]
        right = cyc[j:] + cyc[:i + 1]
        options = [side for side in (left, right) if has_mark(side)]
        cyc = min(options, key=len)


# ---------------------------------------------------------------------------
# diamonds


@dataclass(frozen=True)
class QClaw:
    """Center plus three paths, each from the center to a vertex of ``Q``."""

    center: int
    legs: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]

    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted({v for leg in self.legs for v in leg}))

    def leaves(self) -> tuple[int, ...]:
        return tuple(leg[-1] for leg in self.legs)


def check_qclaw(g: Graph, q: Sequence[int], claw: QClaw) -> str:
    """Empty string when ``claw`` is a claw on ``q``; otherwise the complaint."""
    qmask = to_mask(q)
    if qmask >> claw.center & 1:
        return "center on the path"
    seen = 1 << claw.center
    for leg in claw.legs:
        if len(leg) < 2 or leg[0] != claw.center:
            return "leg must start at the center"
        if not all(g.has_edge(a, b) for a, b in zip(leg, leg[1:])):
            return "leg is not a path"
        if not qmask >> leg[-1] & 1 or to_mask(leg[:-1]) & qmask:
            return "leg must meet the path exactly at its end"
        rest = to_mask(leg[1:])
        if rest & seen or len(set(leg)) != len(leg):
            return "legs must share only the center"
        seen |= rest
    return ""


def _shortcut(g: Graph, path: Sequence[int]) -> tuple[int, ...]:
    """An induced path with the same ends inside ``V(path)``."""
    from .graph import shortest_path
    return shortest_path(g, path[0], 1 << path[-1], to_mask(path[1:-1]))


def diamond_from_qclaw(g: Graph, q: Sequence[int], claw: QClaw) -> Model:
    """Induced diamond subdivision inside ``g[V(claw) + V(q)]``."""
    q = tuple(q)
    if not is_induced_path(g, q):
        raise PreconditionError("q must be an induced path")
    problem = check_qclaw(g, q, claw)
    if problem:
        raise PreconditionError(problem)
    budget = len(set(q) | set(claw.vertices())) + 1
    center, legs = claw.center, list(claw.legs)
    while True:
        budget -= 1
        if budget < 0:
            raise AssertionError("claw reduction failed to shrink")
        pos = {v: i for i, v in enumerate(q)}
        legs.sort(key=lambda leg: pos[leg[-1]])
        e1, e2, e3 = (pos[leg[-1]] for leg in legs)
        q = q[e1:e3 + 1]
        e1, e2, e3 = 0, e2 - e1, e3 - e1
        legs = [_shortcut(g, leg) for leg in legs]
        step = _reduce_claw(g, q, center, legs, e2)
        if step is None:
            p1, p2, p3 = legs
            route_a = p1 + q[1:e2 + 1]
            route_c = p3 + tuple(reversed(q[e2:-1]))
            return theta_model(center, q[e2], (p2, route_a, route_c))
        q, center, legs = step


def _reduce_claw(g: Graph, q: tuple[int, ...], v: int, legs: list[tuple[int, ...]], e2: int):
    """One reduction of the claw proof; None when the union is already induced."""
    masks = g.masks
    p1, p2, p3 = legs
    q1 = q[:e2 + 1]
    q2 = q[e2:]
    inner = [to_mask(p[1:-1]) for p in legs]
    # v seeing an interior vertex of Q1 or Q2
    for idx, seg, pair in ((0, q1, (0, 1)), (1, q2, (1, 2))):
        hit = masks[v] & to_mask(seg[1:-1])
        if hit:
            x = from_mask(hit)[0]
            a, b = legs[pair[0]], legs[pair[1]]
            lo, hi = q.index(a[-1]), q.index(b[-1])
            return q[lo:hi + 1], v, [a, (v, x), b]
    # routes from v around each cycle of the proof
    route_p2q1 = p2 + tuple(reversed(q1[:-1]))       # v .. q_e2 .. q_e1
    route_p1q1 = p1 + q1[1:]                          # v .. q_e1 .. q_e2
    route_p3q2 = p3 + tuple(reversed(q2[:-1]))       # v .. q_e3 .. q_e2
    route_p2q2 = p2 + q2[1:]                          # v .. q_e2 .. q_e3
    cases = ((0, route_p2q1), (1, route_p1q1), (1, route_p3q2), (2, route_p2q2))
    for leg_idx, route in cases:
        found = _chord_to_route(masks, inner[leg_idx], route)
        if found:
            w, z_idx = found
            return _reroute_on_leg(legs[leg_idx], route, w, z_idx)
    # cross edges between P1 and the far side (and symmetrically P3)
    for leg_idx, route, mid_leg in ((0, route_p3q2, p2), (2, route_p1q1, p2)):
        found = _chord_to_route(masks, inner[leg_idx], route)
        if found:
            w, z_idx = found
            leg = legs[leg_idx]
            r = mid_leg[1]
            new_q = (r,) + leg[:leg.index(w) + 1]
            z = route[z_idx]
            towards_v = tuple(reversed(route[:z_idx + 1]))
            onwards = route[z_idx:] + tuple(reversed(mid_leg[1:-1]))
            if mid_leg[-1] == r:
                onwards = route[z_idx:]
            return new_q, z, [towards_v, onwards, (z, w)]
    return None


def _chord_to_route(masks: Sequence[int], leg_inner: int, route: tuple[int, ...]) -> tuple[int, int] | None:
    """First edge from a leg interior vertex to an interior vertex of ``route``."""
    for w in iter_bits(leg_inner):
        for z_idx in range(1, len(route) - 1):
            if masks[w] >> route[z_idx] & 1:
                return w, z_idx
    return None


def _reroute_on_leg(leg: tuple[int, ...], route: tuple[int, ...], w: int, z_idx: int):
    """The leg becomes the new path; ``route[z_idx]`` becomes the new center."""
    z = route[z_idx]
    towards_start = tuple(reversed(route[:z_idx + 1]))
    towards_end = route[z_idx:]
    return leg, z, [towards_start, towards_end, (z, w)]


def detect_diamond(g: Graph, within: int | None = None) -> Model | None:
    """An induced diamond subdivision of ``g[within]``, or None.

    For each induced path ``a b c`` and vertex ``d`` outside it, three paths
    from ``d`` to ``{a, b, c}`` sharing only ``d`` form a claw on ``a b c``,
    which the claw reduction turns into a diamond.  The search runs inside
    each 2-connected block that is neither a clique edge nor a cycle.
    """
    allowed = g.all_mask if within is None else within & g.all_mask
    sub = g if within is None else _restrict(g, allowed)
    masks = sub.masks
    bct = blocks(sub)
    for block in bct.blocks:
        if len(block) < 4:
            continue
        bmask = to_mask(block)
        local = {v: masks[v] & bmask for v in block}
        edges = sum(m.bit_count() for m in local.values()) // 2
        if edges == len(block):
            continue  # a cycle
        for b in sorted(block):
            if local[b].bit_count() < 3:
                continue
            nb = from_mask(local[b])
            for i, a in enumerate(nb):
                for c in nb[i + 1:]:
                    if local[a] >> c & 1:
                        continue
                    qmask = (1 << a) | (1 << b) | (1 << c)
                    for d in iter_bits(bmask & ~qmask):
                        if local[d].bit_count() < 3:
                            continue
                        legs = fan_paths(sub, d, qmask, 3, within=bmask)
                        if len(legs) < 3:
                            continue
                        claw = QClaw(d, tuple(sorted(legs, key=lambda leg: leg[-1])))
                        model = diamond_from_qclaw(sub, (a, b, c), claw)
                        return model
    return None


def _restrict(g: Graph, allowed: int) -> Graph:
    """Same vertex ids, edges only inside ``allowed``."""
    masks = tuple(m & allowed if allowed >> v & 1 else 0 for v, m in enumerate(g.masks))
    return Graph(g.n, masks)
