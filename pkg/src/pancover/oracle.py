"""Exact packing and covering numbers by exhaustive search.

Both searches run on top of the generic model finder: covers branch on the
vertices of a found model, packings are maximum set packings over the
inclusion-minimal model vertex sets.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .certificate import Certificate, VerificationFailed, covering, packing, verify_certificate
from .detect import BudgetExceeded, Model, Pattern, PreconditionError, _ModelSearch
from .graph import Graph, component_masks, from_mask, iter_bits, to_mask

DEFAULT_BUDGET = 10**7


class _Counter:
    def __init__(self, budget: int) -> None:
        self.budget = budget
        self.used = 0
        self.searches = 0

    def tick(self, amount: int = 1) -> None:
        self.used += amount
        if self.used > self.budget:
            raise BudgetExceeded(f"oracle exceeded {self.budget} expansions")

    def find(self, g: Graph, h: Pattern, within: int) -> Model | None:
        search = _ModelSearch(g, h, within & g.all_mask, False, max(self.budget - self.used, 0))
        try:
            return search.run()
        finally:
            self.searches += 1
            self.tick(search.steps + 1)


def _shrink(counter: _Counter, g: Graph, h: Pattern, model: Model) -> int:
    """Vertex set of an inclusion-minimal model inside ``V(model)``."""
    current = to_mask(model.vertices())
    changed = True
    while changed:
        changed = False
        for v in iter_bits(current):
            smaller = counter.find(g, h, current & ~(1 << v))
            if smaller is not None:
                current = to_mask(smaller.vertices())
                changed = True
                break
    return current


def minimal_models(g: Graph, h: Pattern, within: int | None = None,
                   budget: int = DEFAULT_BUDGET, _counter: _Counter | None = None) -> dict[int, Model]:
    """All inclusion-minimal model vertex sets (as masks) with one model each.

    A minimal model other than ``M`` misses a vertex of ``M``, so recursing on
    ``W - v`` for each ``v`` in ``M`` reaches all of them.
    """
    counter = _counter or _Counter(budget)
    alive = g.all_mask if within is None else within
    found: dict[int, Model] = {}
    seen: set[int] = set()
    stack = [alive]
    while stack:
        w = stack.pop()
        if w in seen:
            continue
        seen.add(w)
        counter.tick()
        # a known minimal model inside w saves a search
        inside = next((m for m in found if m & ~w == 0), None)
        if inside is None:
            model = counter.find(g, h, w)
            if model is None:
                continue
            inside = _shrink(counter, g, h, model)
            if inside not in found:
                found[inside] = counter.find(g, h, inside)
        for v in iter_bits(inside):
            stack.append(w & ~(1 << v))
    return found


def _max_packing(sets: list[int], counter: _Counter) -> list[int]:
    """Maximum family of pairwise disjoint masks (branch and bound)."""
    sets = sorted(sets, key=lambda m: (m.bit_count(), m))
    smallest = min((m.bit_count() for m in sets), default=1)
    best: list[int] = []

    def grow(start: int, used: int, chosen: list[int]) -> None:
        nonlocal best
        counter.tick()
        if len(chosen) > len(best):
            best = list(chosen)
        candidates = [m for m in sets[start:] if not m & used]
        if not candidates:
            return
        free = 0
        for m in candidates:
            free |= m
        if len(chosen) + free.bit_count() // smallest <= len(best):
            return
        for i in range(start, len(sets)):
            m = sets[i]
            if m & used:
                continue
            chosen.append(m)
            grow(i + 1, used | m, chosen)
            chosen.pop()
            if len(chosen) + (free.bit_count()) // smallest <= len(best):
                return

    grow(0, 0, [])
    return best


@dataclass
class PackingResult:
    size: int
    models: tuple[Model, ...]
    expansions: int


@dataclass
class CoverResult:
    size: int
    cover: tuple[int, ...]
    expansions: int


def nu_exact(g: Graph, h: Pattern, within: int | None = None, budget: int = DEFAULT_BUDGET) -> PackingResult:
    counter = _Counter(budget)
    family = minimal_models(g, h, within, _counter=counter)
    best = _max_packing(list(family), counter)
    return PackingResult(len(best), tuple(family[m] for m in best), counter.used)


def tau_exact(g: Graph, h: Pattern, within: int | None = None, budget: int = DEFAULT_BUDGET) -> CoverResult:
    """Iterative deepening on the cover size, branching on a found model's vertices."""
    counter = _Counter(budget)
    alive = g.all_mask if within is None else within
    failed: set[tuple[int, int]] = set()

    def hit(w: int, left: int) -> int | None:
        if (w, left) in failed:
            return None
        model = counter.find(g, h, w)
        if model is None:
            return 0
        if left == 0:
            failed.add((w, left))
            return None
        for v in iter_bits(_shrink(counter, g, h, model)):
            rest = hit(w & ~(1 << v), left - 1)
            if rest is not None:
                return rest | (1 << v)
        failed.add((w, left))
        return None

    for size in range(0, alive.bit_count() + 1):
        cover = hit(alive, size)
        if cover is not None:
            return CoverResult(size, from_mask(cover), counter.used)
    raise AssertionError("deleting every vertex must leave no model")


@dataclass
class DualityReport:
    nu: int
    tau: int
    packing: tuple[Model, ...]
    cover: tuple[int, ...]
    pattern: Pattern
    expansions: dict[str, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.tau < self.nu:
            raise AssertionError(f"weak duality violated: tau {self.tau} < nu {self.nu}")

    def format(self) -> str:
        lines = [f"nu {self.nu}", f"tau {self.tau}"]
        if self.nu:
            lines.append(packing(self.pattern.name, self.nu, list(self.packing), "").format().rstrip())
        lines.append(covering(self.pattern.name, self.nu, self.cover, "").format().rstrip())
        lines += [f"c expansions {k}={v}" for k, v in self.expansions.items()]
        return "\n".join(lines) + "\n"


def duality(g: Graph, h: Pattern, budget: int = DEFAULT_BUDGET) -> DualityReport:
    nu = nu_exact(g, h, budget=budget)
    tau = tau_exact(g, h, budget=budget)
    return DualityReport(nu.size, tau.size, nu.models, tau.cover, h,
                         {"nu": nu.expansions, "tau": tau.expansions})


# ---------------------------------------------------------------------------
# paths and subdivided stars


def _component_shapes(h: Graph) -> list[tuple[int, list[list[int]]]]:
    """Per component: (center or 0, routes from the center / along the path)."""
    shapes = []
    if len(h.edges()) != h.n - len(component_masks(h)):
        raise PreconditionError("pattern must be a forest of paths and subdivided stars")
    for comp in component_masks(h):
        verts = from_mask(comp)
        high = [v for v in verts if h.degree(v) > 2]
        if len(high) > 1:
            raise PreconditionError("a component has two vertices of degree above 2")
        if high:
            center = high[0]
            starts = list(h.neighbors(center))
        else:
            center = 0
            ends = [v for v in verts if h.degree(v) <= 1]
            starts = [ends[0]]
        routes = []
        for s in starts:
            route = [center, s] if center else [s]
            while True:
                nxt = [w for w in h.neighbors(route[-1]) if w not in route]
                if not nxt:
                    break
                route.append(nxt[0])
            routes.append(route)
        shapes.append((center, routes))
    return shapes


def is_star_forest(h: Pattern) -> bool:
    try:
        _component_shapes(h.graph)
    except PreconditionError:
        return False
    return True


def copy_from_model(h: Pattern, model: Model) -> Model:
    """Truncate every route of a model of a path/star forest to an exact copy."""
    pat = h.graph
    branch = list(model.branch)

    def walk(route: list[int]) -> list[int]:
        host = [model.image(route[0])]
        for s, t in zip(route, route[1:]):
            p = model.paths[(min(s, t), max(s, t))]
            host.extend((p if s < t else tuple(reversed(p)))[1:])
        return host

    for center, routes in _component_shapes(pat):
        for route in routes:
            host = walk(route)
            for w, x in zip(route, host):
                branch[w - 1] = x
    paths = {(s, t): (branch[s - 1], branch[t - 1]) for s, t in pat.edges()}
    return Model(tuple(branch), paths)


def solve_star_forest(g: Graph, h: Pattern, k: int, budget: int = DEFAULT_BUDGET) -> Certificate:
    """Greedy: peel exact copies of ``h``; ``k`` of them pack, otherwise their union covers."""
    if k < 1:
        raise ValueError("k must be positive")
    _component_shapes(h.graph)
    counter = _Counter(budget)
    alive = g.all_mask
    copies: list[Model] = []
    while len(copies) < k:
        model = counter.find(g, h, alive)
        if model is None:
            break
        copy = copy_from_model(h, model)
        copies.append(copy)
        alive &= ~to_mask(copy.vertices())
    if len(copies) >= k:
        cert = packing(h.name, k, copies, f"star-forest k={k}")
    else:
        cover = [v for c in copies for v in c.vertices()]
        cert = covering(h.name, k, cover, f"star-forest k={k}", len(copies) * h.n)
    check = verify_certificate(g, cert, h, budget=budget)
    if not check.ok:
        raise VerificationFailed(check.reason)
    return cert
