"""Vertex-disjoint paths by unit-capacity augmenting paths (Menger).

The residual search runs on the implicit split graph: every vertex ``v`` has an
``in`` and an ``out`` copy joined by a unit arc.  Flow is stored as the set of
vertex-level arcs ``(u, v)`` meaning ``u_out -> v_in`` carries one unit.
"""
from __future__ import annotations

from collections import deque

from .graph import Graph, iter_bits


def fan_paths(g: Graph, source: int, targets: int, need: int, within: int | None = None,
              target_capacity: int = 1) -> list[tuple[int, ...]]:
    """Up to ``need`` paths from ``source`` to the ``targets`` mask, pairwise
    sharing only ``source`` (and, if ``target_capacity > 1``, their common end).

    Each path stops at its first target vertex; interior vertices lie in
    ``within`` (default: every vertex) and outside ``targets``.
    """
    if targets >> source & 1:
        raise ValueError("source must not be a target")
    interior = (g.all_mask if within is None else within) & ~targets & ~(1 << source)
    masks = g.masks
    arcs: set[tuple[int, int]] = set()
    nxt: dict[int, int] = {}
    prv: dict[int, int] = {}
    target_load: dict[int, int] = {}
    found = 0
    while found < need:
        # BFS over (vertex, side) with side 0 = in, 1 = out
        par: dict[tuple[int, int], tuple[int, int] | None] = {(source, 1): None}
        queue = deque([(source, 1)])
        end: tuple[int, int] | None = None
        while queue and end is None:
            v, side = queue.popleft()
            if side == 1:
                # forward arcs v_out -> w_in
                for w in iter_bits(masks[v] & (interior | targets)):
                    if (v, w) in arcs or (w, 0) in par:
                        continue
                    par[(w, 0)] = (v, 1)
                    if targets >> w & 1:
                        if target_load.get(w, 0) < target_capacity:
                            end = (w, 0)
                            break
                        # saturated target: only cancellation back along an arc into it
                        queue.append((w, 0))
                    else:
                        queue.append((w, 0))
                if end is None and v != source and v in prv and (v, 0) not in par:
                    # back along the internal arc
                    par[(v, 0)] = (v, 1)
                    queue.append((v, 0))
            else:
                if targets >> v & 1:
                    # back arcs into a saturated target
                    for u in _preds(arcs, v, masks):
                        if (u, 1) not in par:
                            par[(u, 1)] = (v, 0)
                            queue.append((u, 1))
                    continue
                if v in prv:
                    u = prv[v]
                    if (u, 1) not in par:
                        par[(u, 1)] = (v, 0)
                        queue.append((u, 1))
                elif (v, 1) not in par:
                    par[(v, 1)] = (v, 0)
                    queue.append((v, 1))
        if end is None:
            break
        # apply augmentation
        node = end
        while par[node] is not None:
            prev = par[node]
            (a, sa), (b, sb) = prev, node
            if sa == 1 and sb == 0:
                if a == b:
                    pass
                else:
                    arcs.add((a, b))
            elif sa == 0 and sb == 1:
                if a != b:
                    arcs.discard((b, a))
            node = prev
        target_load[end[0]] = target_load.get(end[0], 0) + 1
        found += 1
        nxt, prv = _rebuild(arcs, source)
    return _decompose(arcs, source, targets)


def _preds(arcs: set[tuple[int, int]], v: int, masks: tuple[int, ...]) -> list[int]:
    return [u for u in iter_bits(masks[v]) if (u, v) in arcs]


def _rebuild(arcs: set[tuple[int, int]], source: int) -> tuple[dict[int, int], dict[int, int]]:
    nxt: dict[int, int] = {}
    prv: dict[int, int] = {}
    for u, v in arcs:
        if u != source:
            nxt[u] = v
        prv[v] = u
    return nxt, prv


def _decompose(arcs: set[tuple[int, int]], source: int, targets: int) -> list[tuple[int, ...]]:
    out_of: dict[int, list[int]] = {}
    for u, v in sorted(arcs):
        out_of.setdefault(u, []).append(v)
    paths = []
    for first in out_of.get(source, []):
        path = [source, first]
        while not targets >> path[-1] & 1:
            path.append(out_of[path[-1]][0])
        paths.append(tuple(path))
    return paths


def disjoint_st_paths(g: Graph, s: int, t: int, need: int, within: int | None = None) -> list[tuple[int, ...]]:
    """Up to ``need`` internally vertex-disjoint ``s``-``t`` paths."""
    return fan_paths(g, s, 1 << t, need, within, target_capacity=need)
