"""Maximum cardinality matching in general graphs (Edmonds' blossom shrinking).

Graphs here are plain adjacency lists over ``0..n-1``; the A-path machinery
builds its auxiliary graph in that form.
"""
from __future__ import annotations

from collections import deque
from typing import Sequence


class _Search:
    """One alternating-forest search from a single exposed root."""

    def __init__(self, adj: Sequence[Sequence[int]], mate: list[int]) -> None:
        self.adj = adj
        self.mate = mate
        n = len(adj)
        self.n = n

    def run(self, root: int) -> tuple[int, list[int], list[bool]]:
        """Return ``(end, parent, even)``; ``end`` is -1 when no augmenting path exists.

        ``even[v]`` marks vertices reachable from the root by an even-length
        alternating path (outer vertices, including those absorbed in blossoms).
        """
        n, adj, mate = self.n, self.adj, self.mate
        parent = [-1] * n
        base = list(range(n))
        even = [False] * n
        even[root] = True
        queue = deque([root])

        def lca(a: int, b: int) -> int:
            marked = [False] * n
            while True:
                a = base[a]
                marked[a] = True
                if mate[a] == -1:
                    break
                a = parent[mate[a]]
            while True:
                b = base[b]
                if marked[b]:
                    return b
                b = parent[mate[b]]

        def mark_path(v: int, b: int, child: int, blossom: list[bool]) -> None:
            while base[v] != b:
                blossom[base[v]] = blossom[base[mate[v]]] = True
                parent[v] = child
                child = mate[v]
                v = parent[mate[v]]

        while queue:
            v = queue.popleft()
            for u in adj[v]:
                if base[v] == base[u] or mate[v] == u:
                    continue
                if u == root or (mate[u] != -1 and parent[mate[u]] != -1):
                    cur = lca(v, u)
                    blossom = [False] * n
                    mark_path(v, cur, u, blossom)
                    mark_path(u, cur, v, blossom)
                    for i in range(n):
                        if blossom[base[i]]:
                            base[i] = cur
                            if not even[i]:
                                even[i] = True
                                queue.append(i)
                elif parent[u] == -1:
                    parent[u] = v
                    if mate[u] == -1:
                        return u, parent, even
                    w = mate[u]
                    even[w] = True
                    queue.append(w)
        return -1, parent, even


def max_matching(adj: Sequence[Sequence[int]], mate: list[int] | None = None) -> list[int]:
    """Maximum matching; returns ``mate`` with ``mate[v] = -1`` for exposed vertices.

    Vertices are scanned in increasing order, so the output is deterministic.
    An initial matching may be supplied and is extended.
    """
    n = len(adj)
    mate = [-1] * n if mate is None else list(mate)
    # cheap greedy start
    for v in range(n):
        if mate[v] == -1:
            for u in adj[v]:
                if mate[u] == -1 and u != v:
                    mate[u], mate[v] = v, u
                    break
    search = _Search(adj, mate)
    for root in range(n):
        if mate[root] != -1:
            continue
        end, parent, _ = search.run(root)
        while end != -1:
            pv = parent[end]
            nxt = mate[pv]
            mate[end] = pv
            mate[pv] = end
            end = nxt
    return mate


def matching_size(mate: Sequence[int]) -> int:
    return sum(1 for v, u in enumerate(mate) if u > v)


def gallai_edmonds_deficient(adj: Sequence[Sequence[int]], mate: Sequence[int]) -> list[bool]:
    """Vertices missed by at least one maximum matching (the set D of the
    Gallai-Edmonds decomposition), given a maximum matching ``mate``.

    A vertex is in D exactly when an even alternating path from some exposed
    vertex reaches it; with a maximum matching the searches never augment.
    """
    n = len(adj)
    mate = list(mate)
    search = _Search(adj, mate)
    deficient = [False] * n
    for root in range(n):
        if mate[root] != -1:
            continue
        end, _, even = search.run(root)
        if end != -1:
            raise ValueError("matching is not maximum")
        for v in range(n):
            if even[v]:
                deficient[v] = True
    return deficient
