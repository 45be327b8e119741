"""Forbidden-subgraph tests and matching numbers.

Containment is ordinary (not induced) subgraph containment: an injective map
of pattern vertices to host vertices that sends edges to edges.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence, Union

from .graph import Graph, GraphError, bits, complete_bipartite, friendship, k_disjoint_edges, wheel


class PatternError(ValueError):
    """Malformed pattern string or pattern parameters out of range."""


# -- subgraph containment -------------------------------------------------------------


def _search_order(f: Graph) -> list[int]:
    order: list[int] = []
    placed = 0
    degrees = f.degrees()
    remaining = set(range(f.n))
    while remaining:
        v = max(remaining, key=lambda u: ((f.adj[u] & placed).bit_count(), degrees[u], -u))
        order.append(v)
        placed |= 1 << v
        remaining.discard(v)
    return order


def contains_subgraph(g: Graph, f: Graph) -> bool:
    """True iff ``g`` has a (not necessarily induced) subgraph isomorphic to ``f``."""
    if f.n == 0:
        return True
    if f.n > g.n or f.edge_count() > g.edge_count():
        return False
    f_deg = sorted(f.degrees(), reverse=True)
    g_deg = sorted(g.degrees(), reverse=True)
    if any(a > b for a, b in zip(f_deg, g_deg)):
        return False

    order = _search_order(f)
    pos = {v: i for i, v in enumerate(order)}
    # for each pattern vertex in search order: mapped-earlier neighbours and required degree
    back = [[u for u in bits(f.adj[v]) if pos[u] < i] for i, v in enumerate(order)]
    need = [f.degree(v) for v in order]
    max_deg = max(need)
    g_degrees = g.degrees()
    at_least = [0] * (max_deg + 1)
    for d in range(max_deg + 1):
        at_least[d] = sum(1 << v for v in range(g.n) if g_degrees[v] >= d)

    image = [0] * f.n
    depth = len(order)

    def extend(i: int, used: int) -> bool:
        if i == depth:
            return True
        cand = at_least[need[i]] & ~used
        for u in back[i]:
            cand &= g.adj[image[u]]
            if not cand:
                return False
        for c in bits(cand):
            image[order[i]] = c
            if extend(i + 1, used | 1 << c):
                return True
        return False

    return extend(0, 0)


# -- matchings ---------------------------------------------------------------------------


def maximum_matching(g: Graph) -> list[tuple[int, int]]:
    """A maximum matching of ``g`` by Edmonds' augmenting paths with blossom shrinking."""
    n = g.n
    nbrs = [list(bits(row)) for row in g.adj]
    match = [-1] * n
    # greedy start
    for v in range(n):
        if match[v] == -1:
            for w in nbrs[v]:
                if match[w] == -1:
                    match[v], match[w] = w, v
                    break

    def augment_from(root: int) -> bool:
        parent = [-1] * n
        base = list(range(n))
        used = [False] * n
        used[root] = True
        queue = deque([root])

        def lca(a: int, b: int) -> int:
            seen = [False] * n
            while True:
                a = base[a]
                seen[a] = True
                if match[a] == -1:
                    break
                a = parent[match[a]]
            while True:
                b = base[b]
                if seen[b]:
                    return b
                b = parent[match[b]]

        def mark(v: int, b: int, child: int, blossom: list[bool]) -> None:
            while base[v] != b:
                blossom[base[v]] = blossom[base[match[v]]] = True
                parent[v] = child
                child = match[v]
                v = parent[match[v]]

        while queue:
            v = queue.popleft()
            for to in nbrs[v]:
                if base[v] == base[to] or match[v] == to:
                    continue
                if to == root or (match[to] != -1 and parent[match[to]] != -1):
                    cur = lca(v, to)
                    blossom = [False] * n
                    mark(v, cur, to, blossom)
                    mark(to, cur, v, blossom)
                    for i in range(n):
                        if blossom[base[i]]:
                            base[i] = cur
                            if not used[i]:
                                used[i] = True
                                queue.append(i)
                elif parent[to] == -1:
                    parent[to] = v
                    if match[to] == -1:
                        while to != -1:
                            pv = parent[to]
                            nxt = match[pv]
                            match[to], match[pv] = pv, to
                            to = nxt
                        return True
                    used[match[to]] = True
                    queue.append(match[to])
        return False

    for v in range(n):
        if match[v] == -1 and nbrs[v]:
            augment_from(v)
    return [(v, match[v]) for v in range(n) if v < match[v]]


def matching_number(g: Graph) -> int:
    return len(maximum_matching(g))


# -- wheels and friendship graphs via neighbourhoods -------------------------------------------
#
# The hub of W_k or F_k sees the whole rim, so W_k is in G iff some G[N(v)]
# contains C_(k-1), and F_k is in G iff some G[N(v)] has k independent edges.


def _blocks(adj: Sequence[int], mask: int) -> list[int]:
    """Vertex masks of the biconnected components of ``G[mask]`` with at least one edge."""
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    blocks: list[int] = []
    clock = 0
    for root in bits(mask):
        if root in disc:
            continue
        disc[root] = low[root] = clock
        clock += 1
        stack = [(root, -1, iter(bits(adj[root] & mask)))]
        edges: list[tuple[int, int]] = []
        while stack:
            v, parent, it = stack[-1]
            for w in it:
                if w not in disc:
                    disc[w] = low[w] = clock
                    clock += 1
                    edges.append((v, w))
                    stack.append((w, v, iter(bits(adj[w] & mask))))
                    break
                if w != parent and disc[w] < disc[v]:
                    low[v] = min(low[v], disc[w])
                    edges.append((v, w))
            else:
                stack.pop()
                if stack:
                    u = stack[-1][0]
                    low[u] = min(low[u], low[v])
                    if low[v] >= disc[u]:
                        comp = 0
                        while True:
                            a, b = edges.pop()
                            comp |= 1 << a | 1 << b
                            if (a, b) == (u, v):
                                break
                        blocks.append(comp)
    return blocks


def _has_cycle(adj: Sequence[int], block: int, m: int) -> bool:
    """Does ``G[block]`` contain a cycle of length exactly ``m >= 3``?"""
    if block.bit_count() < m:
        return False
    for s in bits(block):
        allowed = block & ~((2 << s) - 1)
        targets = adj[s] & allowed
        if targets.bit_count() < 2:
            continue

        def reachable(w: int, free: int, steps: int) -> bool:
            seen = frontier = 1 << w
            for _ in range(steps):
                nxt = 0
                for x in bits(frontier):
                    nxt |= adj[x]
                frontier = nxt & free & ~seen
                if frontier & targets:
                    return True
                if not frontier:
                    return False
                seen |= frontier
            return False

        def extend(c: int, used: int, left: int) -> bool:
            for w in bits(adj[c] & allowed & ~used):
                if left == 1:
                    if targets >> w & 1:
                        return True
                    continue
                now = used | 1 << w
                if reachable(w, allowed & ~now, left - 1) and extend(w, now, left - 1):
                    return True
            return False

        if extend(s, 1 << s, m - 1):
            return True
    return False


def contains_wheel(g: Graph, k: int) -> bool:
    """True iff ``g`` contains ``wheel(k)`` as a subgraph."""
    if k < 3:
        raise PatternError(f"wheel needs k >= 3, got {k}")
    rim = k - 1
    for v in range(g.n):
        nb = g.adj[v]
        if nb.bit_count() < rim:
            continue
        if rim == 2:
            if any(g.adj[w] & nb for w in bits(nb)):
                return True
            continue
        if any(_has_cycle(g.adj, b, rim) for b in _blocks(g.adj, nb)):
            return True
    return False


def contains_friendship(g: Graph, k: int) -> bool:
    """True iff ``g`` contains ``friendship(k)`` as a subgraph."""
    if k < 1:
        raise PatternError(f"friendship needs k >= 1, got {k}")
    return any(
        g.adj[v].bit_count() >= 2 * k and matching_number(g.induced(g.adj[v])) >= k for v in range(g.n)
    )


# -- patterns ---------------------------------------------------------------------------------


@dataclass(frozen=True)
class Generic:
    f: Graph

    def __post_init__(self) -> None:
        if self.f.n < 1:
            raise PatternError("generic pattern must have at least one vertex")

    def graph(self) -> Graph:
        return self.f

    def __str__(self) -> str:
        from .graph6 import to_graph6

        return f"g6:{to_graph6(self.f)}"


@dataclass(frozen=True)
class Wheel:
    k: int

    def __post_init__(self) -> None:
        if self.k < 3:
            raise PatternError(f"wheel needs k >= 3, got {self.k}")

    def graph(self) -> Graph:
        return wheel(self.k)

    def __str__(self) -> str:
        return f"wheel:{self.k}"


@dataclass(frozen=True)
class Friendship:
    k: int

    def __post_init__(self) -> None:
        if self.k < 1:
            raise PatternError(f"friendship needs k >= 1, got {self.k}")

    def graph(self) -> Graph:
        return friendship(self.k)

    def __str__(self) -> str:
        return f"friendship:{self.k}"


@dataclass(frozen=True)
class Matching:
    """``m`` independent edges, ``mK_2``."""

    m: int

    def __post_init__(self) -> None:
        if self.m < 1:
            raise PatternError(f"matching needs m >= 1, got {self.m}")

    def graph(self) -> Graph:
        return k_disjoint_edges(self.m)

    def __str__(self) -> str:
        return f"matching:{self.m}"


ForbiddenPattern = Union[Generic, Wheel, Friendship, Matching]


def parse_pattern(text: str) -> ForbiddenPattern:
    """Parse ``wheel:k``, ``friendship:k``, ``matching:m`` or ``g6:<graph6>``."""
    kind, sep, arg = text.partition(":")
    if not sep or not arg:
        raise PatternError(f"malformed pattern {text!r}: expected kind:argument")
    kind = kind.strip().lower()
    if kind == "g6":
        from .graph6 import Graph6Error, from_graph6

        try:
            return Generic(from_graph6(arg.strip()))
        except Graph6Error as exc:
            raise PatternError(f"malformed pattern {text!r}: {exc}") from None
    kinds = {"wheel": Wheel, "friendship": Friendship, "matching": Matching}
    if kind not in kinds:
        raise PatternError(f"unknown pattern kind {kind!r} in {text!r}")
    try:
        value = int(arg)
    except ValueError:
        raise PatternError(f"pattern parameter {arg!r} in {text!r} is not an integer") from None
    return kinds[kind](value)


def is_pattern_free(g: Graph, p: ForbiddenPattern) -> bool:
    if isinstance(p, Matching):
        return matching_number(g) < p.m
    if isinstance(p, Wheel):
        return not contains_wheel(g, p.k)
    if isinstance(p, Friendship):
        return not contains_friendship(g, p.k)
    return not contains_subgraph(g, p.graph())


def fits_in_K2m(f: Graph) -> bool:
    """True iff ``f`` is a subgraph of ``K_{2,m}`` for every ``m >= |V(f)|``."""
    if f.n < 1:
        raise GraphError("pattern must have at least one vertex")
    return contains_subgraph(complete_bipartite(2, f.n), f)
