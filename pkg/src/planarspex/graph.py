"""Simple undirected graphs stored as per-vertex neighbour bitsets.

Vertex ``i`` owns bit ``1 << i`` and ``adj[i]`` is the integer whose set bits
are the neighbours of ``i``.  Graphs are immutable; every construction below
returns a fresh value with a fixed, reproducible labelling.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


class GraphError(ValueError):
    """Raised for invalid graph data or out-of-range construction parameters."""


def _bit_indices(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


_SMALL = 1 << 12
_BIT_TABLE = [_bit_indices(m) for m in range(_SMALL)]


def bits(mask: int) -> tuple[int, ...]:
    """Indices of the set bits of ``mask`` in increasing order."""
    if mask < _SMALL:
        return _BIT_TABLE[mask]
    return _bit_indices(mask)


def vertex_mask(vertices: Iterable[int] | int) -> int:
    """Turn an iterable of vertex indices (or an existing mask) into a bitset."""
    if isinstance(vertices, int):
        return vertices
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise GraphError(f"vertex count must be nonnegative, got {self.n}")
        if len(self.adj) != self.n:
            raise GraphError(f"expected {self.n} adjacency rows, got {len(self.adj)}")
        full = (1 << self.n) - 1
        for i, row in enumerate(self.adj):
            if row & ~full:
                raise GraphError(f"row {i} references a vertex >= n={self.n}")
            if row >> i & 1:
                raise GraphError(f"loop at vertex {i}")
            for j in bits(row):
                if not self.adj[j] >> i & 1:
                    raise GraphError(f"asymmetric adjacency between {i} and {j}")

    @classmethod
    def _trusted(cls, n: int, adj: tuple[int, ...]) -> "Graph":
        """Build without validation; only for adjacency produced by this module."""
        g = object.__new__(cls)
        object.__setattr__(g, "n", n)
        object.__setattr__(g, "adj", adj)
        return g

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls._trusted(n, tuple(rows))

    # -- queries ---------------------------------------------------------

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.adj[v]))

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.adj]

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def edges(self) -> list[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u] >> (u + 1) << (u + 1))]

    def components(self) -> list[int]:
        """Vertex masks of the connected components, ordered by smallest vertex."""
        seen = 0
        comps = []
        for s in range(self.n):
            if seen >> s & 1:
                continue
            comp = frontier = 1 << s
            while frontier:
                nxt = 0
                for v in bits(frontier):
                    nxt |= self.adj[v]
                frontier = nxt & ~comp
                comp |= frontier
            seen |= comp
            comps.append(comp)
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def is_bipartite(self) -> bool:
        colour = [-1] * self.n
        for s in range(self.n):
            if colour[s] >= 0:
                continue
            colour[s] = 0
            stack = [s]
            while stack:
                v = stack.pop()
                for w in bits(self.adj[v]):
                    if colour[w] < 0:
                        colour[w] = 1 - colour[v]
                        stack.append(w)
                    elif colour[w] == colour[v]:
                        return False
        return True

    # -- derived graphs ----------------------------------------------------

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex ``v`` renamed to ``perm[v]``."""
        rows = [0] * self.n
        for v in range(self.n):
            row = 0
            for w in bits(self.adj[v]):
                row |= 1 << perm[w]
            rows[perm[v]] = row
        return Graph(self.n, tuple(rows))

    def induced(self, vertices: Iterable[int] | int) -> "Graph":
        """Induced subgraph on ``vertices``, relabelled 0.. in increasing order."""
        keep = list(bits(vertex_mask(vertices)))
        index = {v: i for i, v in enumerate(keep)}
        rows = []
        for v in keep:
            rows.append(vertex_mask(index[w] for w in bits(self.adj[v]) if w in index))
        return Graph._trusted(len(keep), tuple(rows))

    def with_edge(self, u: int, v: int) -> "Graph":
        rows = list(self.adj)
        rows[u] |= 1 << v
        rows[v] |= 1 << u
        return Graph._trusted(self.n, tuple(rows))

    def without_edge(self, u: int, v: int) -> "Graph":
        rows = list(self.adj)
        rows[u] &= ~(1 << v)
        rows[v] &= ~(1 << u)
        return Graph._trusted(self.n, tuple(rows))

    def add_vertex(self, neighbours: int) -> "Graph":
        """Append vertex ``n`` adjacent to the vertices in mask ``neighbours``."""
        new = 1 << self.n
        rows = [row | new if neighbours >> i & 1 else row for i, row in enumerate(self.adj)]
        rows.append(neighbours)
        return Graph._trusted(self.n + 1, tuple(rows))

    def remove_vertex(self, v: int) -> "Graph":
        return self.induced(self.full_mask & ~(1 << v))

    def adjacency_matrix(self):
        import numpy as np

        a = np.zeros((self.n, self.n))
        for u, v in self.edges():
            a[u, v] = a[v, u] = 1.0
        return a


# -- elementary constructions -------------------------------------------------


def empty(n: int) -> Graph:
    if n < 0:
        raise GraphError(f"vertex count must be nonnegative, got {n}")
    return Graph._trusted(n, (0,) * n)


def path(n: int) -> Graph:
    if n < 0:
        raise GraphError(f"path order must be nonnegative, got {n}")
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError(f"cycle needs at least 3 vertices, got {n}")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)] + [(0, n - 1)])


def complete(n: int) -> Graph:
    if n < 0:
        raise GraphError(f"vertex count must be nonnegative, got {n}")
    full = (1 << n) - 1
    return Graph._trusted(n, tuple(full & ~(1 << i) for i in range(n)))


def complete_bipartite(a: int, b: int) -> Graph:
    return join(empty(a), empty(b))


def star(leaves: int) -> Graph:
    return complete_bipartite(1, leaves)


def k_disjoint_edges(k: int) -> Graph:
    if k < 0:
        raise GraphError(f"edge count must be nonnegative, got {k}")
    return Graph.from_edges(2 * k, ((2 * i, 2 * i + 1) for i in range(k)))


def disjoint_union(*graphs: Graph) -> Graph:
    rows: list[int] = []
    offset = 0
    for g in graphs:
        rows.extend(row << offset for row in g.adj)
        offset += g.n
    return Graph._trusted(offset, tuple(rows))


def join(g: Graph, h: Graph) -> Graph:
    """``g + h``: disjoint union (``g`` first) plus every edge between the two sides."""
    g_mask = g.full_mask
    h_mask = h.full_mask << g.n
    rows = [row | h_mask for row in g.adj] + [(row << g.n) | g_mask for row in h.adj]
    return Graph._trusted(g.n + h.n, tuple(rows))


def path_system(parts: Iterable[int]) -> Graph:
    """Disjoint union of paths with the given orders (order 0 contributes nothing)."""
    return disjoint_union(*(path(p) for p in parts))


# -- named graphs ----------------------------------------------------------------


def wheel(k: int) -> Graph:
    """Wheel of order ``k``: a hub joined to ``C_{k-1}``; ``wheel(3)`` is the triangle."""
    if k < 3:
        raise GraphError(f"wheel order must be at least 3, got {k}")
    if k == 3:
        return complete(3)
    return join(empty(1), cycle(k - 1))


def friendship(k: int) -> Graph:
    """``k`` triangles sharing one hub (hub is vertex 0)."""
    if k < 1:
        raise GraphError(f"friendship parameter must be at least 1, got {k}")
    return join(empty(1), k_disjoint_edges(k))


def book(n: int) -> Graph:
    """``K_2 + (n-2)K_1``."""
    if n < 2:
        raise GraphError(f"book graph needs n >= 2, got {n}")
    return join(complete(2), empty(n - 2))


def family_W(n: int, k: int) -> Graph:
    """Extremal planar ``W_k``-free graph on ``n`` vertices."""
    if k < 3:
        raise GraphError(f"family_W needs k >= 3, got {k}")
    if n < k + 1:
        raise GraphError(f"family_W needs n >= k+1 = {k + 1}, got {n}")
    if k == 3:
        return complete_bipartite(2, n - 2)
    if k == 4:
        return join(empty(2), cycle(n - 2))
    size = k - 3
    copies = (n - 2) // size
    rest = n - 2 - size * copies
    return join(complete(2), path_system([size] * copies + [rest]))


def family_F(n: int, k: int) -> Graph:
    """Extremal planar ``F_k``-free graph on ``n`` vertices."""
    if k < 1:
        raise GraphError(f"family_F needs k >= 1, got {k}")
    if n < 2 * k + 1:
        raise GraphError(f"family_F needs n >= 2k+1 = {2 * k + 1}, got {n}")
    if k == 1:
        return complete_bipartite(2, n - 2)
    if k == 2:
        return book(n)
    return join(complete(2), disjoint_union(path(2 * k - 3), empty(n - 2 * k + 1)))


def family_M(n: int, k: int) -> Graph:
    """Extremal planar graph on ``n`` vertices with matching number ``k``."""
    if k < 1:
        raise GraphError(f"family_M needs k >= 1, got {k}")
    if n < 2 * k:
        raise GraphError(f"family_M needs n >= 2k = {2 * k}, got {n}")
    if k == 1:
        return star(n - 1)
    if k == 2:
        return book(n)
    return join(complete(2), disjoint_union(path(2 * k - 3), empty(n - 2 * k + 1)))


FAMILIES = {"W": family_W, "F": family_F, "M": family_M}


# -- edge-count functionals --------------------------------------------------------


def edge_count_within(g: Graph, s: Iterable[int] | int) -> int:
    """Number of edges with both endpoints in ``s``."""
    mask = vertex_mask(s)
    if mask & ~g.full_mask:
        raise GraphError("vertex set exceeds the graph")
    return sum((g.adj[v] & mask).bit_count() for v in bits(mask)) // 2


def edge_count_between(g: Graph, s: Iterable[int] | int, t: Iterable[int] | int) -> int:
    """Number of edges with one endpoint in ``s`` and the other in ``t``."""
    s_mask, t_mask = vertex_mask(s), vertex_mask(t)
    if (s_mask | t_mask) & ~g.full_mask:
        raise GraphError("vertex set exceeds the graph")
    if s_mask & t_mask:
        raise GraphError("vertex sets must be disjoint")
    return sum((g.adj[v] & t_mask).bit_count() for v in bits(s_mask))
