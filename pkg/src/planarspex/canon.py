"""Canonical labelling by partition refinement and individualisation.

The search tree is the usual one: refine the unit partition to an equitable
ordered partition, then branch on the vertices of the first non-singleton
cell.  Leaves are compared by their relabelled adjacency rows and the largest
one defines the canonical form.  Automorphisms discovered when two leaves
coincide prune the tree both by orbits and by jumping back to the point where
the two leaf paths diverged.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph, bits
from .graph6 import to_graph6

Cells = list[list[int]]


def refine(adj: tuple[int, ...] | list[int], cells: Cells) -> Cells:
    """Coarsest equitable refinement of an ordered partition.

    A cell is split by the number of neighbours its vertices have in some
    splitter cell; the pieces replace it in place, ordered by that count, so
    the result depends only on the shape of the input and not on labels.
    """
    cells = [c for c in cells]
    changed = True
    while changed:
        changed = False
        i = 0
        while i < len(cells):
            w = 0
            for v in cells[i]:
                w |= 1 << v
            new: Cells = []
            for cell in cells:
                if len(cell) == 1:
                    new.append(cell)
                    continue
                counts = [(adj[v] & w).bit_count() for v in cell]
                first = counts[0]
                if all(c == first for c in counts):
                    new.append(cell)
                    continue
                for d in sorted(set(counts)):
                    new.append([v for v, c in zip(cell, counts) if c == d])
                changed = True
            cells = new
            i += 1
    return cells


@dataclass(frozen=True)
class Labelling:
    position: tuple[int, ...]
    """``position[v]`` is the canonical index of vertex ``v``."""
    certificate: tuple[int, ...]
    """Adjacency rows of the canonically relabelled graph."""
    generators: tuple[tuple[int, ...], ...]
    """Automorphisms found during the search (as vertex maps)."""

    def orbits(self) -> list[int]:
        """Orbit representative (smallest member) for each vertex."""
        n = len(self.position)
        parent = list(range(n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for gen in self.generators:
            for v, w in enumerate(gen):
                a, b = find(v), find(w)
                if a != b:
                    parent[max(a, b)] = min(a, b)
        return [find(v) for v in range(n)]


class _Search:
    def __init__(self, g: Graph) -> None:
        self.adj = g.adj
        self.n = g.n
        self.first: tuple[list[int], list[int], tuple[int, ...]] | None = None
        self.best: tuple[list[int], list[int], tuple[int, ...]] | None = None
        self.gens: list[tuple[int, ...]] = []

    def _certificate(self, order: list[int]) -> tuple[int, ...]:
        pos = [0] * self.n
        for i, v in enumerate(order):
            pos[v] = i
        rows = []
        for v in order:
            row = 0
            for w in bits(self.adj[v]):
                row |= 1 << pos[w]
            rows.append(row)
        return tuple(rows)

    def _automorphism(self, src: list[int], dst: list[int]) -> None:
        gamma = [0] * self.n
        for a, b in zip(src, dst):
            gamma[a] = b
        gen = tuple(gamma)
        if gen != tuple(range(self.n)):
            self.gens.append(gen)

    @staticmethod
    def _common_prefix(a: list[int], b: list[int]) -> int:
        k = 0
        for x, y in zip(a, b):
            if x != y:
                break
            k += 1
        return k

    def _orbit_blocked(self, fixed: list[int], v: int, explored: list[int]) -> bool:
        gens = [g for g in self.gens if all(g[p] == p for p in fixed)]
        if not gens:
            return False
        orbit = {v}
        frontier = [v]
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = g[x]
                if y not in orbit:
                    orbit.add(y)
                    frontier.append(y)
        return any(u in orbit for u in explored)

    def run(self, cells: Cells, path: list[int]) -> int | None:
        if all(len(c) == 1 for c in cells):
            order = [c[0] for c in cells]
            cert = self._certificate(order)
            if self.first is None:
                self.first = self.best = (path, order, cert)
                return None
            if cert == self.first[2]:
                self._automorphism(self.first[1], order)
                return self._common_prefix(path, self.first[0])
            assert self.best is not None
            if cert == self.best[2]:
                self._automorphism(self.best[1], order)
                return self._common_prefix(path, self.best[0])
            if cert > self.best[2]:
                self.best = (path, order, cert)
            return None
        idx = next(i for i, c in enumerate(cells) if len(c) > 1)
        cell = cells[idx]
        explored: list[int] = []
        depth = len(path)
        for v in sorted(cell):
            if explored and self._orbit_blocked(path, v, explored):
                continue
            rest = [w for w in cell if w != v]
            child = refine(self.adj, cells[:idx] + [[v], rest] + cells[idx + 1:])
            jump = self.run(child, path + [v])
            explored.append(v)
            if jump is not None and jump < depth:
                return jump
        return None


def canonical_labelling(g: Graph) -> Labelling:
    if g.n == 0:
        return Labelling((), (), ())
    search = _Search(g)
    search.run(refine(g.adj, [list(range(g.n))]), [])
    assert search.best is not None
    _, order, cert = search.best
    position = [0] * g.n
    for i, v in enumerate(order):
        position[v] = i
    return Labelling(tuple(position), cert, tuple(search.gens))


def canonical_form(g: Graph) -> Graph:
    """Isomorphism-invariant relabelling of ``g``."""
    return Graph._trusted(g.n, canonical_labelling(g).certificate)


def canonical_graph6(g: Graph) -> str:
    return to_graph6(canonical_form(g))


def are_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.edge_count() != h.edge_count() or sorted(g.degrees()) != sorted(h.degrees()):
        return False
    return canonical_labelling(g).certificate == canonical_labelling(h).certificate
