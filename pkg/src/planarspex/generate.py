"""Isomorph-free generation of small graphs by canonical augmentation.

Graphs on ``m + 1`` vertices are grown from graphs on ``m`` vertices by adding
one vertex with a chosen neighbour set.  A child is kept only when the added
vertex lies in the automorphism orbit of the child's canonical deletion
vertex, so every class has exactly one accepted parent class; duplicates from
the same parent are removed locally.  Planarity, connectivity and F-freeness
are all closed under deleting a (non-cut) vertex, so filtering at every level
prunes without losing anything.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Iterator, Optional

from .canon import canonical_labelling
from .graph import Graph, bits
from .graph6 import to_graph6
from .patterns import ForbiddenPattern, is_pattern_free
from .planarity import planar

log = logging.getLogger(__name__)

MAX_N = 11

# Known numbers of isomorphism classes, indexed by n (n = 0 unused).
CONNECTED_PLANAR_COUNTS = [0, 1, 1, 2, 6, 20, 99, 646, 5974, 71885, 1052805, 17449299, 313372298]
PLANAR_COUNTS = [0, 1, 2, 4, 11, 33, 142, 822, 6966, 79853, 1140916, 18681008]
CONNECTED_COUNTS = [0, 1, 1, 2, 6, 21, 112, 853, 11117, 261080, 11716571, 1006700565]
GRAPH_COUNTS = [0, 1, 2, 4, 11, 34, 156, 1044, 12346, 274668, 12005168, 1018997864]


class EnumerationError(ValueError):
    pass


@dataclass(frozen=True)
class EnumerationConfig:
    n: int
    connected_only: bool = True
    planar_only: bool = True
    pattern: Optional[ForbiddenPattern] = None
    limit: Optional[int] = None
    allow_large: bool = False

    def __post_init__(self) -> None:
        if self.n < 1:
            raise EnumerationError(f"n must be at least 1, got {self.n}")
        if self.n > MAX_N and not self.allow_large:
            raise EnumerationError(f"n={self.n} exceeds the cap of {MAX_N}; pass allow_large to override")
        if self.limit is not None and self.limit < 1:
            raise EnumerationError(f"limit must be at least 1, got {self.limit}")


def estimated_count(cfg: EnumerationConfig) -> int:
    """Number of classes before the pattern filter (known values, extrapolated past the table)."""
    table = {
        (True, True): CONNECTED_PLANAR_COUNTS,
        (False, True): PLANAR_COUNTS,
        (True, False): CONNECTED_COUNTS,
        (False, False): GRAPH_COUNTS,
    }[(cfg.connected_only, cfg.planar_only)]
    if cfg.n < len(table):
        return table[cfg.n]
    ratio = table[-1] / table[-2]
    return int(table[-1] * ratio ** (cfg.n - len(table) + 1))


def _deletable(g: Graph, u: int, connected_only: bool) -> bool:
    if not connected_only:
        return True
    rest = g.full_mask & ~(1 << u)
    if not rest:
        return True
    start = rest & -rest
    comp = frontier = start
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= g.adj[v]
        frontier = nxt & rest & ~comp
        comp |= frontier
    return comp == rest


def _accepts(child: Graph, connected_only: bool) -> tuple[bool, Optional[tuple]]:
    """Canonical-deletion test for the last vertex of ``child``.

    Deletion candidates are deletable vertices of least (degree, sorted
    neighbour degrees); ties are broken by canonical position.
    """
    v = child.n - 1
    deg = child.degrees()

    def key(u: int) -> tuple:
        return (deg[u], sorted(deg[w] for w in bits(child.adj[u])))

    kv = key(v)
    candidates = [v]
    for u in range(v):
        ku = key(u)
        if ku < kv:
            if _deletable(child, u, connected_only):
                return False, None
        elif ku == kv and _deletable(child, u, connected_only):
            candidates.append(u)
    lab = canonical_labelling(child)
    if len(candidates) == 1:
        return True, lab.certificate
    chosen = max(candidates, key=lambda u: lab.position[u])
    orbits = lab.orbits()
    if orbits[chosen] != orbits[v]:
        return False, None
    return True, lab.certificate


def _children(parent: Graph, cfg: EnumerationConfig) -> list[Graph]:
    m = parent.n + 1
    edges = parent.edge_count()
    found: dict[tuple, Graph] = {}
    for nbrs in range(1 if cfg.connected_only else 0, 1 << parent.n):
        if cfg.planar_only and m >= 3 and edges + nbrs.bit_count() > 3 * m - 6:
            continue
        child = parent.add_vertex(nbrs)
        ok, cert = _accepts(child, cfg.connected_only)
        if not ok or cert in found:
            continue
        if cfg.planar_only and not planar(child):
            continue
        if cfg.pattern is not None and not is_pattern_free(child, cfg.pattern):
            continue
        found[cert] = Graph._trusted(m, cert)
    return sorted(found.values(), key=to_graph6)


def iter_graphs(cfg: EnumerationConfig) -> Iterator[Graph]:
    """Yield one canonically labelled representative per class, in a fixed order."""
    root = Graph(1, (0,))
    if cfg.pattern is not None and not is_pattern_free(root, cfg.pattern):
        return
    emitted = 0

    def grow(g: Graph) -> Iterator[Graph]:
        if g.n == cfg.n:
            yield g
            return
        for child in _children(g, cfg):
            yield from grow(child)

    for g in grow(root):
        yield g
        emitted += 1
        if cfg.limit is not None and emitted >= cfg.limit:
            return


def enumerate_graphs(cfg: EnumerationConfig, sink: Callable[[Graph], Optional[bool]]) -> int:
    """Feed every generated graph to ``sink``; a ``False`` return stops early.

    Exceptions raised by the sink propagate unchanged.  Returns the number of
    graphs delivered.
    """
    if cfg.n > MAX_N:
        log.warning("n=%d beyond cap; roughly %d classes expected", cfg.n, estimated_count(cfg))
    count = 0
    for g in iter_graphs(cfg):
        count += 1
        if sink(g) is False:
            break
    return count
