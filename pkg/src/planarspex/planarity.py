"""Planarity testing: Euler-bound prefilters followed by the left-right test.

Only the testing phase of the left-right (de Fraysseix-Rosenstiehl, in
Brandes' formulation) algorithm is run; no embedding is built.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .graph import Graph, bits


class Filter(enum.Enum):
    EULER_BOUND = "EulerBound"
    BIPARTITE_EULER_BOUND = "BipartiteEulerBound"
    FULL_TEST = "FullTest"


class EulerVerdict(enum.Enum):
    MAYBE_PLANAR = "MaybePlanar"
    DEFINITELY_NONPLANAR = "DefinitelyNonplanar"


@dataclass(frozen=True)
class PlanarityVerdict:
    planar: bool
    filter_used: Filter

    def __bool__(self) -> bool:
        return self.planar


def _euler(g: Graph) -> Filter | None:
    n, e = g.n, g.edge_count()
    if n >= 3 and e > 3 * n - 6:
        return Filter.EULER_BOUND
    if n >= 3 and e > 2 * n - 4 and g.is_bipartite():
        return Filter.BIPARTITE_EULER_BOUND
    return None


def euler_filter(g: Graph) -> EulerVerdict:
    if _euler(g) is None:
        return EulerVerdict.MAYBE_PLANAR
    return EulerVerdict.DEFINITELY_NONPLANAR


def is_planar(g: Graph) -> PlanarityVerdict:
    bound = _euler(g)
    if bound is not None:
        return PlanarityVerdict(False, bound)
    return PlanarityVerdict(_LRTest(g).run(), Filter.FULL_TEST)


def planar(g: Graph) -> bool:
    """Boolean shorthand for :func:`is_planar`."""
    return is_planar(g).planar


class _Interval:
    __slots__ = ("low", "high")

    def __init__(self, low=None, high=None):
        self.low = low
        self.high = high

    def empty(self) -> bool:
        return self.low is None and self.high is None


class _Pair:
    __slots__ = ("left", "right")

    def __init__(self, left: _Interval | None = None, right: _Interval | None = None):
        self.left = left or _Interval()
        self.right = right or _Interval()

    def swap(self) -> None:
        self.left, self.right = self.right, self.left


class _LRTest:
    """State for one run of the left-right test.  Edges are ``(tail, head)`` tuples."""

    def __init__(self, g: Graph) -> None:
        self.g = g
        n = g.n
        self.adjs = [list(bits(row)) for row in g.adj]
        self.height: list[int | None] = [None] * n
        self.parent_edge: list[tuple[int, int] | None] = [None] * n
        self.oriented: dict[int, list[int]] = {v: [] for v in range(n)}
        self.lowpt: dict[tuple[int, int], int] = {}
        self.lowpt2: dict[tuple[int, int], int] = {}
        self.nesting: dict[tuple[int, int], int] = {}
        self.ref: dict[tuple[int, int], tuple[int, int] | None] = {}
        self.stack: list[_Pair] = []
        self.stack_bottom: dict[tuple[int, int], _Pair | None] = {}
        self.lowpt_edge: dict[tuple[int, int], tuple[int, int]] = {}

    def run(self) -> bool:
        roots = []
        for v in range(self.g.n):
            if self.height[v] is None:
                self.height[v] = 0
                roots.append(v)
                self._orient(v)
        self.ordered = {
            v: sorted(ws, key=lambda w, v=v: self.nesting[(v, w)]) for v, ws in self.oriented.items()
        }
        return all(self._test(r) for r in roots)

    # phase 1: DFS orientation, lowpoints and nesting depths
    def _orient(self, root: int) -> None:
        done: set[frozenset[int]] = set()
        index = [0] * self.g.n
        stack = [root]
        resume: set[tuple[int, int]] = set()
        lowpt, lowpt2, height = self.lowpt, self.lowpt2, self.height
        while stack:
            v = stack.pop()
            e = self.parent_edge[v]
            adj = self.adjs[v]
            while index[v] < len(adj):
                w = adj[index[v]]
                vw = (v, w)
                if vw not in resume:
                    key = frozenset(vw)
                    if key in done:
                        index[v] += 1
                        continue
                    done.add(key)
                    self.oriented[v].append(w)
                    lowpt[vw] = lowpt2[vw] = height[v]
                    if height[w] is None:
                        self.parent_edge[w] = vw
                        height[w] = height[v] + 1
                        resume.add(vw)
                        stack.append(v)
                        stack.append(w)
                        break
                    lowpt[vw] = height[w]
                self.nesting[vw] = 2 * lowpt[vw] + (lowpt2[vw] < height[v])
                if e is not None:
                    if lowpt[vw] < lowpt[e]:
                        lowpt2[e] = min(lowpt[e], lowpt2[vw])
                        lowpt[e] = lowpt[vw]
                    elif lowpt[vw] > lowpt[e]:
                        lowpt2[e] = min(lowpt2[e], lowpt[vw])
                    else:
                        lowpt2[e] = min(lowpt2[e], lowpt2[vw])
                index[v] += 1

    # phase 2: constraint stack
    def _conflicting(self, iv: _Interval, b: tuple[int, int]) -> bool:
        return not iv.empty() and self.lowpt[iv.high] > self.lowpt[b]

    def _lowest(self, p: _Pair) -> int:
        if p.left.empty():
            return self.lowpt[p.right.low]
        if p.right.empty():
            return self.lowpt[p.left.low]
        return min(self.lowpt[p.left.low], self.lowpt[p.right.low])

    def _top(self) -> _Pair | None:
        return self.stack[-1] if self.stack else None

    def _test(self, root: int) -> bool:
        index = [0] * self.g.n
        resume: set[tuple[int, int]] = set()
        dfs = [root]
        while dfs:
            v = dfs.pop()
            e = self.parent_edge[v]
            ordered = self.ordered[v]
            descended = False
            while index[v] < len(ordered):
                w = ordered[index[v]]
                ei = (v, w)
                if ei not in resume:
                    self.stack_bottom[ei] = self._top()
                    if ei == self.parent_edge[w]:
                        resume.add(ei)
                        dfs.append(v)
                        dfs.append(w)
                        descended = True
                        break
                    self.lowpt_edge[ei] = ei
                    self.stack.append(_Pair(right=_Interval(ei, ei)))
                if self.lowpt[ei] < self.height[v]:
                    if w == ordered[0]:
                        self.lowpt_edge[e] = self.lowpt_edge[ei]
                    elif not self._add_constraints(ei, e):
                        return False
                index[v] += 1
            if not descended and e is not None:
                self._remove_back_edges(e)
        return True

    def _add_constraints(self, ei: tuple[int, int], e: tuple[int, int]) -> bool:
        p = _Pair()
        lowpt, ref = self.lowpt, self.ref
        while True:
            q = self.stack.pop()
            if not q.left.empty():
                q.swap()
            if not q.left.empty():
                return False
            if lowpt[q.right.low] > lowpt[e]:
                if p.right.empty():
                    p.right = _Interval(q.right.low, q.right.high)
                else:
                    ref[p.right.low] = q.right.high
                p.right.low = q.right.low
            else:
                ref[q.right.low] = self.lowpt_edge[e]
            if self._top() is self.stack_bottom[ei]:
                break
        while self.stack and (
            self._conflicting(self.stack[-1].left, ei) or self._conflicting(self.stack[-1].right, ei)
        ):
            q = self.stack.pop()
            if self._conflicting(q.right, ei):
                q.swap()
            if self._conflicting(q.right, ei):
                return False
            ref[p.right.low] = q.right.high
            if q.right.low is not None:
                p.right.low = q.right.low
            if p.left.empty():
                p.left = _Interval(q.left.low, q.left.high)
            else:
                ref[p.left.low] = q.left.high
            p.left.low = q.left.low
        if not (p.left.empty() and p.right.empty()):
            self.stack.append(p)
        return True

    def _remove_back_edges(self, e: tuple[int, int]) -> None:
        u = e[0]
        ref = self.ref
        while self.stack and self._lowest(self.stack[-1]) == self.height[u]:
            self.stack.pop()
        if self.stack:
            p = self.stack.pop()
            while p.left.high is not None and p.left.high[1] == u:
                p.left.high = ref.get(p.left.high)
            if p.left.high is None and p.left.low is not None:
                ref[p.left.low] = p.right.low
                p.left.low = None
            while p.right.high is not None and p.right.high[1] == u:
                p.right.high = ref.get(p.right.high)
            if p.right.high is None and p.right.low is not None:
                ref[p.right.low] = p.left.low
                p.right.low = None
            self.stack.append(p)
        if self.lowpt[e] < self.height[u]:
            hl = self.stack[-1].left.high
            hr = self.stack[-1].right.high
            if hl is not None and (hr is None or self.lowpt[hl] > self.lowpt[hr]):
                ref[e] = hl
            else:
                ref[e] = hr
