"""Spectral-extremal searches and checks on the extremal planar families.

Hard facts about the families (planarity, pattern-freeness, matching number,
closed-form radii) raise :class:`InvariantViolation` when they fail.  Facts
that only hold for astronomically large ``n`` (uniqueness of the extremal
graph, monotonicity under path transformations) are measured and reported.
"""

from __future__ import annotations

import math
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Iterable, Optional

from .canon import canonical_graph6
from .graph import (
    Graph,
    GraphError,
    bits,
    complete,
    disjoint_union,
    empty,
    family_F,
    family_M,
    family_W,
    join,
    path_system,
)
from .graph6 import from_graph6, to_graph6
from .generate import EnumerationConfig, iter_graphs
from .patterns import ForbiddenPattern, Friendship, Matching, Wheel, is_pattern_free, matching_number
from .planarity import planar
from .spectral import (
    DEFAULT_TOL,
    closed_form_rho_book,
    closed_form_rho_k2n,
    spectral_radius,
    spectral_radius_mp,
)

DEFAULT_TIE_TOL = 1e-9
VERIFY_SEARCH_MAX_N = 9


class InvariantViolation(AssertionError):
    """A property that must hold for every valid input failed."""


# -- exhaustive search -------------------------------------------------------------------


@dataclass
class SearchReport:
    n: int
    pattern: str
    max_rho: float
    argmax: list[str]
    examined: int
    tie_tolerance: float
    matches_extremal_family: Optional[bool] = None
    disconnected: Optional[dict] = None
    rows: list[tuple[str, float]] = field(default_factory=list, repr=False)
    runtime_ms: Optional[float] = None

    def to_dict(self, timing: bool = False) -> dict:
        out = {
            "n": self.n,
            "pattern": self.pattern,
            "max_rho": round(self.max_rho, 12),
            "argmax": list(self.argmax),
            "examined": self.examined,
            "tie_tolerance": self.tie_tolerance,
            "matches_extremal_family": self.matches_extremal_family,
        }
        if self.disconnected is not None:
            out["disconnected"] = self.disconnected
        if timing and self.runtime_ms is not None:
            out["runtime_ms"] = round(self.runtime_ms, 3)
        return out


def _rho_of_g6(item: tuple[str, float]) -> float:
    g6, tol = item
    return spectral_radius(from_graph6(g6), tol).rho


def extremal_family(n: int, pattern: ForbiddenPattern) -> Optional[Graph]:
    """The conjectured extremal graph for ``pattern`` on ``n`` vertices, if defined."""
    try:
        if isinstance(pattern, Wheel):
            return family_W(n, pattern.k)
        if isinstance(pattern, Friendship):
            return family_F(n, pattern.k)
        if isinstance(pattern, Matching) and pattern.m >= 2:
            return family_M(n, pattern.m - 1)
    except GraphError:
        return None
    return None


def spex_search(
    n: int,
    pattern: ForbiddenPattern,
    tie_tol: float = DEFAULT_TIE_TOL,
    tol: float = DEFAULT_TOL,
    threads: int = 1,
    include_disconnected: bool = False,
    keep_rows: bool = False,
) -> SearchReport:
    """Maximise the spectral radius over connected pattern-free planar graphs on ``n`` vertices."""
    if tie_tol <= 0:
        raise ValueError(f"tie tolerance must be positive, got {tie_tol}")
    start = time.perf_counter()
    graphs = [to_graph6(g) for g in iter_graphs(EnumerationConfig(n, pattern=pattern))]
    if threads > 1 and len(graphs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            radii = list(pool.map(_rho_of_g6, [(g, tol) for g in graphs], chunksize=max(1, len(graphs) // (4 * threads))))
    else:
        radii = [_rho_of_g6((g, tol)) for g in graphs]
    if not graphs:
        report = SearchReport(n, str(pattern), 0.0, [], 0, tie_tol)
    else:
        best = max(radii)
        argmax = sorted(g for g, r in zip(graphs, radii) if r >= best - tie_tol)
        report = SearchReport(n, str(pattern), best, argmax, len(graphs), tie_tol)
        family = extremal_family(n, pattern)
        if family is not None:
            report.matches_extremal_family = argmax == [canonical_graph6(family)]
    if keep_rows:
        report.rows = list(zip(graphs, radii))
    if include_disconnected and n > 1:
        report.disconnected = _best_disconnected(n, pattern, tie_tol, tol)
    report.runtime_ms = (time.perf_counter() - start) * 1000
    return report


def _best_disconnected(n: int, pattern: ForbiddenPattern, tie_tol: float, tol: float) -> dict:
    """Best graph of the form (connected on m < n vertices) + (n - m) isolated vertices."""
    best_rho = -1.0
    best: list[str] = []
    for m in range(1, n):
        sub = spex_search(m, pattern, tie_tol, tol)
        for g6 in sub.argmax:
            padded = disjoint_union(from_graph6(g6), empty(n - m))
            if not is_pattern_free(padded, pattern):
                continue
            if sub.max_rho > best_rho + tie_tol:
                best_rho, best = sub.max_rho, [to_graph6(padded)]
            elif abs(sub.max_rho - best_rho) <= tie_tol:
                best.append(to_graph6(padded))
    return {"max_rho": round(max(best_rho, 0.0), 12), "argmax": sorted(best)}


# -- structure of graphs containing K_{2,n-2} --------------------------------------------------

PATH, CYCLE, OTHER = "Path", "Cycle", "Other"
ALL_PATHS, SINGLE_CYCLE, OTHER_CLASS = "AllPaths", "SingleCycleSpanningR", "Other"


@dataclass(frozen=True)
class StructureWitness:
    u1: int
    u2: int
    rest: tuple[int, ...]
    hub_edge: bool
    r_class: str
    components_of_R: tuple[tuple[str, int], ...]
    consistent: bool

    def path_parts(self) -> list[int]:
        return sorted((size for kind, size in self.components_of_R if kind == PATH), reverse=True)


def _classify(g: Graph, comp: int) -> tuple[str, int]:
    size = comp.bit_count()
    degs = [(g.adj[v] & comp).bit_count() for v in bits(comp)]
    edges = sum(degs) // 2
    if max(degs) <= 2 and edges == size - 1:
        return PATH, size
    if size >= 3 and all(d == 2 for d in degs):
        return CYCLE, size
    return OTHER, size


def structure_witness(g: Graph) -> Optional[StructureWitness]:
    """Find hubs ``u1 < u2`` adjacent to all other vertices and classify the rest.

    The remaining vertices should induce paths, or a single spanning cycle when
    the hubs are non-adjacent.  Returns ``None`` when no hub pair exists.
    """
    if g.n < 4:
        raise GraphError(f"structure witness needs n >= 4, got {g.n}")
    full = g.full_mask
    for u1 in range(g.n):
        for u2 in range(u1 + 1, g.n):
            rest = full & ~(1 << u1) & ~(1 << u2)
            if g.adj[u1] & g.adj[u2] & rest != rest:
                continue
            sub = g.induced(rest)
            members = list(bits(rest))
            comps = []
            for c in sub.components():
                kind, size = _classify(sub, c)
                comps.append((kind, size))
            kinds = Counter(kind for kind, _ in comps)
            if kinds[OTHER]:
                r_class = OTHER_CLASS
            elif kinds[CYCLE] == 0:
                r_class = ALL_PATHS
            elif len(comps) == 1:
                r_class = SINGLE_CYCLE
            else:
                r_class = OTHER_CLASS
            hub_edge = g.has_edge(u1, u2)
            consistent = r_class == ALL_PATHS or (r_class == SINGLE_CYCLE and not hub_edge)
            return StructureWitness(u1, u2, tuple(members), hub_edge, r_class, tuple(comps), consistent)
    return None


# -- path systems and (s1, s2)-transformations ------------------------------------------------


@dataclass(frozen=True)
class PathSystem:
    """Disjoint union of paths, stored as path orders in decreasing order."""

    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(p < 1 for p in self.parts):
            raise ValueError(f"path orders must be positive, got {self.parts}")
        object.__setattr__(self, "parts", tuple(sorted(self.parts, reverse=True)))

    @classmethod
    def of(cls, parts: Iterable[int]) -> "PathSystem":
        return cls(tuple(parts))

    @property
    def total(self) -> int:
        return sum(self.parts)

    def graph(self) -> Graph:
        return path_system(self.parts)

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.parts)) + "}"


class TransformError(ValueError):
    pass


def transform(h: PathSystem, s1: int, s2: int) -> PathSystem:
    """Apply the ``(s1, s2)``-transformation to two distinct components of orders ``s1 >= s2``.

    ``P_s1 u P_s2`` becomes ``P_(s1+1) u P_(s2-1)``, or ``P_(s1+s2)`` when ``s2 == 1``.
    """
    if s2 < 1 or s1 < s2:
        raise TransformError(f"need s1 >= s2 >= 1, got s1={s1}, s2={s2}")
    have = Counter(h.parts)
    want = Counter([s1, s2])
    if any(have[p] < c for p, c in want.items()):
        raise TransformError(f"{h} has no distinct components of orders {s1} and {s2}")
    rest = have - want
    new = list(rest.elements())
    if s2 == 1:
        new.append(s1 + s2)
    else:
        new += [s1 + 1, s2 - 1]
    return PathSystem.of(new)


def k2_join(h: PathSystem) -> Graph:
    """``K_2 + H``."""
    return join(complete(2), h.graph())


@dataclass(frozen=True)
class Lemma9Record:
    n: int
    before: str
    after: str
    s1: int
    s2: int
    rho_before: float
    rho_after: float
    increase: float
    """``rho_after - rho_before``, computed in extended precision when requested."""

    @property
    def strict_increase(self) -> bool:
        return self.increase > 0

    def to_dict(self) -> dict:
        d = asdict(self)
        d["rho_before"] = round(self.rho_before, 12)
        d["rho_after"] = round(self.rho_after, 12)
        d["increase"] = float(f"{self.increase:.12g}")
        d["strict_increase"] = self.strict_increase
        return d


def verify_lemma9(
    n: int, h: PathSystem, s1: int, s2: int, tol: float = DEFAULT_TOL, digits: Optional[int] = None
) -> Lemma9Record:
    """Compare the spectral radius of ``K_2 + H`` before and after a transformation.

    Differences shrink roughly like ``rho**(-2*s2)``, so for long paths pass
    ``digits`` to take the difference in extended precision.
    """
    if h.total != n - 2:
        raise TransformError(f"path system {h} has {h.total} vertices, expected n-2 = {n - 2}")
    after = transform(h, s1, s2)
    g_before, g_after = k2_join(h), k2_join(after)
    rb = spectral_radius(g_before, tol).rho
    ra = spectral_radius(g_after, tol).rho
    if digits is None:
        increase = ra - rb
    else:
        increase = float(spectral_radius_mp(g_after, digits) - spectral_radius_mp(g_before, digits))
    return Lemma9Record(n, str(h), str(after), s1, s2, rb, ra, increase)


@dataclass(frozen=True)
class TransformStep:
    s1: int
    s2: int
    result: PathSystem


def transformation_path(h: PathSystem, target: PathSystem) -> Optional[list[TransformStep]]:
    """Greedy sequence of transformations from ``h`` to ``target``.

    Target parts are realised largest first; the largest free part of the
    current system grows by absorbing from the smallest other free part.
    Transformations never shrink the largest part involved, so ``None`` is
    returned as soon as the current largest free part overshoots its target.
    """
    if h.total != target.total:
        raise TransformError(f"vertex totals differ: {h.total} vs {target.total}")
    steps: list[TransformStep] = []
    fixed: list[int] = []
    current = h
    for t in target.parts:
        while True:
            free = Counter(current.parts) - Counter(fixed)
            if not free:
                return None
            largest = max(free)
            if largest == t:
                fixed.append(t)
                break
            if largest > t:
                return None
            free[largest] -= 1
            others = +free
            if not others:
                return None
            s2 = min(others)
            current = transform(current, largest, s2)
            steps.append(TransformStep(largest, s2, current))
    return steps if Counter(current.parts) == Counter(target.parts) else None


# -- theorem-level verification ------------------------------------------------------------------

THEOREMS = {"T2": ("W", Wheel), "T3": ("F", Friendship), "T4": ("M", None)}


@dataclass
class TheoremReport:
    theorem: str
    n: int
    k: int
    family_g6: str
    pattern: str
    planar: bool
    pattern_free: bool
    rho: float
    closed_form: Optional[float] = None
    matching_number: Optional[int] = None
    search: Optional[SearchReport] = None
    is_unique_argmax: Optional[bool] = None

    def to_dict(self) -> dict:
        out = {
            "theorem": self.theorem,
            "n": self.n,
            "k": self.k,
            "family_g6": self.family_g6,
            "pattern": self.pattern,
            "planar": self.planar,
            "pattern_free": self.pattern_free,
            "rho": round(self.rho, 12),
            "closed_form": None if self.closed_form is None else round(self.closed_form, 12),
            "matching_number": self.matching_number,
            "search": None if self.search is None else self.search.to_dict(),
            "is_unique_argmax": self.is_unique_argmax,
        }
        return out


def _closed_form(which: str, n: int, k: int) -> Optional[float]:
    if (which == "T2" and k == 3) or (which == "T3" and k == 1):
        return closed_form_rho_k2n(n)
    if which in ("T3", "T4") and k == 2:
        return closed_form_rho_book(n)
    if which == "T4" and k == 1:
        return math.sqrt(n - 1)
    return None


def theorem_setup(n: int, k: int, which: str) -> tuple[Graph, ForbiddenPattern]:
    if which == "T2":
        return family_W(n, k), Wheel(k)
    if which == "T3":
        return family_F(n, k), Friendship(k)
    if which == "T4":
        return family_M(n, k), Matching(k + 1)
    raise ValueError(f"unknown theorem {which!r}; expected T2, T3 or T4")


def verify_theorem(
    n: int,
    k: int,
    which: str,
    tol: float = DEFAULT_TOL,
    tie_tol: float = DEFAULT_TIE_TOL,
    search_max_n: int = VERIFY_SEARCH_MAX_N,
    threads: int = 1,
) -> TheoremReport:
    """Check the extremal family for one theorem and, for small ``n``, compare with brute force.

    Raises :class:`InvariantViolation` if the family graph is not planar, not
    pattern-free, has the wrong matching number, or disagrees with its
    closed-form spectral radius.
    """
    g, pattern = theorem_setup(n, k, which)
    is_pl = planar(g)
    is_free = is_pattern_free(g, pattern)
    rho = spectral_radius(g, tol).rho
    report = TheoremReport(which, n, k, to_graph6(g), str(pattern), is_pl, is_free, rho)
    if not is_pl:
        raise InvariantViolation(f"{which} family for n={n}, k={k} is not planar")
    if not is_free:
        raise InvariantViolation(f"{which} family for n={n}, k={k} contains {pattern}")
    if which == "T4":
        report.matching_number = matching_number(g)
        if report.matching_number != k:
            raise InvariantViolation(f"M_(n,k) for n={n}, k={k} has matching number {report.matching_number}")
    report.closed_form = _closed_form(which, n, k)
    if report.closed_form is not None and abs(report.closed_form - rho) > 1e-8:
        raise InvariantViolation(f"rho={rho!r} disagrees with closed form {report.closed_form!r}")
    if n <= search_max_n:
        report.search = spex_search(n, pattern, tie_tol, tol, threads=threads)
        report.is_unique_argmax = report.search.argmax == [canonical_graph6(g)]
    return report
