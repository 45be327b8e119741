"""Spectral radius and Perron vector of the adjacency matrix.

Power iteration runs on ``A + I`` so that bipartite components (where the
plain iteration on ``A`` oscillates between the two sides) still converge.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .graph import Graph, GraphError, bits

DEFAULT_TOL = 1e-10
DEFAULT_MAX_ITER = 1_000_000


class ConvergenceError(RuntimeError):
    """Power iteration hit its iteration cap; carries the best iterate seen."""

    def __init__(self, message: str, best: "SpectrumResult") -> None:
        super().__init__(message)
        self.best = best


@dataclass(frozen=True)
class SpectrumResult:
    rho: float
    perron: np.ndarray = field(repr=False)
    residual: float
    iterations: int
    dominant_component: int


DENSE_LIMIT = 64


def _operator(g: Graph, members: list[int]):
    """``x -> A x`` on the component spanned by ``members``."""
    m = len(members)
    if m <= DENSE_LIMIT:
        sub = np.zeros((m, m))
        index = {v: i for i, v in enumerate(members)}
        for v in members:
            for w in bits(g.adj[v]):
                sub[index[v], index[w]] = 1.0
        return sub.__matmul__
    index = {v: i for i, v in enumerate(members)}
    src, dst = [], []
    for v in members:
        i = index[v]
        for w in bits(g.adj[v]):
            src.append(index[w])
            dst.append(i)
    src_a, dst_a = np.array(src), np.array(dst)
    return lambda x: np.bincount(dst_a, weights=x[src_a], minlength=m)


def _component_power(apply, m: int, tol: float, max_iter: int) -> tuple[float, np.ndarray, float, int]:
    x = np.ones(m)
    r = np.empty(m)
    best = (0.0, x, math.inf, 0)
    for it in range(1, max_iter + 1):
        ax = apply(x)
        rho = x.dot(ax) / x.dot(x)
        np.multiply(x, rho, out=r)
        np.subtract(ax, r, out=r)
        residual = max(r.max(), -r.min())
        if residual <= tol:
            return float(rho), x, float(residual), it
        if residual < best[2]:
            best = (float(rho), x, float(residual), it)
        ax += x
        x = ax / ax.max()
    raise ConvergenceError(
        f"power iteration did not reach residual {tol:g} in {max_iter} steps",
        SpectrumResult(best[0], best[1], best[2], best[3], -1),
    )


def spectral_radius(g: Graph, tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER) -> SpectrumResult:
    """Largest adjacency eigenvalue of ``g`` and its max-normalised Perron vector.

    Each connected component is iterated separately; the vector is supported on
    the component with the largest radius (lowest index among ties) and is zero
    elsewhere.
    """
    if g.n < 1:
        raise GraphError("spectral radius needs at least one vertex")
    if tol <= 0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    best_rho, best_vec, best_res, best_comp, total_iter = -1.0, None, 0.0, 0, 0
    best_members: list[int] = []
    for ci, comp in enumerate(g.components()):
        members = list(bits(comp))
        if len(members) == 1:
            rho, vec, res, it = 0.0, np.ones(1), 0.0, 0
        else:
            try:
                rho, vec, res, it = _component_power(_operator(g, members), len(members), tol, max_iter)
            except ConvergenceError as exc:
                full = np.zeros(g.n)
                full[members] = exc.best.perron
                raise ConvergenceError(
                    str(exc),
                    SpectrumResult(exc.best.rho, full, exc.best.residual, exc.best.iterations, ci),
                ) from None
        total_iter += it
        if rho > best_rho + tol:
            best_rho, best_vec, best_res, best_comp, best_members = rho, vec, res, ci, members
    perron = np.zeros(g.n)
    perron[best_members] = best_vec / best_vec.max()
    return SpectrumResult(best_rho, perron, best_res, total_iter, best_comp)


def rho(g: Graph, tol: float = DEFAULT_TOL) -> float:
    return spectral_radius(g, tol).rho


def closed_form_rho_k2n(n: int) -> float:
    """Spectral radius of ``K_{2,n-2}``: ``sqrt(2n - 4)``."""
    if n < 3:
        raise ValueError(f"K_(2,n-2) closed form needs n >= 3, got {n}")
    return math.sqrt(2 * n - 4)


def closed_form_rho_book(n: int) -> float:
    """Spectral radius of ``K_2 + (n-2)K_1``: ``(1 + sqrt(8n - 15)) / 2``."""
    if n < 2:
        raise ValueError(f"book closed form needs n >= 2, got {n}")
    return (1 + math.sqrt(8 * n - 15)) / 2


def ellingham_zha_bound(n: int) -> float:
    """Upper bound ``2 + sqrt(2n - 6)`` on the spectral radius of a planar graph."""
    if n < 3:
        raise ValueError(f"planar spectral bound needs n >= 3, got {n}")
    return 2 + math.sqrt(2 * n - 6)


WINDOW_CONSTANT = 4.496


@dataclass(frozen=True)
class WindowEntry:
    vertex: int
    value: float
    lower: float
    upper: float
    inside: bool


@dataclass(frozen=True)
class WindowReport:
    rho: float
    hub_values: tuple[float, float]
    hubs_at_one: bool
    entries: list[WindowEntry]

    @property
    def all_inside(self) -> bool:
        return all(e.inside for e in self.entries)

    @property
    def passed(self) -> bool:
        return self.hubs_at_one and self.all_inside


def eigen_window_check(g: Graph, u1: int, u2: int, tol: float = 1e-9) -> WindowReport:
    """Check the Perron entries of a graph containing ``K_{2,n-2}`` with hubs ``u1, u2``.

    The hubs should carry entry 1 and every other vertex ``u`` should satisfy
    ``2/rho <= x_u <= 2/rho + 4.496/rho**2``.  Nothing is asserted; the result
    records which entries fall inside the window (up to ``tol``).
    """
    if u1 == u2 or not (0 <= u1 < g.n and 0 <= u2 < g.n):
        raise GraphError(f"hubs must be two distinct vertices, got {u1}, {u2}")
    rest = g.full_mask & ~(1 << u1) & ~(1 << u2)
    if (g.adj[u1] & rest) != rest or (g.adj[u2] & rest) != rest:
        raise GraphError(f"vertices {u1} and {u2} are not both adjacent to every other vertex")
    spec = spectral_radius(g, min(tol, DEFAULT_TOL))
    r, x = spec.rho, spec.perron
    lower, upper = 2 / r, 2 / r + WINDOW_CONSTANT / r**2
    entries = [
        WindowEntry(u, float(x[u]), lower, upper, lower - tol <= x[u] <= upper + tol) for u in bits(rest)
    ]
    hubs = (float(x[u1]), float(x[u2]))
    return WindowReport(r, hubs, all(abs(h - 1) <= tol for h in hubs), entries)


def spectral_radius_mp(g: Graph, digits: int = 50, max_iter: int = 100_000):
    """Spectral radius in ``digits``-digit arithmetic (an ``mpmath.mpf``).

    Same shifted power iteration as :func:`spectral_radius`, for comparisons
    whose differences fall below double precision.  Connected graphs only.
    """
    import mpmath

    if g.n < 1 or not g.is_connected():
        raise GraphError("high-precision radius needs a connected graph with at least one vertex")
    ctx = mpmath.mp.clone()
    ctx.dps = digits + 10
    nbrs = [g.neighbors(v) for v in range(g.n)]
    x = [ctx.mpf(1)] * g.n
    target = ctx.mpf(10) ** (-digits)
    for _ in range(max_iter):
        ax = [ctx.fsum(x[w] for w in nb) for nb in nbrs]
        r = ctx.fdot(x, ax) / ctx.fdot(x, x)
        if max(abs(a - r * b) for a, b in zip(ax, x)) <= target:
            return r
        y = [a + b for a, b in zip(ax, x)]
        top = max(y)
        x = [v / top for v in y]
    raise ConvergenceError(f"high-precision iteration did not converge in {max_iter} steps",
                           SpectrumResult(float(r), np.array([float(v) for v in x]), math.inf, max_iter, 0))
