import random

import networkx as nx
import numpy as np
import pytest
from hypothesis import strategies as st
from scipy.spatial import Delaunay

from planarspex import EnumerationConfig, Graph, iter_graphs


def to_nx(g: Graph) -> nx.Graph:
    h = nx.empty_graph(g.n)
    h.add_edges_from(g.edges())
    return h


def random_planar(rng: random.Random, n: int, keep: float = 0.8) -> Graph:
    """A random subgraph of a Delaunay triangulation, randomly relabelled."""
    if n < 3:
        edges = [(0, 1)] if n == 2 and rng.random() < keep else []
        return Graph.from_edges(n, edges)
    pts = np.array([[rng.random(), rng.random()] for _ in range(n)])
    tri = Delaunay(pts)
    edges = set()
    for a, b, c in tri.simplices:
        for u, v in ((a, b), (b, c), (a, c)):
            edges.add((min(u, v), max(u, v)))
    perm = list(range(n))
    rng.shuffle(perm)
    kept = [(perm[u], perm[v]) for u, v in sorted(edges) if rng.random() < keep]
    return Graph.from_edges(n, kept)


@st.composite
def graphs(draw, min_n=1, max_n=9):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    mask = draw(st.integers(0, (1 << len(pairs)) - 1))
    return Graph.from_edges(n, [p for i, p in enumerate(pairs) if mask >> i & 1])


@st.composite
def permutations(draw, n):
    return draw(st.permutations(list(range(n))))


@pytest.fixture(scope="session")
def all_graphs_upto7():
    out = []
    for n in range(1, 8):
        out.extend(iter_graphs(EnumerationConfig(n, connected_only=False, planar_only=False)))
    return out


@pytest.fixture(scope="session")
def planar_upto7():
    out = []
    for n in range(1, 8):
        out.extend(iter_graphs(EnumerationConfig(n, connected_only=False)))
    return out


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
