"""Acceptance gate: one check per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v`` (lines appear in the terminal
summary) or directly with ``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import io
import json
import math
import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

import oracles  # noqa: E402
from conftest import random_planar  # noqa: E402
from planarspex import Graph  # noqa: E402
from planarspex.canon import canonical_graph6  # noqa: E402
from planarspex.cli import run as cli_run  # noqa: E402
from planarspex.generate import CONNECTED_PLANAR_COUNTS, EnumerationConfig, iter_graphs  # noqa: E402
from planarspex.graph import book, complete_bipartite, family_F, family_M, family_W, star  # noqa: E402
from planarspex.graph6 import from_graph6  # noqa: E402
from planarspex.patterns import (  # noqa: E402
    Friendship,
    Matching,
    Wheel,
    contains_subgraph,
    is_pattern_free,
    matching_number,
)
from planarspex.planarity import planar  # noqa: E402
from planarspex.spectral import closed_form_rho_book, closed_form_rho_k2n, ellingham_zha_bound, spectral_radius  # noqa: E402
from planarspex.theorems import PathSystem, spex_search, structure_witness, verify_lemma9  # noqa: E402

RESULTS: list[str] = []
CRITERIA: dict[int, tuple[str, float, object]] = {}
REPORTS: dict[int, str] = {}


def criterion(number: int, title: str, budget_s: float):
    def register(fn):
        CRITERIA[number] = (title, budget_s, fn)
        return fn

    return register


def dump(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True)


@criterion(1, "closed form rho(K_2,n-2) = sqrt(2n-4), n=4..500, tol 1e-8", 5)
def c01():
    errors = [abs(spectral_radius(complete_bipartite(2, n - 2)).rho - math.sqrt(2 * n - 4)) for n in range(4, 501)]
    worst = max(errors)
    return worst <= 1e-8, {"cases": len(errors), "max_error": float(f"{worst:.3e}")}


@criterion(2, "book graph rho = (1+sqrt(8n-15))/2, n=3..500, tol 1e-8", 5)
def c02():
    errors = [abs(spectral_radius(book(n)).rho - (1 + math.sqrt(8 * n - 15)) / 2) for n in range(3, 501)]
    worst = max(errors)
    return worst <= 1e-8, {"cases": len(errors), "max_error": float(f"{worst:.3e}")}


@criterion(3, "rho <= 2+sqrt(2n-6)+1e-9 on all connected planar graphs n<=8", 120)
def c03():
    counts, worst_gap, violations = [], math.inf, []
    for n in range(1, 9):
        graphs = list(iter_graphs(EnumerationConfig(n)))
        counts.append(len(graphs))
        if n < 3:
            continue
        bound = ellingham_zha_bound(n)
        for g in graphs:
            r = spectral_radius(g).rho
            worst_gap = min(worst_gap, bound - r)
            if r > bound + 1e-9:
                violations.append(canonical_graph6(g))
    oracle_counts = [oracles.class_count(n, True, True) for n in range(1, 8)]
    ok = (
        counts == CONNECTED_PLANAR_COUNTS[1:9]
        and sum(counts) == sum(CONNECTED_PLANAR_COUNTS[1:9])
        and counts[:7] == oracle_counts
        and not violations
    )
    return ok, {
        "counts": counts,
        "total": sum(counts),
        "oracle_counts_n_le_7": oracle_counts,
        "min_slack": round(worst_gap, 9),
        "violations": violations,
    }


@criterion(4, "power iteration vs dense eigensolver, 1000 random planar graphs n<=40, tol 1e-8", 60)
def c04():
    rng = random.Random(4)
    worst, sizes = 0.0, []
    for _ in range(1000):
        n = rng.randint(1, 40)
        g = random_planar(rng, n, keep=rng.uniform(0.3, 1.0))
        sizes.append(n)
        worst = max(worst, abs(spectral_radius(g).rho - oracles.dense_rho(g.n, g.edges())))
    return worst <= 1e-8, {"graphs": len(sizes), "max_n": max(sizes), "max_error": float(f"{worst:.3e}")}


@criterion(5, "blossom matching number vs brute force: all graphs n<=7, 1000 random planar n<=12", 120)
def c05():
    mismatches, exhaustive = [], 0
    for n in range(1, 8):
        for h in oracles.all_classes(n):
            g = Graph.from_edges(n, h.edges())
            exhaustive += 1
            if matching_number(g) != oracles.brute_matching_number(n, g.edges()):
                mismatches.append(canonical_graph6(g))
    rng = random.Random(5)
    for _ in range(1000):
        g = random_planar(rng, rng.randint(1, 12), keep=rng.uniform(0.2, 1.0))
        if matching_number(g) != oracles.brute_matching_number(g.n, g.edges()):
            mismatches.append(canonical_graph6(g))
    return not mismatches, {"exhaustive_classes": exhaustive, "random": 1000, "mismatches": mismatches}


@criterion(6, "subgraph search vs injection brute force, 1000 random pairs |F|<=5, |G|<=8", 60)
def c06():
    rng = random.Random(6)
    mismatches, positives = 0, 0
    for _ in range(1000):
        fn, gn = rng.randint(1, 5), rng.randint(1, 8)
        pf, pg = rng.uniform(0.2, 0.9), rng.uniform(0.2, 0.9)
        f = Graph.from_edges(fn, [(u, v) for u in range(fn) for v in range(u + 1, fn) if rng.random() < pf])
        g = Graph.from_edges(gn, [(u, v) for u in range(gn) for v in range(u + 1, gn) if rng.random() < pg])
        got = contains_subgraph(g, f)
        positives += got
        mismatches += got != oracles.brute_contains(gn, g.edges(), fn, f.edges())
    return mismatches == 0, {"pairs": 1000, "contained": positives, "mismatches": mismatches}


@criterion(7, "families planar, pattern-free, nu(M_n,k)=k for k<=8, n<=200", 120)
def c07():
    failures = []
    checked = 0
    for k in range(3, 9):
        for n in range(k + 1, 201):
            g = family_W(n, k)
            checked += 1
            if not planar(g) or not is_pattern_free(g, Wheel(k)):
                failures.append(f"W n={n} k={k}")
    for k in range(1, 9):
        for n in range(2 * k + 1, 201):
            g = family_F(n, k)
            checked += 1
            if not planar(g) or not is_pattern_free(g, Friendship(k)):
                failures.append(f"F n={n} k={k}")
    for k in range(1, 9):
        for n in range(2 * k, 201):
            g = family_M(n, k)
            checked += 1
            if not planar(g) or not is_pattern_free(g, Matching(k + 1)) or matching_number(g) != k:
                failures.append(f"M n={n} k={k}")
    return not failures, {"checked": checked, "failures": failures}


@criterion(8, "(s1,s2)-transformation raises rho(K_2+H) by > 1e-11", 60)
def c08():
    smallest, cases, failures = math.inf, 0, []
    for s2 in (1, 2, 3):
        n0 = max(math.ceil(10.2 * 2**s2 + 2), 45)
        for s1 in range(s2, 11):
            for n in range(n0, n0 + 21):
                h = PathSystem.of([s1, s2] + [1] * (n - 2 - s1 - s2))
                rec = verify_lemma9(n, h, s1, s2)
                cases += 1
                smallest = min(smallest, rec.increase)
                if not rec.increase > 1e-11:
                    failures.append(f"n={n} s1={s1} s2={s2} increase={rec.increase:.3e}")
    return not failures, {"cases": cases, "min_increase": float(f"{smallest:.6e}"), "failures": failures}


@criterion(9, "structure witness on W_n,k, k=4..8, n=k+1..100", 30)
def c09():
    failures, checked = [], 0
    for k in range(4, 9):
        for n in range(k + 1, 101):
            checked += 1
            w = structure_witness(family_W(n, k))
            if w is None:
                failures.append(f"n={n} k={k}: no witness")
            elif k == 4 and not (w.r_class == "SingleCycleSpanningR" and not w.hub_edge):
                failures.append(f"n={n} k={k}: {w.r_class} hub_edge={w.hub_edge}")
            elif k > 4 and not (w.r_class == "AllPaths" and w.hub_edge):
                failures.append(f"n={n} k={k}: {w.r_class} hub_edge={w.hub_edge}")
    return not failures, {"checked": checked, "failures": failures}


def _cli_json(*argv) -> dict:
    out = io.StringIO()
    code = cli_run(list(argv) + ["--threads", "1"], stdout=out, stderr=io.StringIO())
    assert code == 0
    return json.loads(out.getvalue())


@criterion(10, "small-n searches: W3 at n=5 -> K_2,3 (sqrt 6); 2K_2 at n=6 -> K_1,5 (sqrt 5)", 30)
def c10():
    a = spex_search(5, Wheel(3))
    b = spex_search(6, Matching(2))
    k23, k15 = canonical_graph6(complete_bipartite(2, 3)), canonical_graph6(star(5))
    dense_a = oracles.dense_rho(5, from_graph6(a.argmax[0]).edges())
    dense_b = oracles.dense_rho(6, from_graph6(b.argmax[0]).edges())
    cli_a = _cli_json("search", "--n", "5", "--pattern", "wheel:3")
    cli_b = _cli_json("search", "--n", "6", "--pattern", "matching:2")
    ok = (
        a.argmax == [k23]
        and b.argmax == [k15]
        and abs(a.max_rho - math.sqrt(6)) <= 1e-8
        and abs(b.max_rho - math.sqrt(5)) <= 1e-8
        and abs(dense_a - math.sqrt(6)) <= 1e-8
        and abs(dense_b - math.sqrt(5)) <= 1e-8
        and cli_a == a.to_dict()
        and cli_b == b.to_dict()
    )
    return ok, {"wheel3_n5": a.to_dict(), "matching2_n6": b.to_dict(),
                "dense": [round(dense_a, 12), round(dense_b, 12)]}


@criterion(11, "repeated runs of criteria 1-10 give byte-identical JSON at --threads 1", 600)
def c11():
    differing = []
    for number in range(1, 11):
        if number not in REPORTS:
            _evaluate(number)
        _, _, fn = CRITERIA[number]
        _, again = fn()
        if dump(again) != REPORTS[number]:
            differing.append(number)
    return not differing, {"rerun": list(range(1, 11)), "differing": differing}


def _evaluate(number: int) -> tuple[bool, str]:
    title, budget, fn = CRITERIA[number]
    start = time.perf_counter()
    ok, report = fn()
    elapsed = time.perf_counter() - start
    REPORTS[number] = dump(report)
    within = elapsed <= budget
    summary = ", ".join(f"{k}={v}" for k, v in report.items() if not isinstance(v, dict))
    status = "PASS" if ok and within else "FAIL"
    line = f"[{status}] criterion {number:2d}: {title} | {summary} | {elapsed:.1f}s (budget {budget:g}s)"
    RESULTS.append(line)
    print(line)
    return ok and within, line


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number):
    ok, line = _evaluate(number)
    assert ok, line


if __name__ == "__main__":
    outcome = [_evaluate(n)[0] for n in sorted(CRITERIA)]
    sys.exit(0 if all(outcome) else 1)
