"""Command-line front end.

Exit codes: 0 success, 1 a hard invariant failed during ``verify``,
2 usage error (bad flag, malformed pattern or graph6, out-of-range parameter).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

from .graph import FAMILIES, GraphError
from .graph6 import Graph6Error, from_graph6, read_graph6, to_graph6
from .generate import EnumerationConfig, EnumerationError, estimated_count, iter_graphs, MAX_N
from .patterns import PatternError, parse_pattern
from .spectral import DEFAULT_MAX_ITER, DEFAULT_TOL, ConvergenceError, eigen_window_check, spectral_radius
from .theorems import (
    DEFAULT_TIE_TOL,
    VERIFY_SEARCH_MAX_N,
    InvariantViolation,
    PathSystem,
    TransformError,
    spex_search,
    transform,
    structure_witness,
    transformation_path,
    verify_lemma9,
    verify_theorem,
)

THREADS_ENV = "PLANARSPEX_THREADS"
CONFIG_KEYS = {"tol": float, "tie_tol": float, "threads": int, "max_iter": int}


class UsageError(Exception):
    pass


def num(x: float) -> str:
    return f"{x:.12f}"


def load_config(path: Optional[str]) -> dict:
    """Read ``key=value`` lines; ``#`` starts a comment."""
    if path is None:
        return {}
    out = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read config file {path!r}: {exc.strerror}") from None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip().replace("-", "_")
        if not sep or key not in CONFIG_KEYS:
            raise UsageError(f"{path}:{lineno}: unrecognised config entry {raw.strip()!r}")
        try:
            out[key] = CONFIG_KEYS[key](value.strip())
        except ValueError:
            raise UsageError(f"{path}:{lineno}: bad value {value.strip()!r} for {key}") from None
    return out


def settings(args: argparse.Namespace) -> dict:
    conf = {"tol": DEFAULT_TOL, "tie_tol": DEFAULT_TIE_TOL, "max_iter": DEFAULT_MAX_ITER, "threads": 1}
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            conf["threads"] = int(env)
        except ValueError:
            raise UsageError(f"{THREADS_ENV}={env!r} is not an integer") from None
    conf.update(load_config(args.config))
    for key in CONFIG_KEYS:
        value = getattr(args, key, None)
        if value is not None:
            conf[key] = value
    if conf["tol"] <= 0:
        raise UsageError(f"--tol must be positive, got {conf['tol']}")
    if conf["tie_tol"] <= 0:
        raise UsageError(f"--tie-tol must be positive, got {conf['tie_tol']}")
    if conf["threads"] < 1:
        raise UsageError(f"--threads must be at least 1, got {conf['threads']}")
    if conf["max_iter"] < 1:
        raise UsageError(f"--max-iter must be at least 1, got {conf['max_iter']}")
    return conf


def parse_parts(text: str) -> PathSystem:
    try:
        return PathSystem.of(int(p) for p in text.split(",") if p.strip())
    except ValueError:
        raise UsageError(f"malformed path system {text!r}: expected comma-separated positive integers") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, help="eigen-residual tolerance (default 1e-10)")
    common.add_argument("--tie-tol", dest="tie_tol", type=float, help="argmax tie tolerance (default 1e-9)")
    common.add_argument("--max-iter", dest="max_iter", type=int, help="power-iteration cap (default 1e6)")
    common.add_argument("--threads", type=int, help=f"worker count for search (default ${THREADS_ENV} or 1)")
    common.add_argument("--format", choices=["json", "csv", "g6", "text"], help="output format")
    common.add_argument("--out", help="write output to this file instead of stdout")
    common.add_argument("--config", help="key=value file presetting tol, tie_tol, threads, max_iter")

    parser = argparse.ArgumentParser(prog="planarspex", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("family", parents=[common], help="build an extremal family graph")
    p.add_argument("family", choices=sorted(FAMILIES))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)

    p = sub.add_parser("rho", parents=[common], help="spectral radius of graph6 input")
    p.add_argument("--g6", action="append", help="graph6 string (repeatable); otherwise read --input or stdin")
    p.add_argument("--input", help="file of graph6 lines")
    p.add_argument("--perron", action="store_true", help="include the Perron vector in json output")
    p.add_argument("--window", help="hub pair u1,u2 for the Perron-entry window check")

    p = sub.add_parser("search", parents=[common], help="exhaustive spectral-extremal search")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--pattern", required=True, help="wheel:k | friendship:k | matching:m | g6:<graph6>")
    p.add_argument("--include-disconnected", action="store_true")
    p.add_argument("--dump-all", action="store_true", help="csv with one row per examined graph")
    p.add_argument("--timing", action="store_true", help="add runtime_ms to the json report")

    p = sub.add_parser("enumerate", parents=[common], help="list graphs up to isomorphism")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--pattern")
    p.add_argument("--disconnected", action="store_true", help="include disconnected graphs")
    p.add_argument("--nonplanar", action="store_true", help="do not restrict to planar graphs")
    p.add_argument("--limit", type=int)
    p.add_argument("--allow-large", action="store_true", help=f"permit n > {MAX_N}")

    p = sub.add_parser("verify", parents=[common], help="check an extremal family against its theorem")
    p.add_argument("theorem", choices=["T2", "T3", "T4"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--search-max-n", type=int, default=VERIFY_SEARCH_MAX_N)

    p = sub.add_parser("transform", parents=[common], help="(s1,s2)-transformations of path systems")
    p.add_argument("--parts", required=True, help="path orders, e.g. 3,2,1")
    p.add_argument("--s1", type=int)
    p.add_argument("--s2", type=int)
    p.add_argument("--target", help="find a transformation sequence to these path orders")
    p.add_argument("--compare", action="store_true", help="also compare rho of K_2+H before and after")
    p.add_argument("--digits", type=int, help="extended precision for --compare")

    p = sub.add_parser("witness", parents=[common], help="hub-pair structure of graph6 input")
    p.add_argument("--g6", action="append")
    p.add_argument("--input")
    return parser


def _graphs_from(args: argparse.Namespace, stdin) -> list:
    try:
        if args.g6:
            return [from_graph6(s) for s in args.g6]
        if args.input:
            with open(args.input) as fh:
                return list(read_graph6(fh))
        return list(read_graph6(stdin))
    except Graph6Error as exc:
        raise UsageError(f"malformed graph6 input: {exc}") from None
    except OSError as exc:
        raise UsageError(f"cannot read {args.input!r}: {exc.strerror}") from None


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def cmd_family(args, conf, stdin) -> str:
    g = FAMILIES[args.family](args.n, args.k)
    fmt = args.format or "g6"
    if fmt == "g6":
        return to_graph6(g) + "\n"
    if fmt == "json":
        return _dump({"family": args.family, "n": args.n, "k": args.k, "g6": to_graph6(g),
                      "edges": g.edge_count()})
    if fmt == "text":
        return f"{args.family} n={args.n} k={args.k} edges={g.edge_count()} g6={to_graph6(g)}\n"
    raise UsageError(f"format {fmt!r} not supported for family")


def cmd_rho(args, conf, stdin) -> str:
    graphs = _graphs_from(args, stdin)
    hubs = None
    if args.window:
        try:
            u1, u2 = (int(t) for t in args.window.split(","))
        except ValueError:
            raise UsageError(f"malformed --window {args.window!r}: expected u1,u2") from None
        hubs = (u1, u2)
    fmt = args.format or "text"
    rows = []
    for g in graphs:
        res = spectral_radius(g, conf["tol"], conf["max_iter"])
        row = {"g6": to_graph6(g), "rho": round(res.rho, 12), "residual": float(f"{res.residual:.12g}"),
               "iterations": res.iterations}
        if args.perron:
            row["perron"] = [round(float(v), 12) for v in res.perron]
        if hubs is not None:
            rep = eigen_window_check(g, *hubs, tol=max(conf["tol"], 1e-9))
            row["window"] = {
                "hubs_at_one": rep.hubs_at_one,
                "all_inside": rep.all_inside,
                "lower": round(rep.entries[0].lower, 12) if rep.entries else None,
                "upper": round(rep.entries[0].upper, 12) if rep.entries else None,
                "outside": [e.vertex for e in rep.entries if not e.inside],
            }
        rows.append((res, row))
    if fmt == "text":
        return "".join(num(res.rho) + "\n" for res, _ in rows)
    if fmt == "json":
        return _dump([row for _, row in rows])
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["g6", "rho", "residual", "iterations"])
        for res, row in rows:
            w.writerow([row["g6"], num(res.rho), f"{res.residual:.12g}", res.iterations])
        return buf.getvalue()
    raise UsageError(f"format {fmt!r} not supported for rho")


def _pattern(text: str):
    try:
        return parse_pattern(text)
    except PatternError as exc:
        raise UsageError(str(exc)) from None


def cmd_search(args, conf, stdin) -> str:
    pattern = _pattern(args.pattern)
    if args.n < 1 or args.n > MAX_N:
        raise UsageError(f"--n {args.n} out of range 1..{MAX_N}")
    fmt = args.format or ("csv" if args.dump_all else "json")
    report = spex_search(args.n, pattern, conf["tie_tol"], conf["tol"], threads=conf["threads"],
                         include_disconnected=args.include_disconnected, keep_rows=args.dump_all)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["g6", "rho", "is_argmax"])
        best = set(report.argmax)
        for g6, r in report.rows:
            w.writerow([g6, num(r), int(g6 in best)])
        return buf.getvalue()
    if fmt == "json":
        return _dump(report.to_dict(timing=args.timing))
    if fmt == "text":
        lines = [f"n={report.n} pattern={report.pattern} examined={report.examined}",
                 f"max_rho={num(report.max_rho)}"]
        lines += [f"argmax {g}" for g in report.argmax]
        return "\n".join(lines) + "\n"
    if fmt == "g6":
        return "".join(g + "\n" for g in report.argmax)
    raise UsageError(f"format {fmt!r} not supported for search")


def cmd_enumerate(args, conf, stdin, err) -> str:
    pattern = _pattern(args.pattern) if args.pattern else None
    cfg = EnumerationConfig(args.n, connected_only=not args.disconnected, planar_only=not args.nonplanar,
                            pattern=pattern, limit=args.limit, allow_large=args.allow_large)
    if args.n > MAX_N:
        print(f"warning: n={args.n} beyond cap {MAX_N}; estimated {estimated_count(cfg)} classes", file=err)
    graphs = [to_graph6(g) for g in iter_graphs(cfg)]
    fmt = args.format or "g6"
    if fmt == "g6":
        return "".join(g + "\n" for g in graphs)
    if fmt == "json":
        return _dump({"n": args.n, "count": len(graphs), "graphs": graphs})
    if fmt == "text":
        return f"{len(graphs)}\n"
    raise UsageError(f"format {fmt!r} not supported for enumerate")


def cmd_verify(args, conf, stdin) -> str:
    report = verify_theorem(args.n, args.k, args.theorem, conf["tol"], conf["tie_tol"],
                            search_max_n=args.search_max_n, threads=conf["threads"])
    fmt = args.format or "json"
    if fmt == "json":
        return _dump(report.to_dict())
    if fmt == "text":
        lines = [f"{report.theorem} n={report.n} k={report.k} family={report.family_g6}",
                 f"planar={report.planar} pattern_free={report.pattern_free} rho={num(report.rho)}"]
        if report.search is not None:
            lines.append(f"search max_rho={num(report.search.max_rho)} unique_argmax={report.is_unique_argmax}")
        else:
            lines.append(f"search skipped (n > {args.search_max_n})")
        return "\n".join(lines) + "\n"
    raise UsageError(f"format {fmt!r} not supported for verify")


def cmd_transform(args, conf, stdin) -> str:
    h = parse_parts(args.parts)
    out: dict = {"parts": list(h.parts)}
    if args.target is not None:
        target = parse_parts(args.target)
        steps = transformation_path(h, target)
        out["target"] = list(target.parts)
        out["steps"] = None if steps is None else [
            {"s1": s.s1, "s2": s.s2, "result": list(s.result.parts)} for s in steps
        ]
    if args.s1 is not None or args.s2 is not None:
        if args.s1 is None or args.s2 is None:
            raise UsageError("--s1 and --s2 must be given together")
        if args.compare:
            out["comparison"] = verify_lemma9(h.total + 2, h, args.s1, args.s2, conf["tol"], args.digits).to_dict()
        else:
            out["result"] = list(transform(h, args.s1, args.s2).parts)
    fmt = args.format or "json"
    if fmt != "json":
        raise UsageError(f"format {fmt!r} not supported for transform")
    return _dump(out)


def cmd_witness(args, conf, stdin) -> str:
    rows = []
    for g in _graphs_from(args, stdin):
        w = structure_witness(g)
        if w is None:
            rows.append({"g6": to_graph6(g), "witness": None})
        else:
            rows.append({"g6": to_graph6(g), "witness": {
                "u1": w.u1, "u2": w.u2, "hub_edge": w.hub_edge, "r_class": w.r_class,
                "components_of_R": [{"kind": k, "order": m} for k, m in w.components_of_R], "consistent": w.consistent,
            }})
    fmt = args.format or "json"
    if fmt == "json":
        return _dump(rows)
    if fmt == "text":
        return "".join(
            f"{r['g6']} " + ("none" if r["witness"] is None else
                             f"{r['witness']['u1']},{r['witness']['u2']} {r['witness']['r_class']}"
                             f" hub_edge={r['witness']['hub_edge']}") + "\n"
            for r in rows
        )
    raise UsageError(f"format {fmt!r} not supported for witness")


def run(argv: Optional[Sequence[str]] = None, stdin=None, stdout=None, stderr=None) -> int:
    """Execute one command and return its exit code."""
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    handlers = {
        "family": cmd_family, "rho": cmd_rho, "search": cmd_search, "verify": cmd_verify,
        "transform": cmd_transform, "witness": cmd_witness,
    }
    try:
        conf = settings(args)
        if args.command == "enumerate":
            text = cmd_enumerate(args, conf, stdin, stderr)
        else:
            text = handlers[args.command](args, conf, stdin)
    except InvariantViolation as exc:
        print(f"invariant violated: {exc}", file=stderr)
        return 1
    except (UsageError, GraphError, PatternError, EnumerationError, TransformError, ValueError) as exc:
        print(f"planarspex {args.command}: error: {exc}", file=stderr)
        return 2
    except ConvergenceError as exc:
        print(f"planarspex {args.command}: {exc}", file=stderr)
        return 1
    if args.out:
        Path(args.out).write_text(text)
    else:
        stdout.write(text)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
