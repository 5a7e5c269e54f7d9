"""Command-line entry point.

Every command writes one JSON report (to ``--out`` or stdout) holding the
toolkit version, the full configuration, the result and wall-clock timing.
Exit status: 0 for a clean run, 2 when violations or counterexamples were
found (the report is still written), 1 for usage or runtime errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

from . import __version__
from .enumerate import (
    CapExceeded,
    caps,
    enumerate_graphs_by_edges,
    enumerate_graphs_by_vertices,
    write_graph6_lines,
)
from .exact import Relation
from .graph import (
    FAMILY_KINDS,
    FamilySpec,
    Graph,
    Graph6Error,
    GraphError,
    contains_c4,
    from_graph6,
    graph_from_edges,
    make_family,
    max_degree,
    remove_isolated_vertices,
    to_graph6,
)
from .spectral import (
    ADJACENCY,
    SIGNLESS,
    ConvergenceError,
    closed_form_spectral_radius,
    leading_eigenpair,
)
from .verify import (
    TheoremSpec,
    _conjecture_thr,
    certify_exception_families,
    decide,
    local_search_max_rho,
    reclassify,
    search_conjecture,
    verify_theorem,
)

EXIT_OK, EXIT_ERROR, EXIT_FOUND = 0, 1, 2


class InputError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------------------
# input

def _graph_from_json(obj, where: str) -> Graph:
    if isinstance(obj, dict):
        edges = obj.get("edges")
        n = obj.get("n")
    else:
        edges, n = obj, None
    if not isinstance(edges, list):
        raise InputError(f"{where}: expected an edge list")
    try:
        pairs = [(int(u), int(v)) for u, v in edges]
    except (TypeError, ValueError) as exc:
        raise InputError(f"{where}: bad edge ({exc})") from None
    if n is None:
        n = 1 + max((max(p) for p in pairs), default=-1)
    try:
        return graph_from_edges(int(n), pairs)
    except GraphError as exc:
        raise InputError(f"{where}: {exc}") from None


def read_graph_input(source: str, strip_isolated: bool = False) -> list[Graph]:
    """Graphs from a file path or an inline string.

    Accepts graph6 lines (blank lines and a ``>>graph6<<`` header are
    skipped) or JSON: ``{"n": .., "edges": [[u, v], ..]}``, a bare edge
    list, or a list of either.  Isolated vertices are kept unless
    ``strip_isolated`` is set.
    """
    path = Path(source)
    try:
        text = path.read_text() if len(source) < 4096 and "\n" not in source and path.is_file() else source
    except OSError as exc:
        raise InputError(str(exc)) from None
    stripped = text.strip()
    graphs: list[Graph] = []
    if stripped.startswith(("[", "{")):
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise InputError(f"line {exc.lineno}: invalid JSON ({exc.msg})") from None
        if isinstance(data, dict) or (data and all(isinstance(e, list) and len(e) == 2 and not isinstance(e[0], (list, dict)) for e in data)):
            graphs.append(_graph_from_json(data, "graph 1"))
        else:
            graphs.extend(_graph_from_json(d, f"graph {i}") for i, d in enumerate(data, 1))
    else:
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.strip()
            if not line:
                continue
            if line.startswith(">>graph6<<"):
                line = line[len(">>graph6<<"):]
            try:
                graphs.append(from_graph6(line))
            except Graph6Error as exc:
                raise InputError(f"line {lineno}: {exc}") from None
    if strip_isolated:
        graphs = [remove_isolated_vertices(g) for g in graphs]
    return graphs


# ---------------------------------------------------------------------------
# commands

def _single_m(args) -> int | None:
    if args.m is None:
        return None
    if len(args.m) != 1:
        raise InputError(f"{args.command} takes a single --m")
    return args.m[0]


def _family_spec(args) -> FamilySpec:
    return FamilySpec(args.family, n=args.n, m=_single_m(args))


def _spectral_entry(g: Graph, which: str, tol: float, with_vector: bool) -> dict:
    r = leading_eigenpair(g, which, tol=tol)
    out = {
        "graph6": to_graph6(g),
        "n": g.n,
        "m": g.m,
        "value": r.value,
        "residual": r.residual,
        "iterations": r.iterations,
        "bracket": [r.lower, r.upper],
    }
    if with_vector and r.vector is not None:
        out["vector"] = [float(x) for x in r.vector]
    return out


def cmd_spectral(args) -> tuple[dict, int]:
    if args.graph6:
        graphs = read_graph_input(args.graph6, strip_isolated=args.strip_isolated)
    elif args.family:
        graphs = [make_family(_family_spec(args))]
    else:
        raise InputError("spectral needs --graph6 or --family")
    which = ADJACENCY if args.matrix == "adjacency" else SIGNLESS
    return {"graphs": [_spectral_entry(g, which, args.tol, args.vector) for g in graphs]}, EXIT_OK


def cmd_families(args) -> tuple[dict, int]:
    if args.certify:
        if args.m is None:
            raise InputError("--certify needs --m")
        res = certify_exception_families(_single_m(args), args.k if args.k is not None else 1)
        res.pop("seconds")
        return res, EXIT_OK if res["ok"] else EXIT_FOUND
    if not args.family:
        raise InputError("families needs --family (or --certify)")
    out = []
    for kind in [args.family]:  # noqa: B007
        spec = _family_spec(args)
        g = make_family(spec)
        entry = {
            "family": kind,
            "graph6": to_graph6(g),
            "n": g.n,
            "m": g.m,
            "c4_free": not contains_c4(g),
            "max_degree": max_degree(g),
            "rho": leading_eigenpair(g, ADJACENCY, tol=args.tol).value,
            "q": leading_eigenpair(g, SIGNLESS, tol=args.tol).value,
        }
        try:
            entry["rho_closed_form"] = str(closed_form_spectral_radius(spec))
        except ValueError:
            pass
        out.append(entry)
    return {"families": out}, EXIT_OK


def cmd_enumerate(args) -> tuple[dict, int]:
    if (args.m is None) == (args.n is None):
        raise InputError("enumerate needs exactly one of --m or --n")
    if args.m is not None:
        m = _single_m(args)
        graphs = enumerate_graphs_by_edges(m, cap=args.max_edges)
        key = {"by": "edges", "m": m}
    else:
        graphs = enumerate_graphs_by_vertices(args.n, cap=args.max_vertices)
        key = {"by": "vertices", "n": args.n}
    if args.graphs_out:
        count = write_graph6_lines(args.graphs_out, graphs)
    else:
        count = sum(1 for _ in graphs)
    return dict(key, count=count), EXIT_OK


def _verify_cell(args, m: int) -> dict:
    spec = TheoremSpec(args.theorem, m, args.k or 0)
    rep = verify_theorem(spec, jobs=args.jobs, strict=args.strict, cap=args.max_edges)
    return rep.to_dict()


def _cell_key(d: dict) -> tuple:
    s = d["spec"]
    return s["theorem"], s["m"], s["k"], d["strict"]


def _found(cell: dict) -> bool:
    return bool(cell["witnesses"]["violations"]) and not cell["below_threshold"]


def cmd_verify(args) -> tuple[dict | None, int]:
    if args.recheck:
        return recheck(args.recheck)
    if args.theorem is None or not args.m:
        raise InputError("verify needs --theorem and --m")
    if len(args.m) == 1 and not args.batch:
        cell = _verify_cell(args, args.m[0])
        return cell, EXIT_FOUND if _found(cell) else EXIT_OK
    # batch: one JSON object per (theorem, m) cell appended to --out
    if not args.out:
        raise InputError("batch mode needs --out")
    done = set()
    if os.path.exists(args.out):
        for line in Path(args.out).read_text().splitlines():
            if line.strip():
                done.add(_cell_key(json.loads(line)["result"]))
    status = EXIT_OK
    strict = TheoremSpec(args.theorem, 1).default_strict if args.strict is None else args.strict
    for m in args.m:
        spec = TheoremSpec(args.theorem, m, args.k or 0)
        if (spec.id, m, spec.k, strict) in done:
            continue
        t0 = time.perf_counter()
        cell = _verify_cell(args, m)
        with open(args.out, "a") as fh:
            fh.write(_dumps(_envelope(args, cell, time.perf_counter() - t0), indent=None) + "\n")
        if _found(cell):
            status = EXIT_FOUND
    return None, status


def cmd_conjecture(args) -> tuple[dict, int]:
    if args.s is None or args.n is None:
        raise InputError("conjecture needs --s and --n")
    rep = search_conjecture(args.s, args.n, jobs=args.jobs, cap=args.max_vertices).to_dict()
    return rep, EXIT_FOUND if rep["counterexamples"] else EXIT_OK


def cmd_search(args) -> tuple[dict, int]:
    m = _single_m(args)
    if m is None:
        raise InputError("search needs --m")
    res = local_search_max_rho(
        m,
        forbid_c4=not args.allow_c4,
        forbid_star=args.forbid_star,
        iters=args.iters,
        restarts=args.restarts,
        seed=args.seed,
        n_vertices=args.n,
        jobs=args.jobs,
    )
    sr = res.spectral
    return {
        "m": m,
        "graph6": to_graph6(res.graph),
        "rho": sr.value,
        "rho_squared": sr.value ** 2,
        "residual": sr.residual,
        "bracket": [sr.lower, sr.upper],
        "max_degree": max_degree(res.graph),
        "c4_free": not contains_c4(res.graph),
        "restart": res.restart,
        "evaluations": res.evaluations,
    }, EXIT_OK


# ---------------------------------------------------------------------------
# recheck

def _recheck_cell(cell: dict) -> tuple[int, list[dict]]:
    s = cell["spec"]
    spec = TheoremSpec(s["theorem"], s["m"], s["k"])
    checked = 0
    mismatches = []
    expect = {"violations": "violation", "opposite_reading_violations": "opposite_violation", "equality": "equality"}
    for bucket, key in expect.items():
        for g6 in cell["witnesses"][bucket]:
            checked += 1
            c = reclassify(spec, g6, cell["strict"])
            if not c.get(key):
                mismatches.append({"graph6": g6, "bucket": bucket, "now": c})
    return checked, mismatches


def _recheck_conjecture(rep: dict) -> tuple[int, list[dict]]:
    n, s = rep["n"], rep["s"]
    thr = _conjecture_thr(n, s)
    checked = 0
    mismatches = []
    for g6 in rep["counterexamples"]:
        checked += 1
        g = from_graph6(g6)
        d = decide(g, ADJACENCY, thr)
        if contains_c4(g) or max_degree(g) >= n - s or d.relation in (None, Relation.LESS):
            mismatches.append({"graph6": g6, "bucket": "counterexamples"})
    for bucket, value_key in (("extremal_witnesses", "extremal_value"), ("c4_free_extremal_witnesses", "c4_free_extremal_value")):
        for g6 in rep[bucket]:
            checked += 1
            g = from_graph6(g6)
            rho = leading_eigenpair(g).value
            if contains_c4(g) or abs(rho - rep[value_key]) > 1e-8:
                mismatches.append({"graph6": g6, "bucket": bucket})
    return checked, mismatches


def recheck(path: str) -> tuple[dict, int]:
    """Re-derive the classification of every witness in a report file."""
    text = Path(path).read_text()
    try:
        docs = [json.loads(text)]
    except json.JSONDecodeError:
        docs = [json.loads(line) for line in text.splitlines() if line.strip()]
    checked = 0
    mismatches: list[dict] = []
    found = False
    for doc in docs:
        res = doc.get("result", doc)
        if "spec" in res and "witnesses" in res:
            c, mm = _recheck_cell(res)
            found |= _found(res)
        elif "counterexamples" in res:
            c, mm = _recheck_conjecture(res)
            found |= bool(res["counterexamples"])
        else:
            raise InputError(f"{path}: not a verify or conjecture report")
        checked += c
        mismatches += mm
    status = EXIT_ERROR if mismatches else (EXIT_FOUND if found else EXIT_OK)
    return {"report": str(path), "cells": len(docs), "witnesses_checked": checked, "mismatches": mismatches}, status


# ---------------------------------------------------------------------------
# plumbing

def _m_values(text: str) -> list[int]:
    out = []
    for piece in text.split(","):
        if "-" in piece:
            a, b = piece.split("-", 1)
            out.extend(range(int(a), int(b) + 1))
        else:
            out.append(int(piece))
    return out


def build_parser() -> argparse.ArgumentParser:
    edge_cap, vertex_cap = caps()
    p = _Parser(prog="spectral-turan", description="Spectral Turan-type checks for C4 and stars.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("command", choices=["spectral", "families", "enumerate", "verify", "conjecture", "search"])
    p.add_argument("--theorem", choices=["1.1", "1.2", "1.3", "1.4", "1.5", "1.6"])
    p.add_argument("--m", type=_m_values, help="size; verify accepts lists and ranges such as 9,10 or 9-11")
    p.add_argument("--k", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", help="report path (stdout when omitted)")
    p.add_argument("--graph6", help="graph6 string, edge-list JSON, or a file with either")
    p.add_argument("--strip-isolated", action="store_true")
    p.add_argument("--family", choices=FAMILY_KINDS)
    p.add_argument("--matrix", choices=["adjacency", "signless"], default="adjacency")
    p.add_argument("--vector", action="store_true", help="include the Perron vector")
    strict = p.add_mutually_exclusive_group()
    strict.add_argument("--strict", dest="strict", action="store_true", default=None)
    strict.add_argument("--nonstrict", dest="strict", action="store_false")
    p.add_argument("--max-edges", type=int, default=edge_cap)
    p.add_argument("--max-vertices", type=int, default=vertex_cap)
    p.add_argument("--batch", action="store_true", help="append one JSONL line per (theorem, m) cell to --out")
    p.add_argument("--recheck", metavar="REPORT", help="re-classify every witness in a report")
    p.add_argument("--certify", action="store_true", help="families: certify the four exception graphs at --m")
    p.add_argument("--graphs-out", help="enumerate: write graph6 lines here")
    p.add_argument("--forbid-star", type=int, help="search: forbid K_{1,t}")
    p.add_argument("--allow-c4", action="store_true", help="search: do not forbid C4")
    p.add_argument("--iters", type=int, default=400)
    p.add_argument("--restarts", type=int, default=32)
    return p


COMMANDS = {
    "spectral": cmd_spectral,
    "families": cmd_families,
    "enumerate": cmd_enumerate,
    "verify": cmd_verify,
    "conjecture": cmd_conjecture,
    "search": cmd_search,
}


def _config(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items())}


def _envelope(args, result, seconds: float) -> dict:
    return {
        "version": __version__,
        "command": args.command,
        "config": _config(args),
        "result": result,
        "timing": {"seconds": round(seconds, 3)},
    }


def _dumps(obj, indent: int | None = 2) -> str:
    return json.dumps(obj, sort_keys=True, indent=indent)


def run(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_ERROR
    if args.jobs < 1:
        print("spectral-turan: error: --jobs must be >= 1", file=sys.stderr)
        return EXIT_ERROR
    t0 = time.perf_counter()
    try:
        result, status = COMMANDS[args.command](args)
        if result is not None:
            text = _dumps(_envelope(args, result, time.perf_counter() - t0))
            if args.out:
                Path(args.out).write_text(text + "\n")
            else:
                print(text)
    except (InputError, GraphError, Graph6Error, CapExceeded, ConvergenceError, ValueError, OSError) as exc:
        print(f"spectral-turan: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    return status


def main() -> None:
    sys.exit(run())
