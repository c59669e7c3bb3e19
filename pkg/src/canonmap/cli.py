"""Command line front end.

    canonmap analyze -p 7 -A "4,5;3,1" [--json] [--trace] [--max-depth N]
    canonmap classify -p 7 [--json | --csv] [--jobs N]
    canonmap resolve-local "3,0 0,2 1,1" [--lemma] [--json] [--max-depth N]
    canonmap paper-tables [--json | --csv] [--check]

Exit codes: 0 ok, 2 bad input, 3 p_g != 3, 4 inconsistent class,
5 resolution depth exceeded, 6 tables disagree with the golden fixture.
Data goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from importlib import resources
from typing import Optional

from .action import SurfaceReport, SurfaceSpec, homogenize
from .arith import AutoMatrix, check_prime
from .classify import PAPER_ROWS, analyze, classify_all, paper_row_lookup
from .errors import CanonMapError, ClassInconsistent, DepthExceeded
from .linsys import GridDivisor, split_net, tensor_divisor
from .resolve import (
    LocalPairs,
    NetResolution,
    lemma_correction,
    lemma_hypothesis,
    lemma_shape,
    relation_equation,
    resolve_local,
)

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_UNSUPPORTED_PG = 3
EXIT_CLASS_INCONSISTENT = 4
EXIT_DEPTH = 5
EXIT_CHECK_FAILED = 6


class InputError(Exception):
    pass


# --- serialisation -----------------------------------------------------------

def monomial_text(exps) -> str:
    names = ["x0", "x1", "x2", "y0", "y1", "y2"]
    parts = [n + (f"^{e}" if e > 1 else "") for n, e in zip(names, exps) if e]
    return " ".join(parts) or "1"


def map_text(monomials) -> str:
    return "(" + " : ".join(monomial_text(m) for m in monomials) + ")"


def _divisor(d: GridDivisor) -> dict:
    return {"f": list(d.f), "g": list(d.g), "text": str(d)}


def tensor_monomials(report: SurfaceReport) -> list[list[int]]:
    return [list(homogenize(t.first) + homogenize(t.second)) for t in report.tensors]


def report_dict(report: SurfaceReport) -> dict:
    mons = tensor_monomials(report)
    return {
        "free": report.free,
        "genus": report.genus,
        "chi": report.chi,
        "pg": report.pg,
        "q": report.q,
        "ksq": report.ksq,
        "tensors": [list(t.indices) for t in report.tensors],
        "monomials": [{"exponents": m, "text": monomial_text(m)} for m in mons],
    }


def resolution_dict(report: SurfaceReport, res: NetResolution, trace: bool = False) -> dict:
    net = split_net([tensor_divisor(t) for t in report.tensors])
    points = []
    for pt in res.points:
        rec = {
            "label": pt.point.label(),
            "i": pt.point.i,
            "j": pt.point.j,
            "local": [list(x) for x in pt.point.local],
            "correction": pt.correction,
            "lemma_applies": pt.lemma_applies,
        }
        if trace:
            rec["trace"] = pt.trace.render().splitlines()
        points.append(rec)
    return {
        "fixed": _divisor(net.fixed),
        "mobile": [_divisor(d) for d in net.mobile],
        "base_points": points,
        "m_squared": res.m_squared,
        "m_hat_squared": res.m_hat_squared,
        "verdict": res.verdict.value,
        "degree": res.degree,
        "relation": None if res.relation is None else list(res.relation),
        "relation_text": None if res.relation is None else relation_equation(res.relation),
    }


def envelope(command: str, inputs: dict, result: dict) -> dict:
    return {"schema_version": SCHEMA_VERSION, "command": command, "input": inputs, "result": result}


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _parse_matrix(p: int, text: str) -> AutoMatrix:
    try:
        return AutoMatrix.parse(p, text)
    except (ValueError, CanonMapError) as exc:
        raise InputError(str(exc)) from exc


def _parse_prime(p) -> int:
    try:
        return check_prime(p)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


# --- commands ------------------------------------------------------------------

def cmd_analyze(p: int, matrix_text: str, trace: bool = False,
                max_depth: Optional[int] = None) -> tuple[dict, int]:
    p = _parse_prime(p)
    A = _parse_matrix(p, matrix_text)
    report, res = analyze(SurfaceSpec(p, A), max_depth=max_depth)
    result = report_dict(report)
    result["paper_row"] = paper_row_lookup(p, A)
    code = EXIT_OK
    if not report.free:
        result["stage"] = "NOT_FREE"
    elif report.pg != 3:
        result["stage"] = "UNSUPPORTED_PG"
        code = EXIT_UNSUPPORTED_PG
    else:
        result["stage"] = "RESOLVED"
        result.update(resolution_dict(report, res, trace=trace))
    return envelope("analyze", {"p": p, "matrix": A.to_text()}, result), code


def cmd_classify(p: int, jobs: int = 1) -> dict:
    p = _parse_prime(p)
    classes = classify_all(p, jobs=jobs)
    recs = []
    for n, c in enumerate(classes, start=1):
        rec = {
            "class_id": n,
            "representative": c.representative.to_text(),
            "members": len(c.members),
            "paper_row": c.paper_row,
        }
        rec.update(report_dict(c.report))
        if c.resolution is None:
            rec["verdict"] = "UNSUPPORTED_PG" if c.report.pg != 3 else None
            rec["degree"] = None
            rec["relation"] = None
        else:
            rec["verdict"] = c.resolution.verdict.value
            rec["degree"] = c.resolution.degree
            rec["relation"] = None if c.resolution.relation is None else list(c.resolution.relation)
            rec["m_squared"] = c.resolution.m_squared
            rec["m_hat_squared"] = c.resolution.m_hat_squared
        recs.append(rec)
    return envelope("classify", {"p": p}, {"class_count": len(recs), "classes": recs})


def cmd_resolve_local(pairs_text: str, lemma: bool = False,
                      max_depth: Optional[int] = None) -> dict:
    try:
        L = LocalPairs.parse(pairs_text)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    trace = resolve_local(L, max_depth=max_depth)
    result = {
        "steps": [{"depth": s.depth, "pairs": [list(x) for x in s.pairs], "m": s.m} for s in trace.steps],
        "total": trace.total_correction,
        "trace": trace.render().splitlines(),
    }
    if lemma:
        shape = lemma_shape(L)
        if shape is None:
            result["lemma"] = {"shape": None}
        else:
            ok = lemma_hypothesis(shape)
            result["lemma"] = {
                "shape": {"a": shape.a, "b": shape.b, "c": shape.c, "d": shape.d,
                          "m": shape.m, "q": shape.q},
                "hypothesis": ok,
                "naive_ab": shape.a * shape.b,
                "correction": lemma_correction(shape) if ok else None,
            }
    return envelope("resolve-local", {"pairs": L.to_text()}, result)


def load_golden() -> dict:
    text = resources.files("canonmap").joinpath("data/paper_tables.json").read_text()
    return json.loads(text)


def regenerate_tables() -> list[dict]:
    rows = []
    for n, text in PAPER_ROWS.items():
        A = AutoMatrix.parse(7, text)
        report, res = analyze(SurfaceSpec(7, A))
        rows.append({
            "row": n,
            "matrix": A.to_text(),
            "basis": [list(t.indices) for t in report.tensors],
            "monomials": tensor_monomials(report),
            "degree": res.degree,
            "relation": None if res.relation is None else list(res.relation),
        })
    return rows


def compare_golden(rows: list[dict], golden: dict) -> list[str]:
    problems = []
    gold = {r["row"]: r for r in golden["rows"]}
    if set(gold) != {r["row"] for r in rows}:
        problems.append(f"row sets differ: {sorted(gold)} vs {[r['row'] for r in rows]}")
    for r in rows:
        g = gold.get(r["row"])
        if g is None:
            continue
        for key in ("matrix", "basis", "monomials", "degree", "relation"):
            if r[key] != g[key]:
                problems.append(f"row {r['row']} {key}: computed {r[key]} expected {g[key]}")
    return problems


def _verdict_cell(degree, relation) -> str:
    if degree is not None:
        return str(degree)
    return "pencil, image " + relation_equation(relation)


def tables_markdown(rows: list[dict]) -> str:
    out = ["| No | A | basis | map | deg |", "|---|---|---|---|---|"]
    for r in rows:
        basis = ", ".join("w" + "".join(map(str, b)) for b in r["basis"])
        out.append(
            f"| {r['row']} | {r['matrix']} | {basis} | {map_text(r['monomials'])} "
            f"| {_verdict_cell(r['degree'], r['relation'])} |"
        )
    return "\n".join(out) + "\n"


def tables_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["row", "matrix", "basis", "map", "degree", "relation"])
    for r in rows:
        w.writerow([
            r["row"], r["matrix"],
            " ".join("".join(map(str, b)) for b in r["basis"]),
            map_text(r["monomials"]),
            "" if r["degree"] is None else r["degree"],
            "" if r["relation"] is None else " ".join(map(str, r["relation"])),
        ])
    return buf.getvalue()


# --- text rendering ------------------------------------------------------------

def analyze_text(rec: dict) -> str:
    r = rec["result"]
    lines = [f"p = {rec['input']['p']}, A = {rec['input']['matrix']}"]
    lines.append(f"free: {r['free']}  genus: {r['genus']}")
    if r["free"]:
        lines.append(f"chi: {r['chi']}  pg: {r['pg']}  q: {r['q']}  K^2: {r['ksq']}")
    if r["tensors"]:
        lines.append("basis: " + ", ".join("w" + "".join(map(str, t)) for t in r["tensors"]))
        lines.append("map: " + map_text([m["exponents"] for m in r["monomials"]]))
    if r.get("paper_row"):
        lines.append(f"equivalent to table row {r['paper_row']}")
    if r["stage"] != "RESOLVED":
        lines.append(f"canonical map: {r['stage']}")
        return "\n".join(lines) + "\n"
    lines.append(f"fixed part: {r['fixed']['text']}")
    lines.append("mobile part: " + ", ".join(d["text"] for d in r["mobile"]))
    lines.append(f"M^2 = {r['m_squared']}")
    for bp in r["base_points"]:
        pairs = "".join(f"({a},{b})" for a, b in bp["local"])
        lines.append(f"  {bp['label']} {pairs} correction {bp['correction']}")
        for t in bp.get("trace", []):
            lines.append(f"    {t}")
    lines.append(f"M_hat^2 = {r['m_hat_squared']}")
    if r["degree"] is not None:
        lines.append(f"degree: {r['degree']}")
    else:
        rel = r["relation_text"] or "no monomial relation found"
        lines.append(f"composed with a pencil; image {rel}")
    return "\n".join(lines) + "\n"


def classify_text(rec: dict) -> str:
    out = ["| class | representative | members | pg | verdict | row |", "|---|---|---|---|---|---|"]
    for c in rec["result"]["classes"]:
        if c["degree"] is not None:
            v = str(c["degree"])
        elif c["verdict"] == "COMPOSED_WITH_PENCIL":
            v = "pencil"
        else:
            v = str(c["verdict"])
        out.append(
            f"| {c['class_id']} | {c['representative']} | {c['members']} | {c['pg']} "
            f"| {v} | {c['paper_row'] or ''} |"
        )
    return "\n".join(out) + "\n"


def classify_csv(rec: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["class_id", "representative", "members", "chi", "pg", "verdict", "degree", "paper_row"])
    for c in rec["result"]["classes"]:
        w.writerow([c["class_id"], c["representative"], c["members"], c["chi"], c["pg"],
                    c["verdict"] or "", "" if c["degree"] is None else c["degree"],
                    c["paper_row"] or ""])
    return buf.getvalue()


def resolve_local_text(rec: dict) -> str:
    r = rec["result"]
    lines = list(r["trace"])
    lem = r.get("lemma")
    if lem is not None:
        if lem["shape"] is None:
            lines.append("lemma: pairs are not of the form aH, bK, cH+dK")
        else:
            s = lem["shape"]
            lines.append(
                f"lemma: a={s['a']} b={s['b']} c={s['c']} d={s['d']} "
                f"hypothesis={'holds' if lem['hypothesis'] else 'fails'} naive ab={lem['naive_ab']}"
            )
    return "\n".join(lines) + "\n"


# --- entry point ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="canonmap",
        description="Canonical maps of quotients of products of Fermat curves.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="invariants and canonical map of one surface")
    a.add_argument("-p", type=int, default=7, help="prime (default 7)")
    a.add_argument("-A", required=True, help='twist matrix "r00,r01;r10,r11"')
    a.add_argument("--json", action="store_true")
    a.add_argument("--trace", action="store_true", help="print the blowup trace per base point")
    a.add_argument("--max-depth", type=int, default=None)

    c = sub.add_parser("classify", help="all free twists up to equivalence")
    c.add_argument("-p", type=int, default=7)
    fmt = c.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--csv", action="store_true")
    c.add_argument("--jobs", type=int, default=1, help="worker processes")

    r = sub.add_parser("resolve-local", help="resolve one local configuration")
    r.add_argument("pairs", help='three pairs "a1,b1 a2,b2 a3,b3"')
    r.add_argument("--lemma", action="store_true", help="also report the closed-form check")
    r.add_argument("--json", action="store_true")
    r.add_argument("--max-depth", type=int, default=None)

    t = sub.add_parser("paper-tables", help="regenerate the tabulated surfaces")
    fmt = t.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--csv", action="store_true")
    t.add_argument("--check", action="store_true", help="compare against the golden fixture")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    out = sys.stdout
    try:
        if args.command == "analyze":
            rec, code = cmd_analyze(args.p, args.A, trace=args.trace, max_depth=args.max_depth)
            out.write(dump_json(rec) if args.json else analyze_text(rec))
            if code == EXIT_UNSUPPORTED_PG:
                print(f"p_g = {rec['result']['pg']}: canonical map not resolved", file=sys.stderr)
            return code
        if args.command == "classify":
            rec = cmd_classify(args.p, jobs=args.jobs)
            if args.json:
                out.write(dump_json(rec))
            elif args.csv:
                out.write(classify_csv(rec))
            else:
                out.write(classify_text(rec))
            return EXIT_OK
        if args.command == "resolve-local":
            rec = cmd_resolve_local(args.pairs, lemma=args.lemma, max_depth=args.max_depth)
            out.write(dump_json(rec) if args.json else resolve_local_text(rec))
            return EXIT_OK
        if args.command == "paper-tables":
            rows = regenerate_tables()
            code = EXIT_OK
            if args.check:
                problems = compare_golden(rows, load_golden())
                for msg in problems:
                    print(msg, file=sys.stderr)
                code = EXIT_CHECK_FAILED if problems else EXIT_OK
            if args.json:
                out.write(dump_json(envelope("paper-tables", {"p": 7}, {"rows": rows})))
            elif args.csv:
                out.write(tables_csv(rows))
            else:
                out.write(tables_markdown(rows))
            return code
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ClassInconsistent as exc:
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return EXIT_CLASS_INCONSISTENT
    except DepthExceeded as exc:
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return EXIT_DEPTH
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
