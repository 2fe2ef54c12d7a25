"""Command line front end.

Exit codes: 0 success / no obstruction, 1 obstruction found or unexplained
table rows, 2 input errors (rules, polynomials, fixtures), 3 computation
limits (k exhausted, reducible spectrum, unsupported degree), 4 I/O errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__
from .composants import DEFAULT_K_INIT, DEFAULT_K_MAX, signature
from .enumeration import classify_rules, default_max_entry, matrices_with_charpoly, rules_from_matrix
from .errors import AsymcompError, DegreeUnsupported, KExhausted, NotPrimitive, ParseError, ReducibleSpectrum
from .invariants import STRONG, WEAK, compare, mirror_test
from .poly import charpoly, parse_polynomial
from .render import render_svg
from .report import Report
from .rules import parse_rule
from .tables import FAIL, load_fixtures, run_tables

EXIT_OK = 0
EXIT_OBSTRUCTION = 1
EXIT_INPUT = 2
EXIT_LIMIT = 3
EXIT_IO = 4


def _fail(msg: str, code: int) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return code


def _error_code(exc: Exception) -> int:
    if isinstance(exc, (KExhausted, ReducibleSpectrum, DegreeUnsupported)):
        return EXIT_LIMIT
    if isinstance(exc, (ParseError, NotPrimitive, ValueError)):
        return EXIT_INPUT
    return EXIT_LIMIT


def _verdict_text(v, label: str) -> str:
    lines = [f"{label}: {v.outcome} ({v.mode})"]
    if v.witness is not None:
        lines.append("witness: " + " ".join(f"{i + 1}->{j + 1}" for i, j in enumerate(v.witness)))
    if v.failed:
        lines.append(f"failed condition: {v.failed}")
    if v.detail:
        lines.append(f"detail: {v.detail}")
    for n in v.notes:
        lines.append(f"note: {n}")
    return "\n".join(lines)


def cmd_analyze(args) -> int:
    try:
        rule = parse_rule(args.rule)
        t0 = time.perf_counter()
        sig = signature(rule, k_init=args.k_init, k_max=args.k_max)
        report = Report.from_signature(sig, time.perf_counter() - t0)
    except AsymcompError as exc:
        return _fail(str(exc), _error_code(exc))
    print(report.to_json() if args.format == "json" else report.to_text())
    return EXIT_OK


def cmd_compare(args) -> int:
    try:
        r1, r2 = parse_rule(args.rule1), parse_rule(args.rule2)
        v = compare(signature(r1), signature(r2), args.mode)
    except AsymcompError as exc:
        return _fail(str(exc), _error_code(exc))
    print(_verdict_text(v, f"{r1} vs {r2}"))
    if not v.obstruction:
        print("note: absence of this obstruction does not establish MLD equivalence")
    return EXIT_OBSTRUCTION if v.obstruction else EXIT_OK


def cmd_mirror(args) -> int:
    try:
        rule = parse_rule(args.rule)
        v = mirror_test(rule, args.mode)
    except AsymcompError as exc:
        return _fail(str(exc), _error_code(exc))
    print(_verdict_text(v, f"{rule} vs its mirror image"))
    return EXIT_OBSTRUCTION if v.obstruction else EXIT_OK


def _parse_matrix(text: str):
    try:
        m = json.loads(text)
        rows = tuple(tuple(int(x) for x in r) for r in m)
    except (ValueError, TypeError) as exc:
        raise ParseError(f"matrix must look like [[1,1],[1,0]]: {exc}", 0) from exc
    if not rows or any(len(r) != len(rows) for r in rows) or any(x < 0 for r in rows for x in r):
        raise ParseError("matrix must be square with nonnegative entries", 0)
    return rows


def _fixture_lookup() -> dict:
    try:
        return {r.repr: r for t in load_fixtures() for r in t.rows}
    except ParseError:
        return {}


def cmd_enumerate(args) -> int:
    try:
        if args.matrix:
            m = _parse_matrix(args.matrix)
            matrices = [m]
            poly = charpoly(m)
            max_entry = None
        else:
            poly = parse_polynomial(args.charpoly)
            max_entry = args.max_entry or default_max_entry(poly)
            matrices = [mc.representative for mc in matrices_with_charpoly(poly, max_entry)]
        rules = {m: rules_from_matrix(m) for m in matrices}
        grouped = None
        if args.group:
            grouped = classify_rules([r for m in matrices for r in rules[m]])
    except AsymcompError as exc:
        return _fail(str(exc), _error_code(exc))
    except ValueError as exc:
        return _fail(str(exc), EXIT_INPUT)

    mat_text = lambda m: json.dumps([list(r) for r in m], separators=(",", ":"))
    if args.format == "json":
        out = {
            "charpoly": str(poly),
            "max_entry": max_entry,
            "matrices": [{"matrix": [list(r) for r in m], "rules": [str(r) for r in rules[m]]} for m in matrices],
        }
        if grouped is not None:
            out["classes"] = [
                {"key": c.key, "mirror_partner_key": c.mirror_partner_key, "self_mirror": c.self_mirror,
                 "members": [str(r) for r in c.members]}
                for c in grouped.classes
            ]
            out["failures"] = [{"rule": str(r), "reason": why} for r, why in grouped.failures]
        print(json.dumps(out, indent=2))
        return EXIT_OK

    print(f"# charpoly {poly}; {len(matrices)} matrix class(es)")
    if grouped is None:
        print("Matrix\tRule")
        for m in matrices:
            for r in rules[m]:
                print(f"{mat_text(m)}\t{r}")
        return EXIT_OK
    fixtures = _fixture_lookup()
    print("Nr\tRepr\tRk\tOSD\tAC-left\tAC-right\tPerm\tMembers\tMirror")
    keys = [c.key for c in grouped.classes]
    for nr, c in enumerate(grouped.classes, 1):
        known = next((fixtures[str(r)] for r in c.members if str(r) in fixtures), None)
        rep = known.repr if known else str(c.members[0])
        rk = str(known.rank) if known else "-"
        osd = known.osd if known else "-"
        _, left, right, perm = c.key.split("|")
        partner = "self" if c.self_mirror else (
            str(keys.index(c.mirror_partner_key) + 1) if c.mirror_partner_key in keys else "-")
        print(f"{nr}\t{rep}\t{rk}\t{osd}\t{left[2:] or '-'}\t{right[2:] or '-'}\t{perm[2:] or '-'}\t{len(c.members)}\t{partner}")
    for r, why in grouped.failures:
        print(f"# skipped {r}: {why}")
    return EXIT_OK


def cmd_tables(args) -> int:
    try:
        tables = load_fixtures(args.fixtures)
    except ParseError as exc:
        return _fail(str(exc), EXIT_INPUT)
    ids = {t.id for t in tables}
    if args.table is not None and str(args.table) not in ids:
        return _fail(f"no table {args.table!r} in fixtures", EXIT_INPUT)
    t0 = time.perf_counter()
    results = run_tables(tables, args.table, adjudicate=not args.no_oracle)
    for r in results:
        line = f"{r.row.label:<7} {r.row.repr:<14} {r.status}"
        if r.detail:
            line += f"  [{r.detail}]"
        print(line)
    counts: dict = {}
    for r in results:
        counts[r.status] = counts.get(r.status, 0) + 1
    summary = ", ".join(f"{v} {k}" for k, v in sorted(counts.items()))
    print(f"{len(results)} rows: {summary} ({time.perf_counter() - t0:.1f} s)")
    unexplained = [r for r in results if r.status == FAIL]
    return EXIT_OBSTRUCTION if unexplained else EXIT_OK


def cmd_render(args) -> int:
    try:
        rule = parse_rule(args.rule)
        svg = render_svg(rule, args.side)
    except AsymcompError as exc:
        return _fail(str(exc), _error_code(exc))
    try:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(svg)
    except OSError as exc:
        return _fail(f"cannot write {args.out}: {exc}", EXIT_IO)
    print(f"wrote {args.out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="asymcomp", description="Asymptotic composants of 1D inflation tilings")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="compute the asymptotic signature of a rule")
    a.add_argument("--rule", required=True, help='rule text such as "[ab,a]"')
    a.add_argument("--k-init", type=int, default=DEFAULT_K_INIT)
    a.add_argument("--k-max", type=int, default=DEFAULT_K_MAX)
    a.add_argument("--format", choices=["json", "text"], default="text")
    a.set_defaults(func=cmd_analyze)

    c = sub.add_parser("compare", help="test two rules for the composant obstruction")
    c.add_argument("--rule1", required=True)
    c.add_argument("--rule2", required=True)
    c.add_argument("--mode", choices=[STRONG, WEAK], default=STRONG)
    c.set_defaults(func=cmd_compare)

    m = sub.add_parser("mirror", help="compare a rule with its mirror image")
    m.add_argument("--rule", required=True)
    m.add_argument("--mode", choices=[STRONG, WEAK], default=STRONG)
    m.set_defaults(func=cmd_mirror)

    e = sub.add_parser("enumerate", help="count matrices and rules for a characteristic polynomial")
    src = e.add_mutually_exclusive_group(required=True)
    src.add_argument("--charpoly", help='e.g. "x^3-x^2-x-1"')
    src.add_argument("--matrix", help='e.g. "[[1,1],[1,0]]"')
    e.add_argument("--max-entry", type=int, default=None)
    e.add_argument("--group", action="store_true", help="group rules into signature classes")
    e.add_argument("--format", choices=["json", "tsv"], default="tsv")
    e.set_defaults(func=cmd_enumerate)

    t = sub.add_parser("tables", help="reproduce the bundled classification tables")
    t.add_argument("--fixtures", default=None, help="fixture JSON (default: bundled)")
    t.add_argument("--table", default=None)
    t.add_argument("--no-oracle", action="store_true", help="skip adjudication of failing rows")
    t.set_defaults(func=cmd_tables)

    r = sub.add_parser("render", help="draw asymptotic seed pairs as SVG")
    r.add_argument("--rule", required=True)
    r.add_argument("--side", choices=["left", "right"], default="left")
    r.add_argument("--out", required=True)
    r.set_defaults(func=cmd_render)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
