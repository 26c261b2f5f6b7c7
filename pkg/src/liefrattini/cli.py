"""Command-line front end: ``liefrattini <subcommand> ...``.

Exit codes: 0 success (including false verdicts), 2 input errors,
3 cost-cap refusals.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .analysis import analyze, bracket_lines, describe, render_text
from .classify import classify
from .families import family_from_string
from .fields import QQ, FieldError, parse_field
from .isomorphism import DEFAULT_MAX_GL_ORDER, is_isomorphic
from .lattice import DEFAULT_MAX_SUBSPACES, SCHEMA, CostCapExceeded, build_lattice
from .liecore import (
    JacobiViolation,
    LieAlgebra,
    draft_from_json,
    extend_scalars,
    reduce_mod_p,
    validate,
)
from .search import DEFAULT_MAX_TABLES, exhaustive_search

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_COST = 3


class InputError(Exception):
    pass


# --- loading -----------------------------------------------------------------

def _parse_json(text: str, where: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {where} at line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def _load_draft(source: str):
    """Parse ``family:SPEC``, ``file:PATH`` or ``json:TEXT``; returns (draft or algebra, is_family)."""
    kind, sep, rest = source.partition(":")
    if not sep:
        raise InputError(f"algebra source {source!r} needs a family:, file: or json: prefix")
    if kind == "family":
        return rest, True
    if kind == "file":
        try:
            with open(rest, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {rest}: {exc.strerror}") from None
        return draft_from_json(_parse_json(text, rest)), False
    if kind == "json":
        return draft_from_json(_parse_json(rest, "inline JSON")), False
    raise InputError(f"unknown algebra source prefix {kind!r}")


def _change_field(L: LieAlgebra, F) -> LieAlgebra:
    if F is None or F == L.field:
        return L
    if L.field == QQ and F.kind == "prime":
        return reduce_mod_p(L, F.p)
    if L.field.kind == "prime" and F.is_finite and F.p == L.field.p:
        return extend_scalars(L, F)
    raise InputError(f"cannot move an algebra over {L.field} to {F}")


def load_algebra(source: str, field_text: str | None) -> LieAlgebra:
    F = parse_field(field_text) if field_text else None
    obj, is_family = _load_draft(source)
    if is_family:
        return family_from_string(obj, F or QQ)
    return _change_field(validate(obj), F)


def _source(args) -> str:
    given = [(k, getattr(args, k)) for k in ("file", "family", "json") if getattr(args, k, None) is not None]
    if len(given) != 1:
        raise InputError("give exactly one of --file, --family, --json")
    kind, value = given[0]
    return f"{kind}:{value}"


def _primes(text: str | None) -> list[int]:
    if not text:
        return []
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise InputError(f"bad prime list {text!r}") from None


# --- subcommands -------------------------------------------------------------

def cmd_validate(args):
    obj, is_family = _load_draft(_source(args))
    if is_family:
        L = load_algebra(_source(args), args.field)
        return {"schema": SCHEMA, "kind": "validate", "valid": True, "dim": L.dim}, L
    bad = obj.jacobi_violation()
    report = {"schema": SCHEMA, "kind": "validate", "valid": bad is None, "dim": obj.dim}
    if bad is not None:
        report["violation"] = bad.to_json()
        return report, EXIT_INPUT
    return report, None


def cmd_analyze(args):
    L = load_algebra(_source(args), args.field)
    return analyze(L, _primes(args.companion_primes), args.max_subspaces, args.max_gl_order), L


def cmd_lattice(args):
    L = load_algebra(_source(args), args.field)
    lat = build_lattice(L, args.max_subspaces)
    report = lat.to_json(include_nodes=args.export)
    report["phi"] = describe(L, lat.phi(lat.top))
    return report, L


def cmd_classify(args):
    L = load_algebra(_source(args), args.field)
    report = {"schema": SCHEMA, "kind": "classify", "field_name": str(L.field), "algebra": L.to_json()}
    if L.field.is_finite:
        lat = build_lattice(L, args.max_subspaces)
        report.update(classify(L, lat, args.max_subspaces, args.max_gl_order).to_json(L))
    else:
        report.update(classify(L).to_json(L))
    return report, L


def cmd_search(args):
    F = parse_field(args.field or "gf2")
    workers = args.workers if args.workers is not None else (os.cpu_count() or 1)
    rep = exhaustive_search(args.dim, F, args.max_tables, workers, args.max_gl_order)
    return rep.to_json(), None


def cmd_family(args):
    L = family_from_string(args.name, parse_field(args.field) if args.field else QQ)
    return L.to_json(), L


def cmd_reduce(args):
    L = load_algebra(_source(args), None)
    if L.field != QQ:
        raise InputError("reduce expects an algebra over QQ")
    return reduce_mod_p(L, args.prime).to_json(), None


def cmd_isomorphic(args):
    L1 = load_algebra(args.first, args.field)
    L2 = load_algebra(args.second, args.field)
    ok, A = is_isomorphic(L1, L2, args.max_gl_order)
    report = {"schema": SCHEMA, "kind": "isomorphic", "field_name": str(L1.field), "isomorphic": ok}
    if A is not None:
        report["matrix"] = [[L1.field.encode(x) for x in row] for row in A.rows]
    return report, None


# --- text rendering ----------------------------------------------------------

def _verdict_lines(report: dict) -> list[str]:
    out = []
    for name in ("elementary", "minimal_non_elementary", "e_algebra", "a_algebra",
                 "solvable", "nilpotent", "supersolvable"):
        v = report[name]
        val = "not computed" if v["value"] is None else str(v["value"]).lower()
        wit = f"  witness: {v['witness']['basis']}" if "witness" in v else ""
        out.append(f"{name}: {val}{wit}")
    out.append(f"shape: {report['shape'] or 'not computed'}")
    return out


def render(report: dict, L: LieAlgebra | None) -> str:
    kind = report.get("kind")
    if kind == "analysis":
        return render_text(report)
    lines = []
    if kind == "validate":
        lines.append("valid" if report["valid"] else "Jacobi violation")
        if "violation" in report:
            v = report["violation"]
            lines.append(f"triple {tuple(v['triple'])}, defect {v['defect']}")
    elif kind == "classify":
        lines.extend(bracket_lines(L) if L is not None else [])
        lines.extend(_verdict_lines(report))
        for note in report.get("notes", []):
            lines.append(f"note: {note}")
    elif kind == "search":
        cc = report["cross_check"]
        lines += [
            f"dimension {report['dim']} over {report['field_name']}",
            f"tables-scanned: {report['tables_scanned']}",
            f"jacobi-valid: {report['jacobi_valid']}",
            f"minimal-non-elementary tables: {report['minimal_non_elementary_tables']}",
            f"discrepancies: {cc['discrepancies']}",
            f"derived-nilpotent exceptions: {len(cc['derived_nilpotent_exceptions'])}",
            f"e-algebra exceptions: {len(cc['e_algebra_exceptions'])}",
            f"isomorphism classes: {len(report['representatives'])}",
        ]
        for r in report["representatives"]:
            A = LieAlgebra.from_json(r["algebra"])
            lines.append(f"  {r['shape']} ({r['tables_in_class']} tables): " + "; ".join(bracket_lines(A)))
    elif kind == "isomorphic":
        lines.append(f"isomorphic: {str(report['isomorphic']).lower()}")
        if "matrix" in report:
            lines.append(f"matrix (columns are images): {report['matrix']}")
    elif "brackets" in report and L is not None:
        lines.append(f"dimension {L.dim} over {L.field}")
        lines.extend(bracket_lines(L) or ["(abelian)"])
    elif "summary" in report:
        s = report["summary"]
        lines.append(f"subalgebras: {s['nodes']}, ideals: {s['ideals']}")
        lines.append("by dimension: " + ", ".join(f"{d}: {c}" for d, c in s["by_dimension"].items()))
        lines.append(f"phi: {report['phi']}")
    else:
        return json.dumps(report, indent=2) + "\n"
    return "\n".join(lines) + "\n"


# --- parser ------------------------------------------------------------------

def _add_source(p):
    p.add_argument("--file", help="algebra JSON file")
    p.add_argument("--family", help="family spec, e.g. theorem2:alpha=1")
    p.add_argument("--json", help="inline algebra JSON")
    p.add_argument("--field", help="field: QQ, gfP or gfP^K (family field, or change of field)")


def _add_common(p):
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--output", help="write the report here instead of stdout")
    p.add_argument("--max-subspaces", type=int, default=DEFAULT_MAX_SUBSPACES)
    p.add_argument("--max-gl-order", type=int, default=DEFAULT_MAX_GL_ORDER)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="liefrattini", description="Frattini-theoretic Lie algebra tools")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, func, help_text in (
        ("validate", cmd_validate, "check the Jacobi identity"),
        ("analyze", cmd_analyze, "full analysis report"),
        ("lattice", cmd_lattice, "subalgebra lattice summary or export"),
        ("classify", cmd_classify, "predicates and shape"),
    ):
        p = sub.add_parser(name, help=help_text)
        _add_source(p)
        _add_common(p)
        p.set_defaults(func=func)
        if name == "analyze":
            p.add_argument("--companion-primes", help="comma-separated primes for mod-p companions")
        if name == "lattice":
            p.add_argument("--export", action="store_true", help="include nodes and cover edges")

    p = sub.add_parser("search", help="exhaustive structure-table search")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--field", default="gf2")
    p.add_argument("--max-tables", type=int, default=DEFAULT_MAX_TABLES)
    p.add_argument("--workers", type=int, default=None, help="worker processes (default: all CPUs)")
    _add_common(p)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("family", help="emit a family's algebra JSON")
    p.add_argument("name")
    p.add_argument("--field", default="QQ")
    _add_common(p)
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("reduce", help="reduce an integer QQ algebra mod p")
    _add_source(p)
    p.add_argument("--prime", type=int, required=True)
    _add_common(p)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("isomorphic", help="brute-force isomorphism test")
    p.add_argument("--first", required=True, help="family:SPEC, file:PATH or json:TEXT")
    p.add_argument("--second", required=True, help="family:SPEC, file:PATH or json:TEXT")
    p.add_argument("--field")
    _add_common(p)
    p.set_defaults(func=cmd_isomorphic)
    return parser


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report, extra = args.func(args)
    except CostCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_COST
    except JacobiViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (InputError, FieldError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    L = extra if isinstance(extra, LieAlgebra) else None
    code = extra if isinstance(extra, int) else EXIT_OK
    if args.format == "text":
        text = render(report, L)
    else:
        text = json.dumps(report, indent=2) + "\n"
    _emit(text, args.output)
    return code


if __name__ == "__main__":
    sys.exit(main())
