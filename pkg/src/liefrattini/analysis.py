"""One-stop analysis of a Lie algebra, serializable as JSON or plain text."""

from __future__ import annotations

from .classify import classify
from .families import make_example5
from .fields import QQ, RATIONALS, FieldSpec
from .lattice import DEFAULT_MAX_SUBSPACES, SCHEMA, build_lattice
from .liecore import (
    LieAlgebra,
    center,
    derived_series,
    is_nilpotent,
    is_solvable,
    lower_central_series,
    pairs,
    reduce_mod_p,
)
from .linalg import Subspace

NOT_COMPUTED = "not-computed"


def describe(L: LieAlgebra, U: Subspace) -> str:
    """Human-readable span, e.g. ``span(e4, e5)`` or ``0``."""
    if U.dim == 0:
        return "0"
    return "span(" + ", ".join(describe_vector(L, v) for v in U.basis) + ")"


def describe_vector(L: LieAlgebra, v) -> str:
    F = L.field
    terms = []
    for i, c in enumerate(v):
        if F.is_zero(c):
            continue
        name = L.label(i)
        if c == F.one():
            terms.append(name)
        elif F.kind == RATIONALS:
            terms.append(f"-{name}" if c == -1 else f"{c}*{name}")
        else:
            terms.append(f"{F.encode(c)}*{name}")
    return " + ".join(terms) if terms else "0"


def _space(L: LieAlgebra, U: Subspace) -> dict:
    out = U.to_json()
    out["dim"] = U.dim
    out["text"] = describe(L, U)
    return out


def _lattice_part(L: LieAlgebra, max_subspaces: int) -> dict:
    lat = build_lattice(L, max_subspaces)
    top = lat.top
    return {
        "lattice": lat.summary(),
        "frattini_subalgebra": _space(L, lat.nodes[lat.frattini_subalgebra(top)]),
        "phi": _space(L, lat.phi(top)),
        "maximal_subalgebras": len(lat.maximal_subalgebras(top)),
        "minimal_ideals": [_space(L, lat.nodes[a]) for a in lat.minimal_ideals()],
        "abelian_socle": _space(L, lat.abelian_socle()),
        "nilradical": _space(L, lat.nilradical()),
        "radical": _space(L, lat.radical()),
    }, lat


def _is_example5(L: LieAlgebra) -> bool:
    return L.field == QQ and L.dim == 5 and L.table == make_example5(QQ).table


def analyze(L: LieAlgebra, companion_primes=(), max_subspaces: int = DEFAULT_MAX_SUBSPACES,
            max_gl_order: int | None = None) -> dict:
    """Series, ideals, phi, predicate verdicts and shape for one algebra.

    Over the rationals the lattice-dependent entries are marked not computed;
    each prime in ``companion_primes`` adds a full analysis of the reduction.
    """
    F: FieldSpec = L.field
    report = {
        "schema": SCHEMA,
        "kind": "analysis",
        "field": F.to_json(),
        "field_name": str(F),
        "algebra": L.to_json(),
        "derived_series": [_space(L, U) for U in derived_series(L)],
        "lower_central_series": [_space(L, U) for U in lower_central_series(L)],
        "center": _space(L, center(L)),
        "solvable": is_solvable(L),
        "nilpotent": is_nilpotent(L),
    }
    if F.is_finite:
        part, lat = _lattice_part(L, max_subspaces)
        report.update(part)
        report["classification"] = classify(L, lat, max_subspaces, max_gl_order).to_json(L)
    else:
        for key in ("lattice", "frattini_subalgebra", "phi", "minimal_ideals", "abelian_socle",
                    "nilradical", "radical"):
            report[key] = NOT_COMPUTED
        report["classification"] = classify(L).to_json(L)

    if companion_primes:
        comps = {}
        for p in companion_primes:
            Lp = reduce_mod_p(L, p) if F == QQ else L
            comps[str(p)] = analyze(Lp, (), max_subspaces, max_gl_order)
        report["companions"] = comps
        phis = [c["phi"]["basis"] for c in comps.values()]
        consistent = all(b == phis[0] for b in phis)
        report["phi_companions_consistent"] = consistent
        if F == QQ:
            if _is_example5(L):
                report["phi_char0"] = {"status": "paper-asserted", "text": "span(e4, e5)"}
            else:
                report["phi_char0"] = {"status": "unknown"}
    return report


def render_text(report: dict) -> str:
    """Plain-text rendering of an :func:`analyze` report."""
    L = LieAlgebra.from_json(report["algebra"])
    lines = [f"Lie algebra of dimension {L.dim} over {report['field_name']}", "brackets:"]
    lines.extend("  " + b for b in bracket_lines(L) or ["(all zero)"])
    lines.append("derived series dims: " + " > ".join(str(s["dim"]) for s in report["derived_series"]))
    lines.append("lower central series dims: " + " > ".join(str(s["dim"]) for s in report["lower_central_series"]))
    lines.append(f"center: {report['center']['text']}")
    for key in ("phi", "frattini_subalgebra", "abelian_socle", "nilradical", "radical"):
        val = report[key]
        lines.append(f"{key}: {val if isinstance(val, str) else val['text']}")
    if isinstance(report.get("minimal_ideals"), list):
        lines.append("minimal ideals: " + ", ".join(m["text"] for m in report["minimal_ideals"]))
    cls = report["classification"]
    lines.append("predicates:")
    for name in ("elementary", "minimal_non_elementary", "e_algebra", "a_algebra",
                 "solvable", "nilpotent", "supersolvable"):
        v = cls[name]
        val = _flag(v["value"])
        extra = ""
        if "witness" in v:
            extra = f"  witness ({v['witness_kind']}): {v['witness']['basis']}"
        elif v.get("reason") and v["value"] is None:
            extra = f"  ({v['reason']})"
        lines.append(f"  {name}: {val}{extra}")
    lines.append(f"shape: {_shape_text(cls['shape'])}")
    if cls.get("theorem2_alpha") is not None:
        lines.append(f"theorem2 family member: alpha = {cls['theorem2_alpha']}")
    for note in cls.get("notes", []):
        lines.append(f"note: {note}")
    for p, comp in report.get("companions", {}).items():
        ccls = comp["classification"]
        lines.append(f"mod {p}: phi = {comp['phi']['text']}, "
                     f"minimal non-elementary = {_flag(ccls['minimal_non_elementary']['value'])}, "
                     f"shape = {_shape_text(ccls['shape'])}")
    if "phi_companions_consistent" in report:
        lines.append(f"companion phi values consistent: {_flag(report['phi_companions_consistent'])}")
    if "phi_char0" in report:
        lines.append(f"phi in characteristic 0: {report['phi_char0'].get('text', '?')} "
                     f"({report['phi_char0']['status']})")
    return "\n".join(lines) + "\n"


def _flag(value) -> str:
    return "not computed" if value is None else str(value).lower()


def _shape_text(shape) -> str:
    return "not computed" if shape is None else shape


def bracket_lines(L: LieAlgebra) -> list[str]:
    out = []
    for (i, j), v in zip(pairs(L.dim), L.table):
        if any(not L.field.is_zero(x) for x in v):
            out.append(f"[{L.label(i)}, {L.label(j)}] = {describe_vector(L, v)}")
    return out
