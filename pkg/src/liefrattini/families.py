"""Named constructors for the algebras used throughout the package.

Family strings look like ``theorem2:alpha=1``, ``abelian:n=3``,
``theorem5i:D=[[1,0],[1,1]]``; composites join parts with ``+`` and
produce direct sums, e.g. ``sl2+abelian:n=1``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Any, Sequence

from .fields import FieldSpec
from .liecore import LieAlgebra, abelian, direct_sum, make_algebra, semidirect_by_matrix
from .linalg import Matrix


def _scalar(F: FieldSpec, value):
    if isinstance(value, str):
        value = Fraction(value)
    return F.normalize(value)


def make_theorem2(F: FieldSpec, alpha=0) -> LieAlgebra:
    """[x,y] = alpha*y + z, [x,z] = alpha*z, [y,z] = 0."""
    a = _scalar(F, alpha)
    return make_algebra(F, 3, {(0, 1): (0, a, 1), (0, 2): (0, 0, a)}, ["x", "y", "z"])


def make_heisenberg(F: FieldSpec) -> LieAlgebra:
    return make_algebra(F, 3, {(0, 1): (0, 0, 1)}, ["x", "y", "z"])


def make_sl2(F: FieldSpec) -> LieAlgebra:
    """Basis (e, f, h) with [h,e] = 2e, [h,f] = -2f, [e,f] = h.

    In characteristic 2 this degenerates to the Heisenberg algebra.
    """
    two = F.from_int(2)
    return make_algebra(F, 3, {(0, 1): (0, 0, 1), (2, 0): (two, 0, 0), (2, 1): (0, F.neg(two), 0)},
                        ["e", "f", "h"])


def make_example5(F: FieldSpec) -> LieAlgebra:
    """The five-dimensional algebra on e1..e5 with ad e1 as the only nonzero brackets."""
    m1 = -1
    return make_algebra(
        F, 5,
        {
            (0, 1): (0, 0, 1, 1, 0),
            (0, 2): (0, m1, 0, 0, 1),
            (0, 3): (0, 0, 0, 0, 1),
            (0, 4): (0, 0, 0, m1, 0),
        },
        ["e1", "e2", "e3", "e4", "e5"],
    )


def make_abelian(F: FieldSpec, n: int) -> LieAlgebra:
    return abelian(F, n, [f"a{i + 1}" for i in range(n)])


def make_two_dim_nonabelian(F: FieldSpec) -> LieAlgebra:
    return make_algebra(F, 2, {(0, 1): (0, 1)}, ["x", "y"])


def make_theorem5i(F: FieldSpec, D: Sequence[Sequence]) -> LieAlgebra:
    """F^m extended by x acting as D; see :func:`liecore.semidirect_by_matrix`."""
    rows = [[_scalar(F, x) for x in row] for row in D]
    m = len(rows)
    return semidirect_by_matrix(Matrix.from_rows(F, rows, m))


_BUILDERS = {
    "theorem2": lambda F, p: make_theorem2(F, p.get("alpha", 0)),
    "heisenberg": lambda F, p: make_heisenberg(F),
    "sl2": lambda F, p: make_sl2(F),
    "example5": lambda F, p: make_example5(F),
    "abelian": lambda F, p: make_abelian(F, int(p.get("n", 1))),
    "two-dim-nonabelian": lambda F, p: make_two_dim_nonabelian(F),
    "theorem5i": lambda F, p: make_theorem5i(F, p["D"]),
}

FAMILY_NAMES = tuple(_BUILDERS)


@dataclass(frozen=True)
class FamilySpec:
    name: str
    params: dict[str, Any] = dc_field(default_factory=dict, hash=False)
    parts: tuple[FamilySpec, ...] = ()

    def build(self, F: FieldSpec) -> LieAlgebra:
        if self.parts:
            out = self.parts[0].build(F)
            for part in self.parts[1:]:
                out = direct_sum(out, part.build(F))
            return out
        return _BUILDERS[self.name](F, self.params)


def _split_top(text: str, sep: str) -> list[str]:
    out, depth, cur = [], 0, []
    for ch in text:
        if ch in "[(":
            depth += 1
        elif ch in "])":
            depth -= 1
        if ch == sep and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur))
    return out


def _parse_value(text: str):
    text = text.strip()
    if text.startswith("["):
        return json.loads(text)
    try:
        return int(text)
    except ValueError:
        return text


def parse_family(text: str) -> FamilySpec:
    text = text.strip()
    parts = _split_top(text, "+")
    if len(parts) > 1:
        return FamilySpec("direct-sum", {}, tuple(parse_family(p) for p in parts))
    name, _, rest = text.partition(":")
    name = name.strip().lower()
    if name not in _BUILDERS:
        raise ValueError(f"unknown family {name!r}; known: {', '.join(FAMILY_NAMES)}")
    params = {}
    if rest:
        for item in _split_top(rest, ","):
            key, eq, val = item.partition("=")
            if not eq:
                raise ValueError(f"family parameter {item!r} is not key=value")
            params[key.strip()] = _parse_value(val)
    if name == "theorem5i" and "D" not in params:
        raise ValueError("theorem5i needs a matrix parameter D=[[...],...]")
    return FamilySpec(name, params)


def family_from_string(text: str, F: FieldSpec) -> LieAlgebra:
    return parse_family(text).build(F)
