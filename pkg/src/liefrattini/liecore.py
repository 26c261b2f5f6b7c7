"""Lie algebras given by structure constants, and the bracket calculus on them.

A table stores ``[b_i, b_j]`` only for ``i < j``, in lexicographic pair order
``(0,1), (0,2), ..., (n-2,n-1)``; antisymmetry and the zero diagonal are
structural.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np

from .fields import PRIME, RATIONALS, FieldError, FieldMismatchError, FieldSpec, embed_raw, field_make
from .linalg import (
    DimensionError,
    Matrix,
    Subspace,
    Vector,
    complement_indices,
    coordinates,
    kernel,
    lin_comb,
    member,
    reduce_vector,
    span,
    subspace_sum,
    whole_space,
    zero_subspace,
)


def pairs(n: int) -> list[tuple[int, int]]:
    return list(itertools.combinations(range(n), 2))


def pair_index(i: int, j: int, n: int) -> int:
    """Position of (i, j), i < j, in the lexicographic pair order."""
    return i * n - i * (i + 1) // 2 + (j - i - 1)


class JacobiViolation(ValueError):
    """A basis triple on which the Jacobi identity fails."""

    def __init__(self, triple: tuple[int, int, int], defect: Vector, field: FieldSpec):
        self.triple = triple
        self.defect = defect
        self.field = field
        super().__init__(f"Jacobi identity fails on basis triple {triple}: defect "
                         f"{[field.encode(x) for x in defect]}")

    def to_json(self) -> dict:
        return {"triple": list(self.triple), "defect": [self.field.encode(x) for x in self.defect]}


@dataclass(frozen=True)
class StructureTableDraft:
    """An antisymmetric bracket table that has not been checked for Jacobi."""

    field: FieldSpec
    dim: int
    table: tuple[Vector, ...]
    labels: tuple[str, ...] | None = dc_field(default=None, compare=False)

    def __post_init__(self):
        n = self.dim
        if len(self.table) != n * (n - 1) // 2:
            raise DimensionError(f"a {n}-dimensional table needs {n * (n - 1) // 2} brackets")
        if any(len(v) != n for v in self.table):
            raise DimensionError("bracket vector of the wrong length")
        if self.labels is not None and len(self.labels) != n:
            raise DimensionError("one label per basis vector is required")

    @classmethod
    def from_brackets(cls, F: FieldSpec, n: int, brackets: Mapping[tuple[int, int], Sequence],
                      labels: Sequence[str] | None = None) -> StructureTableDraft:
        """Build from ``{(i, j): vector}``; missing pairs are zero, (j, i) entries are negated."""
        zero = (F.zero(),) * n
        table = [zero] * (n * (n - 1) // 2)
        for (i, j), vec in brackets.items():
            if not (0 <= i < n and 0 <= j < n) or i == j:
                raise DimensionError(f"bad bracket index pair ({i}, {j})")
            vec = tuple(F.normalize(x) for x in vec)
            if len(vec) != n:
                raise DimensionError("bracket vector of the wrong length")
            if i > j:
                i, j, vec = j, i, tuple(F.neg(x) for x in vec)
            table[pair_index(i, j, n)] = vec
        return cls(F, n, tuple(table), tuple(labels) if labels is not None else None)

    @cached_property
    def structure(self) -> list[list[Vector]]:
        """Dense n x n array of bracket vectors."""
        F, n = self.field, self.dim
        zero = (F.zero(),) * n
        c = [[zero] * n for _ in range(n)]
        for (i, j), v in zip(pairs(n), self.table):
            c[i][j] = v
            c[j][i] = tuple(F.neg(x) for x in v)
        return c

    def bracket(self, u: Sequence, v: Sequence) -> Vector:
        F, n = self.field, self.dim
        if len(u) != n or len(v) != n:
            raise DimensionError(f"vectors must have length {n}")
        coeffs, vecs = [], []
        if F.kind == PRIME:
            p = F.p
            for (i, j), t in zip(pairs(n), self.table):
                c = (u[i] * v[j] - u[j] * v[i]) % p
                if c:
                    coeffs.append(c)
                    vecs.append(t)
        else:
            for (i, j), t in zip(pairs(n), self.table):
                c = F.sub(F.mul(u[i], v[j]), F.mul(u[j], v[i]))
                if not F.is_zero(c):
                    coeffs.append(c)
                    vecs.append(t)
        return lin_comb(F, coeffs, vecs, n)

    def jacobi_violation(self) -> JacobiViolation | None:
        F, n, c = self.field, self.dim, self.structure
        for i, j, k in itertools.combinations(range(n), 3):
            e = [tuple(F.one() if a == b else F.zero() for a in range(n)) for b in (i, j, k)]
            terms = [self.bracket(c[i][j], e[2]), self.bracket(c[j][k], e[0]), self.bracket(c[k][i], e[1])]
            defect = tuple(F.add(F.add(a, b), d) for a, b, d in zip(*terms))
            if any(not F.is_zero(x) for x in defect):
                return JacobiViolation((i, j, k), defect, F)
        return None

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels else f"b{i}"


@dataclass(frozen=True)
class LieAlgebra(StructureTableDraft):
    """A validated Lie algebra; construction raises :class:`JacobiViolation`."""

    def __post_init__(self):
        super().__post_init__()
        bad = self.jacobi_violation()
        if bad is not None:
            raise bad

    @property
    def n(self) -> int:
        return self.dim

    def whole(self) -> Subspace:
        return whole_space(self.field, self.dim)

    def zero(self) -> Subspace:
        return zero_subspace(self.field, self.dim)

    def basis_vector(self, i: int) -> Vector:
        F = self.field
        return tuple(F.one() if a == i else F.zero() for a in range(self.dim))

    def ad(self, u: Sequence) -> Matrix:
        """Matrix of v -> [u, v] acting on column vectors."""
        cols = [self.bracket(u, self.basis_vector(j)) for j in range(self.dim)]
        return Matrix(self.field, tuple(tuple(col[i] for col in cols) for i in range(self.dim)), self.dim)

    @cached_property
    def tensor(self) -> np.ndarray:
        """Structure constants as an int64 array c[i, j, k] (finite fields only)."""
        if not self.field.is_finite:
            raise FieldError("array form needs a finite field")
        n = self.dim
        c = np.zeros((n, n, n), dtype=np.int64)
        for i in range(n):
            for j in range(n):
                c[i, j] = self.structure[i][j]
        return c

    def flat_key(self) -> tuple:
        """Table entries in pair order; used for ordering and deduplication."""
        return tuple(x for v in self.table for x in v)

    def to_json(self) -> dict:
        F = self.field
        brackets = []
        for (i, j), v in zip(pairs(self.dim), self.table):
            if any(not F.is_zero(x) for x in v):
                brackets.append({"i": i, "j": j, "value": [F.encode(x) for x in v]})
        return {
            "field": F.to_json(),
            "dim": self.dim,
            "labels": list(self.labels) if self.labels else [f"b{i}" for i in range(self.dim)],
            "brackets": brackets,
        }

    @classmethod
    def from_json(cls, obj: dict) -> LieAlgebra:
        return validate(draft_from_json(obj))


def draft_from_json(obj: dict) -> StructureTableDraft:
    if not isinstance(obj, dict):
        raise ValueError("algebra JSON must be an object")
    for key in ("field", "dim", "brackets"):
        if key not in obj:
            raise ValueError(f"algebra JSON is missing {key!r}")
    F = FieldSpec.from_json(obj["field"])
    n = obj["dim"]
    if not isinstance(n, int) or n < 0:
        raise ValueError(f"bad dimension {n!r}")
    brackets = {}
    for entry in obj["brackets"]:
        i, j = entry["i"], entry["j"]
        if (i, j) in brackets or (j, i) in brackets:
            raise ValueError(f"bracket ({i}, {j}) listed twice")
        brackets[(i, j)] = [F.decode(x) for x in entry["value"]]
    labels = obj.get("labels")
    return StructureTableDraft.from_brackets(F, n, brackets, labels)


def validate(d: StructureTableDraft) -> LieAlgebra:
    """Promote a draft to a :class:`LieAlgebra`, raising :class:`JacobiViolation`."""
    return LieAlgebra(d.field, d.dim, d.table, d.labels)


def make_algebra(F: FieldSpec, n: int, brackets: Mapping[tuple[int, int], Sequence],
                 labels: Sequence[str] | None = None) -> LieAlgebra:
    return validate(StructureTableDraft.from_brackets(F, n, brackets, labels))


def abelian(F: FieldSpec, n: int, labels: Sequence[str] | None = None) -> LieAlgebra:
    return make_algebra(F, n, {}, labels)


# --- brackets of subspaces ---------------------------------------------------

def _check_space(L: LieAlgebra, U: Subspace) -> None:
    if U.field != L.field:
        raise FieldMismatchError(f"subspace over {U.field}, algebra over {L.field}")
    if U.ambient != L.dim:
        raise DimensionError(f"subspace of F^{U.ambient} in a {L.dim}-dimensional algebra")


def bracket(L: LieAlgebra, u: Sequence, v: Sequence) -> Vector:
    return L.bracket(tuple(u), tuple(v))


def bracket_spaces(L: LieAlgebra, U: Subspace, V: Subspace) -> Subspace:
    _check_space(L, U)
    _check_space(L, V)
    if U == V:
        prods = [L.bracket(a, b) for a, b in itertools.combinations(U.basis, 2)]
    else:
        prods = [L.bracket(a, b) for a in U.basis for b in V.basis]
    return span(L.field, L.dim, prods)


def derived_algebra(L: LieAlgebra) -> Subspace:
    return span(L.field, L.dim, L.table)


def derived_series(L: LieAlgebra, S: Subspace | None = None) -> list[Subspace]:
    """S, S^2, (S^2)^2, ... up to and including the first repeated term."""
    cur = L.whole() if S is None else S
    series = [cur]
    while cur.dim:
        nxt = bracket_spaces(L, cur, cur)
        if nxt.dim == cur.dim:
            break
        series.append(nxt)
        cur = nxt
    return series


def lower_central_series(L: LieAlgebra, S: Subspace | None = None) -> list[Subspace]:
    """S, [S, S], [S, [S, S]], ... until the dimension stops dropping."""
    top = L.whole() if S is None else S
    cur = top
    series = [cur]
    while cur.dim:
        nxt = bracket_spaces(L, top, cur)
        if nxt.dim == cur.dim:
            break
        series.append(nxt)
        cur = nxt
    return series


def is_solvable(L: LieAlgebra, S: Subspace | None = None) -> bool:
    return derived_series(L, S)[-1].dim == 0


def is_nilpotent(L: LieAlgebra, S: Subspace | None = None) -> bool:
    return lower_central_series(L, S)[-1].dim == 0


def nilpotency_class(L: LieAlgebra, S: Subspace | None = None) -> int | None:
    series = lower_central_series(L, S)
    if series[-1].dim:
        return None
    return len(series) - 1


def is_abelian(L: LieAlgebra, S: Subspace | None = None) -> bool:
    if S is None:
        return all(not any(v) for v in L.table)
    return bracket_spaces(L, S, S).dim == 0


def subalgebra_closure(L: LieAlgebra, U: Subspace) -> Subspace:
    _check_space(L, U)
    while True:
        nxt = subspace_sum(U, bracket_spaces(L, U, U))
        if nxt.dim == U.dim:
            return U
        U = nxt


def is_subalgebra(L: LieAlgebra, U: Subspace) -> bool:
    _check_space(L, U)
    return all(member(L.bracket(a, b), U) for a, b in itertools.combinations(U.basis, 2))


def is_ideal(L: LieAlgebra, U: Subspace, within: Subspace | None = None) -> bool:
    """[within, U] inside U; ``within`` defaults to the whole algebra."""
    _check_space(L, U)
    gens = L.whole().basis if within is None else within.basis
    return all(member(L.bracket(x, u), U) for x in gens for u in U.basis)


# --- derived algebras --------------------------------------------------------

@dataclass(frozen=True)
class SubalgebraView:
    """A subalgebra S of ``parent`` as an algebra on S's canonical basis."""

    algebra: LieAlgebra
    parent: LieAlgebra
    space: Subspace

    def lift(self, coords: Sequence) -> Vector:
        return lin_comb(self.parent.field, coords, self.space.basis, self.parent.dim)

    def lift_space(self, U: Subspace) -> Subspace:
        return span(self.parent.field, self.parent.dim, [self.lift(b) for b in U.basis])

    def coords(self, v: Sequence) -> Vector:
        return coordinates(tuple(v), self.space)

    def restrict_space(self, U: Subspace) -> Subspace:
        """A subspace of the parent lying in S, expressed in S's coordinates."""
        return span(self.parent.field, self.space.dim, [self.coords(b) for b in U.basis])


def subalgebra_restrict(L: LieAlgebra, S: Subspace) -> SubalgebraView:
    _check_space(L, S)
    if not is_subalgebra(L, S):
        raise ValueError("subspace is not closed under the bracket")
    m = S.dim
    table = []
    for a, b in pairs(m):
        table.append(coordinates(L.bracket(S.basis[a], S.basis[b]), S))
    sub = LieAlgebra(L.field, m, tuple(table), None)
    return SubalgebraView(sub, L, S)


def quotient(L: LieAlgebra, I: Subspace) -> tuple[LieAlgebra, Matrix]:
    """L / I on the unit vectors at I's non-pivot coordinates, with the projection."""
    _check_space(L, I)
    if not is_ideal(L, I):
        raise ValueError("quotient by a subspace that is not an ideal")
    F, n = L.field, L.dim
    keep = complement_indices(I)
    m = len(keep)

    def project(v: Vector) -> Vector:
        r = reduce_vector(v, I)
        return tuple(r[c] for c in keep)

    proj_cols = [project(L.basis_vector(j)) for j in range(n)]
    proj = Matrix(F, tuple(tuple(col[i] for col in proj_cols) for i in range(m)), n)
    table = [project(L.bracket(L.basis_vector(keep[a]), L.basis_vector(keep[b]))) for a, b in pairs(m)]
    labels = tuple(L.label(c) for c in keep) if L.labels else None
    return LieAlgebra(F, m, tuple(table), labels), proj


def _stack(mats: Iterable[Matrix], F: FieldSpec, n: int) -> Matrix:
    rows = tuple(r for m in mats for r in m.rows)
    return Matrix(F, rows, n)


def centralizer(L: LieAlgebra, U: Subspace) -> Subspace:
    _check_space(L, U)
    if U.dim == 0:
        return L.whole()
    return kernel(_stack((L.ad(u) for u in U.basis), L.field, L.dim))


def center(L: LieAlgebra) -> Subspace:
    return centralizer(L, L.whole())


def normalizer(L: LieAlgebra, U: Subspace) -> Subspace:
    """{x : [x, U] inside U}, solved as a kernel on the complement coordinates."""
    _check_space(L, U)
    F, n = L.field, L.dim
    keep = complement_indices(U)
    if not keep or U.dim == 0:
        return L.whole()
    mats = []
    for u in U.basis:
        # x -> [x, u] = -ad(u) x, then reduce modulo U and keep complement coords
        cols = []
        for j in range(n):
            r = reduce_vector(L.bracket(L.basis_vector(j), u), U)
            cols.append(tuple(r[c] for c in keep))
        mats.append(Matrix(F, tuple(tuple(col[i] for col in cols) for i in range(len(keep))), n))
    return kernel(_stack(mats, F, n))


def direct_sum(L1: LieAlgebra, L2: LieAlgebra) -> LieAlgebra:
    if L1.field != L2.field:
        raise FieldMismatchError(f"{L1.field} vs {L2.field}")
    F = L1.field
    n1, n2 = L1.dim, L2.dim
    n = n1 + n2
    zero = (F.zero(),)
    brackets = {}
    for (i, j), v in zip(pairs(n1), L1.table):
        brackets[(i, j)] = v + zero * n2
    for (i, j), v in zip(pairs(n2), L2.table):
        brackets[(n1 + i, n1 + j)] = zero * n1 + v
    labels = None
    if L1.labels or L2.labels:
        labels = [L1.label(i) for i in range(n1)] + [L2.label(i) for i in range(n2)]
        if len(set(labels)) != n:
            labels = [f"{x}_1" for x in labels[:n1]] + [f"{x}_2" for x in labels[n1:]]
    return make_algebra(F, n, brackets, labels)


def semidirect_by_matrix(D: Matrix, labels: Sequence[str] | None = None) -> LieAlgebra:
    """Abelian F^m extended by x with ad x acting on F^m as the matrix D.

    Basis order is (x, v_1, ..., v_m) and [x, v_j] = sum_i D[i][j] v_i.
    """
    if D.nrows != D.ncols:
        raise DimensionError("D must be square")
    F, m = D.field, D.ncols
    brackets = {(0, j + 1): (F.zero(),) + D.column(j) for j in range(m)}
    if labels is None:
        labels = ["x"] + [f"v{i + 1}" for i in range(m)]
    return make_algebra(F, m + 1, brackets, labels)


def reduce_mod_p(L: LieAlgebra, p: int) -> LieAlgebra:
    if L.field.kind != RATIONALS:
        raise FieldError("mod-p reduction applies to algebras over QQ")
    for v in L.table:
        for x in v:
            if x.denominator != 1:
                raise FieldError(f"table entry {x} is not an integer")
    F = field_make(PRIME, p=p)
    table = tuple(tuple(int(x) % p for x in v) for v in L.table)
    return validate(StructureTableDraft(F, L.dim, table, L.labels))


def extend_scalars(L: LieAlgebra, target: FieldSpec) -> LieAlgebra:
    table = tuple(tuple(embed_raw(L.field, x, target) for x in v) for v in L.table)
    return validate(StructureTableDraft(target, L.dim, table, L.labels))


def extend_subspace(U: Subspace, target: FieldSpec) -> Subspace:
    """U tensored up to ``target``; the canonical basis stays canonical."""
    basis = tuple(tuple(embed_raw(U.field, x, target) for x in b) for b in U.basis)
    return Subspace(target, U.ambient, basis, U.pivots)
