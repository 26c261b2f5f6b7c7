"""Dense exact linear algebra and a canonical subspace calculus.

Vectors are tuples of raw field elements (see :mod:`liefrattini.fields`).
A :class:`Subspace` always stores its basis in fully reduced row-echelon
form, so two subspaces are equal exactly when their bases are identical and
subspaces can be used directly as dict keys.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Iterator, Sequence

from .fields import PRIME, RATIONALS, FieldMismatchError, FieldSpec

Vector = tuple


class DimensionError(ValueError):
    """Shapes, ambient dimensions or fields do not match."""


@dataclass(frozen=True)
class Matrix:
    field: FieldSpec
    rows: tuple[tuple, ...]
    ncols: int

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Iterable[Sequence], ncols: int | None = None) -> Matrix:
        rows = tuple(tuple(field.normalize(x) for x in r) for r in rows)
        if ncols is None:
            if not rows:
                raise DimensionError("cannot infer the column count of an empty matrix")
            ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise DimensionError("ragged matrix rows")
        return cls(field, rows, ncols)

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> Matrix:
        one, zero = field.one(), field.zero()
        return cls(field, tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)), n)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def apply(self, v: Vector) -> Vector:
        """Matrix times column vector."""
        if len(v) != self.ncols:
            raise DimensionError(f"vector of length {len(v)} against {self.ncols} columns")
        return mat_vec(self.field, self.rows, v)

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.rows)


def mat_vec(F: FieldSpec, rows: Sequence[Vector], v: Vector) -> Vector:
    if F.kind == PRIME:
        p = F.p
        return tuple(sum(a * b for a, b in zip(r, v)) % p for r in rows)
    if F.kind == RATIONALS:
        return tuple(sum((a * b for a, b in zip(r, v)), Fraction(0)) for r in rows)
    out = []
    for r in rows:
        acc = 0
        for a, b in zip(r, v):
            if a and b:
                acc = F.add(acc, F.mul(a, b))
        out.append(acc)
    return tuple(out)


def vec_add(F: FieldSpec, u: Vector, v: Vector) -> Vector:
    return tuple(F.add(a, b) for a, b in zip(u, v))


def vec_scale(F: FieldSpec, c, v: Vector) -> Vector:
    return tuple(F.mul(c, a) for a in v)


def lin_comb(F: FieldSpec, coeffs: Sequence, vectors: Sequence[Vector], n: int) -> Vector:
    if F.kind == PRIME:
        p = F.p
        acc = [0] * n
        for c, v in zip(coeffs, vectors):
            if c:
                for i, x in enumerate(v):
                    acc[i] += c * x
        return tuple(x % p for x in acc)
    acc = [F.zero()] * n
    for c, v in zip(coeffs, vectors):
        if not F.is_zero(c):
            for i, x in enumerate(v):
                if not F.is_zero(x):
                    acc[i] = F.add(acc[i], F.mul(c, x))
    return tuple(acc)


# --- row reduction -----------------------------------------------------------

def _rref_prime(rows: list[list[int]], ncols: int, p: int):
    rows = [[x % p for x in r] for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], p - 2, p)
        prow = [x * inv % p for x in rows[r]]
        rows[r] = prow
        for i in range(len(rows)):
            if i != r:
                f = rows[i][c]
                if f:
                    rows[i] = [(x - f * y) % p for x, y in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return [tuple(x) for x in rows[:r]], pivots


def _rref_rational(rows: list[list[Fraction]], ncols: int):
    # Work on primitive integer rows; normalize to Fractions at the end.
    work = []
    for row in rows:
        den = lcm(*(Fraction(x).denominator for x in row)) if row else 1
        work.append([int(Fraction(x) * den) for x in row])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(work)) if work[i][c]), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        a = work[r][c]
        for i in range(len(work)):
            if i != r and work[i][c]:
                b = work[i][c]
                new = [a * x - b * y for x, y in zip(work[i], work[r])]
                g = gcd(*new)
                work[i] = [x // g for x in new] if g > 1 else new
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    out = []
    for i, c in enumerate(pivots):
        a = work[i][c]
        out.append(tuple(Fraction(x, a) for x in work[i]))
    return out, pivots


def _rref_generic(F: FieldSpec, rows: list[list], ncols: int):
    rows = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if not F.is_zero(rows[i][c])), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = F.inv(rows[r][c])
        prow = [F.mul(inv, x) for x in rows[r]]
        rows[r] = prow
        for i in range(len(rows)):
            if i != r and not F.is_zero(rows[i][c]):
                f = rows[i][c]
                rows[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return [tuple(x) for x in rows[:r]], pivots


def rref_rows(F: FieldSpec, rows: Iterable[Sequence], ncols: int) -> tuple[list[Vector], list[int]]:
    """Nonzero rows of the reduced row-echelon form, and the pivot columns."""
    rows = [list(r) for r in rows]
    if F.kind == PRIME:
        return _rref_prime(rows, ncols, F.p)
    if F.kind == RATIONALS:
        return _rref_rational(rows, ncols)
    return _rref_generic(F, rows, ncols)


def rref(m: Matrix) -> tuple[Matrix, int, tuple[int, ...]]:
    rows, pivots = rref_rows(m.field, m.rows, m.ncols)
    return Matrix(m.field, tuple(rows), m.ncols), len(pivots), tuple(pivots)


# --- subspaces ---------------------------------------------------------------

@dataclass(frozen=True)
class Subspace:
    """A subspace of F^n held by its canonical RREF basis."""

    field: FieldSpec
    ambient: int
    basis: tuple[Vector, ...]
    pivots: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __contains__(self, v) -> bool:
        return member(v, self)

    def __le__(self, other: Subspace) -> bool:
        return is_subspace_of(self, other)

    def __lt__(self, other: Subspace) -> bool:
        return self.dim < other.dim and is_subspace_of(self, other)

    def __repr__(self) -> str:
        return f"Subspace({self.field}, n={self.ambient}, basis={[list(b) for b in self.basis]})"

    def to_json(self) -> dict:
        return {"ambient": self.ambient, "basis": [[self.field.encode(x) for x in row] for row in self.basis]}


def span(F: FieldSpec, n: int, vectors: Iterable[Sequence]) -> Subspace:
    vectors = [tuple(v) for v in vectors]
    for v in vectors:
        if len(v) != n:
            raise DimensionError(f"vector of length {len(v)} in ambient dimension {n}")
    rows, pivots = rref_rows(F, vectors, n)
    return Subspace(F, n, tuple(rows), tuple(pivots))


def zero_subspace(F: FieldSpec, n: int) -> Subspace:
    return Subspace(F, n, (), ())


def whole_space(F: FieldSpec, n: int) -> Subspace:
    return Subspace(F, n, Matrix.identity(F, n).rows, tuple(range(n)))


def unit_vector(F: FieldSpec, n: int, i: int) -> Vector:
    return tuple(F.one() if j == i else F.zero() for j in range(n))


def _check_same(U: Subspace, V: Subspace) -> None:
    if U.field != V.field:
        raise FieldMismatchError(f"{U.field} vs {V.field}")
    if U.ambient != V.ambient:
        raise DimensionError(f"ambient {U.ambient} vs {V.ambient}")


def reduce_vector(v: Vector, U: Subspace) -> Vector:
    """Residual of v after eliminating U's pivot coordinates (zero iff v in U)."""
    F = U.field
    if len(v) != U.ambient:
        raise DimensionError(f"vector of length {len(v)} in ambient dimension {U.ambient}")
    if F.kind == PRIME:
        p = F.p
        acc = list(v)
        for row, c in zip(U.basis, U.pivots):
            f = acc[c] % p
            if f:
                for i, x in enumerate(row):
                    if x:
                        acc[i] -= f * x
        return tuple(x % p for x in acc)
    acc = list(v)
    for row, c in zip(U.basis, U.pivots):
        f = acc[c]
        if not F.is_zero(f):
            acc = [F.sub(a, F.mul(f, x)) for a, x in zip(acc, row)]
    return tuple(acc)


def member(v: Sequence, U: Subspace) -> bool:
    return not any(reduce_vector(tuple(v), U))


def coordinates(v: Vector, U: Subspace) -> Vector:
    """Coordinates of v in U's canonical basis; raises if v is not in U."""
    if not member(v, U):
        raise DimensionError("vector is not in the subspace")
    return tuple(v[c] for c in U.pivots)


def subspace_eq(U: Subspace, V: Subspace) -> bool:
    _check_same(U, V)
    return U.basis == V.basis


def is_subspace_of(U: Subspace, V: Subspace) -> bool:
    _check_same(U, V)
    if U.dim > V.dim:
        return False
    return all(member(u, V) for u in U.basis)


def subspace_sum(U: Subspace, V: Subspace) -> Subspace:
    _check_same(U, V)
    if V.dim == 0 or V.basis == U.basis:
        return U
    if U.dim == 0:
        return V
    return span(U.field, U.ambient, U.basis + V.basis)


def intersect(U: Subspace, V: Subspace) -> Subspace:
    """Zassenhaus: row-reduce [[U, U], [V, 0]] and read the rows with zero left half."""
    _check_same(U, V)
    F, n = U.field, U.ambient
    if U.dim == 0 or V.dim == 0:
        return zero_subspace(F, n)
    zero = (F.zero(),) * n
    rows = [u + u for u in U.basis] + [v + zero for v in V.basis]
    red, pivots = rref_rows(F, rows, 2 * n)
    out = [row[n:] for row, c in zip(red, pivots) if c >= n]
    return span(F, n, out)


def complement_indices(U: Subspace) -> tuple[int, ...]:
    """Non-pivot coordinates; the unit vectors there span a complement of U."""
    piv = set(U.pivots)
    return tuple(i for i in range(U.ambient) if i not in piv)


def kernel(m: Matrix) -> Subspace:
    """All column vectors x with m x = 0."""
    F, n = m.field, m.ncols
    rows, pivots = rref_rows(F, m.rows, n)
    free = [c for c in range(n) if c not in set(pivots)]
    vecs = []
    for f in free:
        x = [F.zero()] * n
        x[f] = F.one()
        for row, c in zip(rows, pivots):
            x[c] = F.neg(row[f])
        vecs.append(tuple(x))
    return span(F, n, vecs)


def solve_invariant_core(W: Subspace, actions: Sequence[Matrix]) -> Subspace:
    """Largest K inside W with A K contained in K for every action A.

    Iterates K <- {x in K : A x in K for all A}; each round is one kernel
    computation in the coordinates of K's basis.
    """
    F, n = W.field, W.ambient
    for A in actions:
        if A.ncols != n or A.nrows != n or A.field != F:
            raise DimensionError("action matrix does not match the subspace")
    K = W
    while K.dim:
        # column i of the condition matrix: residual of A k_i modulo K
        cols = []
        for k in K.basis:
            images = [reduce_vector(A.apply(k), K) for A in actions]
            cols.append(tuple(itertools.chain.from_iterable(images)))
        if not any(any(c) for c in cols):
            return K
        nrows = len(cols[0])
        cond = Matrix(F, tuple(tuple(cols[j][i] for j in range(K.dim)) for i in range(nrows)), K.dim)
        sol = kernel(cond)
        new = span(F, n, [lin_comb(F, c, K.basis, n) for c in sol.basis])
        if new.dim == K.dim:
            return K
        K = new
    return K


# --- finite-field enumeration helpers ---------------------------------------

def all_vectors(F: FieldSpec, n: int) -> Iterator[Vector]:
    return itertools.product(range(F.order), repeat=n)


def projective_points(F: FieldSpec, n: int) -> Iterator[Vector]:
    """One normalized spanning vector (first nonzero entry 1) per line of F^n."""
    if not F.is_finite:
        raise DimensionError("line enumeration needs a finite field")
    q = F.order
    for lead in range(n):
        for tail in itertools.product(range(q), repeat=n - lead - 1):
            yield (0,) * lead + (F.one(),) + tail


def subspace_from_json(F: FieldSpec, obj: dict) -> Subspace:
    n = obj["ambient"]
    return span(F, n, [[F.decode(x) for x in row] for row in obj["basis"]])
