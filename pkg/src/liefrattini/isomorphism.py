"""Brute-force isomorphism testing over small finite fields."""

from __future__ import annotations

import numpy as np

from .ffbatch import batch_for, digits
from .fields import FieldError
from .lattice import CostCapExceeded
from .liecore import (
    LieAlgebra,
    center,
    derived_series,
    lower_central_series,
    pairs,
)
from .linalg import Matrix

DEFAULT_MAX_GL_ORDER = 10**7
_CHUNK = 1 << 16


def gl_order(n: int, q: int) -> int:
    out = 1
    for i in range(n):
        out *= q**n - q**i
    return out


def invariants(L: LieAlgebra) -> tuple:
    """Cheap isomorphism invariants: series dimensions and center dimension."""
    return (
        L.dim,
        tuple(U.dim for U in derived_series(L)),
        tuple(U.dim for U in lower_central_series(L)),
        center(L).dim,
    )


def _identity(L: LieAlgebra) -> Matrix:
    return Matrix.identity(L.field, L.dim)


def transports(A: Matrix, L1: LieAlgebra, L2: LieAlgebra) -> bool:
    """Does v -> A v satisfy A[u, v]_1 = [A u, A v]_2 on all basis pairs?"""
    n = L1.dim
    for i, j in pairs(n):
        lhs = A.apply(L1.bracket(L1.basis_vector(i), L1.basis_vector(j)))
        rhs = L2.bracket(A.column(i), A.column(j))
        if lhs != rhs:
            return False
    return True


def is_isomorphic(L1: LieAlgebra, L2: LieAlgebra, max_gl_order: int = DEFAULT_MAX_GL_ORDER,
                  use_invariants: bool = True) -> tuple[bool, Matrix | None]:
    """Search GL(n, q) for a bracket-preserving change of basis.

    Returns ``(True, A)`` where the columns of A are the images of L1's basis
    vectors in L2, or ``(False, None)``. Raises :class:`CostCapExceeded`
    when |GL(n, q)| is above ``max_gl_order``.
    """
    if L1.field != L2.field:
        raise FieldError("isomorphism test needs both algebras over the same field")
    if L1.dim != L2.dim:
        return False, None
    if L1.table == L2.table:
        return True, _identity(L1)
    F, n = L1.field, L1.dim
    if not F.is_finite:
        raise FieldError("isomorphism search needs a finite field")
    if use_invariants and invariants(L1) != invariants(L2):
        return False, None
    q = F.order
    order = gl_order(n, q)
    if order > max_gl_order:
        raise CostCapExceeded(f"isomorphism search over GL({n},{q})", order, max_gl_order)

    arith = batch_for(F)
    c1, c2 = L1.tensor, L2.tensor
    ii, jj = (list(t) for t in zip(*pairs(n))) if n >= 2 else ([], [])
    total = q ** (n * n)
    for lo in range(0, total, _CHUNK):
        count = min(_CHUNK, total - lo)
        # U[m, i] is the image of basis vector i
        U = digits(count, n * n, q, lo).reshape(count, n, n)
        if ii:
            lhs = arith.combine(c1[ii, jj][None], U[:, None])
            rhs = arith.bracket(c2, U[:, ii], U[:, jj])
            ok = ~(lhs != rhs).reshape(count, -1).any(axis=1)
        else:
            ok = np.ones(count, dtype=bool)
        if not ok.any():
            continue
        cand = U[ok]
        full = arith.rank(cand) == n
        if full.any():
            imgs = cand[np.argmax(full)]
            A = Matrix.from_rows(F, imgs.T.tolist(), n)
            return True, A
    return False, None
