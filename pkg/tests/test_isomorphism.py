from __future__ import annotations

import random

import pytest

from liefrattini.families import make_example5, make_heisenberg, make_sl2, make_theorem2
from liefrattini.fields import QQ, FieldError, gf
from liefrattini.isomorphism import gl_order, is_isomorphic, transports
from liefrattini.lattice import CostCapExceeded
from liefrattini.liecore import LieAlgebra, abelian, pairs
from liefrattini.linalg import Matrix, rref


def change_basis(L: LieAlgebra, A: Matrix) -> LieAlgebra:
    """The algebra whose basis vector i is column i of A, in L's coordinates."""
    F, n = L.field, L.dim
    cols = [A.column(i) for i in range(n)]
    # coordinates in the new basis: solve A c = v through the inverse matrix
    inv = inverse(A)
    table = tuple(inv.apply(L.bracket(cols[i], cols[j])) for i, j in pairs(n))
    return LieAlgebra(F, n, table)


def inverse(A: Matrix) -> Matrix:
    F, n = A.field, A.ncols
    aug = Matrix.from_rows(F, [tuple(r) + tuple(F.one() if i == j else F.zero() for j in range(n))
                               for i, r in enumerate(A.rows)])
    red, rank, _ = rref(aug)
    assert rank == n
    return Matrix.from_rows(F, [row[n:] for row in red.rows])


def random_invertible(F, n, rng):
    while True:
        A = Matrix.from_rows(F, [[rng.randrange(F.order) for _ in range(n)] for _ in range(n)])
        if rref(A)[1] == n:
            return A


def test_gl_orders():
    assert gl_order(2, 2) == 6
    assert gl_order(3, 2) == 168
    assert gl_order(5, 3) == 475_566_474_240


def test_identical_tables_give_identity():
    ok, A = is_isomorphic(make_theorem2(gf(2), 0), make_heisenberg(gf(2)))
    assert ok and A.rows == Matrix.identity(gf(2), 3).rows
    ok, A = is_isomorphic(make_example5(gf(3)), make_example5(gf(3)))
    assert ok


def test_invariants_separate_nilpotent_from_non_nilpotent():
    ok, A = is_isomorphic(make_theorem2(gf(2), 0), make_theorem2(gf(2), 1))
    assert not ok and A is None


def test_dim5_gf3_is_refused():
    F = gf(3)
    L = make_example5(F)
    M = change_basis(L, random_invertible(F, 5, random.Random(1)))
    with pytest.raises(CostCapExceeded) as info:
        is_isomorphic(L, M)
    assert info.value.estimate == 475_566_474_240


def test_field_and_dimension_mismatch():
    with pytest.raises(FieldError):
        is_isomorphic(make_heisenberg(gf(2)), make_heisenberg(gf(3)))
    assert is_isomorphic(abelian(gf(2), 2), abelian(gf(2), 3)) == (False, None)
    with pytest.raises(FieldError):
        is_isomorphic(make_sl2(QQ), make_theorem2(QQ, 1))


@pytest.mark.parametrize("seed", range(6))
def test_random_change_of_basis_is_found_and_transports(seed):
    rng = random.Random(seed)
    F = gf(rng.choice([2, 3]))
    L = rng.choice([make_theorem2(F, 1), make_sl2(F), make_heisenberg(F)])
    M = change_basis(L, random_invertible(F, 3, rng))
    ok, A = is_isomorphic(M, L)
    assert ok and transports(A, M, L)
    ok, B = is_isomorphic(L, M)
    assert ok and transports(B, L, M)


def test_theorem2_nonzero_alphas_are_isomorphic():
    F = gf(5)
    for alpha in range(1, 5):
        ok, A = is_isomorphic(make_theorem2(F, alpha), make_theorem2(F, 1))
        assert ok and transports(A, make_theorem2(F, alpha), make_theorem2(F, 1))


def test_extension_field_search():
    F = gf(4)
    L = make_theorem2(F, 2)
    ok, A = is_isomorphic(L, make_theorem2(F, 1))
    assert ok and transports(A, L, make_theorem2(F, 1))
