from __future__ import annotations

from fractions import Fraction

import pytest

from liefrattini.families import make_example5, make_heisenberg, make_sl2, make_theorem2
from liefrattini.fields import QQ, FieldError, gf
from liefrattini.lattice import build_lattice
from liefrattini.liecore import (
    JacobiViolation,
    LieAlgebra,
    StructureTableDraft,
    abelian,
    bracket,
    bracket_spaces,
    center,
    centralizer,
    derived_algebra,
    derived_series,
    direct_sum,
    draft_from_json,
    extend_scalars,
    extend_subspace,
    is_abelian,
    is_ideal,
    is_nilpotent,
    is_solvable,
    is_subalgebra,
    lower_central_series,
    make_algebra,
    nilpotency_class,
    normalizer,
    quotient,
    reduce_mod_p,
    semidirect_by_matrix,
    subalgebra_closure,
    subalgebra_restrict,
    validate,
)
from liefrattini.linalg import Matrix, span, subspace_sum, zero_subspace

X, Y, Z = (1, 0, 0), (0, 1, 0), (0, 0, 1)


def test_heisenberg_validates_and_brackets():
    H = make_heisenberg(gf(2))
    assert bracket(H, X, Y) == Z
    assert bracket(H, Y, X) == Z  # -1 = 1 in characteristic 2
    assert bracket(make_heisenberg(gf(3)), Y, X) == (0, 0, 2)


def test_jacobi_violation_reports_triple_and_defect():
    d = StructureTableDraft.from_brackets(QQ, 3, {(0, 1): Z, (1, 2): X, (0, 2): X})
    bad = d.jacobi_violation()
    assert bad is not None and bad.triple == (0, 1, 2)
    assert any(bad.defect)
    with pytest.raises(JacobiViolation):
        validate(d)


def test_abelian_table_is_valid():
    L = abelian(gf(5), 4)
    assert is_abelian(L) and is_solvable(L) and is_nilpotent(L)


def test_bracket_spaces_examples():
    F = gf(3)
    for alpha in (1, 2):
        L = make_theorem2(F, alpha)
        assert bracket_spaces(L, L.whole(), L.whole()) == span(F, 3, [Y, Z])
    L = make_theorem2(F, 1)
    assert bracket_spaces(L, L.whole(), zero_subspace(F, 3)).dim == 0


def test_series_of_theorem2_alpha1_gf3():
    F = gf(3)
    L = make_theorem2(F, 1)
    lcs = lower_central_series(L)
    assert [U.dim for U in lcs] == [3, 2]
    assert lcs[-1] == span(F, 3, [Y, Z])
    assert not is_nilpotent(L)
    assert [U.dim for U in derived_series(L)] == [3, 2, 0]
    assert is_solvable(L)


def test_heisenberg_is_class_two():
    H = make_heisenberg(gf(3))
    assert nilpotency_class(H) == 2


def test_closure_examples_in_sl2():
    F = gf(5)
    S = make_sl2(F)
    e = span(F, 3, [X])
    assert subalgebra_closure(S, e) == e and is_subalgebra(S, e)
    assert subalgebra_closure(S, span(F, 3, [X, Y])) == S.whole()
    assert not is_subalgebra(S, span(F, 3, [X, Y]))


def test_ideals_are_subalgebras_theorem2():
    F = gf(3)
    L = make_theorem2(F, 1)
    lat = build_lattice(L)
    for U in lat.nodes:
        if is_ideal(L, U):
            assert is_subalgebra(L, U)


def test_restrict_examples():
    F = gf(3)
    L = make_theorem2(F, 1)
    assert subalgebra_restrict(L, L.whole()).algebra.table == L.table
    sub = subalgebra_restrict(L, span(F, 3, [Y, Z])).algebra
    assert sub.dim == 2 and is_abelian(sub)
    assert subalgebra_restrict(L, zero_subspace(F, 3)).algebra.dim == 0
    with pytest.raises(ValueError):
        subalgebra_restrict(make_sl2(gf(5)), span(gf(5), 3, [X, Y]))


def test_restrict_then_lift_preserves_brackets():
    F = gf(5)
    L = make_example5(F)
    S = span(F, 5, [(1, 0, 0, 0, 0), (0, 0, 0, 1, 0), (0, 0, 0, 0, 1)])
    view = subalgebra_restrict(L, S)
    A = view.algebra
    for a in range(A.dim):
        for b in range(A.dim):
            lhs = view.lift(A.bracket(A.basis_vector(a), A.basis_vector(b)))
            assert lhs == L.bracket(S.basis[a], S.basis[b])


def test_quotient_examples():
    F = gf(3)
    H = make_heisenberg(F)
    Q, proj = quotient(H, center(H))
    assert Q.dim == 2 and is_abelian(Q)
    assert quotient(H, H.whole())[0].dim == 0
    Q0, _ = quotient(H, zero_subspace(F, 3))
    assert Q0.table == H.table
    with pytest.raises(ValueError):
        quotient(H, span(F, 3, [X]))


def test_quotient_derived_algebra_identity():
    # (L/I)^2 = (L^2 + I)/I for every ideal I
    for L in (make_theorem2(gf(3), 1), make_example5(gf(3)), make_sl2(gf(3))):
        lat = build_lattice(L)
        for a in lat.ideals():
            I = lat.nodes[a]
            Q, proj = quotient(L, I)
            image = span(L.field, Q.dim, [proj.apply(v) for v in subspace_sum(derived_algebra(L), I).basis])
            assert derived_algebra(Q) == image


def test_center_centralizer_normalizer():
    F = gf(2)
    H = make_heisenberg(F)
    assert center(H) == span(F, 3, [Z])
    A = abelian(F, 3)
    assert center(A) == A.whole()
    assert centralizer(H, span(F, 3, [X])) == span(F, 3, [X, Z])
    L = make_theorem2(gf(3), 1)
    assert normalizer(L, derived_algebra(L)) == L.whole()
    assert normalizer(L, span(gf(3), 3, [Y])) == span(gf(3), 3, [Y, Z])


def test_semidirect_matches_theorem2():
    for F in (gf(2), gf(3), QQ):
        for alpha in (0, 1, 2):
            D = Matrix.from_rows(F, [[alpha, 0], [1, alpha]])
            assert semidirect_by_matrix(D).table == make_theorem2(F, alpha).table


def test_direct_sum_examples():
    F = gf(5)
    A = make_theorem2(F, 1)
    assert direct_sum(A, abelian(F, 0)).table == A.table
    L = direct_sum(make_sl2(F), abelian(F, 1))
    assert L.dim == 4 and center(L) == span(F, 4, [(0, 0, 0, 1)])


def test_reduce_mod_p():
    E = make_example5(QQ)
    L3 = reduce_mod_p(E, 3)
    assert L3.field == gf(3) and L3.dim == 5
    assert reduce_mod_p(abelian(QQ, 3), 7).table == abelian(gf(7), 3).table
    half = make_algebra(QQ, 2, {(0, 1): (Fraction(1, 2), 0)})
    with pytest.raises(FieldError):
        reduce_mod_p(half, 3)


def test_extend_scalars():
    H = make_heisenberg(gf(2))
    H4 = extend_scalars(H, gf(4))
    assert H4.table == make_heisenberg(gf(4)).table
    assert extend_subspace(zero_subspace(gf(2), 3), gf(4)).dim == 0
    U = span(gf(2), 3, [(1, 1, 0), (0, 0, 1)])
    assert extend_subspace(U, gf(4)) == span(gf(4), 3, U.basis)


def test_json_round_trip_is_exact():
    for L in (make_example5(QQ), make_sl2(gf(5)), make_theorem2(gf(9), 4)):
        obj = L.to_json()
        back = LieAlgebra.from_json(obj)
        assert back.table == L.table and back.to_json() == obj


def test_json_rejects_duplicate_pairs():
    obj = make_heisenberg(gf(2)).to_json()
    obj["brackets"].append({"i": 1, "j": 0, "value": [0, 0, 1]})
    with pytest.raises(ValueError):
        draft_from_json(obj)
