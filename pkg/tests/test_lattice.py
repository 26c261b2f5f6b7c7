from __future__ import annotations

import itertools

import pytest

from liefrattini.families import (
    make_abelian,
    make_example5,
    make_heisenberg,
    make_sl2,
    make_theorem2,
    make_two_dim_nonabelian,
)
from liefrattini.fields import QQ, FieldError, gf
from liefrattini.lattice import (
    CostCapExceeded,
    build_lattice,
    enumerate_subspaces,
    estimate_cost,
    frattini_from_scratch,
    gaussian_binomial,
    subalgebras_by_scan,
    subspace_count,
)
from liefrattini.liecore import (
    abelian,
    derived_algebra,
    direct_sum,
    is_ideal,
    is_nilpotent,
    pairs,
)
from liefrattini.linalg import intersect, is_subspace_of, span
from oracles import frattini_ideal_set, gaussian_product, span_set, subalgebra_sets


def as_set(U, p):
    return span_set(U.basis, p, U.ambient)


def table_dict(L):
    return {ij: v for ij, v in zip(pairs(L.dim), L.table)}


def test_subspace_counts():
    assert len(list(enumerate_subspaces(2, gf(2)))) == 5
    assert len(list(enumerate_subspaces(5, gf(2)))) == 374
    for q in (2, 3, 5):
        assert len(list(enumerate_subspaces(1, gf(q)))) == 2


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7])
def test_gaussian_binomial_recurrence_matches_product(q):
    for n in range(7):
        for d in range(n + 1):
            assert gaussian_binomial(n, d, q) == gaussian_product(n, d, q)


def test_enumeration_count_and_uniqueness():
    for n, q in ((3, 3), (4, 2), (3, 4), (4, 3)):
        subs = list(enumerate_subspaces(n, gf(q)))
        assert len(subs) == len(set(subs)) == subspace_count(n, q)


def test_cost_cap_refuses():
    est = estimate_cost(5, gf(7), cap=1000)
    assert not est.admissible and est.subspace_count > 1000
    with pytest.raises(CostCapExceeded):
        list(enumerate_subspaces(5, gf(3), cap=100))
    with pytest.raises(CostCapExceeded):
        build_lattice(make_example5(gf(3)), max_subspaces=100)
    with pytest.raises(FieldError):
        build_lattice(make_heisenberg(QQ))


def test_abelian_lattice_is_every_subspace():
    for n, q in ((2, 2), (3, 3), (4, 2)):
        lat = build_lattice(abelian(gf(q), n))
        assert len(lat) == subspace_count(n, q)
        assert lat.abelian.all()


def test_heisenberg_gf2_lattice():
    F = gf(2)
    H = make_heisenberg(F)
    lat = build_lattice(H)
    planes = [U for U in lat.nodes if U.dim == 2]
    z = (0, 0, 1)
    assert len(planes) == 3 and all(z in U for U in planes)
    assert lat.maximal_subalgebras(lat.top) == [lat.idx(U) for U in planes]
    assert lat.phi(lat.top) == span(F, 3, [z]) == derived_algebra(H)


def test_zero_and_line_conventions():
    lat = build_lattice(abelian(gf(3), 0))
    assert len(lat) == 1 and lat.phi(0).dim == 0
    lat = build_lattice(abelian(gf(3), 1))
    assert lat.maximal_subalgebras(lat.top) == [0]
    assert lat.phi(lat.top).dim == 0


def test_maximal_subalgebras_examples():
    F = gf(2)
    lat = build_lattice(make_abelian(F, 2))
    assert len(lat.maximal_subalgebras(lat.top)) == 3
    line = next(a for a in range(len(lat)) if lat.dims[a] == 1)
    assert lat.maximal_subalgebras(line) == [0]


def test_frattini_examples():
    lat = build_lattice(make_abelian(gf(3), 2))
    assert lat.phi(lat.top).dim == 0
    F = gf(3)
    L = make_theorem2(F, 1)
    lat = build_lattice(L)
    assert lat.phi(lat.top) == span(F, 3, [(0, 0, 1)])


def test_ideal_examples():
    F = gf(3)
    E = make_example5(F)
    lat = build_lattice(E)
    e45 = span(F, 5, [(0, 0, 0, 1, 0), (0, 0, 0, 0, 1)])
    assert [lat.nodes[a] for a in lat.minimal_ideals()] == [e45]
    assert lat.abelian_socle() == e45
    lat = build_lattice(make_abelian(gf(2), 3))
    assert len(lat.minimal_ideals()) == 7 and lat.abelian_socle().dim == 3
    S = make_sl2(gf(5))
    lat = build_lattice(S)
    assert lat.minimal_ideals() == [lat.top]
    assert lat.abelian_socle().dim == 0


def test_radicals():
    lat = build_lattice(make_sl2(gf(5)))
    assert lat.radical().dim == 0
    F = gf(3)
    L = make_theorem2(F, 1)
    lat = build_lattice(L)
    assert lat.radical() == L.whole()
    assert lat.nilradical() == span(F, 3, [(0, 1, 0), (0, 0, 1)])


SMALL = [
    make_heisenberg(gf(2)),
    make_theorem2(gf(3), 1),
    make_theorem2(gf(2), 1),
    make_two_dim_nonabelian(gf(3)),
    make_sl2(gf(3)),
    direct_sum(make_heisenberg(gf(2)), abelian(gf(2), 1)),
    direct_sum(make_two_dim_nonabelian(gf(2)), make_two_dim_nonabelian(gf(2))),
]


@pytest.mark.parametrize("L", SMALL, ids=lambda L: f"{L.field}-{L.dim}-{hash(L.table) % 997}")
def test_nodes_match_brute_force_and_scan(L):
    p = L.field.p
    lat = build_lattice(L)
    assert {as_set(U, p) for U in lat.nodes} == set(subalgebra_sets(table_dict(L), L.dim, p))
    assert sorted(lat.nodes, key=lambda U: (U.dim, U.basis)) == lat.nodes
    assert set(subalgebras_by_scan(L)) == set(lat.nodes)


@pytest.mark.parametrize("L", SMALL, ids=lambda L: f"{L.field}-{L.dim}-{hash(L.table) % 997}")
def test_frattini_matches_brute_force(L):
    p = L.field.p
    lat = build_lattice(L)
    for b, S in enumerate(lat.nodes):
        expect = frattini_ideal_set(table_dict(L), L.dim, p, as_set(S, p))
        assert as_set(lat.phi(b), p) == expect


@pytest.mark.parametrize("L", SMALL + [make_example5(gf(3))],
                         ids=lambda L: f"{L.field}-{L.dim}-{hash(L.table) % 997}")
def test_lattice_invariants(L):
    lat = build_lattice(L)
    N = len(lat)
    assert lat.dims[0] == 0 and lat.nodes[lat.top] == L.whole()
    # covers join comparable nodes with nothing in between
    for a, b in lat.covers:
        assert lat.contains[a, b] and a != b
        between = lat.contains[a, :] & lat.contains[:, b]
        assert between.sum() == 2
    # contains matches subspace inclusion on a sample
    for a, b in itertools.islice(itertools.product(range(N), repeat=2), 0, 4000, 7):
        assert lat.contains[a, b] == is_subspace_of(lat.nodes[a], lat.nodes[b])
    for b in range(N):
        S = lat.nodes[b]
        phi = lat.phi(b)
        assert is_ideal(L, phi, within=S) and is_subspace_of(phi, S)
        for m in lat.maximal_subalgebras(b):
            assert is_subspace_of(phi, lat.nodes[m])
    assert is_subspace_of(lat.abelian_socle(), lat.nilradical())
    assert is_subspace_of(lat.nilradical(), lat.radical())
    for a in range(N):
        assert lat.ideal[a] == is_ideal(L, lat.nodes[a])


@pytest.mark.parametrize("L", SMALL, ids=lambda L: f"{L.field}-{L.dim}-{hash(L.table) % 997}")
def test_frattini_subalgebra_is_intersection_of_maximals(L):
    lat = build_lattice(L)
    for b in range(len(lat)):
        maxes = lat.maximal_subalgebras(b)
        if not maxes:
            continue
        expect = lat.nodes[maxes[0]]
        for m in maxes[1:]:
            expect = intersect(expect, lat.nodes[m])
        assert lat.nodes[lat.frattini_subalgebra(b)] == expect


def test_frattini_from_scratch_agrees():
    for L in SMALL:
        lat = build_lattice(L)
        for b in range(0, len(lat), 3):
            assert frattini_from_scratch(L, lat.nodes[b]) == lat.phi(b)


def test_nilpotent_frattini_subalgebra_is_derived_algebra():
    for L in (make_heisenberg(gf(2)), make_heisenberg(gf(5)),
              direct_sum(make_heisenberg(gf(2)), abelian(gf(2), 1)), abelian(gf(3), 3)):
        assert is_nilpotent(L)
        lat = build_lattice(L)
        assert lat.nodes[lat.frattini_subalgebra(lat.top)] == derived_algebra(L)


def test_example5_mod7_phi():
    F = gf(7)
    lat = build_lattice(make_example5(F))
    assert lat.phi(lat.top) == span(F, 5, [(0, 0, 0, 1, 0), (0, 0, 0, 0, 1)])
    assert int(lat.nonzero_phi().sum()) == 1


def test_lattice_json_export():
    lat = build_lattice(make_heisenberg(gf(2)))
    out = lat.to_json()
    assert out["schema"] == "lie-frattini/1"
    assert out["summary"] == {"nodes": 12, "ideals": 6, "by_dimension": {"0": 1, "1": 7, "2": 3, "3": 1}}
    assert len(out["nodes"]) == 12 and all(len(e) == 2 for e in out["covers"])
