from __future__ import annotations

import itertools
from fractions import Fraction

import pytest

from liefrattini.fields import (
    EXTENSION,
    PRIME,
    QQ,
    FieldError,
    FieldMismatchError,
    Scalar,
    default_modulus,
    embed,
    field_make,
    gf,
    is_irreducible,
    parse_field,
)
from oracles import irreducible_by_search, polys_monic


def test_smallest_prime_field():
    F = field_make("PrimeField", p=2)
    assert F == gf(2)
    assert F.order == 2 and str(F) == "GF(2)"


def test_gf4_default_modulus_is_t2_t_1():
    F = field_make("ExtensionField", p=2, k=2)
    assert F.modulus == (1, 1, 1)
    assert str(F) == "GF(2^2)"


def test_non_prime_rejected():
    with pytest.raises(FieldError):
        field_make("PrimeField", p=4)


def test_reducible_modulus_and_low_degree_rejected():
    with pytest.raises(FieldError):
        field_make(EXTENSION, p=2, k=2, modulus=(1, 0, 1))  # (t+1)^2
    with pytest.raises(FieldError):
        field_make(EXTENSION, p=3, k=1)


def test_gf7_inverse_of_3():
    F = gf(7)
    assert Scalar(F, 3).inv() == Scalar(F, 5)


def test_rational_addition():
    a = Scalar(QQ, Fraction(1, 2)) + Scalar(QQ, Fraction(1, 3))
    assert a.value == Fraction(5, 6)


def test_gf4_t_squared():
    F = gf(4)
    t = Scalar(F, [0, 1])
    assert F.coefficients((t * t).value) == [1, 1]


def test_inverse_of_zero_and_cross_field():
    with pytest.raises(ZeroDivisionError):
        Scalar(gf(5), 0).inv()
    with pytest.raises(FieldMismatchError):
        Scalar(gf(5), 1) + Scalar(gf(7), 1)


@pytest.mark.parametrize("p,k", [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2), (3, 4)])
def test_irreducibility_matches_factor_search(p, k):
    for poly in polys_monic(p, k):
        assert is_irreducible(poly, p) == irreducible_by_search(poly, p), poly


@pytest.mark.parametrize("p,k", [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2), (7, 2)])
def test_default_modulus_is_least_irreducible(p, k):
    irreducible = [f for f in polys_monic(p, k) if irreducible_by_search(f, p)]
    least = min(irreducible, key=lambda f: tuple(reversed(f)))
    assert default_modulus(p, k) == least


@pytest.mark.parametrize("q", [2, 3, 4, 5, 8, 9])
def test_finite_field_axioms_exhaustively(q):
    F = gf(q)
    els = list(F.elements())
    assert len(els) == q
    for a, b in itertools.product(els, repeat=2):
        assert F.add(a, b) == F.add(b, a)
        assert F.mul(a, b) == F.mul(b, a)
        assert F.add(F.sub(a, b), b) == a
    for a in els:
        if a != F.zero():
            assert F.mul(a, F.inv(a)) == F.one()


def test_embed_examples():
    assert embed(Scalar(gf(2), 1), gf(4)) == Scalar.one(gf(4))
    assert F9_coeffs(embed(Scalar(gf(3), 2), gf(9))) == [2, 0]
    with pytest.raises(FieldMismatchError):
        embed(Scalar(gf(2), 1), gf(9))


def F9_coeffs(s):
    return s.field.coefficients(s.value)


@pytest.mark.parametrize("p,q", [(2, 4), (2, 8), (3, 9)])
def test_embed_is_homomorphism(p, q):
    F, E = gf(p), gf(q)
    for a, b in itertools.product(range(p), repeat=2):
        sa, sb = Scalar(F, a), Scalar(F, b)
        assert embed(sa + sb, E) == embed(sa, E) + embed(sb, E)
        assert embed(sa * sb, E) == embed(sa, E) * embed(sb, E)


def test_json_round_trip_of_fields_and_scalars():
    for F in (QQ, gf(3), gf(9), gf(16)):
        assert type(F).from_json(F.to_json()) == F
    assert QQ.encode(Fraction(-3, 4)) == "-3/4"
    assert QQ.decode("6/8") == Fraction(3, 4)
    assert gf(9).encode(gf(9).normalize([1, 2])) == [1, 2]
    assert gf(9).decode([1, 2]) == 1 + 2 * 3


def test_parse_field_aliases():
    assert parse_field("QQ") is QQ
    assert parse_field("gf3") == gf(3)
    assert parse_field("GF(9)") == gf(9)
    assert parse_field("gf2^2") == gf(4)
    assert gf(3).kind == PRIME
    with pytest.raises(FieldError):
        parse_field("reals")
    with pytest.raises(FieldError):
        gf(6)


def test_rationals_in_lowest_terms():
    s = Scalar(QQ, Fraction(6, -4))
    assert s.value.numerator == -3 and s.value.denominator == 2
    assert Scalar.from_integer(gf(5), 7) == Scalar(gf(5), 2)
