from __future__ import annotations

import json

from liefrattini.analysis import analyze, describe, render_text
from liefrattini.families import make_abelian, make_example5, make_theorem2
from liefrattini.fields import QQ, gf
from liefrattini.linalg import span


def test_theorem2_alpha1_gf3_report():
    r = analyze(make_theorem2(gf(3), 1))
    assert r["schema"] == "lie-frattini/1"
    assert r["solvable"] is True and r["nilpotent"] is False
    assert r["phi"]["text"] == "span(z)"
    assert r["classification"]["shape"] == "Theorem5-i"
    assert r["classification"]["minimal_non_elementary"]["value"] is True
    json.dumps(r)


def test_abelian_report_is_trivial():
    r = analyze(make_abelian(gf(2), 3))
    assert r["solvable"] and r["nilpotent"]
    assert r["phi"]["dim"] == 0 and r["center"]["dim"] == 3
    assert r["classification"]["elementary"]["value"] is True
    assert r["classification"]["a_algebra"]["value"] is True
    assert r["radical"]["dim"] == 3 and r["abelian_socle"]["dim"] == 3


def test_example5_rational_with_companions():
    r = analyze(make_example5(QQ), companion_primes=(3, 7))
    assert r["phi"] == "not-computed"
    assert r["classification"]["elementary"]["value"] is None
    for p in ("3", "7"):
        comp = r["companions"][p]
        assert comp["phi"]["text"] == "span(e4, e5)"
        assert comp["classification"]["minimal_non_elementary"]["value"] is True
    assert r["phi_companions_consistent"] is True
    assert r["phi_char0"]["status"] == "paper-asserted"
    text = render_text(r)
    assert "mod 3: phi = span(e4, e5)" in text and "paper-asserted" in text


def test_unknown_char0_label_for_other_algebras():
    r = analyze(make_theorem2(QQ, 1), companion_primes=(3, 5))
    assert r["phi_char0"]["status"] == "unknown"
    assert r["phi_companions_consistent"] is True


def test_describe_spans():
    L = make_example5(gf(5))
    assert describe(L, span(gf(5), 5, [])) == "0"
    assert describe(L, span(gf(5), 5, [(0, 1, 2, 0, 0)])) == "span(e2 + 2*e3)"


def test_text_rendering_lists_witnesses():
    text = render_text(analyze(make_theorem2(gf(2), 0)))
    assert "[x, y] = z" in text
    assert "witness (nilpotent-nonabelian)" in text
    assert "shape: Theorem5-ii" in text
