from __future__ import annotations

import json

import numpy as np
import pytest

from liefrattini.families import make_heisenberg, make_theorem2
from liefrattini.ffbatch import digits
from liefrattini.fields import QQ, gf
from liefrattini.isomorphism import is_isomorphic
from liefrattini.lattice import CostCapExceeded
from liefrattini.liecore import LieAlgebra, StructureTableDraft
from liefrattini.search import exhaustive_search, jacobi_mask, table_count


def test_table_counts():
    assert table_count(3, 2) == 512
    assert table_count(3, 3) == 19683
    assert table_count(4, 2) == 2**24


@pytest.mark.parametrize("n,q", [(3, 2), (3, 4), (4, 2)])
def test_jacobi_mask_matches_scalar_check(n, q):
    F = gf(q)
    P = n * (n - 1) // 2
    total = min(table_count(n, q), 4096)
    step = max(1, table_count(n, q) // total)
    codes = np.arange(0, table_count(n, q), step)[:total]
    T = np.stack([digits(1, P * n, q, int(c))[0] for c in codes]).reshape(-1, P, n)
    mask = jacobi_mask(T, n, F)
    for row, ok in zip(T.tolist(), mask):
        d = StructureTableDraft(F, n, tuple(map(tuple, row)))
        assert ok == (d.jacobi_violation() is None)


def test_search_dim2_finds_nothing():
    for q in (2, 3, 5):
        rep = exhaustive_search(2, gf(q))
        assert rep.minimal_non_elementary_tables == 0
        assert rep.tables_scanned == q**2 and rep.jacobi_valid == q**2


def test_search_dim3_gf2_counts():
    rep = exhaustive_search(3, gf(2))
    assert rep.tables_scanned == 512
    assert rep.jacobi_valid == 120
    assert rep.discrepancies == []
    assert rep.minimal_non_elementary_tables == 28
    shapes = sorted(r["shape"] for r in rep.representatives)
    assert shapes == ["Theorem5-i", "Theorem5-ii"]


def test_representatives_are_least_tables_and_revalidate():
    rep, records = exhaustive_search(3, gf(3), keep_records=True)
    reps = [LieAlgebra.from_json(r["algebra"]) for r in rep.representatives]
    for r, A in zip(rep.representatives, reps):
        members = [x for x in records if x.minimal_non_elementary
                   and is_isomorphic(A, x.algebra)[0]]
        assert len(members) == r["tables_in_class"]
        assert min(x.algebra.flat_key() for x in members) == A.flat_key()
    assert is_isomorphic(reps[0], make_heisenberg(gf(3)))[0]
    assert is_isomorphic(reps[1], make_theorem2(gf(3), 1))[0]
    assert sum(r["tables_in_class"] for r in rep.representatives) == rep.minimal_non_elementary_tables


def test_parallel_and_serial_agree():
    a = exhaustive_search(3, gf(2), workers=1).to_json()
    b = exhaustive_search(3, gf(2), workers=2).to_json()
    assert json.dumps(a) == json.dumps(b)


def test_caps_and_fields():
    with pytest.raises(CostCapExceeded):
        exhaustive_search(3, gf(3), max_tables=1000)
    with pytest.raises(ValueError):
        exhaustive_search(2, QQ)
