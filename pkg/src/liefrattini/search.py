"""Exhaustive search over all antisymmetric structure tables of a small algebra.

Tables are numbered by their entries read in pair order as base-q digits,
most significant first, so table order agrees with :meth:`LieAlgebra.flat_key`.
The space is split by the first bracket vector; each part is scanned
independently and the results are merged in table order.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field

import numpy as np

from .classify import (
    NO_SHAPE,
    check_theorem5_shape,
    is_E_algebra,
    is_minimal_non_elementary,
)
from .ffbatch import batch_for, digits
from .fields import FieldSpec
from .isomorphism import DEFAULT_MAX_GL_ORDER, invariants, is_isomorphic
from .lattice import SCHEMA, CostCapExceeded, build_lattice
from .liecore import LieAlgebra, derived_algebra, is_nilpotent, is_solvable, pairs

DEFAULT_MAX_TABLES = 2 * 10**7
_CHUNK = 1 << 15


def table_count(n: int, q: int) -> int:
    return q ** (n * (n * (n - 1) // 2))


def jacobi_mask(T: np.ndarray, n: int, F: FieldSpec) -> np.ndarray:
    """Which tables T (M, C(n,2), n) satisfy Jacobi on every basis triple."""
    arith = batch_for(F)
    M = T.shape[0]
    c = np.zeros((M, n, n, n), dtype=np.int64)
    for t, (i, j) in enumerate(pairs(n)):
        c[:, i, j] = T[:, t]
        c[:, j, i] = arith.neg(T[:, t])
    ok = np.ones(M, dtype=bool)
    for i, j, k in itertools.combinations(range(n), 3):
        total = np.zeros((M, n), dtype=np.int64)
        for a, b, d in ((i, j, k), (j, k, i), (k, i, j)):
            # [[e_a, e_b], e_d] = sum_l c[a,b,l] c[l,d,:]
            if arith.prime:
                term = np.einsum("ml,mlr->mr", c[:, a, b], c[:, :, d]) % arith.p
            else:
                term = arith.combine(c[:, a, b], c[:, :, d])
            total = arith.add(total, term)
        ok &= ~total.any(axis=1)
    return ok


@dataclass
class TableRecord:
    code: int
    algebra: LieAlgebra
    solvable: bool
    minimal_non_elementary: bool
    shape: str | None
    derived_nilpotent: bool
    e_algebra: bool | None
    phi_dim: int


def _examine(L: LieAlgebra, code: int) -> TableRecord:
    lat = build_lattice(L)
    solvable = is_solvable(L)
    mne = bool(is_minimal_non_elementary(L, lat).value)
    shape = check_theorem5_shape(L, lat) if solvable else None
    d_nil = is_nilpotent(L, derived_algebra(L))
    e_alg = bool(is_E_algebra(L, lat).value) if mne else None
    return TableRecord(code, L, solvable, mne, shape, d_nil, e_alg,
                       int(lat.dims[lat.frattini_ideal(lat.top)]))


@dataclass
class PartResult:
    scanned: int = 0
    valid: int = 0
    solvable: int = 0
    nilpotent: int = 0
    shapes: dict = dc_field(default_factory=dict)
    records: list = dc_field(default_factory=list)  # minimal non-elementary or shape-positive
    discrepancies: list = dc_field(default_factory=list)


def _scan_part(args) -> PartResult:
    n, F, lo, hi = args
    q = F.order
    P = n * (n - 1) // 2
    out = PartResult()
    for start in range(lo, hi, _CHUNK):
        count = min(_CHUNK, hi - start)
        T = digits(count, P * n, q, start).reshape(count, P, n)
        ok = jacobi_mask(T, n, F)
        out.scanned += count
        for off in np.flatnonzero(ok).tolist():
            code = start + off
            table = tuple(tuple(r) for r in T[off].tolist())
            L = LieAlgebra(F, n, table)
            rec = _examine(L, code)
            out.valid += 1
            out.solvable += rec.solvable
            out.nilpotent += is_nilpotent(L)
            if rec.solvable:
                out.shapes[rec.shape] = out.shapes.get(rec.shape, 0) + 1
                if rec.minimal_non_elementary != (rec.shape != NO_SHAPE):
                    out.discrepancies.append(code)
            if rec.minimal_non_elementary or (rec.shape not in (None, NO_SHAPE)):
                out.records.append(rec)
    return out


@dataclass
class SearchReport:
    field: FieldSpec
    dim: int
    tables_scanned: int
    jacobi_valid: int
    solvable: int
    nilpotent: int
    shape_counts: dict
    minimal_non_elementary_tables: int
    minimal_non_elementary_solvable: int
    discrepancies: list
    derived_nilpotent_exceptions: list
    e_algebra_exceptions: list
    representatives: list

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "kind": "search",
            "field": self.field.to_json(),
            "field_name": str(self.field),
            "dim": self.dim,
            "tables_scanned": self.tables_scanned,
            "jacobi_valid": self.jacobi_valid,
            "solvable": self.solvable,
            "nilpotent": self.nilpotent,
            "shape_counts": {k: self.shape_counts[k] for k in sorted(self.shape_counts)},
            "minimal_non_elementary_tables": self.minimal_non_elementary_tables,
            "minimal_non_elementary_solvable": self.minimal_non_elementary_solvable,
            "cross_check": {
                "discrepancies": len(self.discrepancies),
                "discrepancy_tables": list(self.discrepancies),
                "derived_nilpotent_exceptions": list(self.derived_nilpotent_exceptions),
                "e_algebra_exceptions": list(self.e_algebra_exceptions),
            },
            "representatives": self.representatives,
        }


def _representatives(records: list[TableRecord], max_gl_order: int) -> list[dict]:
    """One entry per isomorphism class of minimal non-elementary tables, least table first."""
    classes: list[dict] = []
    buckets: dict[tuple, list[dict]] = {}
    for rec in records:
        if not rec.minimal_non_elementary:
            continue
        key = invariants(rec.algebra) + (rec.phi_dim, rec.shape)
        bucket = buckets.setdefault(key, [])
        for cls in bucket:
            same, _ = is_isomorphic(cls["algebra"], rec.algebra, max_gl_order, use_invariants=False)
            if same:
                cls["members"] += 1
                break
        else:
            cls = {"algebra": rec.algebra, "code": rec.code, "members": 1, "record": rec}
            bucket.append(cls)
            classes.append(cls)
    out = []
    for cls in classes:
        rec = cls["record"]
        out.append({
            "table_code": cls["code"],
            "algebra": cls["algebra"].to_json(),
            "tables_in_class": cls["members"],
            "solvable": rec.solvable,
            "shape": rec.shape,
            "phi_dim": rec.phi_dim,
            "derived_nilpotent": rec.derived_nilpotent,
            "e_algebra": rec.e_algebra,
        })
    return out


def exhaustive_search(n: int, F: FieldSpec, max_tables: int = DEFAULT_MAX_TABLES,
                      workers: int | None = 1, max_gl_order: int = DEFAULT_MAX_GL_ORDER,
                      keep_records: bool = False):
    """Scan every antisymmetric table of an n-dimensional algebra over F.

    ``workers=None`` uses every available CPU. Returns a :class:`SearchReport`,
    plus the raw records when ``keep_records`` is set.
    """
    if not F.is_finite:
        raise ValueError("exhaustive search needs a finite field")
    q = F.order
    total = table_count(n, q)
    if total > max_tables:
        raise CostCapExceeded(f"structure tables for dimension {n} over {F}", total, max_tables)
    if n < 2:
        bounds = [(0, total)]
    else:
        part = total // q**n
        bounds = [(v * part, (v + 1) * part) for v in range(q**n)]
    jobs = [(n, F, lo, hi) for lo, hi in bounds]
    if workers is None:
        workers = os.cpu_count() or 1
    if workers <= 1 or len(jobs) == 1:
        parts = [_scan_part(job) for job in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_scan_part, jobs))

    shapes: dict = {}
    records: list[TableRecord] = []
    discrepancies: list[int] = []
    for pr in parts:
        for k, v in pr.shapes.items():
            shapes[k] = shapes.get(k, 0) + v
        records.extend(pr.records)
        discrepancies.extend(pr.discrepancies)
    mne = [r for r in records if r.minimal_non_elementary]
    report = SearchReport(
        field=F,
        dim=n,
        tables_scanned=sum(pr.scanned for pr in parts),
        jacobi_valid=sum(pr.valid for pr in parts),
        solvable=sum(pr.solvable for pr in parts),
        nilpotent=sum(pr.nilpotent for pr in parts),
        shape_counts=shapes,
        minimal_non_elementary_tables=len(mne),
        minimal_non_elementary_solvable=sum(r.solvable for r in mne),
        discrepancies=discrepancies,
        derived_nilpotent_exceptions=[r.code for r in mne if r.solvable != r.derived_nilpotent],
        e_algebra_exceptions=[r.code for r in mne if not r.e_algebra],
        representatives=_representatives(records, max_gl_order),
    )
    if keep_records:
        return report, records
    return report
