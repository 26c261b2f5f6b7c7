"""Frattini theory of small Lie algebras over exact fields.

Exact arithmetic over QQ and finite fields, full subalgebra lattices,
Frattini ideals, elementary / minimal non-elementary predicates, shape
recognition and exhaustive structure-table searches.
"""

from __future__ import annotations

from .analysis import analyze, render_text
from .classify import (
    ClassificationVerdict,
    Verdict,
    check_theorem5_shape,
    classify,
    is_A_algebra,
    is_E_algebra,
    is_elementary,
    is_minimal_non_elementary,
    is_supersolvable,
    verify_witness,
)
from .families import (
    family_from_string,
    make_abelian,
    make_example5,
    make_heisenberg,
    make_sl2,
    make_theorem2,
    make_theorem5i,
)
from .fields import QQ, FieldError, FieldSpec, Scalar, field_make, gf, parse_field
from .isomorphism import is_isomorphic
from .lattice import CostCapExceeded, SubalgebraLattice, build_lattice, frattini_from_scratch
from .liecore import (
    JacobiViolation,
    LieAlgebra,
    StructureTableDraft,
    direct_sum,
    extend_scalars,
    make_algebra,
    reduce_mod_p,
    semidirect_by_matrix,
    validate,
)
from .linalg import Matrix, Subspace, span
from .search import exhaustive_search

__all__ = [
    "QQ", "ClassificationVerdict", "CostCapExceeded", "FieldError", "FieldSpec", "JacobiViolation",
    "LieAlgebra", "Matrix", "Scalar", "StructureTableDraft", "SubalgebraLattice", "Subspace", "Verdict",
    "analyze", "build_lattice", "check_theorem5_shape", "classify", "direct_sum", "exhaustive_search",
    "extend_scalars", "family_from_string", "field_make", "frattini_from_scratch", "gf", "is_A_algebra",
    "is_E_algebra", "is_elementary", "is_isomorphic", "is_minimal_non_elementary", "is_supersolvable",
    "make_abelian", "make_algebra", "make_example5", "make_heisenberg", "make_sl2", "make_theorem2",
    "make_theorem5i", "parse_field", "reduce_mod_p", "render_text", "semidirect_by_matrix", "span",
    "validate", "verify_witness",
]
