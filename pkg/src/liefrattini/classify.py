"""Frattini-theoretic predicates and structural shape recognition.

All predicates over finite fields are decided on the full subalgebra lattice.
Each predicate returns a :class:`Verdict`; a False verdict carries a witness
subalgebra that :func:`verify_witness` can re-check from scratch.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .fields import FieldError
from .lattice import DEFAULT_MAX_SUBSPACES, SubalgebraLattice, build_lattice, frattini_from_scratch
from .liecore import (
    LieAlgebra,
    center,
    derived_algebra,
    is_abelian,
    is_nilpotent,
    is_solvable,
    nilpotency_class,
    quotient,
    subalgebra_restrict,
)
from .linalg import Subspace, is_subspace_of, projective_points, span

THEOREM5_I = "Theorem5-i"
THEOREM5_II = "Theorem5-ii"
NO_SHAPE = "none"

NONZERO_FRATTINI = "nonzero-frattini"
ELEMENTARY = "elementary"
FRATTINI_NOT_CONTAINED = "frattini-not-contained"
NILPOTENT_NONABELIAN = "nilpotent-nonabelian"


class NotSolvableError(ValueError):
    """The shape checker was asked about a non-solvable algebra."""


@dataclass
class Verdict:
    """True / False / None (not computed), with a witness for False."""

    value: bool | None
    witness: Subspace | None = None
    witness_kind: str | None = None
    reason: str | None = None

    def __bool__(self) -> bool:
        return bool(self.value)

    def to_json(self) -> dict:
        out = {"value": self.value}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
            out["witness_kind"] = self.witness_kind
        if self.reason:
            out["reason"] = self.reason
        return out


def not_computed(reason: str) -> Verdict:
    return Verdict(None, reason=reason)


def _lattice(L: LieAlgebra, lattice: SubalgebraLattice | None, max_subspaces: int) -> SubalgebraLattice:
    if lattice is not None:
        return lattice
    if not L.field.is_finite:
        raise FieldError("lattice predicates need a finite field")
    return build_lattice(L, max_subspaces)


def _first_nonzero_phi(lat: SubalgebraLattice, candidates) -> int | None:
    for b in candidates:
        if lat.dims[lat.frattini_ideal(b)] > 0:
            return int(b)
    return None


def is_elementary(L: LieAlgebra, lattice: SubalgebraLattice | None = None,
                  max_subspaces: int = DEFAULT_MAX_SUBSPACES, node=None) -> Verdict:
    """phi(S) = 0 for every subalgebra S (of ``node`` when given, else of L)."""
    lat = _lattice(L, lattice, max_subspaces)
    top = lat.top if node is None else lat.idx(node)
    # largest first so the whole algebra is reported when it already fails
    bad = _first_nonzero_phi(lat, lat.down_set(top)[::-1])
    if bad is None:
        return Verdict(True)
    return Verdict(False, lat.nodes[bad], NONZERO_FRATTINI)


def is_minimal_non_elementary(L: LieAlgebra, lattice: SubalgebraLattice | None = None,
                              max_subspaces: int = DEFAULT_MAX_SUBSPACES) -> Verdict:
    lat = _lattice(L, lattice, max_subspaces)
    bad = _first_nonzero_phi(lat, lat.proper_nodes()[::-1])
    if bad is not None:
        return Verdict(False, lat.nodes[bad], NONZERO_FRATTINI,
                       "a proper subalgebra has nonzero Frattini ideal")
    if lat.dims[lat.frattini_ideal(lat.top)] == 0:
        return Verdict(False, lat.nodes[lat.top], ELEMENTARY, "the algebra is elementary")
    return Verdict(True)


def is_E_algebra(L: LieAlgebra, lattice: SubalgebraLattice | None = None,
                 max_subspaces: int = DEFAULT_MAX_SUBSPACES) -> Verdict:
    """phi(S) inside phi(L) for every subalgebra S."""
    lat = _lattice(L, lattice, max_subspaces)
    top_phi = lat.frattini_ideal(lat.top)
    for b in range(len(lat)):
        if not lat.contains[lat.frattini_ideal(b), top_phi]:
            return Verdict(False, lat.nodes[b], FRATTINI_NOT_CONTAINED)
    return Verdict(True)


def is_A_algebra(L: LieAlgebra, lattice: SubalgebraLattice | None = None,
                 max_subspaces: int = DEFAULT_MAX_SUBSPACES) -> Verdict:
    """Every nilpotent subalgebra is abelian."""
    lat = _lattice(L, lattice, max_subspaces)
    for b in range(len(lat) - 1, -1, -1):
        if not lat.abelian[b] and is_nilpotent(L, lat.nodes[b]):
            return Verdict(False, lat.nodes[b], NILPOTENT_NONABELIAN)
    return Verdict(True)


def verify_witness(L: LieAlgebra, verdict: Verdict) -> bool:
    """Re-check a False verdict's witness without using any shared lattice."""
    S = verdict.witness
    if verdict.value is not False or S is None:
        return False
    kind = verdict.witness_kind
    if kind == NONZERO_FRATTINI:
        return frattini_from_scratch(L, S).dim > 0
    if kind == ELEMENTARY:
        from .lattice import subalgebras_by_scan

        return all(frattini_from_scratch(L, T).dim == 0 for T in subalgebras_by_scan(L))
    if kind == FRATTINI_NOT_CONTAINED:
        return not is_subspace_of(frattini_from_scratch(L, S), frattini_from_scratch(L))
    if kind == NILPOTENT_NONABELIAN:
        view = subalgebra_restrict(L, S)
        return is_nilpotent(view.algebra) and not is_abelian(view.algebra)
    return False


# --- shapes ------------------------------------------------------------------

def is_heisenberg_shape(L: LieAlgebra) -> bool:
    if L.dim != 3:
        return False
    D = derived_algebra(L)
    return D.dim == 1 and nilpotency_class(L) == 2 and center(L) == D


def check_theorem5_shape(L: LieAlgebra, lattice: SubalgebraLattice | None = None,
                         max_subspaces: int = DEFAULT_MAX_SUBSPACES) -> str:
    """Classify a solvable algebra as Theorem5-ii (Heisenberg), Theorem5-i or none.

    Theorem5-i: L^2 abelian of codimension one, phi(L) nonzero, equal to the
    abelian socle, and the largest ideal of L properly inside L^2.
    """
    if not is_solvable(L):
        raise NotSolvableError("shape recognition applies to solvable algebras only")
    if is_heisenberg_shape(L):
        return THEOREM5_II
    D = derived_algebra(L)
    if D.dim != L.dim - 1 or not is_abelian(L, D):
        return NO_SHAPE
    lat = _lattice(L, lattice, max_subspaces)
    phi = lat.phi(lat.top)
    if phi.dim == 0 or phi.dim >= D.dim or phi != lat.abelian_socle():
        return NO_SHAPE
    phi_i = lat.idx(phi)
    d_i = lat.idx(D)
    for K in lat.ideals():
        if K != d_i and lat.contains[K, d_i] and not lat.contains[K, phi_i]:
            return NO_SHAPE
    return THEOREM5_I


# --- supersolvability --------------------------------------------------------

def is_supersolvable(L: LieAlgebra) -> bool:
    """Is there a chain of ideals 0 = I_0 < I_1 < ... < I_n = L with dim I_j = j?

    Depth-first over one-dimensional ideals of successive quotients; dead
    ends are remembered by their preimage ideal in L.
    """
    if not L.field.is_finite:
        raise FieldError("supersolvability check enumerates lines and needs a finite field")
    failed: set[Subspace] = set()

    def extend(I: Subspace) -> bool:
        if I.dim == L.dim:
            return True
        if I in failed:
            return False
        Q, proj = quotient(L, I)
        keep = [c for c in range(L.dim) if c not in set(I.pivots)]
        for x in projective_points(L.field, Q.dim):
            if all(_in_line(Q, Q.bracket(Q.basis_vector(i), x), x) for i in range(Q.dim)):
                lift = [L.field.zero()] * L.dim
                for c, v in zip(keep, x):
                    lift[c] = v
                J = span(L.field, L.dim, I.basis + (tuple(lift),))
                if extend(J):
                    return True
        failed.add(I)
        return False

    return extend(L.zero())


def _in_line(Q: LieAlgebra, v, x) -> bool:
    return span(Q.field, Q.dim, [x, v]).dim == 1


# --- aggregate verdict ------------------------------------------------------

@dataclass
class ClassificationVerdict:
    elementary: Verdict
    minimal_non_elementary: Verdict
    e_algebra: Verdict
    a_algebra: Verdict
    solvable: Verdict
    nilpotent: Verdict
    supersolvable: Verdict
    shape: str | None = None
    theorem2_alpha: object = None
    notes: list[str] = dc_field(default_factory=list)

    def predicates(self) -> dict[str, Verdict]:
        return {
            "elementary": self.elementary,
            "minimal_non_elementary": self.minimal_non_elementary,
            "e_algebra": self.e_algebra,
            "a_algebra": self.a_algebra,
            "solvable": self.solvable,
            "nilpotent": self.nilpotent,
            "supersolvable": self.supersolvable,
        }

    def to_json(self, L: LieAlgebra | None = None) -> dict:
        out = {name: v.to_json() for name, v in self.predicates().items()}
        out["shape"] = self.shape
        if L is not None and self.theorem2_alpha is not None:
            out["theorem2_alpha"] = L.field.encode(self.theorem2_alpha)
        else:
            out["theorem2_alpha"] = None
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def theorem2_parameter(L: LieAlgebra, max_gl_order: int | None = None):
    """Least alpha (in encoding order) with L isomorphic to the x,y,z family member, else None."""
    from .families import make_theorem2
    from .isomorphism import DEFAULT_MAX_GL_ORDER, is_isomorphic

    if L.dim != 3 or not L.field.is_finite:
        return None
    cap = DEFAULT_MAX_GL_ORDER if max_gl_order is None else max_gl_order
    for alpha in L.field.elements():
        ok, _ = is_isomorphic(L, make_theorem2(L.field, alpha), cap)
        if ok:
            return alpha
    return None


def classify(L: LieAlgebra, lattice: SubalgebraLattice | None = None,
             max_subspaces: int = DEFAULT_MAX_SUBSPACES, max_gl_order: int | None = None) -> ClassificationVerdict:
    solvable = is_solvable(L)
    nilpotent = is_nilpotent(L)
    sv = Verdict(solvable, reason=None if solvable else "derived series stabilizes above 0")
    nv = Verdict(nilpotent, reason=None if nilpotent else "lower central series stabilizes above 0")
    if not L.field.is_finite:
        reason = "subalgebra lattices are only enumerated over finite fields"
        return ClassificationVerdict(
            not_computed(reason), not_computed(reason), not_computed(reason), not_computed(reason),
            sv, nv, not_computed("line enumeration needs a finite field"),
            shape=None, notes=["use companion primes for mod-p predicates"],
        )
    lat = _lattice(L, lattice, max_subspaces)
    notes = []
    if L.field.characteristic == 2 and L.labels == ("e", "f", "h"):
        notes.append("sl2 degenerates in characteristic 2: [h,e] = [h,f] = 0")
    shape = check_theorem5_shape(L, lat) if solvable else None
    alpha = None
    try:
        alpha = theorem2_parameter(L, max_gl_order)
    except Exception as exc:  # cost refusal is reported, not fatal
        notes.append(f"theorem2 recognition skipped: {exc}")
    return ClassificationVerdict(
        is_elementary(L, lat),
        is_minimal_non_elementary(L, lat),
        is_E_algebra(L, lat),
        is_A_algebra(L, lat),
        sv,
        nv,
        Verdict(is_supersolvable(L)),
        shape=shape,
        theorem2_alpha=alpha,
        notes=notes,
    )
