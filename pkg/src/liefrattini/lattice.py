"""Exhaustive subalgebra lattices over finite fields.

Every subspace of F_q^n is generated from its RREF shape (pivot columns plus
free entries); one batch per pivot pattern is tested for bracket closure
with vectorized arithmetic. The surviving nodes, their inclusion relation and
the Frattini data derived from it are held by :class:`SubalgebraLattice`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import numpy as np

from .fields import FieldError, FieldSpec
from .ffbatch import batch_for, digits
from .liecore import LieAlgebra, is_nilpotent, is_solvable
from .linalg import Subspace, solve_invariant_core, subspace_sum, zero_subspace

DEFAULT_MAX_SUBSPACES = 2_000_000
SCHEMA = "lie-frattini/1"

_CACHE_LIMIT = 50_000
_DENSE_COVER_LIMIT = 1500


class CostCapExceeded(RuntimeError):
    """An exhaustive computation would exceed its configured cap."""

    def __init__(self, what: str, estimate: int, cap: int):
        self.what = what
        self.estimate = estimate
        self.cap = cap
        super().__init__(f"{what}: estimated {estimate:,} exceeds the cap of {cap:,}")


class InternalInconsistency(AssertionError):
    """A computed object failed its defining property (a bug, not a user error)."""


def gaussian_binomial(n: int, d: int, q: int) -> int:
    """[n choose d]_q by the q-Pascal recurrence."""
    if d < 0 or d > n:
        return 0
    row = [1]
    for m in range(1, n + 1):
        new = [1] * (m + 1)
        for k in range(1, m):
            new[k] = row[k - 1] + q**k * row[k]
        row = new
    return row[d]


def subspace_count(n: int, q: int) -> int:
    return sum(gaussian_binomial(n, d, q) for d in range(n + 1))


@dataclass(frozen=True)
class CostEstimate:
    subspace_count: int
    cap: int

    @property
    def admissible(self) -> bool:
        return self.subspace_count <= self.cap


def estimate_cost(n: int, F: FieldSpec, cap: int = DEFAULT_MAX_SUBSPACES) -> CostEstimate:
    if not F.is_finite:
        raise FieldError("subspace enumeration needs a finite field")
    return CostEstimate(subspace_count(n, F.order), cap)


# --- subspace enumeration ----------------------------------------------------

def _pattern_batch(n: int, q: int, pivots: tuple[int, ...]) -> np.ndarray:
    d = len(pivots)
    piv = set(pivots)
    free = [(r, c) for r, p in enumerate(pivots) for c in range(p + 1, n) if c not in piv]
    count = q ** len(free)
    B = np.zeros((count, d, n), dtype=np.int64)
    for r, p in enumerate(pivots):
        B[:, r, p] = 1
    if free:
        vals = digits(count, len(free), q)
        for col, (r, c) in enumerate(free):
            B[:, r, c] = vals[:, col]
    return B


def _iter_batches(n: int, q: int) -> Iterator[tuple[tuple[int, ...], np.ndarray]]:
    for d in range(n + 1):
        for pivots in itertools.combinations(range(n), d):
            yield pivots, _pattern_batch(n, q, pivots)


def enumerate_subspaces(n: int, F: FieldSpec, cap: int = DEFAULT_MAX_SUBSPACES) -> Iterator[Subspace]:
    """Every subspace of F^n exactly once, by dimension then pivot pattern."""
    est = estimate_cost(n, F, cap)
    if not est.admissible:
        raise CostCapExceeded(f"subspaces of {F}^{n}", est.subspace_count, cap)
    for pivots, B in _iter_batches(n, F.order):
        for rows in B.tolist():
            yield Subspace(F, n, tuple(map(tuple, rows)), pivots)


def _pad(nodes: list[Subspace], n: int) -> tuple[np.ndarray, np.ndarray]:
    N = len(nodes)
    PB = np.zeros((N, n, n), dtype=np.int64)
    PP = np.zeros((N, n), dtype=np.int64)
    for a, U in enumerate(nodes):
        if U.dim:
            PB[a, :U.dim] = U.basis
            PP[a, :U.dim] = U.pivots
    return PB, PP


def _containment(F: FieldSpec, n: int, nodes: list[Subspace], PB: np.ndarray, PP: np.ndarray,
                 dims: np.ndarray) -> np.ndarray:
    """contains[a, b] is True iff node a lies inside node b.

    Uses a packed bitset of node membership for every vector of F^n when it
    fits in memory, otherwise row-by-row residuals.
    """
    N = len(nodes)
    q = F.order
    arith = batch_for(F)
    out = np.zeros((N, N), dtype=bool)
    out[dims == 0, :] = True
    nz = np.flatnonzero(dims > 0)
    if not len(nz):
        return out
    rows = np.concatenate([PB[a, :dims[a]] for a in nz], axis=0)
    starts = np.concatenate(([0], np.cumsum(dims[nz])[:-1]))
    weights = q ** np.arange(n - 1, -1, -1, dtype=np.int64)
    width = (N + 7) // 8
    if q**n * width <= 256 * 2**20:
        member = np.zeros((q**n, width), dtype=np.uint8)
        for d in range(int(dims.max()) + 1):
            group = np.flatnonzero(dims == d)
            if not len(group):
                continue
            combos = digits(q**d, d, q)
            vecs = arith.combine(combos[None, :, :], PB[group, None, :d, :])
            codes = vecs @ weights
            cols = np.broadcast_to(group[:, None], codes.shape)
            bits = (128 >> (cols & 7)).astype(np.uint8)
            np.bitwise_or.at(member, (codes.ravel(), (cols >> 3).ravel()), bits.ravel())
        row_bits = member[rows @ weights]
        inside = np.unpackbits(np.bitwise_and.reduceat(row_bits, starts, axis=0), axis=1)[:, :N]
        out[nz] = inside.astype(bool)
        return out
    chunk = max(1, 2_000_000 // (len(rows) * n))
    for lo in range(0, N, chunk):
        hi = min(N, lo + chunk)
        res = arith.residual(rows[None, :, :], PB[lo:hi, None], PP[lo:hi, None])
        ok = ~res.any(axis=-1)
        out[nz, lo:hi] = np.logical_and.reduceat(ok, starts, axis=1).T
    return out


class _Catalog:
    """All subspaces of F^n, padded into arrays, with their inclusion matrix."""

    def __init__(self, n: int, F: FieldSpec):
        spaces = [U for U in enumerate_subspaces(n, F, _CACHE_LIMIT)]
        spaces.sort(key=lambda U: (U.dim, U.basis))
        self.spaces = spaces
        self.B, self.P = _pad(spaces, n)
        self.dims = np.array([U.dim for U in spaces], dtype=np.int64)
        self.contains = (_containment(F, n, spaces, self.B, self.P, self.dims)
                         if len(spaces) <= _DENSE_COVER_LIMIT else None)


@lru_cache(maxsize=64)
def _catalog(n: int, F: FieldSpec) -> _Catalog | None:
    if subspace_count(n, F.order) > _CACHE_LIMIT:
        return None
    return _Catalog(n, F)


# --- lattice -----------------------------------------------------------------

class SubalgebraLattice:
    """All subalgebras of a finite-field Lie algebra with their inclusion order.

    Nodes are indexed in (dimension, canonical basis) order, so index 0 is the
    zero subalgebra and the last index is the whole algebra. Node arguments
    accept an index or a :class:`Subspace`.
    """

    def __init__(self, algebra: LieAlgebra, nodes: list[Subspace], abelian: np.ndarray,
                 padded: tuple[np.ndarray, np.ndarray] | None = None, contains: np.ndarray | None = None):
        self.algebra = algebra
        self.field = algebra.field
        self.nodes = nodes
        self.index = {U: a for a, U in enumerate(nodes)}
        self.dims = np.array([U.dim for U in nodes], dtype=np.int64)
        self.abelian = abelian
        self._arith = batch_for(self.field)
        self._PB, self._PP = padded if padded is not None else _pad(nodes, algebra.dim)
        if contains is None:
            contains = _containment(self.field, algebra.dim, nodes, self._PB, self._PP, self.dims)
        self.contains = contains
        self.ideal = self._ideal_flags()
        self._lower: dict[int, np.ndarray] = {}
        self._frat_sub: dict[int, int] = {}
        self._phi: dict[int, int] = {}
        if len(nodes) <= _DENSE_COVER_LIMIT:
            self._dense_covers()

    # --- construction helpers ---------------------------------------------
    def _ideal_flags(self) -> np.ndarray:
        n = self.algebra.dim
        N = len(self.nodes)
        E = np.eye(n, dtype=np.int64)
        c = self.algebra.tensor
        flags = np.zeros(N, dtype=bool)
        chunk = max(1, 500_000 // max(1, n**4))
        for lo in range(0, N, chunk):
            hi = min(N, lo + chunk)
            PB = self._PB[lo:hi]
            X = self._arith.bracket(c, E[None, None, :, :], PB[:, :, None, :])
            res = self._arith.residual(X, PB[:, None, None], self._PP[lo:hi, None, None])
            flags[lo:hi] = ~res.reshape(hi - lo, -1).any(axis=1)
        return flags

    def _dense_covers(self) -> None:
        N = len(self.nodes)
        strict = self.contains & ~np.eye(N, dtype=bool)
        s = strict.astype(np.float32)
        cover = strict & ~((s @ s) > 0)
        for b in range(N):
            self._lower[b] = np.flatnonzero(cover[:, b])
        # t lies in every maximal subalgebra of b unless some cover of b misses it
        missing = (~self.contains).astype(np.float32) @ cover.astype(np.float32)
        score = np.where(missing > 0, -1, self.dims[:, None])
        frat = np.argmax(score, axis=0)
        frat[~cover.any(axis=0)] = 0
        self._frat_sub = dict(enumerate(frat.tolist()))

    # --- basic access ------------------------------------------------------
    def __len__(self) -> int:
        return len(self.nodes)

    def idx(self, S) -> int:
        if isinstance(S, Subspace):
            try:
                return self.index[S]
            except KeyError:
                raise KeyError("subspace is not a subalgebra node of this lattice") from None
        return int(S)

    @property
    def top(self) -> int:
        return len(self.nodes) - 1

    def node(self, S) -> Subspace:
        return self.nodes[self.idx(S)]

    def down_set(self, S) -> np.ndarray:
        return np.flatnonzero(self.contains[:, self.idx(S)])

    def proper_nodes(self) -> np.ndarray:
        return np.arange(len(self.nodes) - 1)

    # --- order structure ---------------------------------------------------
    def lower_covers(self, S) -> np.ndarray:
        b = self.idx(S)
        if b not in self._lower:
            strict = self.contains[:, b].copy()
            strict[b] = False
            subs = np.flatnonzero(strict)
            if len(subs):
                inner = self.contains[np.ix_(subs, subs)] & ~np.eye(len(subs), dtype=bool)
                self._lower[b] = subs[~inner.any(axis=1)]
            else:
                self._lower[b] = subs
        return self._lower[b]

    def maximal_subalgebras(self, S) -> list[int]:
        """Maximal proper subalgebras of node S, as node indices."""
        return self.lower_covers(S).tolist()

    @property
    def covers(self) -> list[tuple[int, int]]:
        """Hasse edges (lower, upper)."""
        return [(int(a), b) for b in range(len(self.nodes)) for a in self.lower_covers(b)]

    def meet(self, indices) -> int:
        """Largest node inside all given nodes (their intersection)."""
        indices = list(indices)
        if not indices:
            return self.top
        cand = self.contains[:, indices].all(axis=1)
        inside = np.flatnonzero(cand)
        return int(inside[np.argmax(self.dims[inside])])

    def join_space(self, indices) -> Subspace:
        """Vector-space sum of the given nodes (not necessarily a node)."""
        L = self.algebra
        out = zero_subspace(L.field, L.dim)
        for a in indices:
            out = subspace_sum(out, self.nodes[a])
        return out

    # --- Frattini data -------------------------------------------------------
    def frattini_subalgebra(self, S) -> int:
        b = self.idx(S)
        if b not in self._frat_sub:
            maxes = self.lower_covers(b)
            self._frat_sub[b] = 0 if len(maxes) == 0 else self.meet(maxes)
        return self._frat_sub[b]

    def frattini_ideal(self, S) -> int:
        """Index of phi(S): the largest ideal of S inside its Frattini subalgebra."""
        b = self.idx(S)
        if b not in self._phi:
            f = self.frattini_subalgebra(b)
            if self.dims[f] == 0:
                self._phi[b] = f
            else:
                L = self.algebra
                actions = [L.ad(v) for v in self.nodes[b].basis]
                self._phi[b] = self.index[solve_invariant_core(self.nodes[f], actions)]
        return self._phi[b]

    def phi(self, S) -> Subspace:
        return self.nodes[self.frattini_ideal(S)]

    def nonzero_phi(self) -> np.ndarray:
        """Boolean mask of nodes S with phi(S) != 0."""
        return np.array([self.dims[self.frattini_ideal(b)] > 0 for b in range(len(self.nodes))])

    # --- ideals and radicals -------------------------------------------------
    def ideals(self) -> list[int]:
        return np.flatnonzero(self.ideal).tolist()

    def minimal_ideals(self) -> list[int]:
        ids = [a for a in self.ideals() if self.dims[a] > 0]
        out = []
        for a in ids:
            if not any(b != a and self.contains[b, a] for b in ids):
                out.append(a)
        return out

    def abelian_socle(self) -> Subspace:
        return self.join_space(a for a in self.minimal_ideals() if self.abelian[a])

    def _largest_ideal_with(self, prop, what: str) -> Subspace:
        L = self.algebra
        good = [a for a in self.ideals() if prop(L, self.nodes[a])]
        total = self.join_space(good)
        if total not in self.index or not self.ideal[self.index[total]] or not prop(L, total):
            raise InternalInconsistency(f"sum of {what} ideals is not a {what} ideal")
        return total

    def nilradical(self) -> Subspace:
        return self._largest_ideal_with(is_nilpotent, "nilpotent")

    def radical(self) -> Subspace:
        return self._largest_ideal_with(is_solvable, "solvable")

    # --- export --------------------------------------------------------------
    def summary(self) -> dict:
        by_dim = {}
        for d in self.dims.tolist():
            by_dim[str(d)] = by_dim.get(str(d), 0) + 1
        return {
            "nodes": len(self.nodes),
            "ideals": int(self.ideal.sum()),
            "by_dimension": by_dim,
        }

    def to_json(self, include_nodes: bool = True) -> dict:
        out = {"schema": SCHEMA, "algebra": self.algebra.to_json(), "summary": self.summary()}
        if include_nodes:
            out["nodes"] = [
                {"index": a, "dim": U.dim, "basis": U.to_json()["basis"],
                 "ideal": bool(self.ideal[a]), "abelian": bool(self.abelian[a])}
                for a, U in enumerate(self.nodes)
            ]
            out["covers"] = [list(e) for e in self.covers]
        return out


def _closed_mask(L: LieAlgebra, B: np.ndarray, P: np.ndarray):
    """(closed, abelian) masks for a batch of RREF bases B (M, d, n), pivots P (M, d) or (d,)."""
    M, d = B.shape[:2]
    if d < 2:
        ones = np.ones(M, dtype=bool)
        return ones, ones
    arith = batch_for(L.field)
    a_idx, b_idx = (list(t) for t in zip(*itertools.combinations(range(d), 2)))
    X = arith.bracket(L.tensor, B[:, a_idx], B[:, b_idx])
    abel = ~X.reshape(M, -1).any(axis=1)
    P = P[:, None] if P.ndim == 2 else P
    res = arith.residual(X, B[:, None], P)
    closed = ~res.reshape(M, -1).any(axis=1)
    return closed, abel


def build_lattice(L: LieAlgebra, max_subspaces: int = DEFAULT_MAX_SUBSPACES) -> SubalgebraLattice:
    F, n = L.field, L.dim
    est = estimate_cost(n, F, max_subspaces)
    if not est.admissible:
        raise CostCapExceeded(f"subalgebra lattice over {F}^{n}", est.subspace_count, max_subspaces)
    cat = _catalog(n, F)
    if cat is not None:
        closed, abel = _closed_mask(L, cat.B, cat.P)
        idx = np.flatnonzero(closed)
        nodes = [cat.spaces[a] for a in idx]
        contains = cat.contains[np.ix_(idx, idx)] if cat.contains is not None else None
        return SubalgebraLattice(L, nodes, abel[idx], (cat.B[idx], cat.P[idx]), contains)
    found: list[tuple[Subspace, bool]] = []
    for pivots, B in _iter_batches(n, F.order):
        closed, abel = _closed_mask(L, B, np.asarray(pivots, dtype=np.int64))
        for rows, ab in zip(B[closed].tolist(), abel[closed].tolist()):
            found.append((Subspace(F, n, tuple(map(tuple, rows)), pivots), ab))
    found.sort(key=lambda t: (t[0].dim, t[0].basis))
    nodes = [U for U, _ in found]
    abelian = np.array([ab for _, ab in found], dtype=bool)
    return SubalgebraLattice(L, nodes, abelian)


def subalgebras_by_scan(L: LieAlgebra, max_subspaces: int = DEFAULT_MAX_SUBSPACES) -> list[Subspace]:
    """Reference scan: test every enumerated subspace one at a time."""
    from .liecore import is_subalgebra

    return [U for U in enumerate_subspaces(L.dim, L.field, max_subspaces) if is_subalgebra(L, U)]


def frattini_from_scratch(L: LieAlgebra, S: Subspace | None = None) -> Subspace:
    """phi(S) recomputed on a fresh lattice of S's own restricted algebra.

    Independent of any ambient lattice; used to re-verify witnesses.
    """
    from .liecore import subalgebra_restrict

    if S is None:
        S = L.whole()
    view = subalgebra_restrict(L, S)
    maxes = []
    subs = subalgebras_by_scan(view.algebra)
    for U in subs:
        if U.dim == S.dim:
            continue
        if not any(U.dim < V.dim < S.dim and all(u in V for u in U.basis) for V in subs):
            maxes.append(U)
    if not maxes:
        return zero_subspace(L.field, L.dim)
    from .linalg import intersect

    frat = maxes[0]
    for M in maxes[1:]:
        frat = intersect(frat, M)
    A = view.algebra
    core = solve_invariant_core(frat, [A.ad(v) for v in A.whole().basis])
    return view.lift_space(core)
