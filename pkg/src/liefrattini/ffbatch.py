"""Vectorized arithmetic on numpy arrays of finite-field elements.

Elements use the raw integer encoding of :mod:`liefrattini.fields`. Prime
fields use int64 arithmetic reduced mod p; extension fields go through
q x q lookup tables.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .fields import PRIME, FieldError, FieldSpec


class FFBatch:
    def __init__(self, F: FieldSpec):
        if not F.is_finite:
            raise FieldError("batched arithmetic needs a finite field")
        self.field = F
        self.q = F.order
        self.prime = F.kind == PRIME
        self.p = F.p
        if not self.prime:
            if self.q > 1024:
                raise FieldError(f"{F} is too large for table arithmetic")
            els = list(F.elements())
            self.add_t = np.array([[F.add(a, b) for b in els] for a in els], dtype=np.int64)
            self.mul_t = np.array([[F.mul(a, b) for b in els] for a in els], dtype=np.int64)
            self.neg_t = np.array([F.neg(a) for a in els], dtype=np.int64)
            self.inv_t = np.array([F.inv(a) if a else 0 for a in els], dtype=np.int64)
        else:
            self.inv_t = np.array([pow(a, self.p - 2, self.p) if a else 0 for a in range(self.p)],
                                  dtype=np.int64)

    def add(self, a, b):
        if self.prime:
            return (a + b) % self.p
        return self.add_t[a, b]

    def sub(self, a, b):
        if self.prime:
            return (a - b) % self.p
        return self.add_t[a, self.neg_t[b]]

    def mul(self, a, b):
        if self.prime:
            return (a * b) % self.p
        return self.mul_t[a, b]

    def neg(self, a):
        if self.prime:
            return (-a) % self.p
        return self.neg_t[a]

    def bracket(self, c: np.ndarray, U: np.ndarray, V: np.ndarray) -> np.ndarray:
        """[U, V] for structure tensor c[i, j, k], broadcasting leading axes."""
        U, V = np.broadcast_arrays(U, V)
        n = c.shape[0]
        if self.prime:
            outer = (U[..., :, None] * V[..., None, :]).reshape(U.shape[:-1] + (n * n,))
            return (outer @ c.reshape(n * n, n)) % self.p
        out = np.zeros(U.shape, dtype=np.int64)
        for i in range(n):
            for j in range(i + 1, n):
                vec = c[i, j]
                if not vec.any():
                    continue
                coef = self.sub(self.mul(U[..., i], V[..., j]), self.mul(U[..., j], V[..., i]))
                for k in np.flatnonzero(vec):
                    out[..., k] = self.add(out[..., k], self.mul(coef, vec[k]))
        return out

    def residual(self, X: np.ndarray, B: np.ndarray, P: np.ndarray) -> np.ndarray:
        """X minus its projection onto RREF rows B with pivot columns P.

        X: (..., n); B: (..., d, n); P: (..., d). Padding rows of B must be
        zero (their pivot index is then irrelevant).
        """
        lead = np.broadcast_shapes(X.shape[:-1], B.shape[:-2], P.shape[:-1])
        X = np.broadcast_to(X, lead + X.shape[-1:])
        P = np.broadcast_to(P, lead + P.shape[-1:])
        coeffs = np.take_along_axis(X, P, axis=-1)
        if self.prime:
            return (X - (coeffs[..., None, :] @ B)[..., 0, :]) % self.p
        acc = X
        for t in range(B.shape[-2]):
            acc = self.sub(acc, self.mul(coeffs[..., t:t + 1], B[..., t, :]))
        return acc

    def combine(self, coeffs: np.ndarray, B: np.ndarray) -> np.ndarray:
        """Linear combinations coeffs (..., d) of rows B (..., d, n)."""
        if self.prime:
            return (coeffs[..., None, :] @ B)[..., 0, :] % self.p
        lead = np.broadcast_shapes(coeffs.shape[:-1], B.shape[:-2])
        acc = np.zeros(lead + B.shape[-1:], dtype=np.int64)
        for t in range(B.shape[-2]):
            acc = self.add(acc, self.mul(coeffs[..., t:t + 1], B[..., t, :]))
        return acc

    def rank(self, M: np.ndarray) -> np.ndarray:
        """Ranks of a batch of matrices M (..., r, c) by vectorized elimination."""
        A = np.array(M, dtype=np.int64, copy=True)
        lead = A.shape[:-2]
        A = A.reshape((-1,) + A.shape[-2:])
        m, r, c = A.shape
        rank = np.zeros(m, dtype=np.int64)
        rows = np.arange(m)
        for col in range(c):
            # pivot candidates at or below the current rank row
            idx = np.arange(r)[None, :]
            cand = (A[:, :, col] != 0) & (idx >= rank[:, None])
            has = cand.any(axis=1)
            if not has.any():
                continue
            piv = np.argmax(cand, axis=1)
            sel = rows[has]
            pr, tr = piv[has], rank[has]
            tmp = A[sel, tr].copy()
            A[sel, tr] = A[sel, pr]
            A[sel, pr] = tmp
            pivrow = A[sel, tr]
            inv = self.inv_t[pivrow[:, col]]
            pivrow = self.mul(inv[:, None], pivrow)
            A[sel, tr] = pivrow
            factors = A[sel, :, col].copy()
            factors[np.arange(len(sel)), tr] = 0
            A[sel] = self.sub(A[sel], self.mul(factors[:, :, None], pivrow[:, None, :]))
            rank[has] += 1
        return rank.reshape(lead)


@lru_cache(maxsize=None)
def batch_for(F: FieldSpec) -> FFBatch:
    return FFBatch(F)


def digits(count: int, width: int, q: int, offset: int = 0) -> np.ndarray:
    """Base-q digit rows (most significant first) for integers offset .. offset+count-1."""
    codes = np.arange(offset, offset + count, dtype=np.int64)
    out = np.empty((count, width), dtype=np.int64)
    for pos in range(width - 1, -1, -1):
        out[:, pos] = codes % q
        codes //= q
    return out
