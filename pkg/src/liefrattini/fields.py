"""Exact scalar arithmetic over Q, GF(p) and GF(p^k).

Raw field elements are plain Python values so the linear algebra layer can
work on them without wrapper overhead:

* ``Fraction`` for the rationals,
* ``int`` in ``[0, p)`` for a prime field,
* ``int`` in ``[0, p^k)`` for an extension field, encoding the coefficient
  vector ``c0 + c1*p + ... + c(k-1)*p^(k-1)`` of a polynomial in ``t``
  reduced modulo the defining polynomial.

:class:`Scalar` wraps a raw value together with its :class:`FieldSpec` and is
the user-facing value type.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Iterator

RATIONALS = "rationals"
PRIME = "prime"
EXTENSION = "extension"

MAX_EXTENSION_DEGREE = 4
_TABLE_LIMIT = 1024


class FieldError(ValueError):
    """Invalid field parameters or an illegal scalar operation."""


class FieldMismatchError(FieldError):
    """Scalars (or algebras) over different fields were combined."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


# --- polynomials over GF(p), coefficient lists low degree first -------------

def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _poly_trim([x % p for x in a])
    m = _poly_trim(list(m))
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) >= len(m):
        coef = a[-1] * inv_lead % p
        shift = len(a) - len(m)
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - coef * mi) % p
        _poly_trim(a)
    return a


def _poly_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _poly_trim(out)


def _poly_sub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    a = a + [0] * (n - len(a))
    b = b + [0] * (n - len(b))
    return _poly_trim([(x - y) % p for x, y in zip(a, b)])


def _poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _poly_trim(list(a)), _poly_trim(list(b))
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def _poly_powmod(base: list[int], e: int, m: list[int], p: int) -> list[int]:
    result = [1]
    base = _poly_mod(base, m, p)
    while e:
        if e & 1:
            result = _poly_mod(_poly_mul(result, base, p), m, p)
        base = _poly_mod(_poly_mul(base, base, p), m, p)
        e >>= 1
    return result


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(modulus: tuple[int, ...] | list[int], p: int) -> bool:
    """Rabin's irreducibility test for a monic polynomial over GF(p)."""
    f = _poly_trim([c % p for c in modulus])
    k = len(f) - 1
    if k < 1 or f[-1] != 1:
        return False
    x = [0, 1]
    if _poly_sub(_poly_powmod(x, p**k, f, p), x, p):
        return False
    for r in _prime_factors(k):
        h = _poly_sub(_poly_powmod(x, p ** (k // r), f, p), x, p)
        if len(_poly_gcd(f, h, p)) != 1:
            return False
    return True


def default_modulus(p: int, k: int) -> tuple[int, ...]:
    """Least monic irreducible of degree ``k``, ordered by (c(k-1), ..., c0)."""
    for code in range(p**k):
        coeffs = [(code // p**i) % p for i in range(k)]
        poly = tuple(coeffs) + (1,)
        if is_irreducible(poly, p):
            return poly
    raise FieldError(f"no irreducible polynomial of degree {k} over GF({p})")


@lru_cache(maxsize=None)
def _extension_tables(p: int, k: int, modulus: tuple[int, ...]):
    q = p**k
    digits = [[(a // p**i) % p for i in range(k)] for a in range(q)]

    def encode(c: list[int]) -> int:
        return sum((ci % p) * p**i for i, ci in enumerate(c))

    add = [[encode([x + y for x, y in zip(digits[a], digits[b])]) for b in range(q)] for a in range(q)]
    mul = [
        [encode(_poly_mod(_poly_mul(_poly_trim(digits[a][:]), _poly_trim(digits[b][:]), p), list(modulus), p))
         for b in range(q)]
        for a in range(q)
    ]
    neg = [encode([-x for x in digits[a]]) for a in range(q)]
    inv = [0] * q
    for a in range(1, q):
        inv[a] = mul[a].index(1)
    return add, mul, neg, inv


@dataclass(frozen=True)
class FieldSpec:
    """An exact field: the rationals, GF(p), or GF(p^k) = GF(p)[t]/(modulus).

    ``modulus`` holds the monic defining polynomial low degree first, so
    ``(1, 1, 1)`` is ``t^2 + t + 1``.
    """

    kind: str
    p: int | None = None
    k: int | None = None
    modulus: tuple[int, ...] | None = None

    # --- descriptive ---------------------------------------------------
    @property
    def is_finite(self) -> bool:
        return self.kind != RATIONALS

    @property
    def order(self) -> int | None:
        if self.kind == RATIONALS:
            return None
        if self.kind == PRIME:
            return self.p
        return self.p**self.k

    @property
    def characteristic(self) -> int:
        return 0 if self.kind == RATIONALS else self.p

    @property
    def degree(self) -> int:
        return self.k if self.kind == EXTENSION else 1

    def __str__(self) -> str:
        if self.kind == RATIONALS:
            return "QQ"
        if self.kind == PRIME:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.k})"

    # --- raw element arithmetic ----------------------------------------
    def zero(self):
        return Fraction(0) if self.kind == RATIONALS else 0

    def one(self):
        return Fraction(1) if self.kind == RATIONALS else 1

    def from_int(self, n: int):
        if self.kind == RATIONALS:
            return Fraction(n)
        return n % self.p  # constant polynomial in the extension encoding

    def add(self, a, b):
        if self.kind == RATIONALS:
            return a + b
        if self.kind == PRIME:
            return (a + b) % self.p
        return self._ext_add(a, b)

    def neg(self, a):
        if self.kind == RATIONALS:
            return -a
        if self.kind == PRIME:
            return -a % self.p
        return self._ext_neg(a)

    def sub(self, a, b):
        if self.kind == RATIONALS:
            return a - b
        if self.kind == PRIME:
            return (a - b) % self.p
        return self._ext_add(a, self._ext_neg(b))

    def mul(self, a, b):
        if self.kind == RATIONALS:
            return a * b
        if self.kind == PRIME:
            return a * b % self.p
        return self._ext_mul(a, b)

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError(f"inverse of zero in {self}")
        if self.kind == RATIONALS:
            return 1 / a
        if self.kind == PRIME:
            return pow(a, self.p - 2, self.p)
        if self.order <= _TABLE_LIMIT:
            return self._tables()[3][a]
        return self._ext_pow(a, self.order - 2)

    def is_zero(self, a) -> bool:
        return a == 0

    def elements(self) -> Iterator:
        """All elements of a finite field in encoding order."""
        if self.kind == RATIONALS:
            raise FieldError("QQ is infinite")
        return iter(range(self.order))

    def normalize(self, value):
        """Coerce an int / Fraction / coefficient list into a raw element.

        For GF(p^k) an int in [0, q) is already a raw encoding; other ints and
        Fractions land in the prime subfield. Constants encode the same way
        under both readings.
        """
        if self.kind == RATIONALS:
            return Fraction(value)
        if isinstance(value, (list, tuple)):
            if self.kind == PRIME or len(value) > self.k:
                raise FieldError(f"coefficient vector does not fit {self}")
            return sum((int(c) % self.p) * self.p**i for i, c in enumerate(value))
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise FieldError(f"{value} has no image in {self}")
            return value.numerator * pow(value.denominator, self.p - 2, self.p) % self.p
        value = int(value)
        if self.kind == EXTENSION and 0 <= value < self.order:
            return value
        return value % self.p

    def coefficients(self, a) -> list[int]:
        """Coefficient vector [c0, ..., c(k-1)] of an extension-field element."""
        return [(a // self.p**i) % self.p for i in range(self.k)]

    # --- JSON ----------------------------------------------------------
    def encode(self, a) -> Any:
        if self.kind == RATIONALS:
            return f"{a.numerator}/{a.denominator}"
        if self.kind == PRIME:
            return int(a)
        return self.coefficients(a)

    def decode(self, obj: Any):
        if self.kind == RATIONALS:
            if isinstance(obj, str):
                return Fraction(obj.strip())
            if isinstance(obj, int) and not isinstance(obj, bool):
                return Fraction(obj)
            raise FieldError(f"cannot read rational from {obj!r}")
        if self.kind == PRIME:
            if isinstance(obj, bool) or not isinstance(obj, int):
                raise FieldError(f"cannot read GF({self.p}) element from {obj!r}")
            return obj % self.p
        if isinstance(obj, list) and len(obj) == self.k and all(isinstance(c, int) for c in obj):
            return self.normalize(obj)
        raise FieldError(f"cannot read {self} element from {obj!r}")

    def to_json(self) -> dict:
        if self.kind == RATIONALS:
            return {"kind": RATIONALS}
        if self.kind == PRIME:
            return {"kind": PRIME, "p": self.p}
        return {"kind": EXTENSION, "p": self.p, "k": self.k, "modulus": list(self.modulus)}

    @classmethod
    def from_json(cls, obj: dict) -> FieldSpec:
        if not isinstance(obj, dict) or "kind" not in obj:
            raise FieldError(f"bad field description {obj!r}")
        return field_make(obj["kind"], p=obj.get("p"), k=obj.get("k"), modulus=obj.get("modulus"))

    # --- extension internals -------------------------------------------
    def _tables(self):
        return _extension_tables(self.p, self.k, self.modulus)

    def _ext_add(self, a, b):
        if self.order <= _TABLE_LIMIT:
            return self._tables()[0][a][b]
        p = self.p
        return sum((((a // p**i) + (b // p**i)) % p) * p**i for i in range(self.k))

    def _ext_neg(self, a):
        if self.order <= _TABLE_LIMIT:
            return self._tables()[2][a]
        p = self.p
        return sum(((-(a // p**i)) % p) * p**i for i in range(self.k))

    def _ext_mul(self, a, b):
        if self.order <= _TABLE_LIMIT:
            return self._tables()[1][a][b]
        prod = _poly_mod(_poly_mul(_poly_trim(self.coefficients(a)), _poly_trim(self.coefficients(b)), self.p),
                         list(self.modulus), self.p)
        return self.normalize(prod)

    def _ext_pow(self, a, e):
        result = 1
        while e:
            if e & 1:
                result = self._ext_mul(result, a)
            a = self._ext_mul(a, a)
            e >>= 1
        return result


QQ = FieldSpec(RATIONALS)


def field_make(kind: str, p: int | None = None, k: int | None = None,
               modulus: tuple[int, ...] | list[int] | None = None) -> FieldSpec:
    """Validated constructor for :class:`FieldSpec`."""
    kind = {"Rationals": RATIONALS, "PrimeField": PRIME, "ExtensionField": EXTENSION}.get(kind, kind)
    if kind == RATIONALS:
        if p is not None or k is not None or modulus is not None:
            raise FieldError("the rationals take no parameters")
        return QQ
    if kind not in (PRIME, EXTENSION):
        raise FieldError(f"unknown field kind {kind!r}")
    if not isinstance(p, int) or isinstance(p, bool) or not is_prime(p):
        raise FieldError(f"p={p!r} is not prime")
    if kind == PRIME:
        if (k not in (None, 1)) or modulus is not None:
            raise FieldError("a prime field takes only p")
        return FieldSpec(PRIME, p)
    if k is None and modulus is not None:
        k = len(modulus) - 1
    if not isinstance(k, int) or k < 2:
        raise FieldError(f"extension degree must be >= 2, got {k!r}")
    if k > MAX_EXTENSION_DEGREE:
        raise FieldError(f"extension degree {k} exceeds the supported maximum {MAX_EXTENSION_DEGREE}")
    if modulus is None:
        modulus = default_modulus(p, k)
    modulus = tuple(int(c) % p for c in modulus)
    if len(modulus) != k + 1 or modulus[-1] != 1:
        raise FieldError(f"modulus must be monic of degree {k}")
    if not is_irreducible(modulus, p):
        raise FieldError(f"modulus {list(modulus)} is reducible over GF({p})")
    return FieldSpec(EXTENSION, p, k, modulus)


def gf(q: int) -> FieldSpec:
    """GF(q) for a prime power q, using the default modulus when q is not prime."""
    if is_prime(q):
        return field_make(PRIME, p=q)
    for p in range(2, q + 1):
        if q % p == 0:
            k, r = 0, q
            while r % p == 0:
                r //= p
                k += 1
            if r != 1 or not is_prime(p):
                break
            return field_make(EXTENSION, p=p, k=k)
    raise FieldError(f"{q} is not a prime power")


def parse_field(text: str) -> FieldSpec:
    """Parse names such as ``QQ``, ``gf3``, ``GF(9)``, ``gf2^2``."""
    t = text.strip().lower().replace("(", "").replace(")", "").replace(" ", "")
    if t in ("q", "qq", "rationals", "rational"):
        return QQ
    if t.startswith("gf"):
        body = t[2:]
        try:
            if "^" in body:
                p, k = (int(x) for x in body.split("^"))
                return field_make(EXTENSION, p=p, k=k) if k > 1 else field_make(PRIME, p=p)
            return gf(int(body))
        except ValueError as exc:
            raise FieldError(f"cannot parse field {text!r}: {exc}") from None
    raise FieldError(f"cannot parse field {text!r}")


@dataclass(frozen=True)
class Scalar:
    """A field element tagged with its field."""

    field: FieldSpec
    value: Any

    def __post_init__(self):
        v = self.value
        if self.field.kind == EXTENSION and isinstance(v, int):
            if not 0 <= v < self.field.order:
                raise FieldError(f"raw encoding {v} out of range for {self.field}")
        else:
            v = self.field.normalize(v)
        object.__setattr__(self, "value", v)

    def _check(self, other) -> Scalar:
        if not isinstance(other, Scalar):
            other = Scalar(self.field, other)
        elif other.field != self.field:
            raise FieldMismatchError(f"{self.field} vs {other.field}")
        return other

    def __add__(self, other):
        other = self._check(other)
        return Scalar(self.field, self.field.add(self.value, other.value))

    __radd__ = __add__

    def __neg__(self):
        return Scalar(self.field, self.field.neg(self.value))

    def __sub__(self, other):
        other = self._check(other)
        return Scalar(self.field, self.field.sub(self.value, other.value))

    def __mul__(self, other):
        other = self._check(other)
        return Scalar(self.field, self.field.mul(self.value, other.value))

    __rmul__ = __mul__

    def inv(self) -> Scalar:
        return Scalar(self.field, self.field.inv(self.value))

    def __truediv__(self, other):
        return self * self._check(other).inv()

    def __eq__(self, other):
        if not isinstance(other, Scalar):
            return NotImplemented
        if other.field != self.field:
            raise FieldMismatchError(f"cannot compare {self.field} with {other.field}")
        return self.value == other.value

    def __hash__(self):
        return hash((self.field, self.value))

    def is_zero(self) -> bool:
        return self.field.is_zero(self.value)

    def to_json(self):
        return self.field.encode(self.value)

    def __repr__(self):
        if self.field.kind == EXTENSION:
            return f"Scalar({self.field}, {self.field.coefficients(self.value)})"
        return f"Scalar({self.field}, {self.value})"

    @classmethod
    def zero(cls, field: FieldSpec) -> Scalar:
        return cls(field, field.zero())

    @classmethod
    def one(cls, field: FieldSpec) -> Scalar:
        return cls(field, field.one())

    @classmethod
    def from_integer(cls, field: FieldSpec, n: int) -> Scalar:
        return cls(field, field.from_int(n))


def embed(s: Scalar, target: FieldSpec) -> Scalar:
    """Canonical inclusion GF(p) -> GF(p^k) (constant polynomials)."""
    if s.field.kind != PRIME:
        raise FieldError(f"embed expects a prime-field scalar, got {s.field}")
    if not target.is_finite or target.p != s.field.p:
        raise FieldMismatchError(f"cannot embed {s.field} into {target}")
    return Scalar(target, embed_raw(s.field, s.value, target))


def embed_raw(source: FieldSpec, value, target: FieldSpec):
    if source == target:
        return value
    if source.kind != PRIME or not target.is_finite or target.p != source.p:
        raise FieldMismatchError(f"cannot embed {source} into {target}")
    return value  # the constant c is encoded as the integer c in both
