"""Arithmetic in small finite fields GF(p^m).

Elements are integer codes: the base-p digits of a code, little-endian, are
the coefficients of 1, x, x^2, ... of a polynomial reduced modulo the field's
defining polynomial.  For m = 1 the code is simply the residue mod p.

The defining polynomial is the first monic irreducible polynomial of degree m
in ascending code order, so every field is reproducible from (p, m) alone.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

MAX_ORDER = 1 << 16
MAX_DEGREE = 8
# Full q x q operation tables are only materialised below this size.
TABLE_LIMIT = 1024


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, m) with q = p^m, or raise ValueError."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = 2
    while q % p:
        p += 1
    m, r = 0, q
    while r % p == 0:
        r //= p
        m += 1
    if r != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, m


# --- polynomials over GF(p) as little-endian digit lists --------------------

def _digits(code: int, p: int, m: int) -> list[int]:
    out = []
    for _ in range(m):
        code, r = divmod(code, p)
        out.append(r)
    return out


def _undigits(digits: Sequence[int], p: int) -> int:
    code = 0
    for c in reversed(digits):
        code = code * p + c
    return code


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _polymod(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    """Remainder of a by the monic polynomial b over GF(p)."""
    r = _trim(list(a))
    db = len(b) - 1
    while len(r) - 1 >= db:
        c = r[-1]
        shift = len(r) - 1 - db
        for i, bi in enumerate(b):
            r[shift + i] = (r[shift + i] - c * bi) % p
        _trim(r)
    return r


def _is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    m = len(poly) - 1
    for k in range(1, m // 2 + 1):
        for low in range(p**k):
            divisor = _digits(low, p, k) + [1]
            if not _polymod(poly, divisor, p):
                return False
    return True


def first_irreducible(p: int, m: int) -> tuple[int, ...]:
    for low in range(p**m):
        cand = _digits(low, p, m) + [1]
        if _is_irreducible(cand, p):
            return tuple(cand)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


# --- fields -----------------------------------------------------------------

@dataclass(frozen=True)
class FieldSpec:
    """The field GF(p^m) with a fixed defining polynomial.

    Instances are immutable; build them with :func:`make_field`.
    """

    p: int
    m: int
    modulus: tuple[int, ...]
    _tables: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    @property
    def q(self) -> int:
        return self.p**self.m

    def to_json(self) -> dict:
        return {"p": self.p, "m": self.m, "modulus": list(self.modulus)}

    def __str__(self) -> str:
        return f"GF({self.q})"

    # scalar arithmetic -----------------------------------------------------

    def check(self, x: int) -> int:
        if not 0 <= x < self.q:
            raise ValueError(f"{x} is not an element of {self}")
        return x

    def add(self, x: int, y: int) -> int:
        if self.m == 1:
            return (x + y) % self.p
        if self.p == 2:
            return x ^ y
        tab = self.tables()
        if tab is not None:
            return int(tab.add[x, y])
        dx, dy = _digits(x, self.p, self.m), _digits(y, self.p, self.m)
        return _undigits([(a + b) % self.p for a, b in zip(dx, dy)], self.p)

    def neg(self, x: int) -> int:
        if self.m == 1:
            return -x % self.p
        if self.p == 2:
            return x
        return _undigits([-a % self.p for a in _digits(x, self.p, self.m)], self.p)

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self.neg(y))

    def mul(self, x: int, y: int) -> int:
        if self.m == 1:
            return x * y % self.p
        tab = self.tables()
        if tab is not None:
            return int(tab.mul[x, y])
        return self._mul_slow(x, y)

    def _mul_slow(self, x: int, y: int) -> int:
        p, m = self.p, self.m
        dx, dy = _digits(x, p, m), _digits(y, p, m)
        prod = [0] * (2 * m - 1)
        for i, a in enumerate(dx):
            if a:
                for j, b in enumerate(dy):
                    prod[i + j] = (prod[i + j] + a * b) % p
        r = _polymod(prod, self.modulus, p)
        return _undigits(r, p)

    def pow(self, x: int, e: int) -> int:
        if e < 0:
            raise ValueError("negative exponent")
        result, base = 1, x
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError(f"0 has no inverse in {self}")
        if self.m == 1:
            return pow(x, -1, self.p)
        return self.pow(x, self.q - 2)

    def div(self, x: int, y: int) -> int:
        return self.mul(x, self.inv(y))

    def elements(self) -> range:
        return range(self.q)

    def frobenius(self, x: int, k: int = 1) -> int:
        """x^(p^k)."""
        return self.pow(x, self.p**k)

    def in_prime_field(self, x: int) -> bool:
        return x < self.p

    # tables ----------------------------------------------------------------

    def tables(self) -> "FieldTables | None":
        """Dense operation tables, or None if the field is too large."""
        if self.q > TABLE_LIMIT:
            return None
        tab = self._tables.get("t")
        if tab is None:
            tab = FieldTables.build(self)
            self._tables["t"] = tab
        return tab


@dataclass(frozen=True)
class FieldTables:
    add: np.ndarray
    mul: np.ndarray
    neg: np.ndarray
    inv: np.ndarray  # inv[0] is 0 by convention
    sub: np.ndarray

    @classmethod
    def build(cls, spec: FieldSpec) -> "FieldTables":
        q, p, m = spec.q, spec.p, spec.m
        codes = np.arange(q)
        digits = np.array([_digits(c, p, m) for c in codes], dtype=np.int64).reshape(q, m)
        weights = p ** np.arange(m)
        add = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
        neg = ((-digits) % p) @ weights
        mul = np.zeros((q, q), dtype=np.int64)
        for x in range(q):
            for y in range(x, q):
                v = x * y % p if m == 1 else spec._mul_slow(x, y)
                mul[x, y] = mul[y, x] = v
        inv = np.zeros(q, dtype=np.int64)
        for x in range(1, q):
            inv[x] = int(np.nonzero(mul[x] == 1)[0][0])
        sub = add[:, neg]
        dt = np.uint8 if q <= 256 else np.uint16
        return cls(add.astype(dt), mul.astype(dt), neg.astype(dt), inv.astype(dt), sub.astype(dt))


@functools.lru_cache(maxsize=None)
def make_field(p: int, m: int = 1) -> FieldSpec:
    if not is_prime(p):
        raise ValueError(f"characteristic {p} is not prime")
    if not 1 <= m <= MAX_DEGREE:
        raise ValueError(f"extension degree {m} outside [1, {MAX_DEGREE}]")
    if p**m > MAX_ORDER:
        raise ValueError(f"field order {p}^{m} exceeds {MAX_ORDER}")
    return FieldSpec(p, m, first_irreducible(p, m))


def field_of_order(q: int) -> FieldSpec:
    return make_field(*prime_power(q))


def elements(spec: FieldSpec) -> list[int]:
    return list(range(spec.q))


_OPS = ("add", "sub", "mul", "inv", "pow")


def arith(spec: FieldSpec, op: str, x: int, y: int | None = None) -> int:
    """Dispatch a single field operation by name."""
    if op not in _OPS:
        raise ValueError(f"unknown operation {op!r}")
    spec.check(x)
    if op == "inv":
        return spec.inv(x)
    if y is None:
        raise ValueError(f"{op} needs a second operand")
    if op == "pow":
        return spec.pow(x, y)
    spec.check(y)
    return getattr(spec, op)(x, y)


# --- extensions of a prime field ---------------------------------------------

@dataclass(frozen=True)
class ExtensionMap:
    """GF(p) inside GF(p^s); base element c is ext element c."""

    base: FieldSpec
    ext: FieldSpec

    @property
    def s(self) -> int:
        return self.ext.m

    def embed(self, x: int) -> int:
        return self.base.check(x)

    def restrict(self, x: int) -> int:
        if not self.ext.in_prime_field(x):
            raise ValueError(f"{x} does not lie in {self.base}")
        return x


def extension(p: int, s: int) -> ExtensionMap:
    if s < 1:
        raise ValueError("extension degree must be positive")
    return ExtensionMap(make_field(p, 1), make_field(p, s))


def galois_conjugates(emap: ExtensionMap, x: int) -> list[int]:
    """The Frobenius orbit [x, x^p, ..., x^(p^(s-1))]."""
    ext = emap.ext
    ext.check(x)
    out = [x]
    for _ in range(emap.s - 1):
        out.append(ext.pow(out[-1], ext.p))
    return out


def norm(emap: ExtensionMap, x: int) -> int:
    prod = 1
    for c in galois_conjugates(emap, x):
        prod = emap.ext.mul(prod, c)
    return emap.restrict(prod)


# --- linear algebra ---------------------------------------------------------------

def row_reduce(spec: FieldSpec, matrix) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over the field, with the pivot columns."""
    tabs = spec.tables()
    if tabs is None:
        raise ValueError(f"row reduction needs operation tables (q <= {TABLE_LIMIT})")
    add, mul, neg, inv = tabs.add, tabs.mul, tabs.neg, tabs.inv
    M = np.array(matrix, dtype=np.int64).reshape(len(matrix), -1) if len(matrix) else np.zeros((0, 0), np.int64)
    rows, cols = M.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(M[r:, c])[0]
        if not len(nz):
            continue
        k = r + int(nz[0])
        if k != r:
            M[[r, k]] = M[[k, r]]
        M[r] = mul[inv[M[r, c]], M[r]]
        for i in np.nonzero(M[:, c])[0]:
            if i != r:
                M[i] = add[M[i], mul[neg[M[i, c]], M[r]]]
        pivots.append(c)
        r += 1
    return M[:r], pivots


def rank(spec: FieldSpec, matrix) -> int:
    return len(row_reduce(spec, matrix)[1])
