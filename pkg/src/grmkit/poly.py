"""Sparse multivariate polynomials over GF(q).

Two representations are used:

* :class:`ReducedPoly` -- an affine codeword.  Every partial degree is at most
  q - 1, so each polynomial function on GF(q)^n has exactly one representative.
* :class:`HomogeneousPoly` -- a form of fixed total degree d in n + 1 variables
  X_0, ..., X_n.  No reduction is applied; two forms define the same
  projective codeword iff they agree on every representative point.

Terms are stored as a tuple of ``(exponents, coefficient)`` pairs sorted in
graded-lex order (total degree, then exponent vector, both ascending).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .gf import FieldSpec, field_of_order

Monomial = tuple[int, ...]
RawTerms = Mapping[Monomial, int]

ZERO_DEGREE = -math.inf


def _order_key(item):
    e = item[0]
    return (sum(e), e)


def _freeze(spec: FieldSpec, terms: dict[Monomial, int]) -> tuple:
    return tuple(sorted(((e, c) for e, c in terms.items() if c), key=_order_key))


def _accumulate(spec: FieldSpec, out: dict[Monomial, int], e: Monomial, c: int) -> None:
    if c:
        prev = out.get(e, 0)
        out[e] = spec.add(prev, c) if prev else c


def reduce_exponent(e: int, q: int) -> int:
    """Representative of X^e modulo X^q - X: 0 stays 0, else 1..q-1."""
    if e == 0:
        return 0
    return (e - 1) % (q - 1) + 1


# --- affine ------------------------------------------------------------------

@dataclass(frozen=True)
class ReducedPoly:
    spec: FieldSpec
    n: int
    terms: tuple  # ((exponents, coeff), ...) in graded-lex order

    @classmethod
    def zero(cls, spec: FieldSpec, n: int) -> "ReducedPoly":
        return cls(spec, n, ())

    @classmethod
    def constant(cls, spec: FieldSpec, n: int, c: int) -> "ReducedPoly":
        return reduce(spec, n, {(0,) * n: c})

    @classmethod
    def variable(cls, spec: FieldSpec, n: int, i: int) -> "ReducedPoly":
        """X_{i+1} (0-based index i)."""
        e = [0] * n
        e[i] = 1
        return reduce(spec, n, {tuple(e): 1})

    def as_dict(self) -> dict[Monomial, int]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self):
        return total_degree(self)

    def __add__(self, other: "ReducedPoly") -> "ReducedPoly":
        return add(self, other)

    def __sub__(self, other: "ReducedPoly") -> "ReducedPoly":
        return add(self, scale(other, self.spec.neg(1)))

    def __mul__(self, other: "ReducedPoly") -> "ReducedPoly":
        return multiply(self, other)

    def __call__(self, *point: int) -> int:
        return evaluate(self, point)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "q": self.spec.q,
            "terms": [{"e": list(e), "c": c} for e, c in self.terms],
        }

    def __str__(self) -> str:
        return format_terms(self.terms, [f"X{i + 1}" for i in range(self.n)])


def reduce(spec: FieldSpec, n: int, raw: RawTerms | Iterable[tuple[Monomial, int]]) -> ReducedPoly:
    """Normal form of a raw term map modulo the ideal (X_i^q - X_i)."""
    items = raw.items() if isinstance(raw, Mapping) else raw
    q = spec.q
    out: dict[Monomial, int] = {}
    for e, c in items:
        if len(e) != n:
            raise ValueError(f"monomial {e} has {len(e)} exponents, expected {n}")
        c = spec.check(c)
        _accumulate(spec, out, tuple(reduce_exponent(int(k), q) for k in e), c)
    return ReducedPoly(spec, n, _freeze(spec, out))


def _same_ring(f, g) -> None:
    if f.spec != g.spec or f.n != g.n:
        raise ValueError("polynomials live in different rings")


def add(f: ReducedPoly, g: ReducedPoly) -> ReducedPoly:
    _same_ring(f, g)
    out = f.as_dict()
    for e, c in g.terms:
        _accumulate(f.spec, out, e, c)
    return ReducedPoly(f.spec, f.n, _freeze(f.spec, out))


def scale(f: ReducedPoly, c: int) -> ReducedPoly:
    spec = f.spec
    return ReducedPoly(spec, f.n, _freeze(spec, {e: spec.mul(c, v) for e, v in f.terms}))


def raw_product(spec: FieldSpec, a: Iterable[tuple[Monomial, int]],
                b: Iterable[tuple[Monomial, int]]) -> dict[Monomial, int]:
    """Product of two term lists with no exponent reduction."""
    b = list(b)
    out: dict[Monomial, int] = {}
    for ea, ca in a:
        for eb, cb in b:
            _accumulate(spec, out, tuple(x + y for x, y in zip(ea, eb)), spec.mul(ca, cb))
    return out


def multiply(f: ReducedPoly, g: ReducedPoly) -> ReducedPoly:
    _same_ring(f, g)
    return reduce(f.spec, f.n, raw_product(f.spec, f.terms, g.terms))


def power(f: ReducedPoly, k: int) -> ReducedPoly:
    result = ReducedPoly.constant(f.spec, f.n, 1)
    for _ in range(k):
        result = multiply(result, f)
    return result


def total_degree(f) -> float | int:
    """Largest total degree of a term; ``ZERO_DEGREE`` (-inf) for zero."""
    if not f.terms:
        return ZERO_DEGREE
    return max(sum(e) for e, _ in f.terms)


# --- homogeneous ---------------------------------------------------------------

@dataclass(frozen=True)
class HomogeneousPoly:
    spec: FieldSpec
    n_plus_1: int
    d: int
    terms: tuple

    @classmethod
    def build(cls, spec: FieldSpec, n_plus_1: int, d: int,
              raw: RawTerms | Iterable[tuple[Monomial, int]]) -> "HomogeneousPoly":
        items = raw.items() if isinstance(raw, Mapping) else raw
        out: dict[Monomial, int] = {}
        for e, c in items:
            e = tuple(int(k) for k in e)
            if len(e) != n_plus_1:
                raise ValueError(f"monomial {e} has {len(e)} exponents, expected {n_plus_1}")
            if sum(e) != d:
                raise ValueError(f"monomial {e} is not of degree {d}")
            _accumulate(spec, out, e, spec.check(c))
        return cls(spec, n_plus_1, d, _freeze(spec, out))

    @property
    def n(self) -> int:
        """Projective dimension."""
        return self.n_plus_1 - 1

    def is_zero(self) -> bool:
        return not self.terms

    def as_dict(self) -> dict[Monomial, int]:
        return dict(self.terms)

    def __add__(self, other: "HomogeneousPoly") -> "HomogeneousPoly":
        if (self.spec, self.n_plus_1, self.d) != (other.spec, other.n_plus_1, other.d):
            raise ValueError("forms of different shape")
        out = self.as_dict()
        for e, c in other.terms:
            _accumulate(self.spec, out, e, c)
        return HomogeneousPoly(self.spec, self.n_plus_1, self.d, _freeze(self.spec, out))

    def __mul__(self, other: "HomogeneousPoly") -> "HomogeneousPoly":
        if (self.spec, self.n_plus_1) != (other.spec, other.n_plus_1):
            raise ValueError("forms in different rings")
        raw = raw_product(self.spec, self.terms, other.terms)
        return HomogeneousPoly(self.spec, self.n_plus_1, self.d + other.d, _freeze(self.spec, raw))

    def __call__(self, *point: int) -> int:
        return evaluate(self, point)

    def to_json(self) -> dict:
        return {
            "n": self.n_plus_1,
            "q": self.spec.q,
            "d": self.d,
            "terms": [{"e": list(e), "c": c} for e, c in self.terms],
        }

    def __str__(self) -> str:
        return format_terms(self.terms, [f"X{i}" for i in range(self.n_plus_1)])


def homogeneous_linear(spec: FieldSpec, coeffs: Sequence[int]) -> HomogeneousPoly:
    n1 = len(coeffs)
    raw = {}
    for i, c in enumerate(coeffs):
        e = [0] * n1
        e[i] = 1
        raw[tuple(e)] = c
    return HomogeneousPoly.build(spec, n1, 1, raw)


def homogenize(f: ReducedPoly, d: int) -> HomogeneousPoly:
    """Degree-d form in X_0..X_n with X_0 as the homogenizing variable."""
    if f.terms and total_degree(f) > d:
        raise ValueError(f"degree {total_degree(f)} exceeds {d}")
    raw = {(d - sum(e),) + e: c for e, c in f.terms}
    return HomogeneousPoly.build(f.spec, f.n + 1, d, raw)


def dehomogenize(F: HomogeneousPoly, chart: int = 0) -> ReducedPoly:
    """Set X_chart = 1 and reduce; remaining variables keep their order."""
    if not 0 <= chart < F.n_plus_1:
        raise ValueError(f"chart index {chart} out of range")
    raw = [(e[:chart] + e[chart + 1:], c) for e, c in F.terms]
    return reduce(F.spec, F.n_plus_1 - 1, raw)


# --- affine linear forms ------------------------------------------------------

@dataclass(frozen=True)
class AffineForm:
    """l(X) = sum c_i X_i + constant."""

    coefficients: tuple[int, ...]
    constant: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "coefficients", tuple(int(c) for c in self.coefficients))
        object.__setattr__(self, "constant", int(self.constant))

    @property
    def n(self) -> int:
        return len(self.coefficients)

    @property
    def is_direction(self) -> bool:
        return any(self.coefficients)

    def shifted(self, u: int, spec: FieldSpec) -> "AffineForm":
        """The form l - u."""
        return AffineForm(self.coefficients, spec.sub(self.constant, u))

    def to_poly(self, spec: FieldSpec) -> ReducedPoly:
        raw = {(0,) * self.n: self.constant}
        for i, c in enumerate(self.coefficients):
            e = [0] * self.n
            e[i] = 1
            raw[tuple(e)] = c
        return reduce(spec, self.n, raw)

    def values(self, spec: FieldSpec, points: np.ndarray) -> np.ndarray:
        tabs = spec.tables()
        out = np.full(len(points), self.constant, dtype=np.int64)
        for i, c in enumerate(self.coefficients):
            if c:
                out = tabs.add[out, tabs.mul[c, points[:, i]]].astype(np.int64)
        return out


# --- evaluation ------------------------------------------------------------------

def evaluate(f: ReducedPoly | HomogeneousPoly, point: Sequence[int]) -> int:
    spec = f.spec
    nvars = f.n if isinstance(f, ReducedPoly) else f.n_plus_1
    if len(point) != nvars:
        raise ValueError(f"point has {len(point)} coordinates, expected {nvars}")
    total = 0
    for e, c in f.terms:
        v = c
        for x, k in zip(point, e):
            if k:
                v = spec.mul(v, spec.pow(x, k))
        total = spec.add(total, v)
    return total


def affine_points(q: int, n: int) -> np.ndarray:
    """All of GF(q)^n as a (q^n, n) array; X_1 varies slowest."""
    if n == 0:
        return np.zeros((1, 0), dtype=np.int64)
    grids = np.meshgrid(*([np.arange(q)] * n), indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=1).astype(np.int64)


def point_index(point: Sequence[int], q: int) -> int:
    idx = 0
    for x in point:
        idx = idx * q + int(x)
    return idx


def _power_table(spec: FieldSpec, max_e: int) -> np.ndarray:
    q = spec.q
    tab = np.zeros((q, max_e + 1), dtype=np.int64)
    for x in range(q):
        for e in range(max_e + 1):
            tab[x, e] = spec.pow(x, e)
    return tab


def eval_vector(f: ReducedPoly | HomogeneousPoly, points: np.ndarray) -> np.ndarray:
    """Values of f at each row of ``points`` (vectorised over points)."""
    spec = f.spec
    tabs = spec.tables()
    if tabs is None:
        return np.array([evaluate(f, tuple(pt)) for pt in points], dtype=np.int64)
    q = spec.q
    # x^e depends only on e mod (q-1) for e >= 1
    pw = _power_table(spec, q - 1)
    add, mul = tabs.add, tabs.mul
    out = np.zeros(len(points), dtype=np.int64)
    for e, c in f.terms:
        v = np.full(len(points), c, dtype=np.int64)
        for i, k in enumerate(e):
            if k:
                v = mul[v, pw[points[:, i], reduce_exponent(k, q)]]
        out = add[out, v]
    return out.astype(np.int64)


def value_table(f: ReducedPoly) -> np.ndarray:
    return eval_vector(f, affine_points(f.spec.q, f.n))


def zero_mask(f: ReducedPoly) -> np.ndarray:
    return value_table(f) == 0


# --- interpolation -----------------------------------------------------------

def _vandermonde_inverse(spec: FieldSpec) -> np.ndarray:
    """Inverse over GF(q) of V[x, e] = x^e (0^0 = 1), x, e in 0..q-1."""
    q = spec.q
    V = [[spec.pow(x, e) for e in range(q)] for x in range(q)]
    aug = [row[:] + [1 if i == j else 0 for j in range(q)] for i, row in enumerate(V)]
    for col in range(q):
        piv = next(r for r in range(col, q) if aug[r][col])
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = spec.inv(aug[col][col])
        aug[col] = [spec.mul(inv, v) for v in aug[col]]
        for r in range(q):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [spec.sub(a, spec.mul(f, b)) for a, b in zip(aug[r], aug[col])]
    return np.array([row[q:] for row in aug], dtype=np.int64)


def interpolate(spec: FieldSpec, n: int, values: Sequence[int] | np.ndarray) -> ReducedPoly:
    """The reduced polynomial whose value table (``affine_points`` order) is ``values``."""
    q = spec.q
    tabs = spec.tables()
    if tabs is None:
        raise ValueError(f"interpolation needs operation tables; {spec} is too large")
    vals = np.asarray(values, dtype=np.int64)
    if vals.shape != (q**n,):
        raise ValueError(f"expected {q**n} values")
    vinv = _vandermonde_inverse(spec)
    coeffs = vals.reshape((q,) * n)
    # one univariate transform per axis: coeff[e] = sum_x vinv[e, x] * value[x]
    for axis in range(n):
        moved = np.moveaxis(coeffs, axis, 0)
        new = np.zeros_like(moved)
        for e in range(q):
            acc = np.zeros(moved.shape[1:], dtype=np.int64)
            for x in range(q):
                acc = tabs.add[acc, tabs.mul[vinv[e, x], moved[x]]]
            new[e] = acc
        coeffs = np.moveaxis(new, 0, axis)
    raw = {tuple(int(k) for k in e): int(coeffs[e]) for e in zip(*np.nonzero(coeffs))}
    return reduce(spec, n, raw)


# --- JSON ----------------------------------------------------------------------

def poly_from_json(obj: Mapping, homogeneous: bool = False) -> ReducedPoly | HomogeneousPoly:
    try:
        n, q, terms = int(obj["n"]), int(obj["q"]), obj["terms"]
        raw = [(tuple(int(k) for k in t["e"]), int(t["c"])) for t in terms]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed polynomial JSON: {exc}") from exc
    spec = field_of_order(q)
    if homogeneous:
        degrees = {sum(e) for e, c in raw if c}
        if len(degrees) > 1:
            raise ValueError("terms of a homogeneous polynomial must share one degree")
        d = degrees.pop() if degrees else int(obj.get("d", 0))
        return HomogeneousPoly.build(spec, n, d, raw)
    return reduce(spec, n, raw)


def format_terms(terms: tuple, names: Sequence[str]) -> str:
    if not terms:
        return "0"
    parts = []
    for e, c in terms:
        mono = "*".join(f"{v}^{k}" if k > 1 else v for v, k in zip(names, e) if k)
        if not mono:
            parts.append(str(c))
        elif c == 1:
            parts.append(mono)
        else:
            parts.append(f"{c}*{mono}")
    return " + ".join(parts)
