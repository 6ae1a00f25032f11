"""Affine generalized Reed-Muller codes RM_q(d, n): parameters, weights, bounds.

Degrees are written two ways: ``d = a(q-1) + b`` with 0 <= b < q-1 (used for
the minimum distance) and ``d = s(q-1) + t`` with 0 < t <= q-1 (the form in
which the second-weight correction coefficient is tabulated).
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple

from .poly import ReducedPoly, value_table


class SplitAB(NamedTuple):
    a: int
    b: int


class SplitST(NamedTuple):
    s: int
    t: int


def split_ab(d: int, q: int) -> SplitAB:
    a, b = divmod(d, q - 1)
    return SplitAB(a, b)


def split_st(d: int, q: int) -> SplitST:
    if d < 1:
        raise ValueError("split_st needs d >= 1")
    s, t = divmod(d - 1, q - 1)
    return SplitST(s, t + 1)


def binom(x: int, y: int) -> int:
    """Binomial coefficient, zero when y < 0 or 0 <= x < y."""
    if y < 0 or x < 0 or x < y:
        return 0
    return math.comb(x, y)


def _qpow(q: int, e: int) -> Fraction:
    return Fraction(q) ** e


def _exact_int(x: Fraction) -> int:
    if x.denominator != 1:
        raise ArithmeticError(f"expected an integer, got {x}")
    return x.numerator


def check_affine_range(q: int, n: int, d: int) -> None:
    if q < 2 or n < 1:
        raise ValueError(f"invalid field size or dimension (q={q}, n={n})")
    if not 1 <= d < n * (q - 1):
        raise ValueError(f"d={d} outside 1 <= d < n(q-1) = {n * (q - 1)}")


# --- basic parameters ----------------------------------------------------------

def affine_dimension(q: int, n: int, d: int) -> int:
    return sum(
        (-1) ** j * binom(n, j) * binom(t - j * q + n - 1, t - j * q)
        for t in range(d + 1)
        for j in range(n + 1)
    )


def reduced_monomials(q: int, n: int, d: int) -> list[tuple[int, ...]]:
    """Exponent vectors with partial degrees <= q-1 and total degree <= d, graded-lex."""
    monos = [e for e in itertools.product(range(q), repeat=n) if sum(e) <= d]
    return sorted(monos, key=lambda e: (sum(e), e))


def min_distance_affine(q: int, n: int, d: int) -> int:
    a, b = split_ab(d, q)
    return _exact_int((q - b) * _qpow(q, n - a - 1))


def _w2_tree(q: int, n: int, d: int) -> int:
    """Second weight by explicit case analysis on n, d, q and b."""
    a, b = split_ab(d, q)
    if n == 1:
        return q - d + 1
    if d == 1:
        return q**n
    if q == 2:
        if d < n - 1:
            return 3 * 2 ** (n - d - 1)
        return 4  # d = n - 1
    if d < q - 1:
        return q**n - d * q ** (n - 1) + (d - 1) * q ** (n - 2)
    if d > (n - 1) * (q - 1):
        return q - b + 1
    # q - 1 <= d <= (n - 1)(q - 1)
    if b == 0:
        return 2 * q ** (n - a - 1) * (q - 1)
    if b == 1:
        if q == 3:
            return 8 * 3 ** (n - a - 2)
        return q ** (n - a)
    return q ** (n - a - 2) * (q - 1) * (q - b + 1)


def correction_coefficient(q: int, n: int, d: int) -> int:
    """The coefficient c with W2 = W1 + c q^(n-s-2), from the (s, t) table."""
    s, t = split_st(d, q)
    if s == n - 1:
        return q
    if s < n - 1 and (1 < t <= Fraction(q + 1, 2) or (t == q - 1 and t != 1)):
        return t - 1
    if s == 0 and t == 1:
        return q
    if q < 4 and s < n - 2 and t == 1:
        return q - 1
    if q == 3 and s == n - 2 and t == 1:
        return q - 1
    if q == 2 and s == n - 2 and t == 1:
        return q
    if q >= 4 and 0 < s <= n - 2 and t == 1:
        return q
    if q >= 4 and s <= n - 2 and t > Fraction(q + 1, 2):
        return t - 1  # c_t = t - 1
    raise AssertionError(f"no table row for q={q}, n={n}, d={d}")  # pragma: no cover


def _w2_table(q: int, n: int, d: int) -> int:
    s, t = split_st(d, q)
    w1 = (q - t) * _qpow(q, n - s - 1)
    return _exact_int(w1 + correction_coefficient(q, n, d) * _qpow(q, n - s - 2))


def second_weight_affine(q: int, n: int, d: int) -> int:
    """Next-to-minimal weight of RM_q(d, n), computed two independent ways."""
    check_affine_range(q, n, d)
    tree, table = _w2_tree(q, n, d), _w2_table(q, n, d)
    if tree != table:
        raise ArithmeticError(
            f"second-weight formulations disagree at q={q}, n={n}, d={d}: {tree} != {table}")
    return tree


def gamma(q: int, n: int, d: int) -> Fraction:
    """gamma with W2 = W1 + gamma q^(n-a-2)."""
    a, _ = split_ab(d, q)
    diff = second_weight_affine(q, n, d) - min_distance_affine(q, n, d)
    return Fraction(diff) / _qpow(q, n - a - 2)


def extended_weights(q: int, n: int, d: int) -> tuple[int, int]:
    """(W1, W2) including d >= n(q-1), where the code is all of F(q, n) and the weights are 1, 2."""
    if d >= n * (q - 1):
        return 1, 2
    return min_distance_affine(q, n, d), second_weight_affine(q, n, d)


@dataclass(frozen=True)
class GrmParams:
    length: int
    dimension: int
    min_distance: int
    second_weight: int

    def to_json(self) -> dict:
        return {"length": self.length, "dimension": self.dimension,
                "w1": self.min_distance, "w2": self.second_weight}


def grm_params(q: int, n: int, d: int) -> GrmParams:
    check_affine_range(q, n, d)
    return GrmParams(q**n, affine_dimension(q, n, d), min_distance_affine(q, n, d),
                     second_weight_affine(q, n, d))


# --- zeros and weights of words --------------------------------------------------

def count_zeros_affine(f: ReducedPoly) -> int:
    return int((value_table(f) == 0).sum())


def weight_affine(f: ReducedPoly) -> int:
    return f.spec.q**f.n - count_zeros_affine(f)


# --- bounds for irreducible, not absolutely irreducible words -----------------------

@dataclass(frozen=True)
class MlemBound:
    generic_bound: int
    a0_bound: Fraction | None

    def holds_for(self, zeros: int) -> bool:
        """Both strict upper bounds hold for a zero count."""
        ok = zeros < self.generic_bound
        if self.a0_bound is not None:
            ok = ok and zeros < self.a0_bound
        return ok


def mlem_bound(q: int, n: int, d: int, u: int = 2) -> MlemBound:
    """Strict upper bounds on N_a(f) for irreducible, non absolutely irreducible f of degree d."""
    if u < 2:
        raise ValueError("u must be at least 2")
    if d <= 1:
        raise ValueError("bounds need d > 1")
    a, _ = split_ab(d, q)
    generic = _exact_int(q**n - 2 * _qpow(q, n - d // (u * (q - 1)) - 1))
    a0 = Fraction(d, u) * q ** (n - 1) if a == 0 else None
    return MlemBound(generic, a0)


@dataclass(frozen=True)
class NaiCheck:
    lower_bound_on_weight: Fraction
    second_weight: int
    exceeds: bool


def nai_gap_check(q: int, n: int, d: int, u: int = 2) -> NaiCheck:
    """Compare the weight lower bound of such a word with the second weight."""
    a, _ = split_ab(d, q)
    if a == 0:
        lower = q**n - Fraction(d, u) * q ** (n - 1)
    else:
        lower = 2 * _qpow(q, n - d // (u * (q - 1)) - 1)
    w2 = second_weight_affine(q, n, d)
    return NaiCheck(lower, w2, lower > w2)


def split_product_bound(q: int, n: int, d: int, d_prime: int) -> Fraction:
    """Strict upper bound (d - d'/2) q^(n-1) on zeros of g1*g2, deg g1 = d'."""
    return (d - Fraction(d_prime, 2)) * q ** (n - 1)


def hyperplane_union_bound(q: int, n: int, d: int) -> Fraction:
    """Lower bound on zeros of a union of d distinct hyperplanes."""
    return d * _qpow(q, n - 1) - Fraction(d * (d - 1), 2) * _qpow(q, n - 2)


# --- Weil-type constants ------------------------------------------------------------

@dataclass(frozen=True)
class WeilBounds:
    d: int
    A_squared: int  # A = sqrt(A_squared)
    B: int
    C: int
    q_min: int

    @property
    def A(self) -> float:
        return math.sqrt(self.A_squared)

    def A_exact(self) -> int | None:
        r = math.isqrt(self.A_squared)
        return r if r * r == self.A_squared else None


def weil_bounds(d: int) -> WeilBounds:
    """Constants A(d), B(d), C(d) and the smallest integer above q0(d).

    q0 = ((A + sqrt(A^2 + 4C)) / 2)^2 = (2A^2 + 4C + 2 sqrt(A^2 (A^2 + 4C))) / 4;
    everything is evaluated with integer square roots.
    """
    if not 2 <= d <= 4:
        raise ValueError("weil_bounds supports 2 <= d <= 4")
    k = d * (d + 1) // 2
    a2 = 2 * d**5
    B = 4 * d**2 * k ** (2**k)
    C = B + d * (d - 1) // 2
    X = 2 * a2 + 4 * C
    Y = a2 * (a2 + 4 * C)
    # floor(q0) = floor((X + floor(2 sqrt(Y))) / 4) whether or not 4Y is a square
    q_min = (X + math.isqrt(4 * Y)) // 4 + 1
    return WeilBounds(d, a2, B, C, q_min)


# --- weight distributions --------------------------------------------------------------

@dataclass
class WeightDistribution:
    counts: Counter = field(default_factory=Counter)

    @classmethod
    def from_histogram(cls, hist: Iterable[int]) -> "WeightDistribution":
        return cls(Counter({w: int(c) for w, c in enumerate(hist) if c}))

    @classmethod
    def from_mapping(cls, m: Mapping[int, int]) -> "WeightDistribution":
        return cls(Counter({int(w): int(c) for w, c in m.items() if c}))

    def merge(self, other: "WeightDistribution") -> "WeightDistribution":
        return WeightDistribution(self.counts + other.counts)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def weights(self) -> list[int]:
        return sorted(w for w in self.counts if w > 0)

    def rows(self) -> list[tuple[int, int]]:
        return sorted(self.counts.items())

    def to_json(self) -> dict:
        return {str(w): c for w, c in self.rows()}


def kth_weight(dist: WeightDistribution, k: int) -> int:
    """k-th smallest distinct positive weight."""
    if k < 1:
        raise ValueError("k must be positive")
    ws = dist.weights()
    if len(ws) < k:
        raise ValueError(f"distribution has only {len(ws)} distinct positive weights")
    return ws[k - 1]
