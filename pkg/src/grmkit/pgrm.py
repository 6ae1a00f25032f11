"""Projective generalized Reed-Muller codes PGRM_q(n, d).

Codeword coordinates are indexed by the representative set S: for each pivot
i = 0..n the points (0, ..., 0, 1, x_{i+1}, ..., x_n), ordered by pivot and
then lexicographically in element-code order.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .gf import FieldSpec, field_of_order
from .grm import binom, extended_weights, split_ab
from .poly import HomogeneousPoly, affine_points, eval_vector, homogeneous_linear


class ProjPoint(NamedTuple):
    coords: tuple[int, ...]
    pivot: int


def proj_points(q: int, n: int) -> list[ProjPoint]:
    out = []
    for pivot in range(n + 1):
        for free in affine_points(q, n - pivot):
            coords = (0,) * pivot + (1,) + tuple(int(x) for x in free)
            out.append(ProjPoint(coords, pivot))
    return out


@functools.lru_cache(maxsize=None)
def proj_point_array(q: int, n: int) -> np.ndarray:
    arr = np.array([p.coords for p in proj_points(q, n)], dtype=np.int64)
    arr.setflags(write=False)
    return arr


def proj_length(q: int, n: int) -> int:
    return (q ** (n + 1) - 1) // (q - 1)


def normalize(spec: FieldSpec, vec: Sequence[int]) -> tuple[int, ...]:
    """Scale a nonzero vector so its first nonzero coordinate is 1."""
    for x in vec:
        if x:
            inv = spec.inv(x)
            return tuple(spec.mul(inv, v) for v in vec)
    raise ValueError("the zero vector is not a projective point")


@functools.lru_cache(maxsize=None)
def _point_lookup(q: int, n: int) -> dict[tuple[int, ...], int]:
    return {p.coords: i for i, p in enumerate(proj_points(q, n))}


def point_index(spec: FieldSpec, n: int, vec: Sequence[int]) -> int:
    return _point_lookup(spec.q, n)[normalize(spec, vec)]


# --- parameters ---------------------------------------------------------------------

def proj_dimension(q: int, n: int, d: int) -> int:
    total = 0
    for t in range(1, d + 1):
        if (t - d) % (q - 1):
            continue
        total += sum((-1) ** j * binom(n + 1, j) * binom(t - j * q + n, t - j * q)
                     for j in range(n + 2))
    return total


def proj_min_distance(q: int, n: int, d: int) -> int:
    if d < 1:
        raise ValueError("d must be at least 1")
    if d > n * (q - 1):
        return 1
    a, b = split_ab(d - 1, q)
    return (q - b) * q ** (n - a - 1)


@dataclass(frozen=True)
class SecondWeightBounds:
    lower: int
    upper: int
    refined_lower: int | None = None


def proj_second_weight_bounds(q: int, n: int, d: int, w3_affine: int | None = None) -> SecondWeightBounds:
    """Bracket for the second weight of PGRM_q(n, d), n >= 2, 2 <= d <= n(q-1)."""
    if n < 2 or not 2 <= d <= n * (q - 1):
        raise ValueError(f"bounds need n >= 2 and 2 <= d <= n(q-1); got n={n}, d={d}")
    wh1_hyper = proj_min_distance(q, n - 1, d)
    lower = wh1_hyper + extended_weights(q, n, d)[1]
    upper = extended_weights(q, n, d - 1)[1]
    refined = None
    if w3_affine is not None:
        refined = min(wh1_hyper + w3_affine, upper)
    return SecondWeightBounds(lower, upper, refined)


@dataclass(frozen=True)
class PgrmParams:
    length: int
    dimension: int
    min_distance: int
    second_weight_lower: int | None
    second_weight_upper: int | None

    def to_json(self) -> dict:
        return {"length": self.length, "dimension": self.dimension, "w1": self.min_distance,
                "w2_lower": self.second_weight_lower, "w2_upper": self.second_weight_upper}


def pgrm_params(q: int, n: int, d: int) -> PgrmParams:
    if q < 2 or n < 1:
        raise ValueError(f"invalid field size or dimension (q={q}, n={n})")
    if d < 1:
        raise ValueError("d must be at least 1")
    length = proj_length(q, n)
    dim = proj_dimension(q, n, d)
    w1 = proj_min_distance(q, n, d)
    lo = hi = None
    if d > n * (q - 1):
        lo = hi = 2
    elif n == 1 and d >= 2:
        lo = hi = q - d + 2
    elif n >= 2 and d >= 2:
        b = proj_second_weight_bounds(q, n, d)
        lo, hi = b.lower, b.upper
    return PgrmParams(length, dim, w1, lo, hi)


# --- words ------------------------------------------------------------------------------

def proj_values(F: HomogeneousPoly) -> np.ndarray:
    return eval_vector(F, proj_point_array(F.spec.q, F.n))


def count_zeros_proj(F: HomogeneousPoly) -> int:
    vals = proj_values(F)
    if not vals.any():
        raise ValueError("form vanishes on every point of S")
    return int((vals == 0).sum())


def weight_proj(F: HomogeneousPoly) -> int:
    return proj_length(F.spec.q, F.n) - count_zeros_proj(F)


def _monomial(spec: FieldSpec, n1: int, exps: dict[int, int], c: int = 1) -> HomogeneousPoly:
    e = [0] * n1
    for i, k in exps.items():
        e[i] += k
    return HomogeneousPoly.build(spec, n1, sum(e), {tuple(e): c})


def _power(F: HomogeneousPoly, k: int) -> HomogeneousPoly:
    out = _monomial(F.spec, F.n_plus_1, {})
    for _ in range(k):
        out = out * F
    return out


def indicator_poly(q: int, n: int, d: int, omega: ProjPoint | Sequence[int]) -> HomogeneousPoly:
    """Degree-d form nonzero at omega and zero at every other point of S (needs d > n(q-1))."""
    if d <= n * (q - 1):
        raise ValueError(f"indicator forms need d > n(q-1) = {n * (q - 1)}")
    spec = field_of_order(q)
    coords = tuple(omega.coords if isinstance(omega, ProjPoint) else omega)
    if len(coords) != n + 1:
        raise ValueError("point has the wrong number of coordinates")
    j = next(i for i, x in enumerate(coords) if x)
    if coords[j] != 1:
        raise ValueError("point is not in normal form")
    n1 = n + 1
    neg1 = spec.neg(1)
    xj_top = _monomial(spec, n1, {j: q - 1})
    F = _monomial(spec, n1, {j: d - n * (q - 1)})
    for i in range(j):
        F = F * (xj_top + _monomial(spec, n1, {i: q - 1}, neg1))
    for i in range(j + 1, n1):
        lin = [0] * n1
        lin[i] = 1
        lin[j] = spec.neg(coords[i])
        if lin[j] == 0:
            term = _monomial(spec, n1, {i: q - 1})
        else:
            term = _power(homogeneous_linear(spec, lin), q - 1)
        neg_term = HomogeneousPoly.build(spec, n1, q - 1, [(e, spec.neg(c)) for e, c in term.terms])
        F = F * (xj_top + neg_term)
    return F


def poly_with_zero_set(q: int, n: int, d: int, U: Iterable[ProjPoint | Sequence[int] | int]) -> HomogeneousPoly:
    """Form of degree d > n(q-1) whose zeros in S are exactly U."""
    pts = proj_points(q, n)
    spec = field_of_order(q)
    zero_idx = set()
    for u in U:
        if isinstance(u, (int, np.integer)):
            zero_idx.add(int(u))
        else:
            coords = u.coords if isinstance(u, ProjPoint) else u
            zero_idx.add(point_index(spec, n, coords))
    if len(zero_idx) == len(pts):
        raise ValueError("U is all of S; the form would be the zero word")
    F = HomogeneousPoly.build(spec, n + 1, d, {})
    for i, w in enumerate(pts):
        if i not in zero_idx:
            F = F + indicator_poly(q, n, d, w)
    return F


# --- hyperplanes -------------------------------------------------------------------------

@functools.lru_cache(maxsize=None)
def proj_hyperplane_masks(q: int, n: int) -> np.ndarray:
    """masks[h, x] is True iff point x of S lies on the hyperplane with normal point h."""
    spec = field_of_order(q)
    tabs = spec.tables()
    pts = proj_point_array(q, n)
    masks = np.zeros((len(pts), len(pts)), dtype=bool)
    for h, normal in enumerate(pts):
        acc = np.zeros(len(pts), dtype=np.int64)
        for i, c in enumerate(normal):
            if c:
                acc = tabs.add[acc, tabs.mul[c, pts[:, i]]]
        masks[h] = acc == 0
    masks.setflags(write=False)
    return masks


def contained_hyperplanes(q: int, n: int, zeros: np.ndarray) -> list[int]:
    """Indices (into S, as normal vectors) of hyperplanes inside a zero mask."""
    masks = proj_hyperplane_masks(q, n)
    inside = ~np.any(masks & ~zeros[None, :], axis=1)
    return [int(i) for i in np.nonzero(inside)[0]]


def contains_proj_hyperplane(F: HomogeneousPoly) -> ProjPoint | None:
    """First hyperplane (by normal vector, in S order) on which F vanishes, else None."""
    vals = proj_values(F)
    if not vals.any():
        raise ValueError("form vanishes on every point of S")
    hs = contained_hyperplanes(F.spec.q, F.n, vals == 0)
    if not hs:
        return None
    return proj_points(F.spec.q, F.n)[hs[0]]


def chart_indices(q: int, n: int, normal: Sequence[int]) -> np.ndarray:
    """Affine chart of P^n minus the hyperplane normal . X = 0.

    Entry k is the index in S of the image of the k-th point y of GF(q)^n
    (``affine_points`` order) under X_i = y_i (i != p), X_p = 1 - sum h_i y_i,
    where p is the pivot of the normal.  The map is an affine bijection, so
    affine hyperplanes and parallelism are preserved.
    """
    spec = field_of_order(q)
    normal = normalize(spec, normal)
    p = next(i for i, x in enumerate(normal) if x)
    out = np.empty(q**n, dtype=np.int64)
    for k, y in enumerate(affine_points(q, n)):
        X = [0] * (n + 1)
        free = [i for i in range(n + 1) if i != p]
        acc = 0
        for i, v in zip(free, y):
            X[i] = int(v)
            acc = spec.add(acc, spec.mul(normal[i], int(v)))
        X[p] = spec.sub(1, acc)
        out[k] = point_index(spec, n, X)
    return out


# --- second-weight gap (Delta) ---------------------------------------------------------------

def _delta_case_table(q: int, n: int, d: int) -> Fraction:
    """Delta as printed, case by case, in terms of the split of d - 1."""
    a1, b1 = split_ab(d - 1, q)
    Q = Fraction(q)
    if b1 <= q - 3:
        a = a1
        if a == n - 1 and b1 == 0:
            return Q ** (n - a - 1) * (q - 3)
        if a == n - 1:
            return Q ** (n - a - 2) * b1
        if b1 == 0 and q == 3:
            return Q ** (n - a - 1)
        if b1 == 0:
            return Q ** (n - a - 1) * (q - 3)
        if b1 == 1 and q == 3:
            return 2 * Q ** (n - a - 2)
        if b1 == 1:
            return Q ** (n - a - 1)
        return Q ** (n - a - 2) * (b1 - 1)
    # b1 == q - 2
    if a1 == n - 1:
        return Fraction(0)
    if q == 2:
        return Fraction(0) if a1 == n - 2 else Q ** (n - a1 - 2)
    if q == 3:
        return 2 * Q ** (n - a1 - 2)
    return Q ** (n - a1 - 2) * (q - 3)


@dataclass(frozen=True)
class DeltaResult:
    direct: int
    case_table: Fraction | None
    agree: bool | None


def delta_ineq(q: int, n: int, d: int) -> DeltaResult:
    """Gap W_a2(q,n,d-1) - W_h1(q,n-1,d) - W_a2(q,n,d) between the two bounds.

    The printed case values are only reported for d >= 3; for d = 2 they rely
    on the d = 1 regime of the second weight and are not comparable.
    """
    if n < 2 or d < 2 or not d - 1 < n * (q - 1):
        raise ValueError(f"delta needs n >= 2, d >= 2, d-1 < n(q-1); got n={n}, d={d}")
    direct = (extended_weights(q, n, d - 1)[1] - proj_min_distance(q, n - 1, d)
              - extended_weights(q, n, d)[1])
    if direct < 0:
        raise ArithmeticError(f"negative gap {direct} at q={q}, n={n}, d={d}")
    if d < 3:
        return DeltaResult(direct, None, None)
    table = _delta_case_table(q, n, d)
    return DeltaResult(direct, table, table == direct)
