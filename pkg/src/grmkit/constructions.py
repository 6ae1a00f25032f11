"""Extremal codeword families and geometric recognizers for affine words.

Recognizers work on zero sets (boolean masks over ``affine_points`` order),
never on factorizations.  A hyperplane is stored as a canonical direction
(first nonzero coefficient 1) plus a constant c, meaning {x : h . x = c}.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .gf import ExtensionMap, FieldSpec, field_of_order, galois_conjugates, rank
from .grm import split_ab
from .poly import (AffineForm, ReducedPoly, affine_points, multiply, power, raw_product,
                   reduce, total_degree, value_table)


# --- hyperplanes -----------------------------------------------------------------

class Hyperplane(NamedTuple):
    direction: tuple[int, ...]
    constant: int


def canonical_directions(q: int, n: int) -> list[tuple[int, ...]]:
    """Nonzero vectors of GF(q)^n whose first nonzero entry is 1, in code order."""
    out = []
    for v in affine_points(q, n):
        nz = np.nonzero(v)[0]
        if len(nz) and v[nz[0]] == 1:
            out.append(tuple(int(x) for x in v))
    return out


@functools.lru_cache(maxsize=None)
def _hyperplane_data(q: int, n: int) -> tuple[tuple[Hyperplane, ...], np.ndarray]:
    spec = field_of_order(q)
    pts = affine_points(q, n)
    hyps, masks = [], []
    for h in canonical_directions(q, n):
        vals = AffineForm(h).values(spec, pts)
        for c in range(q):
            hyps.append(Hyperplane(h, c))
            masks.append(vals == c)
    masks = np.array(masks, dtype=bool).reshape(len(hyps), len(pts))
    masks.setflags(write=False)
    return tuple(hyps), masks


def affine_hyperplanes(q: int, n: int) -> tuple[Hyperplane, ...]:
    return _hyperplane_data(q, n)[0]


def hyperplane_masks(q: int, n: int) -> np.ndarray:
    """masks[i] is the point set of ``affine_hyperplanes(q, n)[i]``."""
    return _hyperplane_data(q, n)[1]


def contained_hyperplanes(q: int, n: int, zeros: np.ndarray) -> np.ndarray:
    """Indices of the hyperplanes lying entirely inside a zero mask."""
    masks = hyperplane_masks(q, n)
    return np.nonzero(~np.any(masks & ~np.asarray(zeros, dtype=bool)[None, :], axis=1))[0]


def _as_bits(mask: np.ndarray) -> int:
    return int.from_bytes(np.packbits(mask.astype(np.uint8), bitorder="little").tobytes(), "little")


def _cover_within(target: int, sets: list[int], limit: int) -> bool:
    """Can the target bitset be covered by at most ``limit`` of the given subsets?"""
    if target == 0:
        return True
    if limit == 0:
        return False
    low = target & -target
    for s in sets:
        if s & low and _cover_within(target & ~s, sets, limit - 1):
            return True
    return False


def union_of_hyperplanes_mask(zeros: np.ndarray, q: int, n: int, d: int) -> bool:
    """True iff d distinct affine hyperplanes have union exactly equal to the mask."""
    zeros = np.asarray(zeros, dtype=bool)
    if d < 1 or not zeros.any():
        return False
    inside = contained_hyperplanes(q, n, zeros)
    if len(inside) < d:
        return False
    masks = hyperplane_masks(q, n)
    if not np.array_equal(np.any(masks[inside], axis=0), zeros):
        return False
    # d hyperplanes exist and cover; a smaller cover can be padded up to d
    return _cover_within(_as_bits(zeros), [_as_bits(masks[i]) for i in inside], d)


def is_union_of_d_hyperplanes(f: ReducedPoly, d: int) -> bool:
    return union_of_hyperplanes_mask(value_table(f) == 0, f.spec.q, f.n, d)


def delsarte_maximal_mask(zeros: np.ndarray, q: int, n: int, d: int) -> bool:
    """Is the zero mask a + 1 independent blocks: a of q-1 parallel hyperplanes, one of b?

    Equivalently the complement C is an affine subspace A of dimension n - a
    (when b = 0), or A minus b parallel hyperplanes of A (when b > 0).  The
    second case is tested by asking for a linear functional h, nonconstant
    on A, taking exactly q - b values on C; since |C| = (q-b) q^(n-a-1) this
    forces C = A n {h in h(C)}.
    """
    spec = field_of_order(q)
    zeros = np.asarray(zeros, dtype=bool)
    a, b = split_ab(d, q)
    C = affine_points(q, n)[~zeros]
    if a >= n:
        return len(C) == 1
    if len(C) != (q - b) * q ** (n - a - 1):
        return False
    tabs = spec.tables()
    diffs = tabs.sub[C[1:], C[0][None, :]]
    if rank(spec, diffs) != n - a:
        return False
    if b == 0:
        return True
    for h in canonical_directions(q, n):
        if len(np.unique(AffineForm(h).values(spec, C))) == q - b:
            return True
    return False


def is_delsarte_maximal(f: ReducedPoly, q: int, n: int, d: int) -> bool:
    if f.spec.q != q or f.n != n:
        raise ValueError("polynomial does not live in the requested space")
    return delsarte_maximal_mask(value_table(f) == 0, q, n, d)


# --- arrangements ------------------------------------------------------------------

def _independent(spec: FieldSpec, dirs: Sequence[Sequence[int]]) -> bool:
    return rank(spec, [list(v) for v in dirs]) == len(dirs)


@dataclass(frozen=True)
class HyperplaneBlock:
    """Parallel hyperplanes form(x) = u for u in shifts."""

    form: AffineForm
    shifts: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "shifts", tuple(int(u) for u in self.shifts))
        if self.form.constant != 0 or not self.form.is_direction:
            raise ValueError("block form must be a nonzero linear form with no constant")
        if len(set(self.shifts)) != len(self.shifts):
            raise ValueError("block shifts must be distinct")
        if not self.shifts:
            raise ValueError("a block needs at least one hyperplane")

    @property
    def size(self) -> int:
        return len(self.shifts)


@dataclass(frozen=True)
class Arrangement:
    q: int
    n: int
    blocks: tuple[HyperplaneBlock, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "blocks", tuple(self.blocks))
        spec = field_of_order(self.q)
        if len(self.blocks) > self.n:
            raise ValueError("more blocks than variables")
        for blk in self.blocks:
            if blk.form.n != self.n:
                raise ValueError("block form has the wrong number of variables")
            if blk.size > self.q - 1:
                raise ValueError(f"block of {blk.size} hyperplanes exceeds q-1 = {self.q - 1}")
            if any(not 0 <= u < self.q for u in blk.shifts):
                raise ValueError("shift is not a field element")
        if not _independent(spec, [blk.form.coefficients for blk in self.blocks]):
            raise ValueError("block directions are linearly dependent")

    @property
    def sizes(self) -> list[int]:
        return sorted(blk.size for blk in self.blocks)

    @property
    def degree(self) -> int:
        return sum(blk.size for blk in self.blocks)


def arrangement_poly(arr: Arrangement) -> ReducedPoly:
    spec = field_of_order(arr.q)
    f = ReducedPoly.constant(spec, arr.n, 1)
    for blk in arr.blocks:
        for u in blk.shifts:
            f = multiply(f, blk.form.shifted(u, spec).to_poly(spec))
    return f


def arrangement_zeros(arr: Arrangement) -> int:
    q, n, k = arr.q, arr.n, len(arr.blocks)
    prod = 1
    for blk in arr.blocks:
        prod *= q - blk.size
    return q**n - q ** (n - k) * prod


def unit_direction(n: int, i: int) -> AffineForm:
    return AffineForm(tuple(1 if j == i else 0 for j in range(n)))


def _directions(n: int, given: Sequence, count: int) -> list[AffineForm]:
    out = []
    for i in range(count):
        g = given[i] if i < len(given) and given[i] is not None else unit_direction(n, i)
        out.append(g if isinstance(g, AffineForm) else AffineForm(tuple(g)))
    return out


def config_S(q: int, n: int, d: int, dir1=None, dir2=None) -> Arrangement:
    """b - 2 parallel hyperplanes plus 2 in an independent direction (d = b < q - 1)."""
    if not 3 <= d < q - 1:
        raise ValueError(f"configuration needs 3 <= d < q-1; got d={d}, q={q}")
    if n < 2:
        raise ValueError("configuration S needs n >= 2")
    l1, l2 = _directions(n, [dir1, dir2], 2)
    return Arrangement(q, n, (HyperplaneBlock(l1, tuple(range(d - 2))), HyperplaneBlock(l2, (0, 1))))


def config_T(q: int, n: int, d: int, dir1=None, dir2=None, dir3=None) -> Arrangement:
    """b - 2 parallel hyperplanes plus one hyperplane in each of two further directions."""
    if not 3 <= d < q - 1:
        raise ValueError(f"configuration needs 3 <= d < q-1; got d={d}, q={q}")
    if n < 3:
        raise ValueError("configuration T needs n >= 3")
    l1, l2, l3 = _directions(n, [dir1, dir2, dir3], 3)
    return Arrangement(q, n, (HyperplaneBlock(l1, tuple(range(d - 2))),
                              HyperplaneBlock(l2, (0,)), HyperplaneBlock(l3, (0,))))


def config_T_expanded(q: int, n: int, d: int) -> int:
    """N(T) = d q^(n-1) - (2d-3) q^(n-2) + (d-2) q^(n-3), the expanded product formula."""
    return d * q ** (n - 1) - (2 * d - 3) * q ** (n - 2) + (d - 2) * q ** (n - 3)


def config_S_expanded(q: int, n: int, d: int) -> int:
    return d * q ** (n - 1) - (2 * d - 4) * q ** (n - 2)


# --- maximal words -----------------------------------------------------------------

def maximal_codeword(q: int, n: int, d: int, forms: Sequence, w: Sequence[int] | None = None,
                     w_prime: Sequence[int] | None = None, w0: int = 1) -> ReducedPoly:
    """w0 * prod_{i<=a} (1 - (l_i - w_i)^(q-1)) * prod_{j<=b} (l_{a+1} - w'_j).

    ``forms`` lists a + 1 linear directions (a suffice when b = 0).  Shifts
    default to w_i = 0 and w'_j = 0, 1, ..., b-1 in code order.
    """
    spec = field_of_order(q)
    a, b = split_ab(d, q)
    need = a + 1 if b else a
    forms = [f if isinstance(f, AffineForm) else AffineForm(tuple(f)) for f in forms]
    if a + (1 if b else 0) > n:
        raise ValueError(f"d={d} needs {need} independent directions but n={n}")
    if len(forms) < need:
        raise ValueError(f"need {need} directions, got {len(forms)}")
    forms = forms[: a + 1] if b else forms[:max(a, len(forms))][:a + 1]
    if any(f.n != n or f.constant != 0 or not f.is_direction for f in forms):
        raise ValueError("directions must be nonzero linear forms in n variables")
    if not _independent(spec, [f.coefficients for f in forms[:need]]):
        raise ValueError("directions are linearly dependent")
    w = list(w) if w is not None else [0] * a
    w_prime = list(w_prime) if w_prime is not None else list(range(b))
    if len(w) != a:
        raise ValueError(f"need {a} shifts w_i, got {len(w)}")
    if len(w_prime) != b:
        raise ValueError(f"need exactly {b} shifts w'_j, got {len(w_prime)}")
    if len(set(w_prime)) != b:
        raise ValueError("shifts w'_j must be distinct")
    if w0 == 0:
        raise ValueError("w0 must be nonzero")
    one = ReducedPoly.constant(spec, n, 1)
    f = ReducedPoly.constant(spec, n, spec.check(w0))
    for li, wi in zip(forms[:a], w):
        f = multiply(f, one - power(li.shifted(wi, spec).to_poly(spec), q - 1))
    for wj in w_prime:
        f = multiply(f, forms[a].shifted(wj, spec).to_poly(spec))
    return f


# --- norm forms ----------------------------------------------------------------------

@dataclass(frozen=True)
class NormFormSpec:
    """g over GF(p^s) whose conjugate product is a polynomial over GF(p)."""

    ext: ExtensionMap
    g: ReducedPoly
    d_prime: int

    def __post_init__(self) -> None:
        if self.ext.s < 2:
            raise ValueError("extension degree must be at least 2")
        if self.g.spec != self.ext.ext:
            raise ValueError("g must have coefficients in the extension field")
        if self.g.is_zero() or total_degree(self.g) != self.d_prime:
            raise ValueError(f"g must have degree d' = {self.d_prime}")
        # a scalar multiple of a base-field polynomial is not a genuine norm form
        lead = self.g.terms[-1][1]
        inv = self.g.spec.inv(lead)
        if all(self.ext.ext.in_prime_field(self.g.spec.mul(inv, c)) for _, c in self.g.terms):
            raise ValueError("g is a multiple of a polynomial over the base field")

    @property
    def s(self) -> int:
        return self.ext.s

    @property
    def degree(self) -> int:
        return self.s * self.d_prime


def norm_form(spec: NormFormSpec) -> ReducedPoly:
    """prod over the Galois group of the conjugates of g, as a polynomial over GF(p)."""
    ext, base = spec.ext.ext, spec.ext.base
    conj_coeffs = {e: galois_conjugates(spec.ext, c) for e, c in spec.g.terms}
    prod = [((0,) * spec.g.n, 1)]
    for k in range(spec.s):
        factor = [(e, cs[k]) for e, cs in conj_coeffs.items()]
        prod = list(raw_product(ext, prod, factor).items())
    for _, c in prod:
        if not ext.in_prime_field(c):
            raise ValueError("conjugate product has a coefficient outside the base field")
    return reduce(base, spec.g.n, [(e, spec.ext.restrict(c)) for e, c in prod])


def norm_form_family() -> list[NormFormSpec]:
    """Norm forms over GF(2), GF(3), GF(5) with s in {2, 3}, from linear and quadratic g.

    For each product degree d = s d' the smallest two n with d <= n(p-1) are used.
    """
    from .gf import extension

    out = []
    for p, s in itertools.product((2, 3, 5), (2, 3)):
        emap = extension(p, s)
        outside = list(range(p, emap.ext.q))[:2]
        for d_prime in (1, 2):
            n_min = max(2, -(-s * d_prime // (p - 1)))
            for n, om in itertools.product((n_min, n_min + 1), outside):
                if d_prime == 1:
                    raw = {_unit(n, 0): 1, _unit(n, 1): om}  # X1 + om X2
                else:
                    raw = {_unit(n, 0, 2): 1, _unit(n, 1): om, (0,) * n: 1}  # X1^2 + om X2 + 1
                out.append(NormFormSpec(emap, reduce(emap.ext, n, raw), d_prime))
    return out


def _unit(n: int, i: int, k: int = 1) -> tuple[int, ...]:
    return tuple(k if j == i else 0 for j in range(n))
