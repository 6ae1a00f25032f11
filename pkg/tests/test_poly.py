from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, strategies as st

from grmkit.gf import field_of_order
from grmkit.poly import (ZERO_DEGREE, AffineForm, HomogeneousPoly, ReducedPoly, affine_points,
                         dehomogenize, eval_vector, evaluate, homogenize, interpolate, multiply,
                         poly_from_json, reduce, total_degree, value_table)

F3 = field_of_order(3)


def P(spec, n, raw):
    return reduce(spec, n, raw)


def test_reduce_examples():
    assert P(F3, 1, {(3,): 1}) == P(F3, 1, {(1,): 1})
    assert P(F3, 1, {(2,): 1}).terms == (((2,), 1),)
    assert P(F3, 1, {(4,): 1}) == P(F3, 1, {(2,): 1})


def test_multiply_examples():
    f = P(F3, 1, {(1,): 1, (0,): 2})  # X - 1
    g = P(F3, 1, {(1,): 1, (0,): 1})  # X - 2
    assert multiply(f, g) == P(F3, 1, {(2,): 1, (0,): 2})
    assert multiply(f, ReducedPoly.constant(F3, 1, 1)) == f
    assert (f - f).is_zero()


def test_evaluate_examples():
    f = P(F3, 2, {(1, 1): 1})
    assert evaluate(f, (2, 2)) == 1
    assert evaluate(ReducedPoly.zero(F3, 2), (1, 2)) == 0
    g = P(F3, 1, {(0,): 1, (2,): 2})  # 1 - X^2
    assert [g(x) for x in range(3)] == [1, 0, 0]
    with pytest.raises(ValueError):
        evaluate(f, (1,))


def test_homogenize_examples():
    f = P(F3, 1, {(1,): 1, (0,): 1})
    assert homogenize(f, 1).as_dict() == {(0, 1): 1, (1, 0): 1}
    g = P(F3, 2, {(1, 1): 1})
    assert homogenize(g, 3).as_dict() == {(1, 1, 1): 1}
    F = HomogeneousPoly.build(F3, 2, 2, {(1, 1): 1})
    assert dehomogenize(F, 0) == P(F3, 1, {(1,): 1})
    assert dehomogenize(HomogeneousPoly.build(F3, 2, 4, {(4, 0): 1}), 0) == ReducedPoly.constant(F3, 1, 1)
    F = HomogeneousPoly.build(F3, 2, 5, {(1, 4): 1})
    assert dehomogenize(F, 0) == P(F3, 1, {(2,): 1})


def test_total_degree():
    assert total_degree(ReducedPoly.constant(F3, 2, 1)) == 0
    assert total_degree(P(F3, 2, {(2, 1): 1})) == 3
    assert total_degree(ReducedPoly.zero(F3, 2)) == ZERO_DEGREE


def test_homogeneous_degree_enforced():
    with pytest.raises(ValueError):
        HomogeneousPoly.build(F3, 2, 2, {(1, 0): 1})


def test_affine_points_order():
    pts = affine_points(3, 2)
    assert pts.shape == (9, 2)
    assert pts[:4].tolist() == [[0, 0], [0, 1], [0, 2], [1, 0]]


@st.composite
def reduced_polys(draw, qs=(2, 3, 4, 5)):
    q = draw(st.sampled_from(qs))
    n = draw(st.integers(1, 3))
    spec = field_of_order(q)
    k = draw(st.integers(0, 5))
    raw = {}
    for _ in range(k):
        e = tuple(draw(st.integers(0, 2 * q)) for _ in range(n))
        raw[e] = draw(st.integers(0, q - 1))
    return reduce(spec, n, raw), raw


@given(reduced_polys())
def test_reduction_preserves_function(data):
    f, raw = data
    spec = f.spec
    for pt in affine_points(spec.q, f.n):
        direct = 0
        for e, c in raw.items():
            v = c
            for x, k in zip(pt, e):
                v = spec.mul(v, spec.pow(int(x), k))
            direct = spec.add(direct, v)
        assert evaluate(f, tuple(int(x) for x in pt)) == direct
    assert all(max(e, default=0) <= spec.q - 1 for e, _ in f.terms)


@given(reduced_polys())
def test_interpolation_is_inverse(data):
    f, _ = data
    assert interpolate(f.spec, f.n, value_table(f)) == f


@given(reduced_polys())
def test_homogenize_roundtrip(data):
    f, _ = data
    d = int(total_degree(f)) if not f.is_zero() else 0
    assert dehomogenize(homogenize(f, d + 1), 0) == f


@given(reduced_polys(), reduced_polys())
def test_product_is_pointwise(a, b):
    f, g = a[0], b[0]
    if f.spec != g.spec or f.n != g.n:
        return
    t = f.spec.tables()
    assert (value_table(multiply(f, g)) == t.mul[value_table(f), value_table(g)]).all()
    assert (value_table(f + g) == t.add[value_table(f), value_table(g)]).all()


@given(reduced_polys())
def test_json_roundtrip(data):
    f, _ = data
    assert poly_from_json(f.to_json()) == f


def test_json_errors():
    with pytest.raises(ValueError):
        poly_from_json({"n": 2, "terms": []})
    with pytest.raises(ValueError):
        poly_from_json({"n": 2, "q": 3, "terms": [{"e": [1, 0], "c": 1}, {"e": [1, 1], "c": 1}]},
                       homogeneous=True)


def test_homogeneous_json_roundtrip():
    F = HomogeneousPoly.build(F3, 3, 2, {(1, 1, 0): 2, (0, 0, 2): 1})
    assert poly_from_json(F.to_json(), homogeneous=True) == F


def test_affine_form():
    F4 = field_of_order(4)
    l = AffineForm((1, 2), 3)
    pts = affine_points(4, 2)
    assert (l.values(F4, pts) == eval_vector(l.to_poly(F4), pts)).all()
    assert l.shifted(3, F4).constant == 0
    assert not AffineForm((0, 0)).is_direction


def test_eval_vector_matches_scalar_large_field():
    spec = field_of_order(3**7)  # no dense tables
    f = reduce(spec, 1, {(3,): 5, (0,): 7})
    pts = np.array([[0], [1], [100], [2186]])
    assert eval_vector(f, pts).tolist() == [evaluate(f, (int(p[0]),)) for p in pts]
