from __future__ import annotations

import itertools

import numpy as np
import pytest

from grmkit.constructions import contained_hyperplanes as affine_contained
from grmkit.gf import field_of_order
from grmkit.pgrm import (_delta_case_table, chart_indices, contains_proj_hyperplane, count_zeros_proj,
                         delta_ineq, indicator_poly, normalize, pgrm_params, point_index,
                         poly_with_zero_set, proj_dimension, proj_hyperplane_masks, proj_length,
                         proj_points, proj_second_weight_bounds,
                         proj_values, weight_proj)
from grmkit.poly import HomogeneousPoly, affine_points, homogenize, reduce

F3 = field_of_order(3)
SMALL_Q = (2, 3, 4, 5, 7, 8, 9)


def H(spec, n1, d, raw):
    return HomogeneousPoly.build(spec, n1, d, raw)


def test_points_examples():
    assert [p.coords for p in proj_points(2, 1)] == [(1, 0), (1, 1), (0, 1)]
    assert len(proj_points(3, 2)) == 13


@pytest.mark.parametrize("q,n", [(2, 2), (3, 2), (4, 2), (2, 3), (5, 1)])
def test_points_normal_form_unique(q, n):
    spec = field_of_order(q)
    pts = proj_points(q, n)
    assert len(pts) == proj_length(q, n)
    hits = {}
    for v in itertools.product(range(q), repeat=n + 1):
        if any(v):
            hits.setdefault(point_index(spec, n, v), 0)
            hits[point_index(spec, n, v)] += 1
    assert sorted(hits) == list(range(len(pts))) and set(hits.values()) == {q - 1}
    for p in pts:
        assert p.coords[p.pivot] == 1 and not any(p.coords[:p.pivot])


def test_params_examples():
    p = pgrm_params(3, 2, 2)
    assert (p.length, p.min_distance, p.second_weight_lower, p.second_weight_upper) == (13, 6, 6, 9)
    assert pgrm_params(4, 1, 2).min_distance == 3
    assert pgrm_params(2, 2, 2).dimension == 6
    p = pgrm_params(2, 2, 3)
    assert (p.min_distance, p.second_weight_lower, p.second_weight_upper) == (1, 2, 2)
    assert pgrm_params(3, 2, 1).second_weight_lower is None
    with pytest.raises(ValueError):
        pgrm_params(3, 2, 0)


@pytest.mark.parametrize("q,n,d", [(q, n, d) for q in SMALL_Q for n in (1, 2, 3)
                                   for d in range(1, n * (q - 1) + 2)])
def test_params_invariants(q, n, d):
    p = pgrm_params(q, n, d)
    assert 0 < p.min_distance <= p.length
    if p.second_weight_lower is not None:
        assert p.min_distance <= p.second_weight_lower <= p.second_weight_upper <= p.length


def test_zero_count_examples():
    assert count_zeros_proj(H(F3, 3, 2, {(1, 1, 0): 1})) == 7
    assert weight_proj(H(F3, 3, 2, {(1, 1, 0): 1})) == 6
    assert count_zeros_proj(H(F3, 3, 1, {(1, 0, 0): 1})) == 4
    conic = H(F3, 3, 2, {(1, 0, 1): 1, (0, 2, 0): 2})
    assert count_zeros_proj(conic) == 4 and weight_proj(conic) == 9
    # X0 X1 (X0 + X1) vanishes at every point of the projective line over GF(2)
    F2 = field_of_order(2)
    with pytest.raises(ValueError):
        count_zeros_proj(H(F2, 2, 3, {(2, 1): 1, (1, 2): 1}))


def test_indicator_examples():
    vals = proj_values(indicator_poly(2, 2, 3, (1, 0, 0)))
    assert vals[0] != 0 and not vals[1:].any()
    for i, w in enumerate(proj_points(3, 2)):
        v = proj_values(indicator_poly(3, 2, 5, w))
        assert np.count_nonzero(v == 0) == 12 and v[i] != 0
    with pytest.raises(ValueError):
        indicator_poly(3, 2, 4, (1, 0, 0))


def test_poly_with_zero_set_examples():
    assert count_zeros_proj(poly_with_zero_set(2, 2, 3, [])) == 0
    assert weight_proj(poly_with_zero_set(2, 2, 3, range(5))) == 2
    assert weight_proj(poly_with_zero_set(2, 2, 3, range(6))) == 1
    with pytest.raises(ValueError):
        poly_with_zero_set(2, 2, 3, range(7))


def test_contains_hyperplane():
    G = H(F3, 3, 1, {(0, 1, 0): 1, (0, 0, 1): 1})
    F = H(F3, 3, 1, {(1, 0, 0): 1}) * G
    h = contains_proj_hyperplane(F)
    assert h is not None
    conic = H(F3, 3, 2, {(1, 0, 1): 1, (0, 2, 0): 2})
    assert contains_proj_hyperplane(conic) is None


def test_hyperplane_masks_sizes():
    m = proj_hyperplane_masks(3, 2)
    assert m.shape == (13, 13) and (m.sum(axis=1) == 4).all()


@pytest.mark.parametrize("q", [2, 3, 4])
def test_affine_hyperplane_lifts(q):
    # an affine word vanishing on a hyperplane, times a linear form, still gives a
    # projective hypersurface containing a projective hyperplane
    spec = field_of_order(q)
    f = reduce(spec, 2, {(1, 0): 1, (0, 1): 1, (0, 0): 1})
    g = reduce(spec, 2, {(1, 1): 1, (0, 0): 1})
    fg = f * g
    assert len(affine_contained(q, 2, (np.asarray(
        [fg(int(a), int(b)) for a, b in affine_points(q, 2)]) == 0))) > 0
    F = homogenize(fg, 3)
    assert contains_proj_hyperplane(F) is not None


@pytest.mark.parametrize("normal", [(1, 0, 0), (0, 1, 0), (1, 2, 1), (0, 1, 1)])
def test_chart_is_bijection_preserving_lines(normal):
    q, n = 3, 2
    idx = chart_indices(q, n, normal)
    on_h = proj_hyperplane_masks(q, n)[point_index(F3, n, normal)]
    assert len(set(idx.tolist())) == q**n and not on_h[idx].any()
    # affine lines map to projective lines minus their point at infinity
    pm = proj_hyperplane_masks(q, n)
    from grmkit.constructions import hyperplane_masks
    for line in hyperplane_masks(q, n):
        image = np.zeros(proj_length(q, n), bool)
        image[idx[line]] = True
        assert any(((row & ~on_h) == image).all() for row in pm)


def test_second_weight_bounds():
    b = proj_second_weight_bounds(3, 2, 2)
    assert (b.lower, b.upper) == (6, 9)
    assert proj_second_weight_bounds(3, 2, 2, w3_affine=6).refined_lower == 8
    assert proj_second_weight_bounds(3, 2, 2, w3_affine=20).refined_lower == 9
    with pytest.raises(ValueError):
        proj_second_weight_bounds(3, 1, 2)


def test_delta_examples():
    r = delta_ineq(4, 2, 2)
    assert r.direct == 4 and r.case_table is None
    assert _delta_case_table(4, 2, 2) == 4
    r = delta_ineq(3, 2, 2)
    assert r.direct == 3 and r.case_table is None and _delta_case_table(3, 2, 2) == 2
    # the printed q = 2 row gives 0; the closed forms give 1 (binary RM(n-1, n) has W2 = 4)
    r = delta_ineq(2, 3, 3)
    assert r.direct == 1 and r.case_table == 0 and r.agree is False


@pytest.mark.parametrize("q,n", [(q, n) for q in SMALL_Q for n in (2, 3, 4)])
def test_delta_nonnegative(q, n):
    for d in range(2, n * (q - 1) + 1):
        assert delta_ineq(q, n, d).direct >= 0


def test_delta_zero_families_where_they_hold():
    for n in (2, 3, 4):
        assert delta_ineq(3, n, 2 * (n - 1) + 1).direct == 0
        for q in (3, 4, 5, 7, 8, 9):
            assert delta_ineq(q, n, n * (q - 1)).direct == 0
    assert delta_ineq(2, 4, 3).direct == 0


def test_normalize():
    assert normalize(F3, (0, 2, 1)) == (0, 1, 2)
    with pytest.raises(ValueError):
        normalize(F3, (0, 0, 0))


@pytest.mark.parametrize("q,n,d", [(2, 2, 2), (3, 2, 2), (2, 2, 3)])
def test_proj_dimension_small(q, n, d):
    from grmkit.oracle import GridPoint, dimension_rank_oracle
    assert proj_dimension(q, n, d) == dimension_rank_oracle(GridPoint(q, n, d, "projective"))
