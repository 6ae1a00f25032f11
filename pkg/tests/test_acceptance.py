"""Acceptance criteria 1-14.

Every comparison is exact (integers or Fractions): the pinned tolerance is
zero throughout.  Each test prints one ``criterion N: PASS|FAIL`` line, and
the lines are repeated in the terminal summary.
"""

from __future__ import annotations

import itertools
import json
import pathlib
import time

import numpy as np

from conftest import ACCEPTANCE_LINES
from grmkit.constructions import (NormFormSpec, arrangement_poly, arrangement_zeros, config_S,
                                  config_T, delsarte_maximal_mask, hyperplane_masks, norm_form,
                                  norm_form_family)
from grmkit.gf import extension
from grmkit.grm import (_w2_table, _w2_tree, affine_dimension, count_zeros_affine, kth_weight,
                        hyperplane_union_bound, min_distance_affine, mlem_bound, nai_gap_check,
                        reduced_monomials, second_weight_affine, split_ab, weil_bounds)
from grmkit.oracle import (GridPoint, _norm_factored_masks, _proj_maximal_structure, all_codewords,
                           default_grid, dimension_rank_oracle, enum_spectrum)
from grmkit.pgrm import (_delta_case_table, count_zeros_proj, delta_ineq, pgrm_params,
                         poly_with_zero_set, proj_dimension, proj_length, proj_min_distance,
                         proj_second_weight_bounds)
from grmkit.poly import reduce

TOLERANCE = 0  # all quantities are exact
SMALL_Q = (2, 3, 4, 5, 7, 8, 9)
FIXTURES = pathlib.Path(__file__).parent / "fixtures"


def report(n: int, ok: bool, detail: str) -> None:
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}"
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert ok, line


def test_criterion_1_affine_min_distance():
    t0 = time.perf_counter()
    bad = []
    for gp in default_grid("affine"):
        w1 = kth_weight(enum_spectrum(gp), 1)
        if w1 != min_distance_affine(*gp.key):
            bad.append((gp.key, w1))
    elapsed = time.perf_counter() - t0
    report(1, not bad and elapsed < 300, f"{len(default_grid('affine'))} grid points, "
           f"mismatches={bad}, {elapsed:.2f}s")


def test_criterion_2_affine_second_weight():
    bad = []
    for gp in default_grid("affine"):
        w2 = kth_weight(enum_spectrum(gp), 2)
        if w2 != second_weight_affine(*gp.key):
            bad.append((gp.key, w2))
    t0 = time.perf_counter()
    cross = [(q, n, d) for q in SMALL_Q for n in range(1, 5) for d in range(1, n * (q - 1))
             if _w2_tree(q, n, d) != _w2_table(q, n, d)]
    elapsed = time.perf_counter() - t0
    report(2, not bad and not cross and elapsed < 1,
           f"enumeration mismatches={bad}, formulation mismatches={cross}, cross-check {elapsed:.3f}s")


def test_criterion_3_delsarte():
    bad = []
    total = 0
    for key in [(3, 2, 2), (4, 2, 2), (2, 3, 2)]:
        q, n, d = key
        w1 = min_distance_affine(q, n, d)
        for w in all_codewords(GridPoint(*key)):
            weight = int(np.count_nonzero(w))
            if weight == 0:
                continue
            total += 1
            if delsarte_maximal_mask(w == 0, q, n, d) != (weight == w1):
                bad.append((key, weight))
    report(3, not bad, f"{total} nonzero codewords classified, misclassified={len(bad)}")


def test_criterion_4_dimension():
    bad = []
    for gp in default_grid("affine", code_valid=False):
        r = dimension_rank_oracle(gp)
        if not affine_dimension(*gp.key) == len(reduced_monomials(*gp.key)) == r:
            bad.append(gp.key)
    for gp in default_grid("projective"):
        if proj_dimension(*gp.key) != dimension_rank_oracle(gp):
            bad.append(("projective",) + gp.key)
    report(4, not bad, f"mismatches={bad}")


def test_criterion_5_lemma_mini():
    low = []
    subsets = 0
    for q, n, d in [(3, 2, 2), (3, 2, 3), (4, 2, 2), (2, 3, 3)]:
        masks = hyperplane_masks(q, n)
        bound = hyperplane_union_bound(q, n, d)
        for combo in itertools.combinations(range(len(masks)), d):
            subsets += 1
            N = int(np.any(masks[list(combo)], axis=0).sum())
            if N < bound:
                low.append(((q, n, d), combo, N))
    report(5, not low, f"{subsets} hyperplane subsets, below bound={len(low)}")


def test_criterion_6_norm_forms():
    e = extension(2, 2)
    f = norm_form(NormFormSpec(e, reduce(e.ext, 2, {(1, 0): 1, (0, 1): 2}), 1))
    example_ok = (f == reduce(e.base, 2, {(2, 0): 1, (1, 1): 1, (0, 2): 1})
                  and count_zeros_affine(f) == 1 and count_zeros_affine(f) < 2)
    fam = norm_form_family()
    bad = []
    for spec in fam:
        g = norm_form(spec)
        q, n, d = spec.ext.base.q, g.n, spec.degree
        N = count_zeros_affine(g)
        mb = mlem_bound(q, n, d)
        a, _ = split_ab(d, q)
        strict = N < mb.generic_bound and (a != 0 or N < mb.a0_bound)
        if not strict:
            bad.append((q, spec.s, n, spec.d_prime, N))
    covers = {spec.ext.base.q for spec in fam} == {2, 3, 5} and {spec.s for spec in fam} == {2, 3}
    report(6, example_ok and len(fam) >= 10 and covers and not bad,
           f"example zeros={count_zeros_affine(f)}, family size={len(fam)}, violations={bad}")


def test_criterion_7_compare1():
    details = []
    ok = True
    for q, n, d in [(5, 2, 2), (7, 2, 3)]:
        hyp = hyperplane_masks(q, n)
        lw_min = min(int(np.any(hyp[list(c)], axis=0).sum())
                     for c in itertools.combinations(range(len(hyp)), d))
        nf = [int(m.sum()) for m in _norm_factored_masks(q, n, d)]
        ok &= q >= d * (d - 1) // 2 and lw_min > max(nf)
        details.append(f"({q},{n},{d}): min union zeros {lw_min} > max norm-factored {max(nf)} "
                       f"over {len(nf)} words")
    report(7, ok, "; ".join(details))


def test_criterion_8_weil():
    fx = json.loads((FIXTURES / "weil.json").read_text())["2"]
    runs = [weil_bounds(2) for _ in range(3)]
    w = runs[0]
    ok = (w.A_exact() == 8 and w.B == 104976 and w.C == 104977 and w.q_min == fx["q_min"]
          and all(r == w for r in runs))
    report(8, ok, f"A={w.A_exact()}, B={w.B}, C={w.C}, q_min={w.q_min} (fixture {fx['q_min']})")


def test_criterion_9_projective_min_distance():
    bad = []
    for gp in default_grid("projective"):
        if enum_spectrum(gp).weights()[0] != proj_min_distance(*gp.key):
            bad.append(gp.key)
    ws = enum_spectrum(GridPoint(3, 2, 2, "projective")).weights()
    b = proj_second_weight_bounds(3, 2, 2)
    ok = not bad and ws == [6, 9, 12] and ws[1] == 9 and b.lower == 6 and b.upper == 9
    report(9, ok, f"mismatches={bad}, weights(3,2,2)={ws}, W2 in [{b.lower}, {b.upper}]")


def test_criterion_10_projective_maximal_structure():
    details = []
    ok = True
    for key in [(2, 2, 2), (3, 2, 2), (2, 2, 3)]:
        q, n, d = key
        w1 = proj_min_distance(q, n, d)
        maximal = bad = 0
        for w in all_codewords(GridPoint(*key, "projective")):
            weight = int(np.count_nonzero(w))
            if weight == 0:
                continue
            structured = _proj_maximal_structure(w, q, n, d)
            maximal += weight == w1
            bad += structured != (weight == w1)
        ok &= bad == 0 and maximal > 0
        details.append(f"{key}: {maximal} maximal, {bad} misclassified")
    report(10, ok, "; ".join(details))


def test_criterion_11_indicator_regime():
    unreachable = {}
    for q, n, d in [(2, 2, 3), (3, 2, 5)]:
        length = proj_length(q, n)
        miss = [N for N in range(length) if count_zeros_proj(poly_with_zero_set(q, n, d, range(N))) != N]
        if miss:
            unreachable[(q, n, d)] = miss
    ws = enum_spectrum(GridPoint(2, 2, 3, "projective")).weights()
    p = pgrm_params(2, 2, 3)
    ok = not unreachable and ws[:2] == [1, 2] and p.min_distance == 1 and p.second_weight_lower == 2
    report(11, ok, f"unreachable zero counts={unreachable}, enumerated weights (2,2,3)={ws[:2]}")


DELTA_ZERO_FAMILIES = {
    "q=3, d=2(n-1)+1": lambda q, n, d: q == 3 and d == 2 * (n - 1) + 1,
    "q=2, a_(d-1)=n-2": lambda q, n, d: q == 2 and d - 1 == n - 2,
    "d=n(q-1)": lambda q, n, d: d == n * (q - 1),
}


def test_criterion_12_gap_inequality():
    negative, family_nonzero, table_mismatch, flagged = [], [], [], []
    for q in SMALL_Q:
        for n in range(2, 5):
            for d in range(2, n * (q - 1) + 1):
                r = delta_ineq(q, n, d)
                if r.direct < 0:
                    negative.append((q, n, d))
                for name, pred in DELTA_ZERO_FAMILIES.items():
                    if pred(q, n, d) and r.direct != 0:
                        (flagged if d == 2 else family_nonzero).append((name, (q, n, d), r.direct))
                if d == 2:
                    if _delta_case_table(q, n, d) != r.direct:
                        flagged.append(("table", (q, n, d)))
                elif not r.agree:
                    table_mismatch.append(((q, n, d), r.direct, r.case_table))
    ok = not negative and not family_nonzero and not table_mismatch
    report(12, ok, f"negative={negative}; zero-family misses (d>=3)={family_nonzero}; "
           f"case-table mismatches at d>=3: {len(table_mismatch)} e.g. {table_mismatch[:3]}; "
           f"flagged d=2 rows={len(flagged)}")


def test_criterion_13_s_t_configurations():
    count_bad, chain_bad = [], []
    for q in (7, 8, 9):
        for n in (2, 3):
            for d in range(3, q - 1):
                S = config_S(q, n, d)
                nS = arrangement_zeros(S)
                if nS != count_zeros_affine(arrangement_poly(S)):
                    count_bad.append(("S", q, n, d))
                nT = None
                if n >= 3:
                    T = config_T(q, n, d)
                    nT = arrangement_zeros(T)
                    if nT != count_zeros_affine(arrangement_poly(T)):
                        count_bad.append(("T", q, n, d))
                if q >= 2 * d - 3:
                    top = q**n - second_weight_affine(q, n, d)
                    if not (nS < top and (nT is None or nT < nS)):
                        chain_bad.append(((q, n, d), nT, nS, top))
    report(13, not count_bad and not chain_bad,
           f"count mismatches={count_bad}; chain violations (N_T, N_S, q^n-W2)={chain_bad}")


def test_criterion_14_nai():
    fails, flagged = [], []
    for q in SMALL_Q:
        for n in range(2, 5):
            for d in range(2, n * (q - 1)):
                chk = nai_gap_check(q, n, d)
                if chk.exceeds:
                    continue
                if q == 2 and d == n - 1:
                    flagged.append((q, n, d))
                else:
                    fails.append((q, n, d))
    report(14, not fails, f"q>=3 failures={fails}; q=2 flagged={flagged}")
