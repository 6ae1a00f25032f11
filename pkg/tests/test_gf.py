from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, strategies as st

from grmkit.gf import (_is_irreducible, arith, elements, extension, field_of_order, galois_conjugates,
                       make_field, norm, prime_power, rank, row_reduce)

ORDERS = [2, 3, 4, 5, 7, 8, 9, 16, 25, 27]


def test_prime_fields():
    assert elements(make_field(2, 1)) == [0, 1]
    assert make_field(5, 1).q == 5
    assert elements(make_field(5, 1)) == [0, 1, 2, 3, 4]


def test_gf4_modulus_is_x2_x_1():
    assert make_field(2, 2).modulus == (1, 1, 1)


@pytest.mark.parametrize("q", ORDERS)
def test_modulus_irreducible_and_monic(q):
    F = field_of_order(q)
    assert F.modulus[-1] == 1 and len(F.modulus) == F.m + 1
    assert _is_irreducible(F.modulus, F.p)


def test_examples():
    assert arith(make_field(5), "inv", 2) == 3
    assert arith(make_field(2, 2), "mul", 2, 2) == 3
    assert arith(make_field(3), "pow", 2, 5) == 2
    assert elements(field_of_order(4)) == [0, 1, 2, 3]


def test_errors():
    with pytest.raises(ValueError):
        make_field(4, 1)
    with pytest.raises(ValueError):
        make_field(2, 17)
    with pytest.raises(ValueError):
        make_field(3, 11)  # 3^11 > 2^16
    with pytest.raises(ValueError):
        prime_power(12)
    with pytest.raises(ZeroDivisionError):
        make_field(7).inv(0)
    with pytest.raises(ValueError):
        arith(make_field(3), "div", 1, 1)
    with pytest.raises(ValueError):
        arith(make_field(3), "add", 3, 1)


@st.composite
def field_and_elems(draw, k=3):
    q = draw(st.sampled_from(ORDERS))
    F = field_of_order(q)
    return F, [draw(st.integers(0, q - 1)) for _ in range(k)]


@given(field_and_elems())
def test_field_axioms(data):
    F, (x, y, z) = data
    assert F.add(x, 0) == x and F.mul(x, 1) == x
    assert F.add(x, y) == F.add(y, x) and F.mul(x, y) == F.mul(y, x)
    assert F.add(F.add(x, y), z) == F.add(x, F.add(y, z))
    assert F.mul(F.mul(x, y), z) == F.mul(x, F.mul(y, z))
    assert F.mul(x, F.add(y, z)) == F.add(F.mul(x, y), F.mul(x, z))
    assert F.add(x, F.neg(x)) == 0
    assert F.sub(F.add(x, y), y) == x
    if x:
        assert F.mul(x, F.inv(x)) == 1
        assert F.pow(x, F.q - 1) == 1


@pytest.mark.parametrize("q", [4, 8, 9, 16])
def test_tables_match_scalar(q):
    F = field_of_order(q)
    t = F.tables()
    for x in range(q):
        for y in range(q):
            assert t.mul[x, y] == F._mul_slow(x, y)
            assert t.sub[x, y] == F.sub(x, y)


def test_multiplicative_group_is_cyclic():
    F = field_of_order(9)
    orders = {min(k for k in range(1, 9) if F.pow(x, k) == 1) for x in range(1, 9)}
    assert 8 in orders


def test_conjugates():
    e = extension(2, 2)
    assert galois_conjugates(e, 2) == [2, 3]
    assert galois_conjugates(e, 1) == [1, 1]
    for p, s in [(2, 3), (3, 2), (5, 2)]:
        e = extension(p, s)
        for x in range(e.ext.q):
            assert norm(e, x) < p
            conj = galois_conjugates(e, x)
            assert len(conj) == s
            if x < p:
                assert set(conj) == {x}


def test_restrict_rejects_outside():
    with pytest.raises(ValueError):
        extension(2, 2).restrict(2)


def test_rank():
    F = field_of_order(4)
    assert rank(F, [[1, 2], [2, 3]]) == 1
    assert rank(F, [[1, 0, 1], [0, 1, 1], [1, 1, 0]]) == 2
    assert rank(field_of_order(3), [[1, 0, 1], [0, 1, 1], [1, 1, 0]]) == 3
    M, piv = row_reduce(field_of_order(5), np.eye(3, dtype=int) * 2)
    assert piv == [0, 1, 2] and (M == np.eye(3)).all()
