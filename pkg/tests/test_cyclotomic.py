from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypersplit.cyclotomic import CycNumber, cyc_arith, cyc_root, embed
from hypersplit.errors import DivisionByZero, IndexMismatch, NotASubfieldIndex
from hypersplit.intpoly import cyclotomic, poly_mul
from hypersplit.numth import divisors, euler_phi


def test_root_anchors():
    assert cyc_root(4, 2) == -1
    assert cyc_root(3, 0) == 1
    # zeta_12^4 reduced via x^4 - x^2 + 1
    assert cyc_root(12, 4) == cyc_root(12, 2) - 1


def test_arith_anchors():
    assert 1 + cyc_root(3, 1) + cyc_root(3, 2) == 0
    assert cyc_root(8, 1) * cyc_root(8, 1) == cyc_root(8, 2)
    a = 1 + cyc_root(4, 1)
    assert cyc_arith(a, a, "div") == 1


def test_index_mismatch():
    with pytest.raises(IndexMismatch):
        cyc_root(3, 1) + cyc_root(4, 1)


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        cyc_root(4, 1) / CycNumber(4, [0])


def test_embed_anchors():
    assert embed(cyc_root(2, 1), 4) == cyc_root(4, 2)
    assert embed(CycNumber.from_rational(3, 1), 12) == 1
    assert embed(cyc_root(3, 1), 12) == cyc_root(12, 4)
    with pytest.raises(NotASubfieldIndex):
        embed(cyc_root(3, 1), 8)


@settings(max_examples=60, deadline=None)
@given(
    st.sampled_from([3, 4, 5, 8, 12]),
    st.lists(st.integers(-9, 9), min_size=4, max_size=4),
    st.lists(st.integers(-9, 9), min_size=4, max_size=4),
)
def test_mul_div_roundtrip(m, ac, bc):
    a = CycNumber(m, ac)
    b = CycNumber(m, bc)
    if not b.is_zero():
        assert (a * b) / b == a


@settings(max_examples=40, deadline=None)
@given(
    st.sampled_from([(3, 12), (4, 8), (5, 15), (6, 12), (2, 6)]),
    st.lists(st.integers(-5, 5), min_size=3, max_size=3),
    st.lists(st.integers(-5, 5), min_size=3, max_size=3),
)
def test_embed_is_ring_homomorphism(pair, ac, bc):
    m, mt = pair
    a, b = CycNumber(m, ac), CycNumber(m, bc)
    assert embed(a * b, mt) == embed(a, mt) * embed(b, mt)
    assert embed(a + b, mt) == embed(a, mt) + embed(b, mt)


def test_rational_coefficients():
    x = CycNumber(5, [Fraction(1, 2), Fraction(-1, 3)])
    y = x * 6
    assert y == CycNumber(5, [3, -2])


def test_cyclotomic_product_law_up_to_200():
    for m in range(1, 201):
        acc = (1,)
        for d in divisors(m):
            acc = poly_mul(acc, cyclotomic(d))
        assert acc == (-1,) + (0,) * (m - 1) + (1,), m
        assert len(cyclotomic(m)) - 1 == euler_phi(m)


def test_to_complex():
    import mpmath

    assert abs(cyc_root(4, 1).to_complex(12) - 1j) < 1e-12
    assert abs((1 + cyc_root(3, 1) + cyc_root(3, 2)).to_complex(20)) < 1e-19
    v = cyc_root(8, 1).to_complex(25)
    with mpmath.workdps(30):
        want = mpmath.mpc(mpmath.sqrt(2) / 2, mpmath.sqrt(2) / 2)
        assert abs(v - want) < mpmath.mpf(10) ** -24
