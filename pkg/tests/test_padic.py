import random
from fractions import Fraction
from math import floor, prod

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypersplit.errors import (
    NotIntegralAtF,
    NotPIntegral,
    PreconditionViolated,
    WorkBoundExceeded,
)
from hypersplit.ffield import make_field
from hypersplit.padic import (
    PAdic,
    ZqContext,
    digit_expansion,
    gamma_p,
    gamma_p_residue,
    gamma_product_residual,
    gamma_reflection_residual,
    padic_arith,
    parity_sums,
    teichmuller,
)


def test_gamma_anchors():
    assert gamma_p(0, 5, 4).residue(4) == 1
    assert gamma_p(3, 5, 4).lift() == -2
    g = gamma_p(Fraction(1, 2), 5, 5)
    assert (g * g).lift() == -1  # reflection with representative 3


def test_gamma_matches_finite_products():
    M = 5
    for p in (3, 7, 11):
        for n in range(1, 2001):
            want = (-1) ** n * prod(j for j in range(1, n) if j % p) % p**M
            assert gamma_p_residue(Fraction(n), p, M) == want


def test_gamma_work_bound():
    with pytest.raises(WorkBoundExceeded):
        gamma_p_residue(Fraction(1, 2), 13, 9)


def test_gamma_requires_p_integrality():
    with pytest.raises(NotPIntegral):
        gamma_p(Fraction(1, 5), 5, 4)


def test_padic_arithmetic():
    x = PAdic.from_rational(6, 5, 6)
    assert x.digits() == (1, 1, 0, 0, 0, 0)
    geo = padic_arith(
        PAdic.from_rational(1, 5, 6), PAdic.from_rational(-4, 5, 6), "div"
    )
    assert geo.digits() == (1, 1, 1, 1, 1, 1)  # 1/(1-5) = 1 + 5 + 5^2 + ...
    assert padic_arith(x, x, "sub").is_zero()
    third = PAdic.from_rational(Fraction(1, 3), 7, 5)
    assert (third * PAdic.from_rational(3, 7, 5)).lift() == 1


def test_padic_negative_valuation():
    x = PAdic.from_rational(Fraction(2, 5), 5, 4)
    assert x.val == -1
    y = x + PAdic.from_rational(Fraction(3, 5), 5, 4)
    assert y.lift() == 1


@settings(max_examples=60, deadline=None)
@given(
    st.sampled_from([3, 5, 7]),
    st.fractions(min_value=-30, max_value=30, max_denominator=20),
    st.fractions(min_value=-30, max_value=30, max_denominator=20),
)
def test_padic_ring_laws(p, a, b):
    if a.denominator % p == 0 or b.denominator % p == 0:
        return
    xa = PAdic.from_rational(a, p, 8)
    xb = PAdic.from_rational(b, p, 8)
    want = PAdic.from_rational(a + b, p, 8)
    assert (xa + xb).same(want)
    want = PAdic.from_rational(a * b, p, 8)
    assert (xa * xb).same(want)


def test_digit_expansion_anchors():
    de = digit_expansion(Fraction(1, 3), 5, 2)
    assert de.z == (1, 3)  # z_1 = 1, z_2 = 3 (units digit is z_f)
    assert de.frac_rep(1) == 4
    de2 = digit_expansion(Fraction(1, 2), 5, 1)
    assert de2.z == (2,) and de2.frac_rep(0) == 3
    de3 = digit_expansion(Fraction(1, 2), 5, 2)
    assert de3.z == (2, 2)  # non-minimal f gives the periodic digits
    with pytest.raises(NotIntegralAtF):
        digit_expansion(Fraction(1, 7), 5, 2)


def test_digit_expansion_derived_quantities():
    rng = random.Random(5)
    for _ in range(60):
        p = rng.choice((3, 5, 7, 11))
        den = rng.choice((2, 3, 4, 6, 7, 8, 12, 13))
        if den % p == 0:
            continue
        a = Fraction(rng.randrange(1, den), den)
        f = 1
        while ((p**f - 1) * a).denominator != 1:
            f += 1
        de = digit_expansion(a, p, f)
        for j in range(f):
            x = Fraction(a * p**j) % 1
            rep = x.numerator * pow(x.denominator, -1, p) % p
            assert de.frac_rep(j) == (p if rep == 0 else rep)
        for j in range(1, f):
            assert de.floor_pow(j) == floor(a * p**j)


def test_parity_sum_anchors():
    lhs, rhs = parity_sums("frac_rep_sum", a=Fraction(1, 3), p=5, r=1, f=2)
    assert lhs == rhs == 2
    assert parity_sums("floor_pair_sum", l=5, p=3, r=1, j=1) == 0
    with pytest.raises(PreconditionViolated):
        parity_sums("floor_pair_sum", l=2, p=5, r=1, j=0)


def test_parity_sums_seeded():
    rng = random.Random(17)
    done = 0
    while done < 80:
        p = rng.choice((3, 5, 7, 11, 13))
        den = rng.choice((2, 3, 4, 6, 7, 8, 11, 12))
        if den % p == 0:
            continue
        a = Fraction(rng.randrange(1, den), den)
        f = 1
        while ((p**f - 1) * a).denominator != 1:
            f += 1
        r = rng.randrange(1, 4)
        lhs, rhs = parity_sums("frac_rep_sum", a=a, p=p, r=r, f=f)
        assert lhs == rhs, (a, p, r, f)
        done += 1
    done = 0
    while done < 80:
        p = rng.choice((3, 5, 7))
        l = rng.choice((4, 5, 7, 8, 9, 11))
        if l % p == 0 or p**1 % l == 1:
            continue
        r = rng.randrange(1, 3)
        if p**r % l == 1:
            continue
        j = rng.randrange(0, 2 * p**r)
        assert parity_sums("floor_pair_sum", l=l, p=p, r=r, j=j) == 0
        done += 1


def test_reflection_randomized():
    rng = random.Random(3)
    done = 0
    while done < 50:
        p = rng.choice((3, 5, 7, 11, 13))
        m = rng.randrange(4, 9)
        if p**m > 10**8:
            continue
        den = rng.choice((1, 2, 3, 4, 6, 7, 8, 12))
        if den % p == 0:
            continue
        x = Fraction(rng.randrange(-20, 20), den)
        assert gamma_reflection_residual(x, p, m) == 0
        done += 1


@pytest.mark.parametrize("p", [5, 7, 11, 13])
@pytest.mark.parametrize("r", [1, 2])
def test_multiplication_formula(p, r):
    q = p**r
    for n in (2, 3, 4):
        if n % p == 0:
            continue
        for c in range(q - 1):
            assert gamma_product_residual(n, Fraction(c, q - 1), p, r, 4) == 0


def test_teichmuller():
    for p in (5, 7, 13):
        for u in range(1, p):
            t = teichmuller(u, p, 6)
            assert t % p == u
            assert pow(t, p - 1, p**6) == 1


def test_zq_teichmuller_generator():
    for p, r in [(3, 2), (5, 2), (13, 2)]:
        F = make_field(p, r)
        zq = ZqContext(F, 5)
        om = zq.teichmuller_generator()
        assert zq.pow(om, F.q - 1) == zq.scalar(1)
        assert tuple(c % p for c in om) == F.generator.coeffs


def test_hermite_identity():
    rng = random.Random(9)
    for _ in range(200):
        m = rng.randrange(1, 13)
        x = Fraction(rng.randrange(-200, 201), rng.randrange(1, 60))
        assert floor(m * x) == sum(floor(x + Fraction(h, m)) for h in range(m))
