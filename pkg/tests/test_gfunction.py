import itertools
import random
from fractions import Fraction

import pytest

from hypersplit.errors import (
    DomainViolation,
    EvenPrime,
    NotDefinedOverQ,
    NotPIntegral,
    OrderDoesNotDivide,
)
from hypersplit.ffield import make_field
from hypersplit.gfunction import (
    GParams,
    fg_consistency,
    g_eval,
    g_route_residual,
    g_split_residual,
    raw_sum,
)

H = Fraction(1, 2)
Q = Fraction(1, 4)
HALF_PAIR = GParams((H, H), (1, 1))

FAMILIES = [
    ((H, H), (Fraction(1), Fraction(1))),
    ((Q, 3 * Q), (Fraction(1), H)),
    (
        (Fraction(1, 8), Fraction(5, 8), Fraction(3, 8), Fraction(7, 8)),
        (Fraction(1, 6), Fraction(2, 3), Fraction(1, 3), Fraction(5, 6)),
    ),
]


@pytest.mark.parametrize(
    "p,r,want", [(7, 1, -1), (13, 1, 1), (11, 1, -1), (3, 2, 1), (5, 2, 1)]
)
def test_order2_pair_unit_values(p, r, want):
    F = make_field(p, r)
    assert g_eval(HALF_PAIR, 1, F, 5).lift() == want


def test_known_values():
    F5, F7, F3 = make_field(5), make_field(7), make_field(3)
    assert g_eval(HALF_PAIR, -1, F5, 5).lift() == -2
    six = GParams((Q, 3 * Q) * 3, (1, H) * 3)
    assert g_eval(six, 1, F7, 5).lift() == -7
    assert g_eval(GParams((H,) * 3, (1,) * 3), -1, F3, 5).lift() == -1


def test_zero_argument():
    F = make_field(7)
    assert raw_sum(HALF_PAIR, 0, F, 5).is_zero()


def test_even_prime_rejected():
    F = make_field(2, 3)
    with pytest.raises(EvenPrime):
        g_eval(GParams((Fraction(1),), (Fraction(1),)), 1, F, 4)


def test_p_integrality_checked():
    F = make_field(3)
    with pytest.raises(NotPIntegral):
        g_eval(GParams((Fraction(1, 3),), (1,)), 1, F, 4)


def test_fractional_shift_and_permutation_invariance():
    F = make_field(11)
    rng = random.Random(23)
    for _ in range(25):
        m = rng.choice((1, 2, 3))
        def rat():
            d = rng.choice((2, 3, 4, 5, 6, 8))
            return Fraction(rng.randrange(2 * d), d)
        a = tuple(rat() for _ in range(m))
        b = tuple(rat() for _ in range(m))
        lam = F.generator_power(rng.randrange(10))
        base = raw_sum(GParams(a, b), lam, F, 4)
        shifted = tuple(x + rng.randrange(-3, 4) for x in a)
        assert (base - raw_sum(GParams(shifted, b), lam, F, 4)).is_zero()
        perm = rng.sample(range(m), m)
        permuted = GParams(tuple(a[i] for i in perm), b)
        assert (base - raw_sum(permuted, lam, F, 4)).is_zero()


def test_route_agreement_all_families():
    for (a, b), p, r in itertools.product(FAMILIES, (3, 5, 7, 11, 13), (1, 2)):
        params = GParams(a, b)
        if any(x.denominator % p == 0 for x in params.a + params.b):
            continue
        F = make_field(p, r)
        for code in range(1, min(F.q, 8)):
            lam = F.from_code(code)
            if lam.is_zero():
                continue
            assert g_route_residual(params, lam, F, 5).is_zero(), (a, p, r, code)


def test_split_residuals():
    F13 = make_field(13)
    assert g_split_residual(GParams((Q,), (1,)), 2, 1, F13, 5).is_zero()
    assert g_split_residual(
        GParams((Q, Q), (1, H)), 2, F13.from_code(5), F13, 5
    ).is_zero()
    assert g_split_residual(
        GParams((Fraction(1, 6),), (1,)), 3, F13.from_code(2), F13, 5
    ).is_zero()
    assert g_split_residual(
        GParams((Fraction(1, 8),), (1,)), 4, F13.from_code(7), F13, 5
    ).is_zero()
    F9 = make_field(3, 2)
    assert g_split_residual(GParams((Q, Q), (1, H)), 2, F9.generator, F9, 5).is_zero()
    F169 = make_field(13, 2)
    assert g_split_residual(
        GParams((Fraction(1, 8),), (1,)), 4, F169.generator, F169, 5
    ).is_zero()


def test_split_requires_congruence_and_decomposition():
    F7 = make_field(7)
    with pytest.raises(OrderDoesNotDivide):
        g_split_residual(GParams((Q,), (1,)), 4, 1, F7, 5)
    F13 = make_field(13)
    with pytest.raises(NotDefinedOverQ):
        g_split_residual(GParams((Fraction(1, 5),), (Fraction(1, 7),)), 2, 1, F13, 5)


def test_converse_vanishing():
    F13 = make_field(13)
    for code in range(1, 13):
        lam = F13.from_code(code)
        if F13.dlog(lam) % 2:
            assert g_split_residual(
                GParams((Q,), (1,)), 2, lam, F13, 5, converse=True
            ).is_zero()
        if F13.dlog(lam) % 3:
            # no defined-over-Q hypothesis in converse mode
            assert g_split_residual(
                GParams((Fraction(1, 5),), (Fraction(1, 7),)), 3, lam, F13, 5,
                converse=True,
            ).is_zero()


def test_bridge_to_finite_field_values():
    F13, F5, F17 = make_field(13), make_field(5), make_field(17)
    for lam in (1, 2, -1):
        assert fg_consistency(HALF_PAIR, lam, F13, 5).is_zero()
    assert fg_consistency(GParams((H,), (1,)), 1, F5, 5).is_zero()
    assert fg_consistency(GParams((H,) * 3, (1,) * 3), -1, F17, 5).is_zero()


def test_bridge_guards():
    F7 = make_field(7)
    with pytest.raises(DomainViolation):
        fg_consistency(GParams((Q,), (1,)), 1, F7, 5)  # needs q = 1 mod 4
    F13 = make_field(13)
    with pytest.raises(DomainViolation):
        fg_consistency(HALF_PAIR, 0, F13, 5)
