from fractions import Fraction

import pytest

from hypersplit.errors import BadReduction, DegenerateCurve, NonIntegralLeadingPower, SmallPrime
from hypersplit.numth import is_prime
from hypersplit.oracles import (
    ETA_WEIGHT2_LEVEL32,
    ETA_WEIGHT3_LEVEL16,
    ETA_WEIGHT3_LEVEL32,
    ETA_WEIGHT4_LEVEL8,
    EllipticCurve,
    EtaQuotient,
    cm_weight3_coefficient,
    curve_builder,
    ec_trace,
    eta_coefficients,
    has_good_reduction,
    hecke_prime_square,
    rep_quadratic,
)


def test_trace_anchors():
    assert ec_trace(curve_builder("mccarthy_ab", 1, 1), 5) == -3
    assert ec_trace(EllipticCurve(0, -1, 0), 5) == -2


def test_trace_guards():
    E = curve_builder("mccarthy_ab", 1, 1)
    with pytest.raises(SmallPrime):
        ec_trace(E, 3)
    with pytest.raises(BadReduction):
        ec_trace(E, 31)  # discriminant of x^3 + x + 1 is -31
    with pytest.raises(BadReduction):
        ec_trace(curve_builder("ono_t", Fraction(7, 2)), 7)


def test_curve_builders():
    E = curve_builder("ono_t", 8)
    assert (E.c2, E.c1, E.c0) == (-64, -2048, 131072)
    with pytest.raises(DegenerateCurve):
        curve_builder("ono_t", 4)
    with pytest.raises(DegenerateCurve):
        curve_builder("mccarthy_ab", 0, 1)


def test_hasse_bound_exhaustive():
    for a, b in [(1, 1), (2, 3), (-1, 2), (5, -7)]:
        E = curve_builder("mccarthy_ab", a, b)
        for p in range(5, 102):
            if is_prime(p) and has_good_reduction(E, p):
                ap = ec_trace(E, p)
                assert ap * ap <= 4 * p


def test_eta_anchors():
    q32 = eta_coefficients(ETA_WEIGHT2_LEVEL32, 12)
    assert q32.a(1) == 1 and q32.a(5) == -2
    q16 = eta_coefficients(ETA_WEIGHT3_LEVEL16, 12)
    assert q16.a(5) == -6
    q8 = eta_coefficients(ETA_WEIGHT4_LEVEL8, 12)
    assert q8.a(3) == -4
    with pytest.raises(NonIntegralLeadingPower):
        eta_coefficients(EtaQuotient(((4, 2),)), 10)


def test_eta_weight2_matches_point_counts():
    # both give coefficients of the same conductor-32 object
    q32 = eta_coefficients(ETA_WEIGHT2_LEVEL32, 102)
    curve = EllipticCurve(0, -1, 0)
    for p in range(5, 102):
        if is_prime(p):
            assert q32.a(p) == ec_trace(curve, p)


def test_eta_negative_exponent_inverse():
    # eta(z)^2/eta(z)^2-type cancellation through the series inverse
    quot = EtaQuotient(((2, 4), (2, 2), (8, 2), (2, -2)))
    direct = eta_coefficients(EtaQuotient(((2, 4), (8, 2))), 40)
    assert eta_coefficients(quot, 40).coeffs == direct.coeffs


def test_rep_quadratic_anchors():
    assert rep_quadratic(13, 1, x_mod=(1, 4)) == (-3, 2)
    assert rep_quadratic(11, 2) == (3, 1)
    assert rep_quadratic(7, 1) is None
    assert rep_quadratic(25, 1, x_mod=(1, 4), avoid_p=5) == (-3, 4)
    x, y = rep_quadratic(49, 1, x_mod=(1, 4))
    assert (x, y) == (-7, 0)


def test_rep_quadratic_defining_equation():
    for q in range(2, 200):
        for b in (1, 2, 3, 7):
            rep = rep_quadratic(q, b)
            if rep is not None:
                x, y = rep
                assert x * x + b * y * y == q


def test_hecke_prime_square():
    assert hecke_prime_square(0, 7, 2, 1) == -7
    assert hecke_prime_square(2, 5, 2, 1) == -1
    assert hecke_prime_square(3, 5, 3, 0) == 9


def test_weight3_companion():
    assert cm_weight3_coefficient(7, 1) == 0
    assert cm_weight3_coefficient(11, 1) == 0
    assert cm_weight3_coefficient(5, 1) == 2
    assert cm_weight3_coefficient(13, 1) == -14
    assert cm_weight3_coefficient(13, -1) == 14
    # matches the defining eta expansion
    exp = eta_coefficients(ETA_WEIGHT3_LEVEL32, 40)
    for p in (5, 13, 17, 29, 37):
        assert cm_weight3_coefficient(p, 1) == exp.a(p)
