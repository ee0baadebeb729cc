import random
from fractions import Fraction

import mpmath as mp
import pytest

from hypersplit.classical import (
    classical_reduction,
    classical_split_residual,
    gamma_real,
    mfm_series,
)
from hypersplit.errors import BottomPole, ConstraintViolated, GammaPole, NoConvergence


def test_geometric_series_cases():
    with mp.workdps(40):
        v = mfm_series((Fraction(1, 3),), (Fraction(1, 3),), Fraction(1, 2), 30)
        assert abs(v - 2) < mp.mpf(10) ** -28
        v = mfm_series((1,), (1,), Fraction(1, 3), 30)
        assert abs(v - mp.mpf(3) / 2) < mp.mpf(10) ** -28
        for z in (Fraction(9, 10), Fraction(-4, 5)):
            v = mfm_series((Fraction(2, 7),) * 2, (Fraction(2, 7),) * 2, z, 25)
            assert abs(v - 1 / (1 - mp.mpf(z.numerator) / z.denominator)) < mp.mpf(10) ** -23


def test_against_brute_resummation():
    with mp.workdps(60):
        brute = sum(
            (mp.rf(mp.mpf(1) / 2, k) / mp.rf(mp.mpf(1), k)) ** 2 * mp.mpf(1) / 4**k
            for k in range(500)
        )
        v = mfm_series((Fraction(1, 2),) * 2, (1, 1), Fraction(1, 4), 40)
        assert abs(v - brute) < mp.mpf(10) ** -30


def test_pole_and_convergence_guards():
    with pytest.raises(BottomPole):
        mfm_series((Fraction(1, 2),), (0,), Fraction(1, 2), 20)
    with pytest.raises(NoConvergence):
        mfm_series((Fraction(1, 2),), (Fraction(1, 3),), 2, 20)
    with pytest.raises(NoConvergence):
        # diverges at 1: sum(b) - sum(a) = 1/2 < 1
        mfm_series((Fraction(1, 2),), (1,), 1, 20)


def test_unit_argument_against_gamma_closed_form():
    # order-2 at 1 has the classical Gamma evaluation (bottom slot 1 gives k!)
    with mp.workdps(50):
        a, b, c = Fraction(1, 3), Fraction(1, 5), Fraction(5, 4)
        v = mfm_series((a, b), (1, c), 1, 35)
        want = (
            gamma_real(c, 40)
            * gamma_real(c - a - b, 40)
            / (gamma_real(c - a, 40) * gamma_real(c - b, 40))
        )
        assert abs(v - want) < mp.mpf(10) ** -33


def test_gamma_real_anchors():
    with mp.workdps(40):
        assert abs(gamma_real(Fraction(1, 2), 30) ** 2 - mp.pi) < mp.mpf(10) ** -28
        assert abs(gamma_real(5, 30) - 24) < mp.mpf(10) ** -28
        lhs = gamma_real(Fraction(1, 4), 30) * gamma_real(Fraction(3, 4), 30)
        assert abs(lhs - mp.pi * mp.sqrt(2)) < mp.mpf(10) ** -27
    with pytest.raises(GammaPole):
        gamma_real(-3, 20)


def test_split_residual_anchors():
    with mp.workdps(45):
        r = classical_split_residual((Fraction(1, 3),), (1,), 2, Fraction(1, 5), 30)
        assert abs(r) < mp.mpf(10) ** -25
        r = classical_split_residual(
            (Fraction(1, 4), Fraction(1, 2)), (1, Fraction(2, 3)), 3, Fraction(1, 10), 30
        )
        assert abs(r) < mp.mpf(10) ** -25
        assert abs(classical_split_residual((Fraction(1, 5),), (Fraction(3, 4),), 1, Fraction(1, 5), 30)) == 0


def test_split_residual_grid():
    rng = random.Random(41)
    with mp.workdps(50):
        for _ in range(8):
            n = rng.choice((2, 3, 4))
            m = rng.choice((1, 2, 3))
            def rat():
                d = rng.choice((2, 3, 4, 5, 6, 8, 12))
                return Fraction(rng.randrange(1, 2 * d), d)
            a = tuple(rat() for _ in range(m))
            b = tuple(rat() for _ in range(m))
            z = Fraction(rng.randrange(1, 31), 100)
            r = classical_split_residual(a, b, n, z, 40)
            assert abs(r) < mp.mpf(10) ** -25


@pytest.mark.parametrize(
    "identity,params",
    [
        ("m2", (Fraction(1, 5), Fraction(-7, 10))),
        ("m2", (Fraction(1, 5), Fraction(1, 10))),
        ("m2", (Fraction(2, 5), Fraction(-4, 5))),
        ("m3", (Fraction(1, 10),)),
        ("m3", (Fraction(-1, 12),)),
        ("m4", (Fraction(1, 6), Fraction(-9, 8))),
        ("m4", (Fraction(1, 12), Fraction(1, 16))),
    ],
)
def test_reductions(identity, params):
    lhs, rhs = classical_reduction(identity, params, 30)
    with mp.workdps(45):
        assert abs(lhs - rhs) < mp.mpf(10) ** -20


def test_reduction_constraints():
    with pytest.raises(ConstraintViolated):
        classical_reduction("m2", (Fraction(1, 5), Fraction(1, 2)), 20)
    with pytest.raises(ConstraintViolated):
        classical_reduction("m4", (Fraction(1, 5), Fraction(1, 4)), 20)


def test_pochhammer_multiplication_identity():
    rng = random.Random(31)
    for _ in range(60):
        n = rng.randrange(1, 6)
        k = rng.randrange(0, 31)
        a = Fraction(rng.randrange(-40, 41), rng.randrange(1, 13))
        lhs = Fraction(1)
        for i in range(n * k):
            lhs *= a + i
        rhs = Fraction(n) ** (n * k)
        for l in range(n):
            for i in range(k):
                rhs *= Fraction(a + l, n) + i
        assert lhs == rhs
