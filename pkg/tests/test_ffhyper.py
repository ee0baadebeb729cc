import random
from fractions import Fraction

import pytest

from hypersplit.errors import (
    DegenerateCharacters,
    DomainViolation,
    NotDefinedOverQ,
)
from hypersplit.ffhyper import (
    FFHyperParams,
    derive_defined_over_Q,
    ff_hyper,
    ff_hyper_over_Q,
    ff_reduction,
    ff_split_residual,
)
from hypersplit.ffield import make_field

HALF = Fraction(1, 2)


def phi_exp(q):
    return (q - 1) // 2


@pytest.mark.parametrize(
    "q,want", [(7, -1), (13, 1), (11, -1), (17, 1), (19, -1)]
)
def test_quadratic_pair_at_unit_argument(q, want):
    F = make_field(q)
    params = FFHyperParams(F, (phi_exp(q),) * 2, (0, 0))
    assert ff_hyper(params, F.one) == want


def test_zero_argument_vanishes():
    F = make_field(5)
    assert ff_hyper(FFHyperParams(F, (2, 2), (0, 0)), F.zero).is_zero()


def test_value_is_rational_here():
    F = make_field(13)
    v = ff_hyper(FFHyperParams(F, (3, 9), (0, 6)), F.one)
    assert v.is_rational()


def test_pair_permutation_invariance():
    # permuting (top_i, bottom_i) pairs jointly fixes the value
    F = make_field(13)
    lam = F.generator_power(5)
    tops, bottoms = (1, 4, 7), (2, 0, 9)
    base = ff_hyper(FFHyperParams(F, tops, bottoms), lam)
    for perm in [(1, 0, 2), (2, 1, 0), (1, 2, 0)]:
        v = ff_hyper(
            FFHyperParams(
                F, tuple(tops[i] for i in perm), tuple(bottoms[i] for i in perm)
            ),
            lam,
        )
        assert v == base


def test_split_residual_anchor():
    F5 = make_field(5)
    assert ff_split_residual(F5, 2, (1, 3), (0, 0), F5.one).is_zero()


@pytest.mark.parametrize("p,r", [(13, 1), (3, 2), (5, 2), (17, 1)])
def test_split_residual_random(p, r):
    F = make_field(p, r)
    q = F.q
    rng = random.Random(f"{p}^{r}")
    from hypersplit.numth import divisors

    for n in divisors(q - 1):
        if n > 6:
            continue
        for _ in range(6):
            m = rng.choice((1, 2))
            top = tuple(rng.randrange(q - 1) for _ in range(m))
            bottom = tuple(rng.randrange(q - 1) for _ in range(m))
            lam = F.from_code(rng.randrange(q))
            assert ff_split_residual(F, n, top, bottom, lam).is_zero()


def test_converse_vanishing_exhaustive_q13():
    F = make_field(13)
    for n in (2, 3, 4, 6):
        for code in range(1, 13):
            lam = F.from_code(code)
            if F.dlog(lam) % n == 0:
                continue
            assert ff_split_residual(F, n, (2,), (5,), lam, converse=True).is_zero()


def test_defined_over_q_examples():
    d1 = derive_defined_over_Q([HALF, HALF], [0, 0])
    assert sorted(d1.p_exps) == [2, 2]
    assert sorted(d1.q_exps) == [1, 1, 1, 1]
    assert d1.scale == 16 and d1.delta == 2

    d2 = derive_defined_over_Q([Fraction(1, 4), Fraction(3, 4)], [0, HALF])
    assert sorted(d2.p_exps) == [4] and sorted(d2.q_exps) == [2, 2]
    assert d2.scale == 16 and d2.delta == 2

    d3 = derive_defined_over_Q(
        [Fraction(1, 8), Fraction(5, 8), Fraction(3, 8), Fraction(7, 8)],
        [Fraction(1, 6), Fraction(2, 3), Fraction(1, 3), Fraction(5, 6)],
    )
    assert sorted(d3.p_exps) == [2, 8] and sorted(d3.q_exps) == [4, 6]
    assert d3.scale == Fraction(4096, 729)


def test_not_defined_over_q():
    with pytest.raises(NotDefinedOverQ):
        derive_defined_over_Q([Fraction(1, 4)], [0])
    with pytest.raises(NotDefinedOverQ):
        # shared parameter between top and bottom
        derive_defined_over_Q([HALF, HALF], [HALF, 0])


def test_over_q_route_matches_definition():
    d1 = derive_defined_over_Q([HALF, HALF], [0, 0])
    F7 = make_field(7)
    assert ff_hyper_over_Q(F7, d1, F7.one) == -1
    F13 = make_field(13)
    for code in range(1, 13):
        lam = F13.from_code(code)
        direct = ff_hyper(FFHyperParams(F13, (6, 6), (0, 0)), lam)
        assert ff_hyper_over_Q(F13, d1, lam) == direct


def test_over_q_with_extras():
    dm = derive_defined_over_Q([HALF], [0])
    F13 = make_field(13)
    for code in range(1, 13):
        lam = F13.from_code(code)
        v1 = ff_hyper_over_Q(F13, dm, lam, extra_top=(HALF,), extra_bottom=(0,))
        v2 = ff_hyper(FFHyperParams(F13, (6, 6), (0, 0)), lam)
        assert v1 == v2


def test_over_q_congruence_guard():
    d2 = derive_defined_over_Q([Fraction(1, 4), Fraction(3, 4)], [0, HALF])
    F7 = make_field(7)
    with pytest.raises(DomainViolation):
        # extras need q = 1 mod 4
        ff_hyper_over_Q(F7, d2, F7.one, extra_top=(Fraction(1, 4),), extra_bottom=(0,))


@pytest.mark.parametrize(
    "identity,q,args",
    [
        ("m2", 7, (1, 2)),
        ("m2", 13, (1, 2)),
        ("m2", 9, (1, 1)),
        ("m3", 13, (1,)),
        ("m3", 17, (1,)),
        ("m3", 25, (2,)),
        ("m4", 13, (1, 1)),
        ("m4", 17, (1, 1)),
    ],
)
def test_reduction_identities(identity, q, args):
    from hypersplit.numth import factorize

    (p, r), = factorize(q)
    F = make_field(p, r)
    lhs, rhs = ff_reduction(identity, F, *args)
    assert (lhs - rhs).is_zero()


def test_reduction_degenerate_guard():
    F = make_field(7)
    with pytest.raises(DegenerateCharacters):
        ff_reduction("m2", F, 3, 1)  # A^2 trivial: 2*3 = 6 = q-1
