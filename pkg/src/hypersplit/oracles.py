"""Independent arithmetic ground truth for the modular-form identities.

Frobenius traces come from naive point counts over F_p, modular form
coefficients from exact eta-product q-expansions, and the CM closed forms
from exhaustive quadratic-form representations.  Everything here is
deliberately elementary so it can serve as an oracle for the
hypergeometric evaluations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .errors import (
    BadReduction,
    DegenerateCurve,
    NonIntegralLeadingPower,
    SmallPrime,
)
from .numth import is_prime


@dataclass(frozen=True)
class EllipticCurve:
    """y^2 = x^3 + c2 x^2 + c1 x + c0 over Q, nonsingular."""

    c2: Fraction
    c1: Fraction
    c0: Fraction

    def __post_init__(self):
        object.__setattr__(self, "c2", Fraction(self.c2))
        object.__setattr__(self, "c1", Fraction(self.c1))
        object.__setattr__(self, "c0", Fraction(self.c0))
        a, b, c = self.c2, self.c1, self.c0
        disc = 18 * a * b * c - 4 * a**3 * c + a**2 * b**2 - 4 * b**3 - 27 * c**2
        if disc == 0:
            raise DegenerateCurve("singular cubic")
        object.__setattr__(self, "disc", disc)


def curve_builder(kind: str, *params) -> EllipticCurve:
    """Either the one-parameter family y^2 = x^3 - t^2 x^2 + (4t^3 - t^4) x
    + (t^6 - 4t^5) (kind 'ono_t', t outside {0, 4}) or a short Weierstrass
    curve y^2 = x^3 + ax + b with j != 0, 1728 (kind 'mccarthy_ab')."""
    if kind == "ono_t":
        (t,) = params
        t = Fraction(t)
        if t in (0, 4):
            raise DegenerateCurve(f"t = {t} gives a singular fiber")
        return EllipticCurve(-(t**2), 4 * t**3 - t**4, t**6 - 4 * t**5)
    if kind == "mccarthy_ab":
        a, b = params
        if a == 0 or b == 0:
            raise DegenerateCurve("need j-invariant away from 0 and 1728")
        return EllipticCurve(0, a, b)
    raise ValueError(f"unknown curve family {kind!r}")


def has_good_reduction(curve: EllipticCurve, p: int) -> bool:
    vals = (curve.c2, curve.c1, curve.c0, curve.disc)
    return all(v.denominator % p for v in vals) and curve.disc.numerator % p != 0


def ec_trace(curve: EllipticCurve, p: int) -> int:
    """p + 1 - #E(F_p) by full enumeration with Euler's criterion."""
    if not is_prime(p) or p <= 3:
        raise SmallPrime(f"need a prime p > 3, got {p}")
    if not has_good_reduction(curve, p):
        raise BadReduction(f"bad reduction at {p}")
    c2 = curve.c2.numerator * pow(curve.c2.denominator, -1, p) % p
    c1 = curve.c1.numerator * pow(curve.c1.denominator, -1, p) % p
    c0 = curve.c0.numerator * pow(curve.c0.denominator, -1, p) % p
    chi = [0] * p
    for u in range(1, p):
        chi[u] = 1 if pow(u, (p - 1) // 2, p) == 1 else -1
    total = 0
    for x in range(p):
        total += chi[(x * x * x + c2 * x * x + c1 * x + c0) % p]
    a_p = -total
    assert a_p * a_p <= 4 * p, "Hasse bound violated: point count is wrong"
    return a_p


# -- eta-product q-expansions ------------------------------------------------------

@dataclass(frozen=True)
class EtaQuotient:
    """prod_i eta(d_i z)^{e_i}, as (scale, exponent) factor pairs."""

    factors: tuple[tuple[int, int], ...]

    @property
    def weight(self) -> Fraction:
        return Fraction(sum(e for _, e in self.factors), 2)

    @property
    def leading_power(self) -> Fraction:
        return Fraction(sum(d * e for d, e in self.factors), 24)


@dataclass(frozen=True)
class QExpansion:
    """Integer coefficients a_1..a_N of a q-expansion."""

    coeffs: tuple[int, ...]

    def a(self, n: int) -> int:
        if not 1 <= n <= len(self.coeffs):
            raise IndexError(f"coefficient a_{n} not computed")
        return self.coeffs[n - 1]


def _euler_product(truncation: int) -> list[int]:
    """prod_{n>=1} (1 - x^n) mod x^truncation, by pentagonal numbers."""
    out = [0] * truncation
    out[0] = 1
    k = 1
    while True:
        g1 = k * (3 * k - 1) // 2
        g2 = k * (3 * k + 1) // 2
        if g1 >= truncation and g2 >= truncation:
            break
        sign = -1 if k % 2 else 1
        if g1 < truncation:
            out[g1] += sign
        if g2 < truncation:
            out[g2] += sign
        k += 1
    return out


def _series_mul(f, g, truncation):
    out = [0] * truncation
    for i, ci in enumerate(f):
        if ci:
            for j in range(min(truncation - i, len(g))):
                if g[j]:
                    out[i + j] += ci * g[j]
    return out


def _series_inv(f, truncation):
    assert f[0] == 1
    out = [0] * truncation
    out[0] = 1
    for n in range(1, truncation):
        acc = 0
        for k in range(1, min(n, len(f) - 1) + 1):
            if f[k]:
                acc += f[k] * out[n - k]
        out[n] = -acc
    return out


def eta_coefficients(quotient: EtaQuotient, n_max: int) -> QExpansion:
    """Coefficients a_1..a_N of q^(sum de/24) prod (1 - q^(dn))^e, exactly."""
    lead = quotient.leading_power
    if lead.denominator != 1 or lead < 1:
        raise NonIntegralLeadingPower(
            f"leading power {lead} is not a positive integer"
        )
    lead = int(lead)
    truncation = n_max - lead + 1
    if truncation <= 0:
        return QExpansion((0,) * n_max)
    prod = [0] * truncation
    prod[0] = 1
    for d, e in quotient.factors:
        base = _euler_product((truncation + d - 1) // d)
        scaled = [0] * truncation
        for i, c in enumerate(base):
            if i * d < truncation:
                scaled[i * d] = c
        power = scaled if e > 0 else _series_inv(scaled, truncation)
        for _ in range(abs(e)):
            prod = _series_mul(prod, power, truncation)
    coeffs = [0] * n_max
    for i, c in enumerate(prod):
        coeffs[lead + i - 1] = c
    return QExpansion(tuple(coeffs))


# newforms used by the identity campaigns
ETA_WEIGHT2_LEVEL32 = EtaQuotient(((4, 2), (8, 2)))
ETA_WEIGHT3_LEVEL16 = EtaQuotient(((4, 6),))
ETA_WEIGHT4_LEVEL8 = EtaQuotient(((2, 4), (4, 4)))
# weight-3 companion of the order-8 evaluation at 1; its coefficients at
# p = 1 mod 4 supply the needed newform values (p = 3 mod 4 never enters:
# the weight-2 cofactor vanishes there)
ETA_WEIGHT3_LEVEL32 = EtaQuotient(((2, 4), (8, 2)))


# -- quadratic form representations --------------------------------------------------

def rep_quadratic(
    q: int,
    form_b: int,
    *,
    x_mod: tuple[int, int] | None = None,
    x_odd: bool = False,
    avoid_p: int | None = None,
) -> tuple[int, int] | None:
    """A representation q = x^2 + B y^2 satisfying the stated constraints.

    Exhausts |x| <= sqrt(q); constraints: x in a residue class, x odd,
    p not dividing x.  Returns (x, |y|) with the sign of x pinned by the
    constraints (or x > 0 when unconstrained); None if no representation
    satisfies everything.
    """
    sols = []
    for ax in range(isqrt(q) + 1):
        rest = q - ax * ax
        if rest < 0 or rest % form_b:
            continue
        yy = rest // form_b
        y = isqrt(yy)
        if y * y != yy:
            continue
        for x in {ax, -ax}:
            if x_mod is not None and x % x_mod[1] != x_mod[0] % x_mod[1]:
                continue
            if x_odd and x % 2 == 0:
                continue
            if avoid_p is not None and x % avoid_p == 0:
                continue
            sols.append((x, y))
    if not sols:
        return None
    xs = {abs(x) for x, _ in sols}
    if x_mod is None:
        # sign of x is immaterial; return the positive representative
        return max((abs(x), y) for x, y in sols)
    assert len(xs) == 1, f"constraints leave an ambiguous representation: {sols}"
    return sols[0]


def hecke_prime_square(a_p: int, p: int, k: int, eps_p: int) -> int:
    """Prime-square coefficient a_{p^2} = a_p^2 - eps(p) p^(k-1)."""
    return a_p * a_p - eps_p * p ** (k - 1)


_weight3_expansion: list[QExpansion | None] = [None]


def cm_weight3_coefficient(p: int, sign: int) -> int:
    """The weight-3 companion coefficient at p, under a calibrated global sign.

    Zero for p = 3 mod 4 (where the companion is never consumed alone); for
    split p the local oracle is the eta product eta(2z)^4 eta(8z)^2.  No
    quadratic-form closed expression reproduces these values (already at
    p = 5 they are incompatible with every imaginary-quadratic shape), so
    the coefficient comes from the q-expansion, with the sign fixed by the
    calibration identity and validated at held-out primes.
    """
    if p % 4 == 3:
        return 0
    exp = _weight3_expansion[0]
    if exp is None or len(exp.coeffs) < p:
        exp = eta_coefficients(ETA_WEIGHT3_LEVEL32, max(2 * p, 128))
        _weight3_expansion[0] = exp
    return sign * exp.a(p)
