"""Identity verification harness.

Every theorem-shaped statement the library implements is registered here
as a named campaign: a function which, given its parameter ranges and a
seeded RNG, produces per-instance records with left/right values and a
residual.  run_verification executes a selection of campaigns and writes
machine-readable reports; reports are deterministic given the seed.
"""

from __future__ import annotations

import json
import os
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt

import mpmath as mp

from . import backend, classical, oracles
from .charsum import (
    Character,
    gauss_conjugation_residual,
    hasse_davenport_residual,
    orthogonality_sum,
)
from .cyclotomic import cyc_root
from .errors import HypersplitError, UnknownIdentity
from .ffhyper import FFHyperParams, ff_hyper, ff_reduction, ff_split_residual
from .ffield import make_field
from .gfunction import (
    GParams,
    fg_consistency,
    g_eval,
    g_route_residual,
    g_split_residual,
    raw_sum,
)
from .numth import divisors, is_prime
from .padic import (
    PAdic,
    digit_expansion,
    gamma_product_residual,
    gamma_reflection_residual,
    parity_sums,
)

HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)

# the order-2m families [1/4, 3/4, ...; 1, 1/2, ...] of the evaluations at 1
def _quartic_family(m: int) -> GParams:
    return GParams((QUARTER, 3 * QUARTER) * m, (1, HALF) * m)


def precision_for(p: int, bound: int) -> int:
    """Smallest M with p^M > 2*bound (symmetric lift recovers the integer)."""
    m = 1
    while p**m <= 2 * bound:
        m += 1
    return m


def legendre_rational(x, p: int) -> int:
    x = Fraction(x)
    num = x.numerator * pow(x.denominator, -1, p) % p
    if num == 0:
        return 0
    return 1 if pow(num, (p - 1) // 2, p) == 1 else -1


@dataclass
class CaseRecord:
    inputs: str
    lhs: str
    rhs: str
    residual: str
    passed: bool
    q_or_p: str = ""


@dataclass
class CaseResult:
    case_id: str
    gating: bool
    records: list[CaseRecord]
    elapsed: float
    error: str | None = None

    @property
    def passed(self) -> bool:
        return self.error is None and all(r.passed for r in self.records)


def _rec(inputs, lhs, rhs, residual, passed, q_or_p=""):
    return CaseRecord(str(inputs), str(lhs), str(rhs), str(residual), bool(passed), str(q_or_p))


def _zero_rec(inputs, residual_obj, q_or_p=""):
    ok = residual_obj.is_zero()
    return _rec(inputs, "", "", "0" if ok else repr(residual_obj), ok, q_or_p)


# ---------------------------------------------------------------------------
# campaign implementations
# ---------------------------------------------------------------------------

def case_ff_split(params, rng):
    out = []
    for p, r in params.get("q", [(5, 1), (7, 1), (3, 2), (11, 1), (13, 1), (17, 1), (19, 1), (5, 2)]):
        F = make_field(p, r)
        q = F.q
        for n in divisors(q - 1):
            if n > params.get("n_max", 6):
                continue
            for _ in range(params.get("draws", 50)):
                m = rng.choice((1, 1, 2))
                top = tuple(rng.randrange(q - 1) for _ in range(m))
                bottom = tuple(rng.randrange(q - 1) for _ in range(m))
                lam = F.from_code(rng.randrange(q))
                res = ff_split_residual(F, n, top, bottom, lam)
                out.append(
                    _zero_rec(f"n={n} A={top} B={bottom} lam=g^?{lam.coeffs}", res, q)
                )
    return out


def case_ff_split_converse(params, rng):
    out = []
    for p, r in params.get("q", [(3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (11, 1), (13, 1)]):
        F = make_field(p, r)
        q = F.q
        for n in divisors(q - 1):
            if n < 2:
                continue
            m = rng.choice((1, 2))
            top = tuple(rng.randrange(q - 1) for _ in range(m))
            bottom = tuple(rng.randrange(q - 1) for _ in range(m))
            for code in range(1, q):
                lam = F.from_code(code)
                if F.dlog(lam) % n == 0:
                    continue
                res = ff_split_residual(F, n, top, bottom, lam, converse=True)
                out.append(_zero_rec(f"n={n} A={top} B={bottom} code={code}", res, q))
    return out


def case_toolbox_gauss_conj(params, rng):
    out = []
    for p, r in params.get("q", [(3, 1), (5, 1), (7, 1), (3, 2), (11, 1), (13, 1), (5, 2)]):
        F = make_field(p, r)
        for k in range(F.q - 1):
            res = gauss_conjugation_residual(Character(F, k))
            out.append(_zero_rec(f"k={k}", res, F.q))
    return out


def case_toolbox_hd(params, rng):
    out = []
    qs = params.get(
        "q",
        [(3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (11, 1), (13, 1), (2, 4), (17, 1), (19, 1), (23, 1), (5, 2)],
    )
    for p, r in qs:
        F = make_field(p, r)
        q = F.q
        for n in divisors(q - 1):
            if n < 2:
                continue
            for k in range(q - 1):
                res = hasse_davenport_residual(F, n, Character(F, k))
                out.append(_zero_rec(f"n={n} psi=T^{k}", res, q))
    return out


def case_toolbox_orthogonality(params, rng):
    out = []
    for p, r in params.get("q", [(3, 1), (2, 2), (5, 1), (7, 1), (3, 2), (11, 1), (13, 1), (5, 2)]):
        F = make_field(p, r)
        q = F.q
        for n in divisors(q - 1):
            for k in range(q - 1):
                val = orthogonality_sum(Character(F, k), n)
                want = n if k % n == 0 else 0
                out.append(_rec(f"n={n} k={k}", val, want, val - want, val == want, q))
    # the complex variant over plain roots of unity
    for n in range(1, params.get("root_n_max", 12) + 1):
        for k in range(0, params.get("root_k_max", 60) + 1):
            val = sum((cyc_root(n, l * k) for l in range(n)), cyc_root(n, 0) * 0)
            want = n if k % n == 0 else 0
            out.append(_rec(f"roots n={n} k={k}", val, want, val - want, val == want, "-"))
    return out


def case_toolbox_gamma_reflection(params, rng):
    out = []
    count = params.get("count", 60)
    while len(out) < count:
        p = rng.choice((3, 5, 7, 11, 13))
        m = rng.randrange(4, 9)
        if p**m > 10**8:
            continue
        den = rng.choice((1, 2, 3, 4, 6, 7, 8, 12))
        if den % p == 0:
            continue
        x = Fraction(rng.randrange(-24, 25), den)
        res = gamma_reflection_residual(x, p, m)
        out.append(_rec(f"x={x} M={m}", "", "", res, res == 0, p))
    return out


def case_toolbox_gamma_product(params, rng):
    out = []
    for p in params.get("p", (5, 7, 11, 13)):
        for r in (1, 2):
            q = p**r
            for n in (2, 3, 4):
                if n % p == 0:
                    continue
                for c in range(q - 1):
                    res = gamma_product_residual(n, Fraction(c, q - 1), p, r, params.get("prec", 4))
                    out.append(_rec(f"n={n} x={c}/{q-1} r={r}", "", "", res, res == 0, p))
    return out


def case_toolbox_digits(params, rng):
    out = []
    count = params.get("count", 200)
    while len(out) < count:
        mode = rng.choice(("frac_rep_sum", "floor_pair_sum", "expansion"))
        p = rng.choice((3, 5, 7, 11, 13))
        if mode == "frac_rep_sum":
            den = rng.choice((2, 3, 4, 6, 7, 8, 11, 12, 13))
            if den % p == 0:
                continue
            a = Fraction(rng.randrange(1, den), den)
            # smallest f with (p^f - 1) a integral
            f = 1
            while ((p**f - 1) * a).denominator != 1:
                f += 1
            r = rng.randrange(1, 4)
            lhs, rhs = parity_sums("frac_rep_sum", a=a, p=p, r=r, f=f)
            out.append(_rec(f"a={a} r={r} f={f}", lhs, rhs, lhs - rhs, lhs == rhs, p))
        elif mode == "floor_pair_sum":
            l = rng.choice((3, 4, 5, 6, 7, 8, 9, 11, 12))
            if gcd(p, l) != 1:
                continue
            r = rng.randrange(1, 3)
            if p**r % l == 1:
                continue
            j = rng.randrange(0, 3 * (p**r - 1))
            val = parity_sums("floor_pair_sum", l=l, p=p, r=r, j=j)
            out.append(_rec(f"l={l} r={r} j={j}", val, 0, val, val == 0, p))
        else:
            den = rng.choice((2, 3, 4, 6, 7, 8, 11, 12, 13))
            if den % p == 0:
                continue
            a = Fraction(rng.randrange(1, den), den)
            f = 1
            while ((p**f - 1) * a).denominator != 1:
                f += 1
            f *= rng.choice((1, 2))
            de = digit_expansion(a, p, f)
            ok = True
            for j in range(f):
                want = de.frac_rep(j)
                got = (Fraction(a * p**j) % 1).numerator * pow((Fraction(a * p**j) % 1).denominator, -1, p) % p
                got = p if got == 0 else got
                ok &= want == got
            for j in range(1, f):
                ok &= de.floor_pow(j) == int(a * p**j)
            out.append(_rec(f"a={a} f={f}", de.z, "", "", ok, p))
    return out


def case_g_over_q(params, rng):
    fams = [
        ((HALF, HALF), (Fraction(1), Fraction(1))),
        ((QUARTER, 3 * QUARTER), (Fraction(1), HALF)),
        (
            (Fraction(1, 8), Fraction(5, 8), Fraction(3, 8), Fraction(7, 8)),
            (Fraction(1, 6), Fraction(2, 3), Fraction(1, 3), Fraction(5, 6)),
        ),
    ]
    prec = params.get("prec", 5)
    out = []
    for p in params.get("p", (3, 5, 7, 11, 13)):
        for r in (1, 2):
            F = make_field(p, r)
            for a, b in fams:
                if any(x.denominator % p == 0 for x in a + b):
                    continue
                gp = GParams(a, b)
                for k in range(F.q - 1):
                    lam = F.generator_power(k)
                    res = g_route_residual(gp, lam, F, prec)
                    out.append(_zero_rec(f"fam={a} lam=g^{k}", res, F.q))
    return out


_SPLIT_BASES = {
    2: ((QUARTER, QUARTER), (Fraction(1), HALF)),
    3: ((Fraction(1, 6),), (Fraction(1),)),
    4: ((Fraction(1, 8),), (Fraction(1),)),
}


def case_g_split(params, rng):
    out = []
    prec = params.get("prec", 5)
    for p in params.get("p", (3, 5, 7, 11, 13)):
        for r in (1, 2):
            F = make_field(p, r)
            q = F.q
            for n in (2, 3, 4):
                if (q - 1) % n != 0:
                    continue
                a, b = _SPLIT_BASES[n]
                if any((n * x).denominator % p == 0 for x in a + b):
                    continue
                gp = GParams(a, b)
                for _ in range(params.get("draws", 20)):
                    lam = F.generator_power(rng.randrange(q - 1))
                    res = g_split_residual(gp, n, lam, F, prec)
                    out.append(_zero_rec(f"n={n} lam={lam.coeffs}", res, q))
    return out


def case_g_split_converse(params, rng):
    out = []
    prec = params.get("prec", 5)
    for p, r in params.get("q", [(5, 1), (7, 1), (3, 2), (11, 1), (13, 1)]):
        F = make_field(p, r)
        q = F.q
        for n in divisors(q - 1):
            if n < 2 or n > params.get("n_max", 6):
                continue
            m = rng.choice((1, 2))
            dens = (2, 3, 4, 5, 7, 8, 9, 12)
            def draw():
                while True:
                    d = rng.choice(dens)
                    if d % p:
                        return Fraction(rng.randrange(d), d)
            gp = GParams(tuple(draw() for _ in range(m)), tuple(draw() for _ in range(m)))
            for code in range(1, q):
                lam = F.from_code(code)
                if F.dlog(lam) % n == 0:
                    continue
                res = g_split_residual(gp, n, lam, F, prec, converse=True)
                out.append(_zero_rec(f"n={n} a={gp.a} b={gp.b} code={code}", res, q))
    return out


def case_fg_bridge(params, rng):
    out = []
    prec = params.get("prec", 5)
    instances = [
        ((HALF, HALF), (Fraction(1), Fraction(1)), [(13, 1), (17, 1), (29, 1), (5, 2)]),
        ((HALF,), (Fraction(1),), [(5, 1), (13, 1), (3, 2)]),
        ((HALF, HALF, HALF), (Fraction(1),) * 3, [(17, 1), (13, 1), (5, 1)]),
        ((QUARTER, 3 * QUARTER), (Fraction(1), HALF), [(13, 1), (17, 1), (5, 2)]),
    ]
    for a, b, fields in instances:
        gp = GParams(a, b)
        for p, r in fields:
            F = make_field(p, r)
            lams = [F.one, -F.one, F.generator_power(2)]
            for lam in lams:
                try:
                    res = fg_consistency(gp, lam, F, prec)
                except HypersplitError as e:
                    out.append(_rec(f"a={a} b={b}", "", "", type(e).__name__, False, F.q))
                    continue
                out.append(_zero_rec(f"a={a} b={b} lam={lam.coeffs}", res, F.q))
    return out


def case_ff_reduce(identity):
    def run(params, rng):
        out = []
        qs = params.get("q", [(5, 1), (3, 2), (13, 1), (17, 1), (5, 2)])
        draws = params.get("draws", 20)
        for p, r in qs:
            F = make_field(p, r)
            q = F.q
            if identity in ("m3", "m4") and q % 4 != 1:
                continue
            done = 0
            attempts = 0
            while done < draws and attempts < 200:
                attempts += 1
                a = rng.randrange(1, q - 1)
                b = rng.randrange(1, q - 1)
                try:
                    if identity == "m3":
                        lhs, rhs = ff_reduction(identity, F, a)
                    else:
                        lhs, rhs = ff_reduction(identity, F, a, b)
                except HypersplitError:
                    continue
                diff = lhs - rhs
                out.append(
                    _rec(f"a={a} b={b}", "", "", "0" if diff.is_zero() else "nonzero",
                         diff.is_zero(), q)
                )
                done += 1
        return out

    return run


def case_g4_at1(params, rng):
    out = []
    for p, r in params.get("q", [(3, 1), (5, 1), (7, 1), (3, 2), (11, 1), (13, 1), (17, 1), (5, 2), (29, 1), (7, 2)]):
        F = make_field(p, r)
        q = F.q
        v = g_eval(_quartic_family(2), 1, F, precision_for(p, 3 + 2 * isqrt(4 * q))).lift()
        if q % 4 == 3:
            want = -1
        else:
            x, _ = oracles.rep_quadratic(q, 1, x_mod=(1, 4), avoid_p=p if p % 4 == 1 else None)
            want = 1 + 2 * x if q % 8 == 1 else 1 - 2 * x
        out.append(_rec("lam=1", v, want, v - want, v == want, q))
    return out


def case_g6_at1(params, rng):
    out = []
    for p, r in params.get("q", [(3, 1), (5, 1), (7, 1), (3, 2), (11, 1), (13, 1), (17, 1), (5, 2), (29, 1), (7, 2)]):
        F = make_field(p, r)
        q = F.q
        v = g_eval(_quartic_family(3), 1, F, precision_for(p, 8 * q)).lift()
        if q % 8 in (1, 5):
            x, _ = oracles.rep_quadratic(q, 1, x_odd=True, avoid_p=p if p % 4 == 1 else None)
        if q % 8 in (1, 3):
            u, _ = oracles.rep_quadratic(q, 2, avoid_p=p if p % 8 in (1, 3) else None)
        if q % 8 == 1:
            want = 4 * (x * x + u * u) - 3 * q
        elif q % 8 == 3:
            want = q - 4 * u * u
        elif q % 8 == 5:
            want = 4 * x * x - q
        else:
            want = -q
        out.append(_rec("lam=1", v, want, v - want, v == want, q))
    return out


def case_g4_modform(params, rng):
    out = []
    ps = params.get("p", [3, 5, 7, 11, 13, 17, 19, 23, 29, 31])
    coeffs = oracles.eta_coefficients(oracles.ETA_WEIGHT2_LEVEL32, max(ps) + 1)
    for p in ps:
        F = make_field(p)
        v = g_eval(_quartic_family(2), 1, F, precision_for(p, 3 + 2 * isqrt(4 * p))).lift()
        want = legendre_rational(-1, p) + coeffs.a(p)
        out.append(_rec("lam=1", v, want, v - want, v == want, p))
    return out


def case_g6_modform(params, rng):
    out = []
    ps = params.get("p", [3, 5, 7, 11, 13, 17, 19, 23, 29, 31])
    coeffs = oracles.eta_coefficients(oracles.ETA_WEIGHT3_LEVEL16, max(ps) + 1)
    curve = oracles.curve_builder("ono_t", 8)
    for p in ps:
        if not oracles.has_good_reduction(curve, p) or p == 3:
            continue
        F = make_field(p)
        v = g_eval(_quartic_family(3), 1, F, precision_for(p, 8 * p)).lift()
        want = coeffs.a(p) + legendre_rational(2, p) * (oracles.ec_trace(curve, p) ** 2 - p)
        out.append(_rec("lam=1", v, want, v - want, v == want, p))
    return out


def case_g3_curve(params, rng):
    out = []
    g3 = GParams((HALF,) * 3, (Fraction(1),) * 3)
    ts = [Fraction(t) for t in params.get(
        "t", ["1", "3", "5", "8", "7/2", "9/2", "65/16", "63/16"])]
    for t in ts:
        curve = oracles.curve_builder("ono_t", t)
        for p in params.get("p", [5, 7, 11, 13, 17, 19, 23, 29, 31]):
            tt = t * (t - 4)
            if (tt.numerator * tt.denominator) % p == 0:
                continue
            if not oracles.has_good_reduction(curve, p):
                continue
            F = make_field(p)
            v = g_eval(g3, Fraction(4 - t, 4), F, precision_for(p, 5 * p)).lift()
            want = legendre_rational(tt, p) * (oracles.ec_trace(curve, p) ** 2 - p)
            out.append(_rec(f"t={t}", v, want, v - want, v == want, p))
    return out


def case_g6_curvepairs(params, rng):
    out = []
    items = [
        (Fraction(1, 64), Fraction(7, 2), Fraction(9, 2), -7, 1, 1),
        (Fraction(64), Fraction(7, 2), Fraction(9, 2), 14, 2, 1),
        (Fraction(1, 16), Fraction(5), Fraction(3), 5, -3, 3),
        (Fraction(16), Fraction(5), Fraction(3), 5, 3, 3),
    ]
    for lam, t1, t2, s1v, s2v, form_b in items:
        c1 = oracles.curve_builder("ono_t", t1)
        c2 = oracles.curve_builder("ono_t", t2)
        for p in params.get("p", [5, 7, 11, 13, 17, 19, 23]):
            if (lam.numerator * lam.denominator) % p == 0:
                continue
            good = oracles.has_good_reduction(c1, p) and oracles.has_good_reduction(c2, p)
            tt1, tt2 = t1 * (t1 - 4), t2 * (t2 - 4)
            if not good or (tt1.numerator * tt1.denominator * tt2.numerator * tt2.denominator) % p == 0:
                continue
            F = make_field(p)
            v = g_eval(_quartic_family(3), lam, F, precision_for(p, 10 * p)).lift()
            a1 = oracles.ec_trace(c1, p)
            a2 = oracles.ec_trace(c2, p)
            want = legendre_rational(s1v, p) * (a1 * a1 - p) + legendre_rational(s2v, p) * (a2 * a2 - p)
            ok = v == want
            # the CM side also has a quadratic-form closed expression
            cm = a2 * a2 - p
            modulus = 4 if form_b == 1 else 3
            if p % modulus == 1:
                x, _ = oracles.rep_quadratic(p, form_b, x_odd=(form_b == 1))
                ok &= cm == 4 * x * x - p
            else:
                ok &= cm == -p
            out.append(_rec(f"lam={lam}", v, want, v - want, ok, p))
    return out


def case_g2_trace(params, rng):
    out = []
    g2 = GParams((QUARTER, 3 * QUARTER), (Fraction(1, 3), Fraction(2, 3)))
    pairs = [tuple(ab) for ab in params.get("ab", [(1, 1), (1, 2), (2, 1), (1, -1), (3, 2)])]
    for a, b in pairs:
        curve = oracles.curve_builder("mccarthy_ab", a, b)
        for p in params.get("p", [5, 7, 11, 13, 17, 19, 23, 29, 31]):
            if not oracles.has_good_reduction(curve, p) or p == 3:
                continue
            lam = Fraction(-27 * b * b, 4 * a**3)
            if lam.numerator % p == 0:
                continue
            F = make_field(p)
            prec = precision_for(p, 3 * p)
            v = g_eval(g2, lam, F, prec)
            pv = (v * PAdic.from_rational(p, p, prec + 2)).lift()
            want = legendre_rational(b, p) * oracles.ec_trace(curve, p)
            out.append(_rec(f"a={a} b={b}", pv, want, pv - want, pv == want, p))
    return out


def case_g4_tracepair(params, rng, pairs=None):
    out = []
    g4 = GParams(
        (Fraction(1, 8), Fraction(5, 8), Fraction(3, 8), Fraction(7, 8)),
        (Fraction(1, 6), Fraction(2, 3), Fraction(1, 3), Fraction(5, 6)),
    )
    pairs = pairs or [tuple(ab) for ab in params.get("ab", [(1, 1), (1, 2), (2, 1), (1, -1)])]
    for a, b in pairs:
        plus = oracles.curve_builder("mccarthy_ab", a, b)
        minus = oracles.curve_builder("mccarthy_ab", -a, b)
        for p in params.get("p", [5, 7, 11, 13, 17, 19, 23, 29, 31]):
            if not (oracles.has_good_reduction(plus, p) and oracles.has_good_reduction(minus, p)):
                continue
            lam = Fraction(3**6 * b**4, 2**4 * a**6)
            if lam.numerator % p == 0:
                continue
            F = make_field(p)
            prec = precision_for(p, 5 * p)
            v = g_eval(g4, lam, F, prec)
            pv = (v * PAdic.from_rational(p, p, prec + 2)).lift()
            want = legendre_rational(b, p) * (oracles.ec_trace(plus, p) + oracles.ec_trace(minus, p))
            out.append(_rec(f"a={a} b={b}", pv, want, pv - want, pv == want, p))
    return out


def case_g4_tracepair_eg(params, rng):
    return case_g4_tracepair(params, rng, pairs=[(1, 1)])


def calibrate_weight3_sign(prec_bound: int = 200) -> int:
    """Fix the weight-3 companion sign from the order-4 value at -1 over F_5."""
    F5 = make_field(5)
    v5 = g_eval(GParams((HALF,) * 4, (Fraction(1),) * 4), -1, F5, precision_for(5, prec_bound)).lift()
    w2 = oracles.eta_coefficients(oracles.ETA_WEIGHT2_LEVEL32, 6).a(5)
    base = oracles.cm_weight3_coefficient(5, 1)
    if v5 % (w2 * base):
        raise HypersplitError(
            f"weight-3 calibration failed: {v5} is not a multiple of {w2 * base}"
        )
    sign = v5 // (w2 * base)
    if sign not in (1, -1):
        raise HypersplitError(f"weight-3 calibration produced sign {sign}")
    return sign


def case_g8_at1(params, rng):
    out = []
    ps = params.get("p", [3, 5, 7, 11, 13, 17, 29])
    sign = calibrate_weight3_sign()
    w2 = oracles.eta_coefficients(oracles.ETA_WEIGHT2_LEVEL32, max(ps) + 1)
    w4 = oracles.eta_coefficients(oracles.ETA_WEIGHT4_LEVEL8, max(ps) + 1)
    validations = {13, 17, 29}
    for p in ps:
        F = make_field(p)
        v = g_eval(_quartic_family(4), 1, F, precision_for(p, 8 * p * p)).lift()
        if p % 4 == 3:
            middle = 0  # calibration must not enter here
        else:
            middle = w2.a(p) * oracles.cm_weight3_coefficient(p, sign)
        want = w4.a(p) + middle + p
        tag = "validation" if p in validations else ("calibration" if p == 5 else "")
        out.append(_rec(f"{tag} sign={sign}", v, want, v - want, v == want, p))
    return out


def case_classical_split(params, rng):
    out = []
    prec = params.get("prec", 40)
    tol = mp.mpf(10) ** -params.get("tol_digits", 25)
    for _ in range(params.get("draws", 12)):
        n = rng.choice((1, 2, 3, 4))
        m = rng.choice((1, 2, 3))
        def rational():
            d = rng.choice((2, 3, 4, 5, 6, 8, 12))
            return Fraction(rng.randrange(1, 2 * d), d)
        a = tuple(rational() for _ in range(m))
        b = tuple(rational() for _ in range(m))
        z = Fraction(rng.randrange(1, 31), 100)
        res = classical.classical_split_residual(a, b, n, z, prec)
        with mp.workdps(prec + 10):
            ok = abs(res) < tol
            out.append(_rec(f"n={n} a={a} b={b} z={z}", "", "", mp.nstr(abs(res), 5), ok, "-"))
    return out


def case_classical_reduce(identity):
    def run(params, rng):
        out = []
        prec = params.get("prec", 30)
        tol = mp.mpf(10) ** -params.get("tol_digits", 20)
        done = 0
        while done < params.get("draws", 10):
            d = rng.choice((3, 4, 5, 6, 8, 10, 12))
            a = Fraction(rng.randrange(-d, d + 1), d)
            b = Fraction(rng.randrange(-4 * d, d // 4), d) if identity != "m3" else None
            try:
                if identity == "m3":
                    lhs, rhs = classical.classical_reduction(identity, (a,), prec)
                else:
                    lhs, rhs = classical.classical_reduction(identity, (a, b), prec)
            except HypersplitError:
                continue
            except ZeroDivisionError:
                continue
            with mp.workdps(prec + 10):
                err = abs(lhs - rhs)
                ok = err < tol
                out.append(_rec(f"a={a} b={b}", mp.nstr(lhs, 20), mp.nstr(rhs, 20), mp.nstr(err, 5), ok, "-"))
            done += 1
        return out

    return run


def case_props_invariance(params, rng):
    out = []
    prec = params.get("prec", 4)
    for _ in range(params.get("draws", 60)):
        p = rng.choice((3, 5, 7, 11, 13))
        F = make_field(p)
        m = rng.choice((1, 2, 3))
        def rational():
            d = rng.choice((2, 3, 4, 5, 6, 8, 12))
            while d % p == 0:
                d = rng.choice((2, 3, 4, 5, 6, 8, 12))
            return Fraction(rng.randrange(2 * d), d)
        a = tuple(rational() for _ in range(m))
        b = tuple(rational() for _ in range(m))
        lam = F.generator_power(rng.randrange(p - 1))
        base = raw_sum(GParams(a, b), lam, F, prec)
        shifted = tuple(x + rng.randrange(-2, 3) for x in a)
        perm = list(range(m))
        rng.shuffle(perm)
        v2 = raw_sum(GParams(shifted, b), lam, F, prec)
        v3 = raw_sum(GParams(tuple(a[i] for i in perm), tuple(b[i] for i in rng.sample(range(m), m))), lam, F, prec)
        ok = (base - v2).is_zero() and (base - v3).is_zero()
        out.append(_rec(f"a={a} b={b}", "", "", "", ok, p))
    return out


def case_props_pochhammer(params, rng):
    out = []
    for _ in range(params.get("draws", 120)):
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
        out.append(_rec(f"a={a} n={n} k={k}", "", "", lhs - rhs, lhs == rhs, "-"))
    return out


def case_props_hermite(params, rng):
    from math import floor

    out = []
    for _ in range(params.get("draws", 200)):
        m = rng.randrange(1, 13)
        x = Fraction(rng.randrange(-200, 200), rng.randrange(1, 60))
        lhs = floor(m * x)
        rhs = sum(floor(x + Fraction(h, m)) for h in range(m))
        out.append(_rec(f"m={m} x={x}", lhs, rhs, lhs - rhs, lhs == rhs, "-"))
    return out


def case_props_hasse(params, rng):
    out = []
    for _ in range(params.get("draws", 120)):
        p = rng.choice([x for x in range(5, 80) if is_prime(x)])
        a = rng.randrange(-8, 9)
        b = rng.randrange(-8, 9)
        if a == 0 or b == 0:
            continue
        curve = oracles.curve_builder("mccarthy_ab", a, b)
        if not oracles.has_good_reduction(curve, p):
            continue
        ap = oracles.ec_trace(curve, p)
        out.append(_rec(f"a={a} b={b}", ap * ap, 4 * p, "", ap * ap <= 4 * p, p))
    return out


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IdentityCase:
    id: str
    description: str
    run: object
    section5: bool = False
    gating: bool = True


# ids of the application-section identities; the registry must cover all 16
SECTION5_IDS = (
    "ff.reduce.m2",
    "ff.reduce.m3",
    "ff.reduce.m4",
    "g4.at1",
    "g6.at1",
    "g4.modform",
    "g6.modform",
    "g3.curve",
    "g6.curvepairs",
    "g2.trace",
    "g4.tracepair",
    "g4.tracepair.eg",
    "g8.at1",
    "classical.reduce.m2",
    "classical.reduce.m3",
    "classical.reduce.m4",
)

REGISTRY: dict[str, IdentityCase] = {}


def _register(case: IdentityCase):
    REGISTRY[case.id] = case


for _case in [
    IdentityCase("ff.split", "order-n splitting of the finite-field sums", case_ff_split),
    IdentityCase("ff.split.converse", "vanishing at non-n-th powers (finite field)", case_ff_split_converse),
    IdentityCase("toolbox.gauss-conj", "g(chi) g(chi^-1) closed form", case_toolbox_gauss_conj),
    IdentityCase("toolbox.hasse-davenport", "order-n Gauss sum product formula", case_toolbox_hd),
    IdentityCase("toolbox.orthogonality", "root-of-unity orthogonality sums", case_toolbox_orthogonality),
    IdentityCase("toolbox.gamma-reflection", "gamma_p reflection formula", case_toolbox_gamma_reflection),
    IdentityCase("toolbox.gamma-product", "gamma_p multiplication formula", case_toolbox_gamma_product),
    IdentityCase("toolbox.digits", "digit expansion lemmas", case_toolbox_digits),
    IdentityCase("g.overq", "defining sum vs root-set route", case_g_over_q),
    IdentityCase("g.split", "order-n splitting of the p-adic sums", case_g_split),
    IdentityCase("g.split.converse", "vanishing at non-n-th powers (p-adic)", case_g_split_converse),
    IdentityCase("fg.bridge", "finite-field vs p-adic values on rational instances", case_fg_bridge),
    IdentityCase("ff.reduce.m2", "order-4 reduction at 1", case_ff_reduce("m2"), section5=True),
    IdentityCase("ff.reduce.m3", "order-6 reduction at 1", case_ff_reduce("m3"), section5=True),
    IdentityCase(
        "ff.reduce.m4",
        "order-8 reduction at 1 (embedded unequal-length sum; report-only)",
        case_ff_reduce("m4"),
        section5=True,
        gating=False,
    ),
    IdentityCase("g4.at1", "order-4 value table at 1", case_g4_at1, section5=True),
    IdentityCase("g6.at1", "order-6 value table at 1", case_g6_at1, section5=True),
    IdentityCase("g4.modform", "order-4 value vs weight-2 coefficients", case_g4_modform, section5=True),
    IdentityCase("g6.modform", "order-6 value vs weight-3/curve data", case_g6_modform, section5=True),
    IdentityCase("g3.curve", "order-3 values vs squared curve traces", case_g3_curve, section5=True),
    IdentityCase("g6.curvepairs", "order-6 values vs two-curve data", case_g6_curvepairs, section5=True),
    IdentityCase("g2.trace", "curve trace as order-2 value", case_g2_trace, section5=True),
    IdentityCase("g4.tracepair", "order-4 values vs trace pairs", case_g4_tracepair, section5=True),
    IdentityCase("g4.tracepair.eg", "trace pair at (1,1)", case_g4_tracepair_eg, section5=True),
    IdentityCase("g8.at1", "order-8 value at 1, calibrated companion", case_g8_at1, section5=True),
    IdentityCase("classical.split", "order-n splitting of the classical series", case_classical_split),
    IdentityCase("classical.reduce.m2", "classical order-4 reduction", case_classical_reduce("m2"), section5=True),
    IdentityCase("classical.reduce.m3", "classical order-6 reduction", case_classical_reduce("m3"), section5=True),
    IdentityCase("classical.reduce.m4", "classical order-8 reduction", case_classical_reduce("m4"), section5=True),
    IdentityCase("props.invariance", "shift/permutation invariance of the p-adic sums", case_props_invariance),
    IdentityCase("props.pochhammer", "Pochhammer multiplication identity", case_props_pochhammer),
    IdentityCase("props.hermite", "floor-sum identity", case_props_hermite),
    IdentityCase("props.hasse", "trace bound for counted curves", case_props_hasse),
]:
    _register(_case)


# ---------------------------------------------------------------------------
# runner
# ---------------------------------------------------------------------------

@dataclass
class Report:
    seed: int
    backend: str
    results: list[CaseResult] = field(default_factory=list)

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.results if r.gating)

    def summary(self) -> dict:
        return {
            "cases": len(self.results),
            "passed": sum(1 for r in self.results if r.passed),
            "failed": sum(1 for r in self.results if not r.passed),
            "gating_failed": sum(1 for r in self.results if r.gating and not r.passed),
            "records": sum(len(r.records) for r in self.results),
        }

    def to_json(self) -> str:
        return json.dumps(
            {
                "version": 1,
                "seed": self.seed,
                "backend": self.backend,
                "summary": self.summary(),
                "cases": [
                    {
                        "id": r.case_id,
                        "gating": r.gating,
                        "passed": r.passed,
                        "elapsed": round(r.elapsed, 3),
                        "error": r.error,
                        "records": [
                            {
                                "q_or_p": rec.q_or_p,
                                "inputs": rec.inputs,
                                "lhs": rec.lhs,
                                "rhs": rec.rhs,
                                "residual": rec.residual,
                                "pass": rec.passed,
                            }
                            for rec in r.records
                        ],
                    }
                    for r in self.results
                ],
            },
            indent=1,
        )

    def to_csv(self) -> str:
        import csv
        import io

        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["case_id", "q_or_p", "inputs", "lhs", "rhs", "residual", "pass"])
        for r in self.results:
            for rec in r.records:
                writer.writerow(
                    [r.case_id, rec.q_or_p, rec.inputs, rec.lhs, rec.rhs, rec.residual, rec.passed]
                )
        return buf.getvalue()


def _run_case(case: IdentityCase, params: dict, seed: int) -> CaseResult:
    rng = random.Random(f"{seed}:{case.id}")
    start = time.perf_counter()
    try:
        records = case.run(params, rng)
        return CaseResult(case.id, case.gating, records, time.perf_counter() - start)
    except HypersplitError as exc:
        return CaseResult(
            case.id, case.gating, [], time.perf_counter() - start,
            error=f"{type(exc).__name__}: {exc}",
        )


def run_verification(config: dict) -> Report:
    """Execute the selected campaigns; config must carry a seed."""
    if "seed" not in config:
        raise HypersplitError("config must set an explicit RNG seed")
    seed = int(config["seed"])
    case_params = config.get("case", {})
    if case_params:
        for cid in case_params:
            if cid not in REGISTRY:
                raise UnknownIdentity(f"unknown identity id {cid!r}")
        selected = [(REGISTRY[cid], case_params[cid] or {}) for cid in case_params]
    else:
        selected = [(case, {}) for case in REGISTRY.values()]

    report = Report(seed=seed, backend=backend.backend_name())
    workers = int(os.environ.get("HYPERSPLIT_WORKERS", "1"))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_run_case, case, params, seed) for case, params in selected]
            report.results = [f.result() for f in futures]
    else:
        report.results = [_run_case(case, params, seed) for case, params in selected]
    return report
