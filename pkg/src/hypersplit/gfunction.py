"""P-adic hypergeometric sums.

The order-m sum with rational parameters a_i, b_i (denominators prime to p)
at lambda in F_q, q = p^r, is

    -1/(q-1) sum_{j=0}^{q-2} (-1)^{jm} omega^{-j}(lambda)
      prod_{i<=m} prod_{k<r}
        [gamma_p(<(a_i - j/(q-1)) p^k>) / gamma_p(<a_i p^k>)]
        [gamma_p(<(-b_i + j/(q-1)) p^k>) / gamma_p(<-b_i p^k>)]
        (-p)^(-floor(<a_i p^k> - jp^k/(q-1)) - floor(<-b_i p^k> + jp^k/(q-1))),

with omega the Teichmuller character.  Individual terms can have negative
p-valuation (each (i, k) factor contributes an exponent in {-1, 0, 1}), so
evaluation runs in two passes: an exact integer pre-pass over the floor
exponents fixes the denominator p^E and the working modulus p^(prec+E),
then the gamma factors are resolved in batch and accumulated.  For r > 1
the omega factors live in the unramified extension Z_q and the accumulator
is a Z_q element; identity values collapse back to scalars.

When the parameters assemble into full root sets of x^n - 1 ("defined over
Q") the sum has a second expression through gamma values at j-multiples
only, with a q-power correction where zeta_{q-1}^j meets a zero of the
common factor D(x); both routes are implemented and cross-checked.  Also
here: the root-of-unity splitting and its converse, and the bridge to the
finite-field sums on rational values.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .errors import (
    DomainViolation,
    EvenPrime,
    NonRationalFValue,
    NotPIntegral,
    OrderDoesNotDivide,
    UnsupportedValue,
)
from .ffhyper import FFHyperParams, DefinedOverQData, derive_defined_over_Q, ff_hyper
from .ffield import FieldElement, FiniteField
from .padic import PAdic, ZqContext, frac_part, gamma_cache, rational_mod


@dataclass(frozen=True)
class GParams:
    """Rational top/bottom parameters of a p-adic hypergeometric sum."""

    a: tuple[Fraction, ...]
    b: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(Fraction(x) for x in self.a))
        object.__setattr__(self, "b", tuple(Fraction(x) for x in self.b))
        if len(self.a) != len(self.b):
            raise DomainViolation("top and bottom parameter lists must match in length")

    def check_char(self, p: int):
        for x in self.a + self.b:
            if x.denominator % p == 0:
                raise NotPIntegral(f"parameter {x} is not p-integral at p = {p}")


@dataclass(frozen=True)
class RawPadic:
    """coeffs / p^shift, coeffs a Z_q coefficient tuple known mod p^w."""

    p: int
    coeffs: tuple[int, ...]
    shift: int
    w: int

    @property
    def abs_prec(self) -> int:
        return self.w - self.shift

    def is_zero(self) -> bool:
        pw = self.p**self.w
        return all(c % pw == 0 for c in self.coeffs)

    def is_scalar(self) -> bool:
        pw = self.p**self.w
        return all(c % pw == 0 for c in self.coeffs[1:])

    def __sub__(self, other: "RawPadic") -> "RawPadic":
        assert self.p == other.p and len(self.coeffs) == len(other.coeffs)
        shift = max(self.shift, other.shift)
        prec = min(self.abs_prec, other.abs_prec)
        w = prec + shift
        pw = self.p**w
        sa = self.p ** (shift - self.shift)
        sb = self.p ** (shift - other.shift)
        coeffs = tuple(
            (x * sa - y * sb) % pw for x, y in zip(self.coeffs, other.coeffs)
        )
        return RawPadic(self.p, coeffs, shift, w)

    def to_padic(self) -> PAdic:
        if not self.is_scalar():
            raise UnsupportedValue(
                "value lies in Z_q but not Z_p; only its vanishing can be asserted"
            )
        out = PAdic.from_residue(self.coeffs[0] % self.p**self.w, self.p, self.w)
        if self.shift == 0:
            return out
        if out.val is None:
            return PAdic.zero(self.p, self.abs_prec)
        return PAdic(self.p, out.val - self.shift, out.unit, out.prec)


_zq_contexts: dict[tuple[int, int, int], ZqContext] = {}


def _zq(field: FiniteField, w: int) -> ZqContext:
    key = (field.p, field.r, w)
    if key not in _zq_contexts:
        _zq_contexts[key] = ZqContext(field, w)
    return _zq_contexts[key]


def _lam_element(field: FiniteField, lam) -> FieldElement:
    if isinstance(lam, FieldElement):
        return lam
    return field.from_rational(Fraction(lam))


class _Summation:
    """Assembles one j-sum: gamma-ratio rows, exponent pre-pass, batch
    gamma resolution, and the omega-weighted accumulation."""

    def __init__(self, field: FiniteField, prec: int):
        if field.p == 2:
            raise EvenPrime("p-adic hypergeometric sums need odd p")
        self.field = field
        self.p, self.r, self.q = field.p, field.r, field.q
        self.prec = prec
        self.rows: list[tuple[int, int, int]] = []  # (numerator, j-step, denominator)
        self.den_args: list[tuple[int, int]] = []
        self.s_pows: list[int] | None = None  # extra p-power exponents per j
        self.parity_const = 0

    def add_param(self, x: Fraction, side: str):
        """Register the gamma-ratio rows of one top (side 'a') or bottom
        (side 'b') parameter; steps are signed so that row numerators are
        num - j*step."""
        d = x.denominator
        if d % self.p == 0:
            raise NotPIntegral(f"parameter {x} is not p-integral at p = {self.p}")
        L = d * (self.q - 1)
        for k in range(self.r):
            base = frac_part((x if side == "a" else -x) * self.p**k)
            num = int(base * L)
            step = self.p**k * d * (1 if side == "a" else -1)
            self.rows.append((num, step, L))
            self.den_args.append((num, L))

    def add_gamma_only(self, step_mult: int):
        """Register rows gamma_p(<-j * step_mult * p^k / (q-1)>) with no
        denominator (the defined-over-Q route), for all k."""
        L = self.q - 1
        for k in range(self.r):
            self.rows.append((0, step_mult * self.p**k, L))

    def run(self, lam_dlog: int, parity_j: int, s_at=None) -> RawPadic:
        """Evaluate sum_j (-1)^(j*parity_j + floors) p-powers gammas
        omega^(-j lam_dlog), times -1/(q-1)."""
        p, q, r = self.p, self.q, self.r

        efloors = []
        epows = []
        svals = [s_at(j) for j in range(q - 1)] if s_at else None
        for j in range(q - 1):
            e = 0
            for num, step, L in self.rows:
                e -= (num - j * step) // L
            efloors.append(e)
            # q-powers are pure p-powers (no sign), floors carry the signs
            epows.append(e + r * svals[j] if svals is not None else e)
        shift = max(0, -min(epows))
        w = self.prec + shift
        pw = p**w
        cache = gamma_cache(p, w)

        inv_l = {}
        for _, _, L in self.rows:
            if L not in inv_l:
                inv_l[L] = pow(L, -1, pw)
        indices = set()
        row_idx = []
        for num, step, L in self.rows:
            invL = inv_l[L]
            col = [((num - j * step) % L) * invL % pw for j in range(q - 1)]
            indices.update(col)
            row_idx.append(col)
        cache.ensure(indices)

        denom = 1
        for num, L in self.den_args:
            cache.ensure([num % L * inv_l[L] % pw])
            denom = denom * cache.get(num % L * inv_l[L] % pw) % pw
        dinv = pow(denom, -1, pw)

        zq = _zq(self.field, w)
        acc = [0] * r
        for j in range(q - 1):
            e = epows[j]
            if e + shift >= w:
                continue
            unit = dinv
            parity = j * parity_j + efloors[j]
            for col in row_idx:
                unit = unit * cache.get(col[j]) % pw
            if parity % 2:
                unit = pw - unit
            unit = unit * p ** (e + shift) % pw
            om = zq.omega_power(-j * lam_dlog)
            for i in range(r):
                acc[i] = (acc[i] + unit * om[i]) % pw
        c = pw - pow(q - 1, -1, pw)
        return RawPadic(p, tuple(c * x % pw for x in acc), shift, w)


def raw_sum(params: GParams, lam, field: FiniteField, prec: int) -> RawPadic:
    """The defining j-sum, as a RawPadic (Z_q coefficients over p^shift)."""
    params.check_char(field.p)
    lam = _lam_element(field, lam)
    if lam.is_zero():
        return RawPadic(field.p, (0,) * field.r, 0, prec)
    s = _Summation(field, prec)
    for x in params.a:
        s.add_param(x, "a")
    for x in params.b:
        s.add_param(x, "b")
    return s.run(field.dlog(lam), len(params.a))


def raw_sum_over_Q(
    data: DefinedOverQData,
    lam,
    field: FiniteField,
    prec: int,
    extra_top=(),
    extra_bottom=(),
) -> RawPadic:
    """The j-sum through the x^n - 1 decomposition, as a RawPadic.

    The argument is scaled by the weight prod p_i^{p_i} / prod q_i^{q_i};
    the q-power q^(s(j) - s(0)) enters wherever zeta_{q-1}^j is a zero of
    the common factor.  Extras contribute defining-sum style rows and need
    no congruence condition here (only p-integrality).
    """
    p, q = field.p, field.q
    if not data.admissible_char(p):
        raise NotPIntegral(f"decomposition exponents share a factor with p = {p}")
    lam = _lam_element(field, lam)
    u = field.from_rational(data.scale) * lam
    if u.is_zero():
        return RawPadic(p, (0,) * field.r, 0, prec)

    s = _Summation(field, prec)
    for pi in data.p_exps:
        s.add_gamma_only(pi)
    for qi in data.q_exps:
        s.add_gamma_only(-qi)
    for x in extra_top:
        s.add_param(Fraction(x), "a")
    for x in extra_bottom:
        s.add_param(Fraction(x), "b")

    m = data.top_len + len(extra_top)
    s0 = data.s_at(0, q)
    return s.run(
        field.dlog(u),
        m + data.delta,
        s_at=lambda j: data.s_at(j, q) - s0,
    )


# -- spec-level operations ----------------------------------------------------------

def g_eval(params: GParams, lam, field: FiniteField, prec: int) -> PAdic:
    """The p-adic hypergeometric sum at lambda, to absolute precision p^prec."""
    return raw_sum(params, lam, field, prec).to_padic()


def g_eval_over_Q(
    data: DefinedOverQData,
    lam,
    field: FiniteField,
    prec: int,
    extra_top=(),
    extra_bottom=(),
) -> PAdic:
    return raw_sum_over_Q(data, lam, field, prec, extra_top, extra_bottom).to_padic()


def g_route_residual(params: GParams, lam, field: FiniteField, prec: int) -> RawPadic:
    """Difference of the defining sum and the defined-over-Q route (zero)."""
    data = derive_defined_over_Q(params.a, params.b)
    return raw_sum(params, lam, field, prec) - raw_sum_over_Q(data, lam, field, prec)


def split_params(params: GParams, n: int) -> GParams:
    """The order-nm parameter lists {a_i + l/n}, {b_i + l/n}."""
    a = tuple(x + Fraction(l, n) for x in params.a for l in range(n))
    b = tuple(x + Fraction(l, n) for x in params.b for l in range(n))
    return GParams(a, b)


def g_split_residual(
    params: GParams,
    n: int,
    lam,
    field: FiniteField,
    prec: int,
    converse: bool = False,
) -> RawPadic:
    """Residual of the order-n splitting of the p-adic sum, mod p^prec.

    Standard mode needs q = 1 mod n and (n a_i, n b_i) assembling into
    full root sets (checked); converse mode evaluates the order-nm sum at
    a non-n-th-power lambda, where it must vanish, with no hypothesis on
    the parameters.
    """
    q = field.q
    if (q - 1) % n != 0:
        raise OrderDoesNotDivide(f"{n} does not divide q-1 = {q - 1}")
    rhs_params = split_params(params, n)
    lam = _lam_element(field, lam)
    if converse:
        return raw_sum(rhs_params, lam, field, prec)

    scaled = GParams(tuple(n * x for x in params.a), tuple(n * x for x in params.b))
    derive_defined_over_Q(scaled.a, scaled.b)  # raises NotDefinedOverQ if not
    zeta = field.primitive_root_of_unity(n)
    total = None
    x = lam
    for _ in range(n):
        term = raw_sum(scaled, x, field, prec)
        total = term if total is None else _raw_add(total, term)
        x = x * zeta
    return total - raw_sum(rhs_params, lam**n, field, prec)


def _raw_add(a: RawPadic, b: RawPadic) -> RawPadic:
    neg = RawPadic(b.p, tuple(-c for c in b.coeffs), b.shift, b.w)
    return a - neg


def fg_consistency(params: GParams, lam, field: FiniteField, prec: int) -> RawPadic:
    """Residual of the bridge between the finite-field and p-adic sums.

    The finite-field sum with characters omega^(-a_i(q-1)), omega^(-b_i(q-1))
    at lambda equals the p-adic sum at 1/lambda; the finite-field value must
    be rational for the comparison to live in Q_p.
    """
    q = field.q
    d = lcm(*[x.denominator for x in params.a + params.b], 1)
    if (q - 1) % d != 0:
        raise DomainViolation(f"q = {q} is not 1 mod {d}")
    lam_el = _lam_element(field, lam)
    if lam_el.is_zero():
        raise DomainViolation("lambda must be nonzero (the bridge inverts it)")
    top = tuple(int(-x * (q - 1)) % (q - 1) for x in params.a)
    bottom = tuple(int(-x * (q - 1)) % (q - 1) for x in params.b)
    fval = ff_hyper(FFHyperParams(field, top, bottom), lam_el)
    if not fval.is_rational():
        raise NonRationalFValue("finite-field value is irrational; no Q_p comparison")
    g = raw_sum(params, lam_el.inverse(), field, prec)
    frac = fval.rational_value()
    shift = 0
    den = frac.denominator
    while den % field.p == 0:
        den //= field.p
        shift += 1
    w = prec + shift
    fres = frac.numerator * pow(den, -1, field.p**w) % field.p**w
    fraw = RawPadic(field.p, (fres,) + (0,) * (field.r - 1), shift, w)
    return fraw - g
