"""Hypergeometric character sums over F_q.

The order-m sum takes top characters A_i = T^{t_i} and bottom characters
B_i = T^{u_i} and evaluates

    -1/(q-1) sum_chi prod_i [g(A_i chi)/g(A_i)] [g((B_i chi)^-1)/g(B_i^-1)]
             chi(-1)^m chi(lambda),

an exact element of Q(zeta_{p(q-1)}).  The chi-independent denominators are
inverted through g(chi)g(chi^-1) = chi(-1)q, so the whole evaluation is a
batch of Gauss-vector convolutions handled by the kernel backend, followed
by one exact CRT reconstruction.

Also here: the root-of-unity splitting of these sums and its converse, the
reformulation available when the parameter characters assemble into full
sets of roots of x^n - 1 ("defined over Q"), and the closed Gauss-sum
reduction formulas at orders 4, 6 and 8.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

import numpy as np

from . import backend
from .charsum import gauss_table, product_of_gauss
from .cyclotomic import CycNumber
from .errors import (
    DegenerateCharacters,
    DomainViolation,
    NotDefinedOverQ,
    OrderDoesNotDivide,
)
from .ffield import FieldElement, FiniteField
from .intpoly import crt_primes, crt_reconstruct
from .numth import divisors, euler_phi


@dataclass(frozen=True)
class FFHyperParams:
    """Top/bottom character exponent lists for one hypergeometric sum.

    Equal lengths give the standard order-m sum; `generalized` permits
    unequal lengths (the chi(-1) power then uses the top length).
    """

    field: FiniteField
    top: tuple[int, ...]
    bottom: tuple[int, ...]
    generalized: bool = False

    def __post_init__(self):
        qm1 = self.field.q - 1
        object.__setattr__(self, "top", tuple(t % qm1 for t in self.top))
        object.__setattr__(self, "bottom", tuple(u % qm1 for u in self.bottom))
        if not self.generalized and len(self.top) != len(self.bottom):
            raise DomainViolation(
                "top and bottom lists must have equal length unless generalized"
            )
        if not self.top and not self.bottom:
            raise DomainViolation("at least one character parameter is required")


def _denominator_chain(field: FiniteField, top, bottom):
    """Constant factor 1/(prod g(T^t) prod g(T^-u)) as (idx, shift, sign, qpow).

    Each non-trivial Gauss sum inverts to T^e(-1) g(T^-e)/q; each trivial
    one is -1.  The returned chain multiplies the numerator instead.
    """
    q, p = field.q, field.p
    dlog_m1 = field.dlog(-field.one)
    idx: list[int] = []
    shift = 0
    sign = 1
    qpow = 0
    for t in top:
        t %= q - 1
        if t == 0:
            sign = -sign
        else:
            idx.append(q - 1 - t)
            shift += p * t * dlog_m1
            qpow += 1
    for u in bottom:
        v = -u % (q - 1)
        if v == 0:
            sign = -sign
        else:
            idx.append(u % (q - 1))
            shift += p * v * dlog_m1
            qpow += 1
    return idx, shift, sign, qpow


def _assemble(field, primes, chi_sum, den_idx, den_shift, den_sign, den_qpow, scale):
    """conv(chi-sum, denominator chain), CRT-reconstructed, times the scale."""
    table = gauss_table(field)
    n = table.N
    parr = np.asarray(primes, dtype=np.int64)
    if den_idx:
        den = np.zeros((len(primes), n), dtype=np.int64)
        backend.chain_product(
            table.vecs, np.asarray(den_idx, dtype=np.int64), den_shift % n, parr, den
        )
        out = np.zeros((len(primes), n), dtype=np.int64)
        backend.conv_pair(chi_sum, den, parr, out)
    else:
        out = np.roll(chi_sum, den_shift % n, axis=1)
    vec = crt_reconstruct(out, primes)
    value = CycNumber.from_group_ring(n, vec)
    return value * (scale * den_sign * Fraction(1, field.q**den_qpow))


def ff_hyper(params: FFHyperParams, lam: FieldElement) -> CycNumber:
    """The hypergeometric character sum at lambda, exactly."""
    field = params.field
    q, p = field.q, field.p
    table = gauss_table(field)
    n = table.N
    top, bottom = params.top, params.bottom
    nfac = len(top) + len(bottom)
    if lam.is_zero():
        # chi(0) = 0 kills every term, including the trivial character's.
        return CycNumber.from_rational(n, 0)

    dlog_m1 = field.dlog(-field.one)
    c = np.arange(q - 1, dtype=np.int64)
    cols = [(t + c) % (q - 1) for t in top] + [(-u - c) % (q - 1) for u in bottom]
    idx = np.ascontiguousarray(np.stack(cols, axis=1))
    shifts = p * c * (field.dlog(lam) + len(top) * dlog_m1) % n

    primes = crt_primes((q - 1) ** (2 * nfac + 1))
    parr = np.asarray(primes, dtype=np.int64)
    chi_sum = np.zeros((len(primes), n), dtype=np.int64)
    backend.char_sum(table.vecs, idx, shifts, parr, chi_sum)

    den_idx, den_shift, den_sign, den_qpow = _denominator_chain(field, top, bottom)
    return _assemble(
        field, primes, chi_sum, den_idx, den_shift, den_sign, den_qpow,
        Fraction(-1, q - 1),
    )


# -- splitting over roots of unity ----------------------------------------------

def split_parameters(field: FiniteField, n: int, top, bottom):
    """The order-nm parameter lists {T^{t_i} chi_n^l}, {T^{u_i} chi_n^l}."""
    if (field.q - 1) % n != 0:
        raise OrderDoesNotDivide(f"{n} does not divide q-1 = {field.q - 1}")
    step = (field.q - 1) // n
    rhs_top = tuple(t + l * step for t in top for l in range(n))
    rhs_bottom = tuple(u + l * step for u in bottom for l in range(n))
    return rhs_top, rhs_bottom


def ff_split_residual(
    field: FiniteField,
    n: int,
    top,
    bottom,
    lam: FieldElement,
    converse: bool = False,
) -> CycNumber:
    """Residual of the order-n splitting identity (zero when it holds).

    Standard mode compares sum_l F(A^n; B^n | zeta_n^l lambda) with the
    order-nm sum at lambda^n.  Converse mode evaluates only the order-nm
    sum at the given lambda (callers pass a non-n-th power, where the sum
    must vanish).
    """
    rhs_top, rhs_bottom = split_parameters(field, n, top, bottom)
    rhs_params = FFHyperParams(field, rhs_top, rhs_bottom)
    if converse:
        return ff_hyper(rhs_params, lam)
    q = field.q
    lhs_params = FFHyperParams(
        field, tuple(n * t for t in top), tuple(n * u for u in bottom)
    )
    zeta = field.primitive_root_of_unity(n)
    total = None
    x = lam
    for _ in range(n):
        term = ff_hyper(lhs_params, x)
        total = term if total is None else total + term
        x = x * zeta
    return total - ff_hyper(rhs_params, lam**n)


# -- parameters defined over Q ---------------------------------------------------

@dataclass(frozen=True)
class DefinedOverQData:
    """Decomposition prod(x - e^{2 pi i a})/prod(x - e^{2 pi i b}) =
    prod(x^{p_i}-1)/prod(x^{q_i}-1) with minimal lists, plus the data of the
    common factor D(x) = gcd of the two products."""

    p_exps: tuple[int, ...]
    q_exps: tuple[int, ...]
    top_len: int
    bottom_len: int
    common: tuple[tuple[int, int], ...]  # (l, multiplicity of Phi_l in D)
    delta: int
    scale: Fraction

    def common_multiplicity(self, c: Fraction) -> int:
        """Multiplicity of the zero e^{2 pi i c} of D(x); c reduced mod 1."""
        c = Fraction(c) % 1
        return dict(self.common).get(c.denominator, 0)

    def s_at(self, j: int, q: int) -> int:
        """Multiplicity of zeta_{q-1}^j as a zero of D(x)."""
        g = gcd(j % (q - 1), q - 1)
        return dict(self.common).get((q - 1) // g, 0)

    def admissible_char(self, p: int) -> bool:
        return all(n % p != 0 for n in self.p_exps + self.q_exps)


def derive_defined_over_Q(a_list, b_list) -> DefinedOverQData:
    """Decide whether parameter multisets are defined over Q and decompose them.

    The root multisets must be disjoint and their difference constant on
    each set of primitive l-th roots of unity; the minimal exponent lists
    then solve a triangular divisor system, largest order first.
    """
    from collections import Counter

    tops = Counter(Fraction(x) % 1 for x in a_list)
    bots = Counter(Fraction(x) % 1 for x in b_list)
    if tops & bots:
        raise NotDefinedOverQ(
            "top and bottom parameters share a root of unity; the "
            "decomposition bookkeeping requires disjoint multisets"
        )
    net = tops.copy()
    net.subtract(bots)

    gamma: dict[int, int] = {}
    for l in sorted({c.denominator for c in net}):
        orbit = [Fraction(t, l) for t in range(l) if gcd(t, l) == 1]
        vals = {net.get(c, 0) for c in orbit}
        if len(vals) > 1:
            raise NotDefinedOverQ(
                f"root multiset is not constant on the primitive {l}-th roots"
            )
        v = vals.pop()
        if v:
            gamma[l] = v

    dset = sorted({d for l in gamma for d in divisors(l)}, reverse=True)
    chat: dict[int, int] = {}
    for m in dset:
        chat[m] = gamma.get(m, 0) - sum(
            chat[m2] for m2 in dset if m2 > m and m2 % m == 0
        )
    p_exps = tuple(
        sorted((m for m in dset for _ in range(max(chat[m], 0))), reverse=True)
    )
    q_exps = tuple(
        sorted((m for m in dset for _ in range(max(-chat[m], 0))), reverse=True)
    )

    common = []
    delta = 0
    for l in dset:
        mu = min(
            sum(1 for n in p_exps if n % l == 0),
            sum(1 for n in q_exps if n % l == 0),
        )
        if mu:
            common.append((l, mu))
            delta += mu * euler_phi(l)
    scale = Fraction(1)
    for n in p_exps:
        scale *= Fraction(n) ** n
    for n in q_exps:
        scale /= Fraction(n) ** n

    data = DefinedOverQData(
        p_exps, q_exps, len(a_list), len(b_list), tuple(common), delta, scale
    )
    assert sum(p_exps) == len(a_list) + delta and sum(q_exps) == len(b_list) + delta
    return data


def ff_hyper_over_Q(
    field: FiniteField,
    data: DefinedOverQData,
    lam: FieldElement,
    extra_top=(),
    extra_bottom=(),
) -> CycNumber:
    """The hypergeometric sum through its defined-over-Q expression.

    Extras are fractional parameters outside the defined-over-Q part; they
    require q = 1 mod their common denominator.  The Gauss sums g(T^{j p_i}),
    g(T^{-j q_i}) replace the parameter-character ratios, at the cost of a
    q-power correction wherever zeta_{q-1}^{-j} meets a zero of D(x).
    """
    q, p = field.q, field.p
    if not data.admissible_char(p):
        raise DomainViolation(f"exponent lists are not coprime to p = {p}")
    extra_top = tuple(Fraction(x) % 1 for x in extra_top)
    extra_bottom = tuple(Fraction(x) % 1 for x in extra_bottom)
    d2 = lcm(1, *(x.denominator for x in extra_top + extra_bottom))
    if (q - 1) % d2 != 0:
        raise DomainViolation(
            f"q = {q} is not 1 mod {d2}, the denominator of the extra parameters"
        )

    table = gauss_table(field)
    n = table.N
    m = data.top_len + len(extra_top)
    t_cnt, s_cnt = len(data.p_exps), len(data.q_exps)

    sign_unit = -field.one if (m + data.delta) % 2 else field.one
    u = field.from_rational(1 / data.scale) * lam * sign_unit
    if u.is_zero():
        return CycNumber.from_rational(n, 0)
    du = field.dlog(u)

    ex_top = [int(a * (q - 1)) for a in extra_top]
    ex_bot = [int(b * (q - 1)) for b in extra_bottom]
    nfac = t_cnt + s_cnt + len(ex_top) + len(ex_bot)
    s_max = data.s_at(0, q)
    primes = crt_primes((q - 1) ** (2 * nfac + 1) * q**s_max)
    parr = np.asarray(primes, dtype=np.int64)

    # Group the j-terms by the q-power s(-j), then combine exactly.
    j = np.arange(q - 1, dtype=np.int64)
    cols = (
        [(j * pi) % (q - 1) for pi in data.p_exps]
        + [(-j * qi) % (q - 1) for qi in data.q_exps]
        + [(j + t) % (q - 1) for t in ex_top]
        + [(-j - t) % (q - 1) for t in ex_bot]
    )
    idx = np.ascontiguousarray(np.stack(cols, axis=1))
    shifts_all = p * j * du % n
    svals = np.array([data.s_at(-int(jj), q) for jj in j], dtype=np.int64)

    chi_sum = np.zeros((len(primes), n), dtype=np.int64)
    for s in sorted(set(svals.tolist())):
        mask = svals == s
        part = np.zeros((len(primes), n), dtype=np.int64)
        shifts = np.where(mask, shifts_all, -1)
        backend.char_sum(table.vecs, idx, shifts, parr, part)
        qs = q**s
        for k, pk in enumerate(primes):
            chi_sum[k] = (chi_sum[k] + (qs % pk) * part[k]) % pk

    den_idx, den_shift, den_sign, den_qpow = _denominator_chain(field, ex_top, ex_bot)
    scale = Fraction((-1) ** (t_cnt + s_cnt + 1), (q - 1) * q ** data.s_at(0, q))
    return _assemble(
        field, primes, chi_sum, den_idx, den_shift, den_sign, den_qpow, scale
    )


# -- Gauss-sum reduction formulas -------------------------------------------------

def gauss_ratio(field: FiniteField, num_exps, den_exps) -> CycNumber:
    """prod g(T^a) / prod g(T^b) as an exact cyclotomic number."""
    q, p = field.q, field.p
    dlog_m1 = field.dlog(-field.one)
    idx = [a % (q - 1) for a in num_exps]
    shift = 0
    sign = 1
    qpow = 0
    for b in den_exps:
        b %= q - 1
        if b == 0:
            sign = -sign
        else:
            idx.append(q - 1 - b)
            shift += p * b * dlog_m1
            qpow += 1
    return product_of_gauss(field, idx, shift=shift, sign=sign) * Fraction(1, q**qpow)


def _square_roots(field: FiniteField, e: int) -> list[int]:
    """Exponents r with 2r = e mod q-1 (q odd: none, or exactly two)."""
    qm1 = field.q - 1
    e %= qm1
    if e % 2:
        return []
    return [e // 2, e // 2 + qm1 // 2]


def ff_reduction(identity: str, field: FiniteField, a: int, b: int | None = None):
    """One of the closed-form reductions at argument 1: returns (lhs, rhs).

    identity 'm2' is the order-4 sum (needs A^2, B^4 nontrivial), 'm3' the
    order-6 sum (q = 1 mod 4, A^8 nontrivial), 'm4' the order-8 sum
    (q = 1 mod 4, A^4, B^8 nontrivial and A^2 != phi B^4); lhs is the
    hypergeometric sum, rhs the Gauss-sum expression.
    """
    q = field.q
    qm1 = q - 1
    if q % 2 == 0:
        raise DomainViolation("odd q required")
    phi = qm1 // 2
    one = field.one

    if identity == "m2":
        if b is None:
            raise DomainViolation("m2 needs two character exponents")
        if 2 * a % qm1 == 0 or 4 * b % qm1 == 0:
            raise DegenerateCharacters("need A^2 and B^4 nontrivial")
        params = FFHyperParams(
            field,
            (a, a + phi, b, b + phi),
            (0, phi, a - b, a - b + phi),
        )
        lhs = ff_hyper(params, one)
        rhs = gauss_ratio(field, [2 * b, -2 * a + 4 * b], [-2 * a + 2 * b, 4 * b])
        for r in _square_roots(field, 2 * a):
            rhs = rhs + gauss_ratio(
                field, [-2 * a, -r + 2 * b], [-r, -2 * a + 2 * b]
            )
        return lhs, rhs

    if identity == "m3":
        if q % 4 != 1:
            raise OrderDoesNotDivide("q = 1 mod 4 required")
        if 8 * a % qm1 == 0:
            raise DegenerateCharacters("need A^8 nontrivial")
        e4 = qm1 // 4
        params = FFHyperParams(
            field,
            (e4, -e4, e4 + a, -e4 + a, e4 - a, -e4 - a),
            (0, phi, -a, phi - a, a, phi + a),
        )
        lhs = ff_hyper(params, one)
        rhs = CycNumber.from_rational(field.p * qm1, 1)
        for r in _square_roots(field, phi):
            rhs = rhs + gauss_ratio(
                field, [-r + phi + 2 * a, -r + phi - 2 * a], [-r, -r]
            )
        if q % 8 == 1:
            for s in _square_roots(field, e4):
                rhs = rhs + gauss_ratio(
                    field, [s + a, e4 + s + a], [phi + s + a, -e4 + s + a]
                )
        return lhs, rhs

    if identity == "m4":
        if b is None:
            raise DomainViolation("m4 needs two character exponents")
        if q % 4 != 1:
            raise OrderDoesNotDivide("q = 1 mod 4 required")
        if 4 * a % qm1 == 0 or 8 * b % qm1 == 0:
            raise DegenerateCharacters("need A^4 and B^8 nontrivial")
        if (2 * a - phi - 4 * b) % qm1 == 0:
            raise DegenerateCharacters("need A^2 != phi B^4")
        e4 = qm1 // 4
        params = FFHyperParams(
            field,
            (a, a + phi, a + e4, a - e4, b, b + phi, b + e4, b - e4),
            (0, phi, e4, -e4, a - b, a - b + phi, a - b + e4, a - b - e4),
        )
        lhs = ff_hyper(params, one)
        rhs = gauss_ratio(field, [4 * b, -4 * a + 8 * b], [-4 * a + 4 * b, 8 * b])
        for r in _square_roots(field, 4 * a):
            rhs = rhs + gauss_ratio(
                field, [-4 * a, -r + 4 * b], [-r, -4 * a + 4 * b]
            )
        prefactor = gauss_ratio(
            field,
            [-2 * a, -2 * a + phi + 4 * b],
            [-2 * a + 2 * b, -2 * a + phi + 2 * b],
        )
        # The embedded 3-top/2-bottom sum at 1: filling the missing bottom
        # slot with the trivial character reproduces the order-8 sum exactly
        # (checked at many (q, a, b)); the bare unequal-length summand with
        # no filler does not.
        embedded = CycNumber.from_rational(field.p * qm1, 0)
        for r in _square_roots(field, 2 * a):
            inner = FFHyperParams(
                field,
                (r + phi - 2 * a, 2 * b, 2 * b + phi),
                (0, r, phi),
            )
            embedded = embedded + ff_hyper(inner, one)
        return lhs, rhs + prefactor * embedded

    raise DomainViolation(f"unknown reduction identity {identity!r}")


def ff_reduction_rhs(identity: str, field: FiniteField, a: int, b: int | None = None):
    return ff_reduction(identity, field, a, b)[1]
