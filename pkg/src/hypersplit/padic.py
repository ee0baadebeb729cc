"""Fixed-precision p-adic arithmetic and the Morita gamma function.

A PAdic value is p^val * unit with the unit known to `prec` base-p digits;
addition/subtraction propagate absolute precision, multiplication/division
propagate relative precision.  gamma_p(x) is computed from a cached table
of the gamma function at all integers below p^M (one sequential pass per
(p, M), delegated to the kernel backend), using its 1-Lipschitz continuity:
congruent arguments mod p^M give congruent values mod p^M.

Also here: base-p digit expansions of rationals with the derived
fractional-part and floor formulas, their parity congruences, Teichmuller
lifts, and fixed-precision arithmetic in the unramified extension Z_q.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor, gcd

from . import backend
from .errors import (
    DivisionByZero,
    EvenPrime,
    NotIntegralAtF,
    NotPIntegral,
    PrecisionExhausted,
    PreconditionViolated,
    WorkBoundExceeded,
)
from .numth import multiplicative_order

GAMMA_WORK_BOUND = 10**8
GAMMA_TABLE_LIMIT = 4 * 10**6  # larger moduli use single-value products

_gamma_tables: dict[tuple[int, int], "object"] = {}


def frac_part(x: Fraction) -> Fraction:
    return Fraction(x) % 1


def rational_mod(x: Fraction, modulus: int) -> int:
    """Residue of a rational with p-unit denominator, in [0, modulus)."""
    x = Fraction(x)
    if gcd(x.denominator, modulus) != 1:
        raise NotPIntegral(f"denominator of {x} is not invertible mod {modulus}")
    return x.numerator * pow(x.denominator, -1, modulus) % modulus


def gamma_integer_table(p: int, m: int):
    """Morita gamma at 0..p^m-1, reduced mod p^m (cached per (p, m))."""
    pm = p**m
    if pm > GAMMA_TABLE_LIMIT:
        raise WorkBoundExceeded(
            f"gamma table of size {pm} exceeds the table limit {GAMMA_TABLE_LIMIT}"
        )
    key = (p, m)
    if key not in _gamma_tables:
        _gamma_tables[key] = backend.gamma_integer_table(p, pm)
    return _gamma_tables[key]


def gamma_p_residue(x: Fraction, p: int, m: int) -> int:
    """gamma_p(x) mod p^m as a plain integer, for x in Z_p.

    Congruent arguments give congruent values (the function is 1-Lipschitz),
    so the integer representative of x mod p^m determines the result.
    """
    if p == 2:
        raise EvenPrime("the p-adic gamma function is used here for odd p only")
    pm = p**m
    if pm > GAMMA_WORK_BOUND:
        raise WorkBoundExceeded(
            f"gamma at precision {p}^{m} needs {pm} multiplications (> {GAMMA_WORK_BOUND})"
        )
    n = rational_mod(x, pm)
    if pm <= GAMMA_TABLE_LIMIT:
        return int(gamma_integer_table(p, m)[n])
    return backend.gamma_partial(p, pm, n)


class GammaCache:
    """Gamma values mod p^m for batches of integer arguments.

    Small moduli keep the full table; larger ones resolve each batch of
    requested arguments with a single product sweep (so the cost is one
    pass of p^m multiplications per batch, not per argument).
    """

    SWEEP_BOUND = 2**34  # the sweep kernel's split multiplication limit

    def __init__(self, p: int, m: int):
        if p == 2:
            raise EvenPrime("odd p required")
        self.p = p
        self.m = m
        self.pm = p**m
        if self.pm <= GAMMA_TABLE_LIMIT:
            self._table = gamma_integer_table(p, m)
            self._values = None
        else:
            if self.pm > self.SWEEP_BOUND:
                raise WorkBoundExceeded(
                    f"gamma sweep at modulus {p}^{m} = {self.pm} is out of range"
                )
            self._table = None
            self._values = {0: 1}

    def ensure(self, indices):
        if self._table is not None:
            return
        missing = sorted(n for n in set(indices) if n not in self._values)
        if not missing:
            return
        vals = backend.gamma_sweep(self.p, self.pm, missing)
        self._values.update(zip(missing, (int(v) for v in vals)))

    def get(self, idx: int) -> int:
        if self._table is not None:
            return int(self._table[idx])
        return self._values[idx]


_gamma_caches: dict[tuple[int, int], GammaCache] = {}


def gamma_cache(p: int, m: int) -> GammaCache:
    key = (p, m)
    if key not in _gamma_caches:
        _gamma_caches[key] = GammaCache(p, m)
    return _gamma_caches[key]


def gamma_p(x, p: int, m: int) -> "PAdic":
    """The p-adic gamma function at a p-integral rational, to m digits."""
    return PAdic.from_residue(gamma_p_residue(Fraction(x), p, m), p, m)


def teichmuller(u, p: int, m: int) -> int:
    """The (p-1)-st root of unity in Z_p congruent to u, mod p^m."""
    pm = p**m
    t = rational_mod(Fraction(u), p)
    if t == 0:
        raise NotPIntegral(f"{u} is divisible by {p}")
    x = t
    for _ in range(m):
        x = pow(x, p, pm)
    return x


def symmetric_lift(residue: int, modulus: int) -> int:
    """Representative of residue mod modulus inside (-modulus/2, modulus/2]."""
    residue %= modulus
    return residue if 2 * residue <= modulus else residue - modulus


# -- the PAdic value type -----------------------------------------------------

@dataclass(frozen=True)
class PAdic:
    """p^val * unit, with unit a p-unit known mod p^prec (prec >= 1).

    A zero is stored with val=None; prec then records the absolute
    precision to which the value is known to vanish.
    """

    p: int
    val: int | None
    unit: int
    prec: int

    @staticmethod
    def zero(p: int, abs_prec: int) -> "PAdic":
        return PAdic(p, None, 0, abs_prec)

    @staticmethod
    def from_rational(x, p: int, prec: int) -> "PAdic":
        x = Fraction(x)
        if x == 0:
            return PAdic.zero(p, prec)
        val = 0
        num, den = x.numerator, x.denominator
        while num % p == 0:
            num //= p
            val += 1
        while den % p == 0:
            den //= p
            val -= 1
        return PAdic(p, val, num * pow(den, -1, p**prec) % p**prec, prec)

    @staticmethod
    def from_residue(residue: int, p: int, abs_prec: int) -> "PAdic":
        """Interpret an integer residue mod p^abs_prec as a p-adic value."""
        residue %= p**abs_prec
        if residue == 0:
            return PAdic.zero(p, abs_prec)
        val = 0
        while residue % p == 0:
            residue //= p
            val += 1
        return PAdic(p, val, residue, abs_prec - val)

    # -- views -----------------------------------------------------------------

    def is_zero(self) -> bool:
        return self.val is None

    @property
    def abs_prec(self) -> int:
        return self.prec if self.val is None else self.val + self.prec

    def residue(self, abs_prec: int | None = None) -> int:
        """The value mod p^abs_prec (requires val >= 0 and enough precision)."""
        target = self.abs_prec if abs_prec is None else abs_prec
        if target > self.abs_prec:
            raise PrecisionExhausted(
                f"value known mod p^{self.abs_prec}, requested p^{target}"
            )
        if self.val is None:
            return 0
        if self.val < 0:
            raise ValueError("negative valuation has no integer residue")
        return self.unit * self.p**self.val % self.p**target

    def lift(self, abs_prec: int | None = None) -> int:
        """Symmetric integer lift of the residue."""
        target = self.abs_prec if abs_prec is None else abs_prec
        return symmetric_lift(self.residue(target), self.p**target)

    def digits(self) -> tuple[int, ...]:
        """Base-p digits of the unit part, least significant first."""
        u, out = self.unit, []
        for _ in range(self.prec):
            u, d = divmod(u, self.p)
            out.append(d)
        return tuple(out)

    # -- arithmetic ---------------------------------------------------------------

    def _check(self, other: "PAdic"):
        if self.p != other.p:
            raise ValueError("mixed primes")

    def __add__(self, other: "PAdic") -> "PAdic":
        self._check(other)
        target = min(self.abs_prec, other.abs_prec)
        if target < 1:
            raise PrecisionExhausted("no digits survive the addition")
        vals = [t.val for t in (self, other) if t.val is not None]
        shift = max(0, -min(vals)) if vals else 0
        total = 0
        for term in (self, other):
            if term.val is not None:
                total += term.unit * term.p ** (term.val + shift)
        out = PAdic.from_residue(total, self.p, target + shift)
        if out.val is None:
            return PAdic.zero(self.p, target)
        return PAdic(self.p, out.val - shift, out.unit, out.prec)

    def __neg__(self) -> "PAdic":
        if self.val is None:
            return self
        return PAdic(self.p, self.val, (-self.unit) % self.p**self.prec, self.prec)

    def __sub__(self, other: "PAdic") -> "PAdic":
        return self + (-other)

    def __mul__(self, other: "PAdic") -> "PAdic":
        self._check(other)
        if self.val is None or other.val is None:
            prec = min(self.prec, other.prec) if None in (self.val, other.val) else 0
            return PAdic.zero(self.p, max(prec, 1))
        prec = min(self.prec, other.prec)
        return PAdic(
            self.p,
            self.val + other.val,
            self.unit * other.unit % self.p**prec,
            prec,
        )

    def __truediv__(self, other: "PAdic") -> "PAdic":
        self._check(other)
        if other.val is None:
            raise DivisionByZero("division by (indistinguishable-from-)zero")
        if self.val is None:
            return PAdic.zero(self.p, self.prec)
        prec = min(self.prec, other.prec)
        inv = pow(other.unit, -1, self.p**prec)
        return PAdic(
            self.p, self.val - other.val, self.unit * inv % self.p**prec, prec
        )

    def same(self, other: "PAdic") -> bool:
        """Agreement to the shared precision."""
        self._check(other)
        target = min(self.abs_prec, other.abs_prec)
        if self.val is not None and self.val < 0:
            return other.val == self.val and (
                (self.unit - other.unit) % self.p ** min(self.prec, other.prec) == 0
            )
        return (self - other).is_zero() or (self - other).val is None

    def __repr__(self):
        if self.val is None:
            return f"PAdic(0 mod {self.p}^{self.prec})"
        ds = ",".join(str(d) for d in self.digits())
        return f"PAdic({self.p}^{self.val}*[{ds}])"


def padic_arith(a: PAdic, b: PAdic, op: str) -> PAdic:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


# -- digit expansions and their parity congruences ------------------------------

@dataclass(frozen=True)
class DigitExpansion:
    """Digits z_1..z_f of (p^f - 1)a = z_f + z_1 p + ... + z_{f-1} p^{f-1}.

    Note the index convention: z_f is the units digit.
    """

    a: Fraction
    p: int
    f: int
    z: tuple[int, ...]  # z[i-1] = z_i

    def frac_rep(self, j: int) -> int:
        """The representative <a p^j>_0 in {1..p}: p - z_{f-j}, 0 <= j < f."""
        if not 0 <= j < self.f:
            raise ValueError("j out of range")
        return self.p - self.z[(self.f - j) - 1]

    def floor_pow(self, j: int) -> int:
        """floor(a p^j) = z_{f-j} + z_{f-j+1} p + ... + z_{f-1} p^{j-1}, 1 <= j < f."""
        if not 1 <= j < self.f:
            raise ValueError("j out of range")
        out = 0
        for i in range(j):
            out += self.z[(self.f - j) - 1 + i] * self.p**i
        return out


def digit_expansion(a, p: int, f: int) -> DigitExpansion:
    a = Fraction(a)
    if not 0 < a < 1:
        raise PreconditionViolated("need 0 < a < 1")
    if a.denominator % p == 0:
        raise NotPIntegral(f"denominator of {a} is divisible by {p}")
    scaled = (p**f - 1) * a
    if scaled.denominator != 1:
        raise NotIntegralAtF(f"(p^{f}-1)*{a} is not an integer")
    n = int(scaled)
    digits = []
    for _ in range(f):
        n, d = divmod(n, p)
        digits.append(d)
    # digits[0] is the units digit z_f; digits[i] = z_i for 1 <= i < f.
    z = tuple(digits[1:] + digits[:1])
    return DigitExpansion(a, p, f, z)


def _frac0(x: Fraction, p: int) -> int:
    """The representative of x in {1..p} mod p (denominator prime to p)."""
    r = rational_mod(x, p)
    return p if r == 0 else r


def parity_sums(mode: str, **kw):
    """The two digit-lemma congruences, evaluated exactly.

    mode='frac_rep_sum': returns (lhs, rhs) of
      sum_{k<r} <a p^k>_0 = r - (p^f-1)a + floor(a p^(f-1)) - floor(a p^(r-1))
    mod p-1.  mode='floor_pair_sum': returns
      sum_t floor(<t/l - j/(q-1)> p^(f-1)) - floor(<t/l - j/(q-1)> p^(r-1))
    mod 2, over 1 <= t < l coprime to l (zero when the hypotheses hold).
    """
    if mode == "frac_rep_sum":
        a, p, r, f = Fraction(kw["a"]), kw["p"], kw["r"], kw["f"]
        if not 0 < a < 1:
            raise PreconditionViolated("need 0 < a < 1")
        if ((p**f - 1) * a).denominator != 1:
            raise NotIntegralAtF(f"(p^{f}-1)a not integral")
        lhs = sum(_frac0(frac_part(a * p**k), p) for k in range(r)) % (p - 1)
        rhs = (
            r - (p**f - 1) * a + floor(a * p ** (f - 1)) - floor(a * p ** (r - 1))
        ) % (p - 1)
        return lhs, int(rhs)

    if mode == "floor_pair_sum":
        l, p, r, j = kw["l"], kw["p"], kw["r"], kw["j"]
        if l < 3:
            raise PreconditionViolated("need l >= 3")
        if gcd(p, l) != 1:
            raise PreconditionViolated("need gcd(p, l) = 1")
        q = p**r
        if q % l == 1:
            raise PreconditionViolated("need q != 1 mod l")
        fprime = multiplicative_order(q % l, l)
        f = r * fprime
        total = 0
        for t in range(1, l):
            if gcd(t, l) != 1:
                continue
            x = frac_part(Fraction(t, l) - Fraction(j, q - 1))
            total += floor(x * p ** (f - 1)) - floor(x * p ** (r - 1))
        return total % 2

    raise ValueError(f"unknown mode {mode!r}")


# -- identities of the gamma function ------------------------------------------

def gamma_reflection_residual(x, p: int, m: int) -> int:
    """gamma_p(x) gamma_p(1-x) - (-1)^(x mod p in {1..p}), mod p^m."""
    x = Fraction(x)
    lhs = gamma_p_residue(x, p, m) * gamma_p_residue(1 - x, p, m)
    rhs = (-1) ** _frac0(x, p)
    return (lhs - rhs) % p**m


def gamma_product_residual(n: int, x, p: int, r: int, m: int) -> int:
    """Residual of the multiplication formula of the gamma function, mod p^m.

    For p-unit n and 0 <= x < 1 with (q-1)x integral (q = p^r):
      prod_{k<r} prod_{h<n} gamma_p(<((x+h)/n) p^k>)
        = omega(n^((q-1)x)) prod_{k<r} gamma_p(<x p^k>)
          prod_{h=1..n-1} gamma_p(<(h/n) p^k>).
    """
    x = Fraction(x)
    q = p**r
    if n % p == 0:
        raise PreconditionViolated("need p not dividing n")
    if not 0 <= x < 1 or ((q - 1) * x).denominator != 1:
        raise PreconditionViolated("need 0 <= x < 1 with (q-1)x integral")
    pm = p**m
    lhs = 1
    for k in range(r):
        for h in range(n):
            lhs = lhs * gamma_p_residue(frac_part(Fraction(x + h, n) * p**k), p, m) % pm
    rhs = teichmuller(pow(n, int((q - 1) * x), pm), p, m)
    for k in range(r):
        rhs = rhs * gamma_p_residue(frac_part(x * p**k), p, m) % pm
        for h in range(1, n):
            rhs = rhs * gamma_p_residue(frac_part(Fraction(h, n) * p**k), p, m) % pm
    return (lhs - rhs) % pm


# -- the unramified extension Z_q ------------------------------------------------

class ZqContext:
    """Arithmetic in Z_q mod p^m, for Z_q the unramified extension with
    residue field F_q; elements are length-r coefficient tuples over the
    lift of the field modulus.  The Teichmuller lift of the field generator
    pins the (q-1)-st roots of unity compatibly with discrete logs."""

    def __init__(self, field, m: int):
        self.field = field
        self.p = field.p
        self.r = field.r
        self.q = field.q
        self.m = m
        self.pm = field.p**m
        self.modulus = tuple(int(c) for c in field.modulus)
        self._omega_pows = None

    def scalar(self, c: int) -> tuple[int, ...]:
        return (c % self.pm,) + (0,) * (self.r - 1)

    def add(self, a, b):
        return tuple((x + y) % self.pm for x, y in zip(a, b))

    def scale(self, c: int, a):
        return tuple(c * x % self.pm for x in a)

    def mul(self, a, b):
        r, pm = self.r, self.pm
        out = [0] * (2 * r - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] = (out[i + j] + x * y) % pm
        for d in range(2 * r - 2, r - 1, -1):
            c = out[d]
            if c:
                out[d] = 0
                for i in range(r):
                    out[d - r + i] = (out[d - r + i] - c * self.modulus[i]) % pm
        return tuple(out[:r])

    def pow(self, a, n: int):
        result = self.scalar(1)
        base = a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def teichmuller_generator(self):
        """omega(g) for g the field generator: the (q-1)-st root of unity
        congruent to g mod p, found by iterating the q-power map."""
        x = tuple(int(c) % self.pm for c in self.field.generator.coeffs)
        for _ in range(self.m // self.r + 2):
            x = self.pow(x, self.q)
        return x

    def omega_power(self, k: int):
        """omega(g)^k, from a table over k in [0, q-1)."""
        if self._omega_pows is None:
            omega = self.teichmuller_generator()
            pows = [self.scalar(1)]
            for _ in range(self.q - 2):
                pows.append(self.mul(pows[-1], omega))
            self._omega_pows = pows
        return self._omega_pows[k % (self.q - 1)]

    def is_scalar(self, a) -> bool:
        return all(c % self.pm == 0 for c in a[1:])
