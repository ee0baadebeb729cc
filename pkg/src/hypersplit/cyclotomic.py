"""Exact arithmetic in the cyclotomic fields Q(zeta_m).

A CycNumber is a vector in the power basis 1, z, ..., z^(phi(m)-1) of
Q(zeta_m) = Q[x]/Phi_m(x), stored as an integer coefficient vector with a
single positive denominator (always gcd-normalized, always reduced, so
equality is componentwise).  Character values, Gauss sums and the exact
hypergeometric sums built from them all live here.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import DivisionByZero, IndexMismatch, NotASubfieldIndex
from .intpoly import cyclotomic, poly_mul, reduce_mod_cyclotomic


class CycNumber:
    __slots__ = ("m", "num", "den")

    def __init__(self, m: int, num, den: int = 1, _reduced: bool = False):
        degree = len(cyclotomic(m)) - 1
        num = list(num)
        if any(isinstance(c, Fraction) for c in num):
            scale = 1
            for c in num:
                d = c.denominator if isinstance(c, Fraction) else 1
                scale = scale * d // gcd(scale, d)
            num = [int(c * scale) for c in num]
            den *= scale
        if not _reduced:
            num = reduce_mod_cyclotomic(num, m)
        num = list(num) + [0] * (degree - len(num))
        if den < 0:
            den = -den
            num = [-c for c in num]
        g = den
        for c in num:
            g = gcd(g, c)
            if g == 1:
                break
        if g > 1:
            den //= g
            num = [c // g for c in num]
        if not any(num):
            den = 1
        self.m = m
        self.num = tuple(num)
        self.den = den

    # -- constructors ---------------------------------------------------------

    @staticmethod
    def root(m: int, e: int) -> "CycNumber":
        """The root of unity zeta_m^e, canonically reduced."""
        e %= m
        vec = [0] * (e + 1)
        vec[e] = 1
        return CycNumber(m, vec)

    @staticmethod
    def from_rational(m: int, x) -> "CycNumber":
        x = Fraction(x)
        return CycNumber(m, [x.numerator], x.denominator)

    @staticmethod
    def from_group_ring(m: int, vec, den: int = 1) -> "CycNumber":
        """Interpret vec[k] as the coefficient of zeta_m^k and reduce."""
        return CycNumber(m, vec, den)

    # -- views ----------------------------------------------------------------

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("value is not rational")
        return Fraction(self.num[0], self.den)

    # -- ring operations --------------------------------------------------------

    def _match(self, other) -> "CycNumber":
        if isinstance(other, CycNumber):
            if other.m != self.m:
                raise IndexMismatch(
                    f"cyclotomic indices differ: {self.m} vs {other.m}; embed first"
                )
            return other
        return CycNumber.from_rational(self.m, other)

    def __add__(self, other):
        o = self._match(other)
        d = self.den * o.den // gcd(self.den, o.den)
        a, b = d // self.den, d // o.den
        return CycNumber(
            self.m,
            [a * x + b * y for x, y in zip(self.num, o.num)],
            d,
            _reduced=True,
        )

    __radd__ = __add__

    def __neg__(self):
        return CycNumber(self.m, [-c for c in self.num], self.den, _reduced=True)

    def __sub__(self, other):
        return self + (-self._match(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            x = Fraction(other)
            return CycNumber(
                self.m,
                [x.numerator * c for c in self.num],
                self.den * x.denominator,
                _reduced=True,
            )
        o = self._match(other)
        return CycNumber(self.m, poly_mul(self.num, o.num), self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "CycNumber":
        if self.is_zero():
            raise DivisionByZero("inverse of zero in Q(zeta_m)")
        inv_num, inv_den = _invert_mod_cyclotomic(self.num, self.m)
        # (num/den)^-1 = den * inv(num)
        return CycNumber(self.m, [self.den * c for c in inv_num], inv_den, _reduced=True)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            x = Fraction(other)
            if x == 0:
                raise DivisionByZero("division by zero")
            return self * Fraction(x.denominator, x.numerator)
        return self * self._match(other).inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.rational_value() == Fraction(other)
        return (
            isinstance(other, CycNumber)
            and self.m == other.m
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.m, self.num, self.den))

    # -- field embeddings ---------------------------------------------------------

    def embed(self, m_target: int) -> "CycNumber":
        """Image in Q(zeta_{m_target}) under zeta_m -> zeta_target^(target/m)."""
        if m_target % self.m != 0:
            raise NotASubfieldIndex(f"{self.m} does not divide {m_target}")
        step = m_target // self.m
        vec = [0] * ((len(self.num) - 1) * step + 1 or 1)
        for k, c in enumerate(self.num):
            if c:
                vec[k * step] += c
        return CycNumber(m_target, vec, self.den)

    def to_complex(self, digits: int = 30):
        """Numerical value at zeta_m = exp(2*pi*i/m), accurate to ~10^-digits."""
        import mpmath

        with mpmath.workdps(digits + 10):
            zeta = mpmath.exp(2j * mpmath.pi / self.m)
            acc = mpmath.mpc(0)
            for c in reversed(self.num):
                acc = acc * zeta + c
            return complex(acc / self.den) if digits <= 15 else acc / self.den

    def __str__(self):
        """Polynomial in z{m} = exp(2*pi*i/m), e.g. '1/2 - z12^2 + 3*z12^5'."""
        if self.is_rational():
            return str(self.rational_value())
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mag = abs(c)
            if k == 0:
                term = str(mag)
            else:
                z = f"z{self.m}" + (f"^{k}" if k > 1 else "")
                term = z if mag == 1 else f"{mag}*{z}"
            parts.append(("- " if c < 0 else "+ ") + term)
        joined = " ".join(parts)
        return joined[2:] if joined.startswith("+ ") else "-" + joined[2:]

    def __repr__(self):
        if self.is_rational():
            return f"CycNumber({self.m}, {self.rational_value()})"
        return f"CycNumber({self.m}, '{self}')"


def cyc_root(m: int, e: int) -> CycNumber:
    return CycNumber.root(m, e)


def cyc_arith(a: CycNumber, b: CycNumber, op: str) -> CycNumber:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def embed(x: CycNumber, m_target: int) -> CycNumber:
    return x.embed(m_target)


def to_complex(x: CycNumber, digits: int):
    return x.to_complex(digits)


# -- inversion modulo Phi_m -----------------------------------------------------

def _invert_mod_cyclotomic(num, m: int):
    """Inverse of an integer vector mod Phi_m, as (int vector, positive int den)."""
    phi = [Fraction(c) for c in cyclotomic(m)]
    a = [Fraction(c) for c in num]
    # Extended Euclid over Q[x]: maintain s with s*a = r (mod Phi_m).
    r0, r1 = phi, _ftrim(a)
    s0, s1 = [Fraction(0)], [Fraction(1)]
    while _fdeg(r1) > 0:
        q, rem = _fdivmod(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, _fsub(s0, _fmul(q, s1))
        if _fdeg(r1) < 0:
            raise DivisionByZero("element is a zero divisor mod Phi_m")
    c = r1[0]
    inv = [x / c for x in s1]
    den = 1
    for x in inv:
        den = den * x.denominator // gcd(den, x.denominator)
    return [int(x * den) for x in inv], den


def _ftrim(a):
    while a and a[-1] == 0:
        a = a[:-1]
    return a


def _fdeg(a):
    return len(a) - 1


def _fsub(a, b):
    n = max(len(a), len(b))
    a = a + [Fraction(0)] * (n - len(a))
    b = b + [Fraction(0)] * (n - len(b))
    return _ftrim([x - y for x, y in zip(a, b)])


def _fmul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return _ftrim(out)


def _fdivmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(1, len(a) - len(b) + 1)
    db = len(b) - 1
    lead = b[-1]
    for d in range(len(a) - 1, db - 1, -1):
        if a[d]:
            t = a[d] / lead
            q[d - db] = t
            for i in range(db + 1):
                a[d - db + i] -= t * b[i]
    return _ftrim(q), _ftrim(a[:db])
