"""Finite fields F_{p^r} with an explicit generator and full discrete-log table.

Elements are polynomials in a fixed root of the field modulus, stored as
coefficient tuples over F_p (constant term first) and encoded as integers
sum(c_i * p^i) for table indexing.  The modulus is the lexicographically
smallest monic irreducible of degree r, and the generator is the lex-least
element of multiplicative order q-1, so a field is reproducible from (p, r)
alone.  Fields are immutable after construction.
"""

from __future__ import annotations

from itertools import product

from .errors import FieldTooLarge, LogOfZero, NotPrime, OrderDoesNotDivide
from .numth import is_prime, prime_factors

DEFAULT_MAX_Q = 10**5


class FieldElement:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: "FiniteField", coeffs: tuple[int, ...]):
        self.field = field
        self.coeffs = coeffs

    @property
    def code(self) -> int:
        c = 0
        for digit in reversed(self.coeffs):
            c = c * self.field.p + digit
        return c

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __eq__(self, other):
        return (
            isinstance(other, FieldElement)
            and self.field is other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((id(self.field), self.coeffs))

    def __add__(self, other: "FieldElement") -> "FieldElement":
        p = self.field.p
        return FieldElement(
            self.field,
            tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)),
        )

    def __neg__(self) -> "FieldElement":
        p = self.field.p
        return FieldElement(self.field, tuple((-a) % p for a in self.coeffs))

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        return self + (-other)

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        f = self.field
        if self.is_zero() or other.is_zero():
            return f.zero
        k = (f.dlog(self) + f.dlog(other)) % (f.q - 1)
        return f.generator_power(k)

    def __pow__(self, n: int) -> "FieldElement":
        f = self.field
        if self.is_zero():
            if n <= 0:
                raise ZeroDivisionError("0 cannot be raised to a non-positive power")
            return f.zero
        return f.generator_power(f.dlog(self) * n % (f.q - 1))

    def inverse(self) -> "FieldElement":
        return self ** (-1)

    def __repr__(self):
        return f"FieldElement({self.coeffs}, q={self.field.q})"


class FiniteField:
    """F_q for q = p^r, with precomputed exponent and log tables."""

    def __init__(self, p: int, r: int, max_q: int = DEFAULT_MAX_Q):
        if r < 1:
            raise ValueError("extension degree must be >= 1")
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        q = p**r
        if q > max_q:
            raise FieldTooLarge(f"q = {q} exceeds the configured bound {max_q}")
        self.p = p
        self.r = r
        self.q = q
        self.modulus = self._find_modulus()
        self.zero = FieldElement(self, (0,) * r)
        self.one = FieldElement(self, (1,) + (0,) * (r - 1))
        self.generator = self._find_generator()
        self._build_log_tables()

    # -- construction helpers ------------------------------------------------

    def _find_modulus(self) -> tuple[int, ...]:
        p, r = self.p, self.r
        if r == 1:
            return (0, 1)
        for tail in product(range(p), repeat=r):
            f = tail + (1,)
            if self._is_irreducible(f):
                return f
        raise AssertionError("no irreducible polynomial found")  # unreachable

    def _is_irreducible(self, f: tuple[int, ...]) -> bool:
        p, r = self.p, self.r
        x = (0, 1)
        # x^(p^r) == x mod f, and x^(p^(r/l)) - x coprime to f for prime l | r.
        frob = x
        powers = [x]
        for _ in range(r):
            frob = _polypow_p(frob, p, f, p)
            powers.append(frob)
        if _polytrim(_polysub(frob, x, p)) != ():
            return False
        for ell in prime_factors(r):
            g = _polygcd(_polysub(powers[r // ell], x, p), f, p)
            if len(g) > 1:
                return False
        return True

    def _find_generator(self) -> FieldElement:
        p, r, q = self.p, self.r, self.q
        cofactors = [(q - 1) // ell for ell in prime_factors(q - 1)]
        for coeffs in product(range(p), repeat=r):
            if not any(coeffs):
                continue
            if all(
                _polytrim(_polypowmod(coeffs, c, self.modulus, p)) != (1,)
                for c in cofactors
            ):
                return FieldElement(self, coeffs)
        raise AssertionError("no generator found")  # unreachable

    def _build_log_tables(self):
        p, q = self.p, self.q
        exp = [None] * (q - 1)
        log = [-1] * q
        cur = (1,) + (0,) * (self.r - 1)
        gen = self.generator.coeffs
        for k in range(q - 1):
            exp[k] = cur
            code = 0
            for digit in reversed(cur):
                code = code * p + digit
            log[code] = k
            cur = tuple(_polyfull(_polymulmod(cur, gen, self.modulus, p), self.r))
        self._exp = exp
        self._log = log

    # -- element constructors -------------------------------------------------

    def element(self, coeffs) -> FieldElement:
        c = tuple(int(a) % self.p for a in coeffs)
        if len(c) != self.r:
            raise ValueError(f"expected {self.r} coefficients")
        return FieldElement(self, c)

    def scalar(self, n: int) -> FieldElement:
        return FieldElement(self, (n % self.p,) + (0,) * (self.r - 1))

    def from_rational(self, x) -> FieldElement:
        num, den = x.numerator, x.denominator
        if den % self.p == 0:
            raise ZeroDivisionError(f"denominator of {x} vanishes mod {self.p}")
        return self.scalar(num * pow(den, -1, self.p))

    def from_code(self, code: int) -> FieldElement:
        coeffs = []
        for _ in range(self.r):
            code, d = divmod(code, self.p)
            coeffs.append(d)
        return FieldElement(self, tuple(coeffs))

    def elements(self):
        for code in range(self.q):
            yield self.from_code(code)

    def units(self):
        for k in range(self.q - 1):
            yield FieldElement(self, self._exp[k])

    # -- core operations -------------------------------------------------------

    def dlog(self, x: FieldElement) -> int:
        if x.is_zero():
            raise LogOfZero("discrete log of zero")
        return self._log[x.code]

    def generator_power(self, k: int) -> FieldElement:
        return FieldElement(self, self._exp[k % (self.q - 1)])

    def primitive_root_of_unity(self, n: int) -> FieldElement:
        if n < 1 or (self.q - 1) % n != 0:
            raise OrderDoesNotDivide(f"{n} does not divide q-1 = {self.q - 1}")
        return self.generator_power((self.q - 1) // n)

    def is_nth_power(self, x: FieldElement, n: int) -> bool:
        if (self.q - 1) % n != 0:
            raise OrderDoesNotDivide(f"{n} does not divide q-1 = {self.q - 1}")
        return self.dlog(x) % n == 0

    def absolute_trace(self, x: FieldElement) -> int:
        """Trace to F_p: the sum of the r Frobenius images, as an integer mod p."""
        if x.is_zero():
            return 0
        total = [0] * self.r
        d = self.dlog(x)
        for k in range(self.r):
            img = self._exp[d * self.p**k % (self.q - 1)]
            for i in range(self.r):
                total[i] += img[i]
        assert all(t % self.p == 0 for t in total[1:]), "trace left the prime field"
        return total[0] % self.p

    def __repr__(self):
        return f"FiniteField(p={self.p}, r={self.r})"


# -- spec-level operation wrappers --------------------------------------------

_field_cache: dict[tuple[int, int, int], FiniteField] = {}


def make_field(p: int, r: int = 1, max_q: int = DEFAULT_MAX_Q) -> FiniteField:
    key = (p, r, max_q)
    if key not in _field_cache:
        _field_cache[key] = FiniteField(p, r, max_q)
    return _field_cache[key]


def dlog(field: FiniteField, x: FieldElement) -> int:
    return field.dlog(x)


def primitive_root_of_unity(field: FiniteField, n: int) -> FieldElement:
    return field.primitive_root_of_unity(n)


def is_nth_power(field: FiniteField, x: FieldElement, n: int) -> bool:
    return field.is_nth_power(x, n)


def absolute_trace(field: FiniteField, x: FieldElement) -> int:
    return field.absolute_trace(x)


# -- dense polynomial arithmetic over F_p (construction-time only) -------------

def _polytrim(a):
    a = tuple(a)
    while a and a[-1] == 0:
        a = a[:-1]
    return a


def _polyfull(a, r):
    a = tuple(a)
    return a + (0,) * (r - len(a))


def _polysub(a, b, p):
    n = max(len(a), len(b))
    a = a + (0,) * (n - len(a))
    b = b + (0,) * (n - len(b))
    return _polytrim(tuple((x - y) % p for x, y in zip(a, b)))


def _polymulmod(a, b, mod, p):
    a, b = _polytrim(a), _polytrim(b)
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] = (out[i + j] + ca * cb) % p
    dm = len(mod) - 1
    for d in range(len(out) - 1, dm - 1, -1):
        c = out[d]
        if c:
            out[d] = 0
            for i in range(dm):
                out[d - dm + i] = (out[d - dm + i] - c * mod[i]) % p
    return _polytrim(out[:dm])


def _polypowmod(a, n, mod, p):
    result = (1,)
    base = _polymulmod(a, (1,), mod, p)
    while n:
        if n & 1:
            result = _polymulmod(result, base, mod, p)
        base = _polymulmod(base, base, mod, p)
        n >>= 1
    return result


def _polypow_p(a, p, mod, modp):
    return _polypowmod(a, p, mod, modp)


def _polygcd(a, b, p):
    a, b = _polytrim(a), _polytrim(b)
    while b:
        inv = pow(b[-1], -1, p)
        bm = tuple(c * inv % p for c in b)
        r = list(a)
        db = len(bm) - 1
        for d in range(len(r) - 1, db - 1, -1):
            c = r[d]
            if c:
                r[d] = 0
                for i in range(db):
                    r[d - db + i] = (r[d - db + i] - c * bm[i]) % p
        a, b = b, _polytrim(r[:db])
    return a
