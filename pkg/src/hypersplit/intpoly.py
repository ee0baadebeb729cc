"""Exact integer polynomial arithmetic.

Polynomials over Z are dense coefficient tuples, constant term first.
This module provides the cyclotomic polynomials, remainder by a monic
modulus, and Chinese-remainder reconstruction of coefficient vectors
that the kernels computed modulo several word-size primes.
"""

from __future__ import annotations

from functools import lru_cache

from .numth import divisors


def poly_mul(a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return tuple(out)


def poly_rem_monic(coeffs, mod):
    """Remainder of coeffs modulo a monic integer polynomial.

    Returns a list of len(mod)-1 coefficients (zero padded).
    """
    dm = len(mod) - 1
    r = list(coeffs)
    if len(r) < dm:
        r += [0] * (dm - len(r))
        return r
    for d in range(len(r) - 1, dm - 1, -1):
        c = r[d]
        if c:
            r[d] = 0
            off = d - dm
            for i in range(dm):
                if mod[i]:
                    r[off + i] -= c * mod[i]
    return r[:dm]


def poly_divmod_exact(num, den):
    """Quotient and remainder for integer polynomials with exact division steps.

    den need not be monic, but every elimination step must divide exactly
    (true for the x^m - 1 by cyclotomic divisions used here).
    """
    num = list(num)
    dd = len(den) - 1
    while den[dd] == 0:
        dd -= 1
    q = [0] * max(1, len(num) - dd)
    for d in range(len(num) - 1, dd - 1, -1):
        c = num[d]
        if c:
            t, rem = divmod(c, den[dd])
            if rem:
                raise ArithmeticError("non-exact polynomial division")
            q[d - dd] = t
            for i in range(dd + 1):
                num[d - dd + i] -= t * den[i]
    return tuple(q), tuple(num[:dd])


@lru_cache(maxsize=None)
def cyclotomic(m: int) -> tuple[int, ...]:
    """Coefficients of the m-th cyclotomic polynomial."""
    if m < 1:
        raise ValueError("cyclotomic index must be positive")
    poly = (-1,) + (0,) * (m - 1) + (1,)  # x^m - 1
    for d in divisors(m)[:-1]:
        poly, rem = poly_divmod_exact(poly, cyclotomic(d))
        if any(rem):
            raise ArithmeticError("cyclotomic division left a remainder")
    return poly


def reduce_mod_cyclotomic(coeffs, m: int) -> list[int]:
    """Reduce an integer coefficient vector modulo the m-th cyclotomic polynomial."""
    return poly_rem_monic(coeffs, cyclotomic(m))


# -- CRT reconstruction ------------------------------------------------------

@lru_cache(maxsize=1)
def _prime_pool() -> tuple[int, ...]:
    # Descending primes below 2**30; 64 of them covers ~1900 bits.
    from .numth import is_prime
    pool = []
    n = 2**30 - 1
    while len(pool) < 64:
        if is_prime(n):
            pool.append(n)
        n -= 2
    return tuple(pool)


def crt_primes(bound: int) -> tuple[int, ...]:
    """A prime set whose product exceeds 2*bound + 1 (signed reconstruction)."""
    need = 2 * bound + 2
    picked = []
    prod = 1
    for p in _prime_pool():
        picked.append(p)
        prod *= p
        if prod >= need:
            return tuple(picked)
    raise OverflowError("CRT prime pool exhausted; bound too large")


def crt_reconstruct(rows, primes) -> list[int]:
    """Combine residue rows (one per prime) into signed integers.

    rows[k][i] is coefficient i modulo primes[k]; the result is the unique
    representative in (-M/2, M/2] for M the product of the primes.
    """
    modulus = 1
    for p in primes:
        modulus *= p
    basis = []
    for p in primes:
        mk = modulus // p
        basis.append(mk * pow(mk % p, -1, p))
    half = modulus // 2
    n = len(rows[0])
    out = []
    for i in range(n):
        acc = 0
        for k in range(len(primes)):
            acc += int(rows[k][i]) * basis[k]
        acc %= modulus
        if acc > half:
            acc -= modulus
        out.append(acc)
    return out
