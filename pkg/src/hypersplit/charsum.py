"""Multiplicative characters of F_q* and exact Gauss sums.

Characters are powers of the fixed primitive character T with
T(generator) = zeta_{q-1}.  The additive character is fixed as
theta(x) = zeta_p^Tr(x).  A Gauss sum g(T^k) = sum_x T^k(x) theta(x) is
therefore an element of Q(zeta_N) with N = p(q-1); internally it is kept
as a length-N count vector over the group ring Z[zeta_N] (exponent e
counts how many x contribute zeta_N^e), because long products of Gauss
sums are then plain cyclic convolutions, which the kernel backend runs
modulo word-size primes and CRT-reconstructs exactly.
"""

from __future__ import annotations

import numpy as np

from . import backend
from .cyclotomic import CycNumber, cyc_root
from .errors import OrderDoesNotDivide
from .ffield import FieldElement, FiniteField
from .intpoly import crt_primes, crt_reconstruct


class Character:
    """The multiplicative character T^k on F_q*, with chi(0) = 0."""

    __slots__ = ("field", "k")

    def __init__(self, field: FiniteField, k: int):
        self.field = field
        self.k = k % (field.q - 1)

    def __call__(self, x: FieldElement) -> CycNumber:
        if x.is_zero():
            return CycNumber.from_rational(self.field.q - 1, 0)
        return cyc_root(self.field.q - 1, self.k * self.field.dlog(x))

    def sign_at(self, x: FieldElement) -> int:
        """Value at x when it is +-1 (order-2 evaluations); raises otherwise."""
        v = self(x)
        if v == 1:
            return 1
        if v == -1:
            return -1
        raise ValueError("character value is not +-1")

    @property
    def is_trivial(self) -> bool:
        return self.k == 0

    def inverse(self) -> "Character":
        return Character(self.field, -self.k)

    def __mul__(self, other: "Character") -> "Character":
        return Character(self.field, self.k + other.k)

    def __pow__(self, n: int) -> "Character":
        return Character(self.field, self.k * n)

    def __eq__(self, other):
        return (
            isinstance(other, Character)
            and self.field is other.field
            and self.k == other.k
        )

    def __hash__(self):
        return hash((id(self.field), self.k))

    def __repr__(self):
        return f"Character(q={self.field.q}, k={self.k})"


def trivial(field: FiniteField) -> Character:
    return Character(field, 0)


def quadratic(field: FiniteField) -> Character:
    if field.q % 2 == 0:
        raise OrderDoesNotDivide("quadratic character needs odd q")
    return Character(field, (field.q - 1) // 2)


def order_n(field: FiniteField, n: int) -> Character:
    if (field.q - 1) % n != 0:
        raise OrderDoesNotDivide(f"{n} does not divide q-1 = {field.q - 1}")
    return Character(field, (field.q - 1) // n)


def char_eval(chi: Character, x: FieldElement) -> CycNumber:
    return chi(x)


# -- Gauss sum tables ----------------------------------------------------------

class GaussTable:
    """All Gauss sums of a field as group-ring count vectors."""

    def __init__(self, field: FiniteField):
        q, p = field.q, field.p
        self.field = field
        self.N = p * (q - 1)
        vecs = np.zeros((q - 1, self.N), dtype=np.int64)
        for d in range(q - 1):
            x = field.generator_power(d)
            base = (q - 1) * field.absolute_trace(x) % self.N
            step = p * d % self.N
            e = base
            for k in range(q - 1):
                vecs[k, e] += 1
                e += step
                if e >= self.N:
                    e -= self.N
        self.vecs = vecs
        self._cyc: dict[int, CycNumber] = {}

    def vec(self, k: int) -> np.ndarray:
        return self.vecs[k % (self.field.q - 1)]

    def cyc(self, k: int) -> CycNumber:
        k %= self.field.q - 1
        if k not in self._cyc:
            self._cyc[k] = CycNumber.from_group_ring(self.N, self.vecs[k].tolist())
        return self._cyc[k]


def gauss_table(field: FiniteField) -> GaussTable:
    table = getattr(field, "_gauss_table", None)
    if table is None:
        table = GaussTable(field)
        field._gauss_table = table
    return table


def gauss_sum(chi: Character) -> CycNumber:
    """g(chi) as an exact element of Q(zeta_{p(q-1)})."""
    return gauss_table(chi.field).cyc(chi.k)


def product_of_gauss(field: FiniteField, ks, shift: int = 0, sign: int = 1) -> CycNumber:
    """Exact sign * zeta_N^shift * prod_k g(T^k) via the kernel backend."""
    table = gauss_table(field)
    n = table.N
    shift %= n
    ks = [k % (field.q - 1) for k in ks]
    if not ks:
        vec = [0] * n
        vec[shift] = sign
        return CycNumber.from_group_ring(n, vec)
    primes = crt_primes((field.q - 1) ** len(ks))
    out = np.zeros((len(primes), n), dtype=np.int64)
    backend.chain_product(
        table.vecs,
        np.asarray(ks, dtype=np.int64),
        shift,
        np.asarray(primes, dtype=np.int64),
        out,
    )
    vec = crt_reconstruct(out, primes)
    if sign < 0:
        vec = [-c for c in vec]
    return CycNumber.from_group_ring(n, vec)


# -- the standard toolbox ---------------------------------------------------------

def orthogonality_sum(chi: Character, n: int) -> CycNumber:
    """sum_{l<n} chi(zeta_n^l); equals n when chi is an n-th power, else 0."""
    field = chi.field
    zeta = field.primitive_root_of_unity(n)  # raises OrderDoesNotDivide
    total = CycNumber.from_rational(field.q - 1, 0)
    x = field.one
    for _ in range(n):
        total = total + chi(x)
        x = x * zeta
    return total


def gauss_conjugation_residual(chi: Character) -> CycNumber:
    """g(chi)g(chi^-1) minus its closed form chi(-1)q (or 1 for trivial chi)."""
    field = chi.field
    lhs = product_of_gauss(field, [chi.k, -chi.k])
    if chi.is_trivial:
        rhs = CycNumber.from_rational(lhs.m, 1)
    else:
        rhs = chi(-field.one).embed(lhs.m) * field.q
    return lhs - rhs


def hasse_davenport_residual(field: FiniteField, n: int, psi: Character) -> CycNumber:
    """Difference of the two sides of the order-n Gauss sum product formula.

    prod_{l<n} g(chi_n^l psi) = g(psi^n) psi^-n(n) prod_{0<l<n} g(chi_n^l),
    for chi_n the canonical character of order n; zero iff the formula holds.
    """
    chi_n = order_n(field, n)  # raises OrderDoesNotDivide
    q = field.q
    lhs = product_of_gauss(field, [l * chi_n.k + psi.k for l in range(n)])
    n_elt = field.scalar(n)
    shift = field.p * (-n * psi.k % (q - 1)) * field.dlog(n_elt)
    rhs = product_of_gauss(
        field,
        [n * psi.k] + [l * chi_n.k for l in range(1, n)],
        shift=shift,
    )
    return lhs - rhs
