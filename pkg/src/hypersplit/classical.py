"""Classical generalized hypergeometric series, factorial-free normalization.

The order-m series sum_k prod (a_i)_k / prod (b_i)_k z^k (no k! unless a
bottom parameter is 1) is summed three ways depending on the argument:

* |z| < 1: direct summation; coefficients update by exact rational ratios
  and the geometric tail is bounded by the observed term ratio.
* z = 1 (requires sum(b) - sum(a) > 1): the partial sums differ from the
  limit by n^(-alpha) (e0 + e1/n + ...) with alpha = sum(b) - sum(a) - 1,
  an asymptotic consequence of the gamma-quotient shape of the terms, so
  the limit is recovered by eliminating the leading tail basis functions
  n^(-alpha-i) against a grid of partial sums.  A few hundred terms give
  well over thirty digits even for alpha = 1/2.
* anything else: no convergent evaluation is attempted.

Also here: the root-of-unity splitting of the series, the arbitrary
precision Gamma wrapper, and the closed Gamma-quotient evaluations of the
order-4/6/8 series at unit argument.
"""

from __future__ import annotations

from fractions import Fraction

import mpmath as mp

from .errors import BottomPole, ConstraintViolated, GammaPole, NoConvergence

_DIRECT_RATIO_CAP = mp.mpf("0.99")
_DIRECT_TERM_CAP = 200_000


def _as_fraction_list(values):
    return [Fraction(v) for v in values]


def _is_nonpositive_integer(x: Fraction) -> bool:
    return x.denominator == 1 and x <= 0


def mfm_series(top, bottom, z, prec: int = 30):
    """The series at z to roughly 10^-prec, as an mpmath number.

    Bottom parameters must avoid nonpositive integers.  Inside the unit
    disc the series is summed directly; at z = 1 the tail-elimination
    scheme is used (needs sum(b) - sum(a) > 1).
    """
    top = _as_fraction_list(top)
    bottom = _as_fraction_list(bottom)
    for b in bottom:
        if _is_nonpositive_integer(b):
            raise BottomPole(f"bottom parameter {b} is a nonpositive integer")
    with mp.workdps(prec + 15):
        zval = mp.mpmathify(z)
        if zval == 1:
            return _unit_argument_sum(top, bottom, prec)
        if abs(zval) >= 1:
            raise NoConvergence(
                f"|z| = {mp.nstr(abs(zval), 8)} is outside the open unit disc "
                "(only z = 1 has an accelerated path)"
            )
        return _direct_sum(top, bottom, zval, prec)


def _direct_sum(top, bottom, zval, prec: int):
    with mp.workdps(prec + 15):
        tol = mp.mpf(10) ** (-(prec + 5))
        tf = [mp.mpf(t.numerator) / t.denominator for t in top]
        bf = [mp.mpf(b.numerator) / b.denominator for b in bottom]
        total = mp.mpf(0)
        coef = mp.mpf(1)
        zpow = mp.mpc(1) if isinstance(zval, mp.mpc) else mp.mpf(1)
        k = 0
        while True:
            term = coef * zpow
            total += term
            ratio = mp.mpf(1)
            for t in tf:
                ratio *= t + k
            for b in bf:
                ratio /= b + k
            coef *= ratio
            zpow *= zval
            k += 1
            if abs(term) < tol and abs(ratio * zval) < _DIRECT_RATIO_CAP:
                # geometric tail bound: |next| / (1 - ratio)
                bound = abs(coef * zpow) / (1 - abs(ratio * zval))
                if bound < tol:
                    return +total
            if k > _DIRECT_TERM_CAP:
                raise NoConvergence(
                    f"no convergence after {_DIRECT_TERM_CAP} terms at |z| = "
                    f"{mp.nstr(abs(zval), 8)}"
                )


def _unit_argument_sum(top, bottom, prec: int):
    alpha = sum(bottom) - sum(top) - 1
    if alpha <= 0:
        raise NoConvergence(
            f"series at 1 diverges: sum(bottom) - sum(top) = {alpha + 1} <= 1"
        )
    n0 = max(40, 2 * prec)
    h = max(20, n0 // 2)
    import math

    depth = int(math.ceil((prec + 15) / math.log10(n0))) + 2
    with mp.workdps(3 * prec + 40):
        af = mp.mpf(alpha.numerator) / alpha.denominator
        tf = [mp.mpf(t.numerator) / t.denominator for t in top]
        bf = [mp.mpf(b.numerator) / b.denominator for b in bottom]
        grid = [n0 + j * h for j in range(depth + 1)]
        wanted = set(grid)
        psums = {}
        total = mp.mpf(0)
        coef = mp.mpf(1)
        for k in range(grid[-1] + 1):
            if k in wanted:
                psums[k] = total
            total += coef
            ratio = mp.mpf(1)
            for t in tf:
                ratio *= t + k
            for b in bf:
                ratio /= b + k
            coef *= ratio
        # weights: sum w_j = 1 and sum w_j n_j^(-alpha-i) = 0, i < depth
        mat = mp.matrix(depth + 1, depth + 1)
        rhs = mp.matrix(depth + 1, 1)
        for c in range(depth + 1):
            mat[0, c] = 1
        rhs[0] = 1
        for i in range(1, depth + 1):
            for c in range(depth + 1):
                mat[i, c] = mp.mpf(grid[c]) ** (-af - (i - 1))
        weights = mp.lu_solve(mat, rhs)
        return +sum(weights[c] * psums[grid[c]] for c in range(depth + 1))


def classical_split_residual(a, b, n: int, z, prec: int = 30):
    """sum_l series(na; nb | xi_n^l z) - n * series({a+l/n}; {b+l/n} | z^n).

    All n+1 evaluations must converge (|z| < 1 keeps every argument inside
    the disc); the residual should vanish to working accuracy.
    """
    a = _as_fraction_list(a)
    b = _as_fraction_list(b)
    with mp.workdps(prec + 15):
        zval = mp.mpmathify(z)
        xi = mp.exp(2j * mp.pi / n)
        total = mp.mpc(0)
        for l in range(n):
            total += mfm_series(
                [n * x for x in a], [n * x for x in b], xi**l * zval, prec
            )
        big_top = [x + Fraction(l, n) for x in a for l in range(n)]
        big_bot = [x + Fraction(l, n) for x in b for l in range(n)]
        total -= n * mfm_series(big_top, big_bot, zval**n, prec)
        return +total


def gamma_real(x, prec: int = 30):
    """Gamma at a real (or complex) point, to prec digits."""
    with mp.workdps(prec + 10):
        xval = mp.mpmathify(x)
        if mp.im(xval) == 0 and xval == mp.floor(xval) and xval <= 0:
            raise GammaPole(f"gamma pole at {x}")
        return +mp.gamma(xval)


def _gquot(prec, nums, dens):
    with mp.workdps(prec + 15):
        out = mp.mpf(1)
        for v in nums:
            out *= gamma_real(v, prec + 10)
        for v in dens:
            out /= gamma_real(v, prec + 10)
        return out


def classical_reduction(identity: str, params, prec: int = 30):
    """LHS and closed RHS of the order-4/6/8 unit-argument reductions.

    'm2' takes (a, b) with Re(b) < 1/4, 'm3' takes (a,), 'm4' takes (a, b)
    with Re(b) < 1/8.  Returns (lhs, rhs) as mpmath numbers.
    """
    h = Fraction(1, 2)
    if identity == "m2":
        a, b = (Fraction(v) for v in params)
        if b >= Fraction(1, 4):
            raise ConstraintViolated("need Re(b) < 1/4")
        lhs = mfm_series(
            (a, a + h, b, b + h),
            (1, h, h + a - b, 1 + a - b),
            1,
            prec,
        )
        with mp.workdps(prec + 15):
            rhs = (
                _gquot(prec, [1 + 2 * a - 2 * b, 1 - 4 * b], [1 - 2 * b, 1 + 2 * a - 4 * b])
                + _gquot(prec, [1 + 2 * a - 2 * b, 1 + a], [1 + 2 * a, 1 + a - 2 * b])
            ) / 2
        return lhs, rhs

    if identity == "m3":
        (a,) = (Fraction(v) for v in params)
        qu = Fraction(1, 4)
        lhs = mfm_series(
            (qu, 3 * qu, qu + a, 3 * qu + a, qu - a, 3 * qu - a),
            (1, h, 1 - a, h - a, 1 + a, h + a),
            1,
            prec,
        )
        with mp.workdps(prec + 15):
            e8 = Fraction(1, 8)
            term1 = _gquot(prec, [qu, qu], [Fraction(3, 4) - 2 * a, Fraction(3, 4) + 2 * a])
            term2 = (
                mp.sqrt(2)
                * mp.pi**2
                / _gquot(prec, [a + 5 * e8, a + 7 * e8, -a + 5 * e8, -a + 7 * e8], [])
            )
            rhs = (
                _gquot(prec, [1 + 2 * a, 1 - 2 * a], []) / (4 * mp.pi) * (term1 + term2)
            )
        return lhs, rhs

    if identity == "m4":
        a, b = (Fraction(v) for v in params)
        if b >= Fraction(1, 8):
            raise ConstraintViolated("need Re(b) < 1/8")
        qu = Fraction(1, 4)
        lhs = mfm_series(
            (a, a + h, a + qu, a + 3 * qu, b, b + h, b + qu, b + 3 * qu),
            (1, h, qu, 3 * qu, h + a - b, 1 + a - b, qu + a - b, 3 * qu + a - b),
            1,
            prec,
        )
        with mp.workdps(prec + 15):
            part1 = (
                _gquot(prec, [1 + 4 * a - 4 * b, 1 - 8 * b], [1 - 4 * b, 1 + 4 * a - 8 * b])
                + _gquot(prec, [1 + 4 * a - 4 * b, 1 + 2 * a], [1 + 4 * a, 1 + 2 * a - 4 * b])
            ) / 4
            embedded = mfm_series(
                (h - a, 2 * b, 2 * b + h),
                (1, 1 + a, h),  # conventional 3F2: bottom slot 1 restores k!
                1,
                prec,
            )
            part2 = (
                _gquot(
                    prec,
                    [1 + 2 * a - 2 * b, h + 2 * a - 2 * b],
                    [1 + 2 * a, h + 2 * a - 4 * b],
                )
                / 2
                * embedded
            )
            rhs = part1 + part2
        return lhs, rhs

    raise ValueError(f"unknown reduction identity {identity!r}")
