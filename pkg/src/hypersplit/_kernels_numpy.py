"""Pure-numpy (and pure-Python) reference kernels.

These are the fallback implementations of the hot loops; `backend` selects
them when numba is unavailable or when HYPERSPLIT_BACKEND=numpy.  They are
exact: all arithmetic stays below 2**62 (vector entries are < 2**17 raw
counts, residues are < 2**31), so int64 never overflows.
"""

from __future__ import annotations

import numpy as np


def _conv_cyclic_mod(cur: np.ndarray, row: np.ndarray, p: int) -> np.ndarray:
    # cur holds residues < p, row holds raw counts; products stay < 2**48.
    n = cur.size
    out = np.zeros(n, dtype=np.int64)
    for i in range(n):
        ai = int(cur[i])
        if ai:
            out = (out + ai * np.roll(row, i)) % p
    return out


def char_sum(gtab, idx, shifts, primes, out):
    """Accumulate sum_c shift_c(prod_f gtab[idx[c,f]]) into out, per prime.

    Convolution is cyclic of length N = gtab.shape[1]; a negative shift
    marks a row to skip.  out has shape (len(primes), N).
    """
    nchi, nfac = idx.shape
    n = gtab.shape[1]
    for k, p in enumerate(primes):
        p = int(p)
        for c in range(nchi):
            sh = int(shifts[c])
            if sh < 0:
                continue
            cur = gtab[idx[c, 0]] % p
            for f in range(1, nfac):
                cur = _conv_cyclic_mod(cur, gtab[idx[c, f]], p)
            out[k] = (out[k] + np.roll(cur, sh)) % p


def chain_product(gtab, idx, shift, primes, out):
    """Add shift(prod_f gtab[idx[f]]) into out, per prime."""
    idx2 = np.asarray(idx, dtype=np.int64).reshape(1, -1)
    shifts = np.asarray([shift], dtype=np.int64)
    char_sum(gtab, idx2, shifts, primes, out)


def conv_pair(a, b, primes, out):
    """Per-prime cyclic convolution of residue rows: out[k] += a[k] * b[k]."""
    for k, p in enumerate(primes):
        p = int(p)
        out[k] = (out[k] + _conv_cyclic_mod(a[k] % p, b[k], p)) % p


def gamma_integer_table(p: int, pe: int) -> np.ndarray:
    """Table of the Morita gamma function at integers 0..pe-1, mod pe.

    Entry n is (-1)^n times the product of the positive integers below n
    that are prime to p; entry 0 is 1.
    """
    table = np.empty(pe, dtype=np.int64)
    table[0] = 1 % pe
    t = 1 % pe
    for n in range(1, pe):
        m = n - 1
        if m % p == 0:
            t = (t * (pe - 1)) % pe
        else:
            t = (t * (pe - m)) % pe
        table[n] = t
    return table


def gamma_sweep(p: int, pe: int, targets) -> np.ndarray:
    """Gamma values at many integer points in one pass over [1, max(targets)].

    targets must be sorted, unique, nonzero int64.  For pe < 2**31 the
    segment products use int64 tree reduction; larger moduli fall back to
    exact Python integers.
    """
    out = np.empty(len(targets), dtype=np.int64)
    if pe < 2**31:
        running = 1 % pe
        prev = 1
        for t_i, n in enumerate(targets):
            n = int(n)
            arr = np.arange(prev, n, dtype=np.int64)
            arr = arr[arr % p != 0] % pe
            while arr.size > 1:
                if arr.size % 2:
                    running = running * int(arr[-1]) % pe
                    arr = arr[:-1]
                arr = (arr[0::2] * arr[1::2]) % pe
            if arr.size:
                running = running * int(arr[0]) % pe
            prev = n
            out[t_i] = (pe - running) % pe if n % 2 else running
        return out
    running = 1 % pe
    prev = 1
    for t_i, n in enumerate(targets):
        n = int(n)
        for j in range(prev, n):
            if j % p:
                running = running * j % pe
        prev = n
        out[t_i] = (pe - running) % pe if n % 2 else running
    return out


def gamma_partial(p: int, pe: int, n: int) -> int:
    """Single value of the integer gamma function: (-1)^n prod_{0<j<n, p!|j} j mod pe.

    Chunked tree reduction; entries stay below pe <= 10^8 so pairwise
    products fit comfortably in int64.
    """
    out = 1
    chunk = 1 << 20
    for start in range(1, n, chunk):
        arr = np.arange(start, min(n, start + chunk), dtype=np.int64)
        arr = arr[arr % p != 0] % pe
        while arr.size > 1:
            if arr.size % 2:
                out = out * int(arr[-1]) % pe
                arr = arr[:-1]
            arr = (arr[0::2] * arr[1::2]) % pe
        if arr.size:
            out = out * int(arr[0]) % pe
    if n % 2:
        out = (pe - out) % pe
    return out
