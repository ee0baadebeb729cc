"""Numba-compiled kernels for the hot loops.

Same contracts as `_kernels_numpy`; see there for the overflow analysis.
Import of this module fails cleanly if numba is not installed.
"""

from __future__ import annotations

import numba
import numpy as np


@numba.njit(cache=True)
def char_sum(gtab, idx, shifts, primes, out):  # pragma: no cover - jitted
    nchi, nfac = idx.shape
    n = gtab.shape[1]
    nprimes = primes.shape[0]
    cur = np.empty(n, dtype=np.int64)
    nxt = np.empty(n, dtype=np.int64)
    for k in range(nprimes):
        p = primes[k]
        for c in range(nchi):
            sh = shifts[c]
            if sh < 0:
                continue
            row = gtab[idx[c, 0]]
            for i in range(n):
                cur[i] = row[i] % p
            for f in range(1, nfac):
                row = gtab[idx[c, f]]
                for i in range(n):
                    nxt[i] = 0
                for i in range(n):
                    ai = cur[i]
                    if ai == 0:
                        continue
                    t = i
                    for j in range(n):
                        nxt[t] = (nxt[t] + ai * row[j]) % p
                        t += 1
                        if t == n:
                            t = 0
                for i in range(n):
                    cur[i] = nxt[i]
            t = sh
            for i in range(n):
                out[k, t] = (out[k, t] + cur[i]) % p
                t += 1
                if t == n:
                    t = 0


@numba.njit(cache=True)
def _chain_product(gtab, idx, shifts, primes, out):  # pragma: no cover - jitted
    char_sum(gtab, idx, shifts, primes, out)


def chain_product(gtab, idx, shift, primes, out):
    idx2 = np.ascontiguousarray(np.asarray(idx, dtype=np.int64).reshape(1, -1))
    shifts = np.asarray([shift], dtype=np.int64)
    _chain_product(gtab, idx2, shifts, primes, out)


@numba.njit(cache=True)
def conv_pair(a, b, primes, out):  # pragma: no cover - jitted
    nprimes, n = a.shape
    tmp = np.empty(n, dtype=np.int64)
    for k in range(nprimes):
        p = primes[k]
        for i in range(n):
            tmp[i] = 0
        for i in range(n):
            ai = a[k, i] % p
            if ai == 0:
                continue
            t = i
            for j in range(n):
                tmp[t] = (tmp[t] + ai * (b[k, j] % p)) % p
                t += 1
                if t == n:
                    t = 0
        for i in range(n):
            out[k, i] = (out[k, i] + tmp[i]) % p


@numba.njit(cache=True)
def gamma_integer_table(p, pe):  # pragma: no cover - jitted
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


@numba.njit(cache=True)
def _gamma_sweep(p, pe, targets, out):  # pragma: no cover - jitted
    # Split multiplication keeps products below 2**52 for pe < 2**34.
    split = pe >= 2**31
    running = 1 % pe
    prev = 1
    for t_i in range(targets.shape[0]):
        n = targets[t_i]
        if split:
            for j in range(prev, n):
                if j % p:
                    hi = j >> 17
                    lo = j & 0x1FFFF
                    running = (((running * hi) % pe << 17) + running * lo) % pe
        else:
            for j in range(prev, n):
                if j % p:
                    running = running * j % pe
        prev = n
        if n % 2:
            out[t_i] = (pe - running) % pe
        else:
            out[t_i] = running


def gamma_sweep(p: int, pe: int, targets) -> np.ndarray:
    targets = np.ascontiguousarray(np.asarray(targets, dtype=np.int64))
    out = np.empty(len(targets), dtype=np.int64)
    _gamma_sweep(p, pe, targets, out)
    return out


@numba.njit(cache=True)
def _gamma_partial(p, pe, n):  # pragma: no cover - jitted
    t = 1 % pe
    for j in range(1, n):
        if j % p != 0:
            t = (t * j) % pe
    if n % 2:
        t = (pe - t) % pe
    return t


def gamma_partial(p: int, pe: int, n: int) -> int:
    return int(_gamma_partial(p, pe, n))
