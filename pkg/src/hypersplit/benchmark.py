"""Timing comparison of the numba and numpy kernel backends.

Runs the two runtime-dominant kernels (cyclic convolution chains for the
character sums, and the integer gamma table) on representative sizes with
each backend, checking agreement and printing a small table.
"""

from __future__ import annotations

import time

import numpy as np

from . import backend


def _time(fn, repeat=3):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def run(sizes=((24, 120, 8), (18, 342, 6)), gamma=(13, 5)) -> list[dict]:
    """Benchmark both backends; returns row dicts and prints a table."""
    rows = []
    backends = ["numpy"]
    try:
        import numba  # noqa: F401
        backends.insert(0, "numba")
    except ImportError:
        pass

    rng = np.random.default_rng(0)
    for nchi, n, nfac in sizes:
        gtab = rng.integers(0, 20, size=(nchi, n)).astype(np.int64)
        idx = rng.integers(0, nchi, size=(nchi, nfac)).astype(np.int64)
        shifts = rng.integers(0, n, size=nchi).astype(np.int64)
        primes = np.asarray([1073741789, 1073741783, 1073741741], dtype=np.int64)
        results = {}
        timings = {}
        for name in backends:
            backend.set_backend(name)
            out = np.zeros((len(primes), n), dtype=np.int64)
            backend.char_sum(gtab, idx, shifts, primes, out)  # warm the JIT
            def work():
                acc = np.zeros((len(primes), n), dtype=np.int64)
                backend.char_sum(gtab, idx, shifts, primes, acc)
                return acc
            timings[name], results[name] = _time(work)
        assert all(np.array_equal(results[b], results[backends[0]]) for b in backends)
        rows.append({"kernel": f"char_sum({nchi}x{nfac}, N={n})", **timings})

    p, m = gamma
    timings = {}
    values = {}
    for name in backends:
        backend.set_backend(name)
        backend.gamma_integer_table(p, p**3)  # warm
        timings[name], values[name] = _time(lambda: np.asarray(backend.gamma_integer_table(p, p**m)))
    assert all(np.array_equal(values[b], values[backends[0]]) for b in backends)
    rows.append({"kernel": f"gamma_table({p}^{m})", **timings})
    backend.set_backend(None)

    width = max(len(r["kernel"]) for r in rows) + 2
    header = "kernel".ljust(width) + "".join(b.rjust(12) for b in backends)
    print(header)
    for r in rows:
        line = r["kernel"].ljust(width)
        for b in backends:
            line += f"{r[b]*1000:10.2f}ms"
        print(line)
    if len(backends) == 2:
        print(f"(speedups: " + ", ".join(
            f"{r['kernel']}: {r['numpy']/r['numba']:.1f}x" for r in rows) + ")")
    return rows
