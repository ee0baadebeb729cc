"""Kernel backend selection.

The exact cyclotomic products and the integer gamma table are the only
runtime-dominant loops in the package.  Both have a numba implementation
and a pure-numpy fallback with identical semantics.  Selection order:

* HYPERSPLIT_BACKEND=numpy forces the fallback,
* HYPERSPLIT_BACKEND=numba forces numba (ImportError if missing),
* otherwise numba is used when importable.
"""

from __future__ import annotations

import os

from . import _kernels_numpy

_BACKENDS = {}
_active = None


def _load(name: str):
    if name == "numpy":
        return _kernels_numpy
    if name == "numba":
        from . import _kernels_numba
        return _kernels_numba
    raise ValueError(f"unknown backend {name!r} (expected 'numba' or 'numpy')")


def _default_name() -> str:
    env = os.environ.get("HYPERSPLIT_BACKEND", "").strip().lower()
    if env:
        return env
    try:
        import numba  # noqa: F401
        return "numba"
    except ImportError:
        return "numpy"


def active():
    """Return the active kernel module, loading it on first use."""
    global _active
    if _active is None:
        name = _default_name()
        if name not in _BACKENDS:
            _BACKENDS[name] = _load(name)
        _active = _BACKENDS[name]
    return _active


def set_backend(name: str | None):
    """Force a backend ('numba'/'numpy'), or None to re-resolve lazily."""
    global _active
    if name is None:
        _active = None
        return
    if name not in _BACKENDS:
        _BACKENDS[name] = _load(name)
    _active = _BACKENDS[name]


def backend_name() -> str:
    mod = active()
    return "numba" if mod.__name__.endswith("numba") else "numpy"


def char_sum(gtab, idx, shifts, primes, out):
    active().char_sum(gtab, idx, shifts, primes, out)


def chain_product(gtab, idx, shift, primes, out):
    active().chain_product(gtab, idx, shift, primes, out)


def conv_pair(a, b, primes, out):
    active().conv_pair(a, b, primes, out)


def gamma_integer_table(p: int, pe: int):
    return active().gamma_integer_table(p, pe)


def gamma_partial(p: int, pe: int, n: int) -> int:
    return int(active().gamma_partial(p, pe, n))


def gamma_sweep(p: int, pe: int, targets):
    return active().gamma_sweep(p, pe, targets)
