import numpy as np
import pytest

from hypersplit import backend


def _have_numba():
    try:
        import numba  # noqa: F401
        return True
    except ImportError:
        return False


@pytest.fixture
def restore_backend():
    yield
    backend.set_backend(None)


@pytest.mark.skipif(not _have_numba(), reason="numba not installed")
def test_kernels_agree_across_backends(restore_backend):
    rng = np.random.default_rng(2)
    nchi, n, nfac = 12, 60, 5
    gtab = rng.integers(0, 25, size=(nchi, n)).astype(np.int64)
    idx = rng.integers(0, nchi, size=(nchi, nfac)).astype(np.int64)
    shifts = rng.integers(-1, n, size=nchi).astype(np.int64)
    primes = np.asarray([1073741789, 1073741783], dtype=np.int64)
    outs = {}
    for name in ("numba", "numpy"):
        backend.set_backend(name)
        acc = np.zeros((2, n), dtype=np.int64)
        backend.char_sum(gtab, idx, shifts, primes, acc)
        chain = np.zeros((2, n), dtype=np.int64)
        backend.chain_product(gtab, idx[0], 7, primes, chain)
        pair = np.zeros((2, n), dtype=np.int64)
        backend.conv_pair(acc, chain, primes, pair)
        gt = np.asarray(backend.gamma_integer_table(7, 7**4))
        gp = backend.gamma_partial(7, 7**4, 1234)
        gs = np.asarray(backend.gamma_sweep(7, 7**6, np.asarray([5, 70, 4321, 100000], dtype=np.int64)))
        outs[name] = (acc, chain, pair, gt, gp, gs)
    for a, b in zip(outs["numba"], outs["numpy"]):
        assert np.array_equal(np.asarray(a), np.asarray(b))


def test_gamma_sweep_matches_table(restore_backend):
    backend.set_backend("numpy")
    table = np.asarray(backend.gamma_integer_table(5, 5**5))
    targets = np.asarray([1, 2, 77, 624, 3000, 3124], dtype=np.int64)
    vals = backend.gamma_sweep(5, 5**5, targets)
    assert np.array_equal(np.asarray(vals), table[targets])


def test_env_flag_selects_backend(restore_backend, monkeypatch):
    monkeypatch.setenv("HYPERSPLIT_BACKEND", "numpy")
    backend.set_backend(None)
    assert backend.backend_name() == "numpy"


def test_benchmark_smoke(capsys):
    from hypersplit.benchmark import run

    rows = run(sizes=((6, 40, 3),), gamma=(5, 4))
    captured = capsys.readouterr()
    assert "char_sum" in captured.out
    assert rows
