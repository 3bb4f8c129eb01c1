import numpy as np
import pytest

from critgb import _pykernel
from critgb.kernels import backends

P = 65521


def _random_matrix(rng, rows, cols, rank_deficit=0):
    a = rng.integers(0, P, size=(rows, cols), dtype=np.int64)
    for k in range(rank_deficit):
        a[rows - 1 - k] = (a[k] * (k + 2) + a[k + 1]) % P
    return a


@pytest.fixture(scope="module")
def compiled():
    mods = dict(backends())
    if "compiled" not in mods:
        pytest.skip("compiled kernel not built")
    return mods["compiled"]


def test_backends_rref_identical(compiled):
    rng = np.random.default_rng(1)
    for rows, cols, deficit in [(6, 9, 2), (50, 70, 10), (80, 40, 5)]:
        a = _random_matrix(rng, rows, cols, deficit)
        b, c = a.copy(), a.copy()
        r1, p1 = compiled.rref(b, P, True)
        r2, p2 = _pykernel.rref(c, P, True)
        assert r1 == r2
        assert list(p1) == list(p2)
        assert np.array_equal(b, c)


def test_backends_rank_mode_agree(compiled):
    rng = np.random.default_rng(2)
    a = _random_matrix(rng, 40, 30, 6)
    assert compiled.rref(a.copy(), P, False)[0] == _pykernel.rref(a.copy(), P, False)[0]


def test_backends_axpy_identical(compiled):
    rng = np.random.default_rng(3)
    for _ in range(300):
        lh = int(rng.integers(0, 25))
        lg = int(rng.integers(0, 25))
        hc = np.sort(rng.choice(500, size=lh, replace=False).astype(np.int64))[::-1].copy()
        hv = rng.integers(1, P, size=lh, dtype=np.int64)
        gc = np.sort(rng.choice(500, size=lg, replace=False).astype(np.int64))[::-1].copy()
        gv = rng.integers(1, P, size=lg, dtype=np.int64)
        shift = int(rng.integers(0, 100))
        factor = int(rng.integers(0, P))
        a1, v1 = compiled.axpy_merge(hc, hv, gc, gv, shift, factor, P)
        a2, v2 = _pykernel.axpy_merge(hc, hv, gc, gv, shift, factor, P)
        assert np.array_equal(a1, a2) and np.array_equal(v1, v2)


def test_axpy_cancellation():
    hc = np.array([10, 5, 1], dtype=np.int64)
    hv = np.array([3, 7, 2], dtype=np.int64)
    # subtracting the same thing kills everything
    oc, ov = _pykernel.axpy_merge(hc, hv, hc, hv, 0, P - 1, P)
    assert oc.size == 0 and ov.size == 0


def test_axpy_empty_sides():
    hc = np.array([4, 2], dtype=np.int64)
    hv = np.array([1, 1], dtype=np.int64)
    e = np.empty(0, dtype=np.int64)
    oc, ov = _pykernel.axpy_merge(e, e, hc, hv, 3, 2, P)
    assert list(oc) == [7, 5] and list(ov) == [2, 2]
    oc, ov = _pykernel.axpy_merge(hc, hv, e, e, 0, 1, P)
    assert list(oc) == [4, 2]


def test_rref_is_canonical():
    # reduced echelon form is unique: shuffling rows changes nothing
    rng = np.random.default_rng(4)
    a = _random_matrix(rng, 30, 20, 8)
    perm = rng.permutation(30)
    b = a.copy()
    c = a[perm].copy()
    r1, p1 = _pykernel.rref(b, P, True)
    r2, p2 = _pykernel.rref(c, P, True)
    assert r1 == r2 and list(p1) == list(p2)
    assert np.array_equal(b[:r1], c[:r2])


def test_rref_idempotent():
    rng = np.random.default_rng(5)
    a = _random_matrix(rng, 25, 25, 5)
    r1, _ = _pykernel.rref(a, P, True)
    b = a[:r1].copy()
    r2, _ = _pykernel.rref(b, P, True)
    assert r2 == r1
    assert np.array_equal(a[:r1], b[:r2])
