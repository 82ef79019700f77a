import os
import subprocess
import sys
from collections import defaultdict

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from repstab import _backend, _kernels
from repstab.characters import Codec

keys_st = st.lists(st.tuples(st.integers(-2**40, 2**40), st.integers(-50, 50)), max_size=200)


def _reduce_ref(keys, coeffs):
    acc = defaultdict(int)
    for k, c in zip(keys, coeffs):
        acc[int(k)] += int(c)
    items = sorted(((k, c) for k, c in acc.items() if c), reverse=True)
    return [k for k, _ in items], [c for _, c in items]


@settings(deadline=None, max_examples=60)
@given(keys_st)
@pytest.mark.parametrize("name", ["numpy", "numba"])
def test_reduce_matches_reference(name, pairs):
    kernel_backend = _kernels.KERNELS[name]
    keys = np.array([k for k, _ in pairs], np.int64)
    coeffs = np.array([c for _, c in pairs], np.int64)
    k, c = kernel_backend["reduce_terms"](keys, coeffs)
    rk, rc = _reduce_ref(keys, coeffs)
    assert k.tolist() == rk and c.tolist() == rc


def test_reduce_extreme_keys(kernel_backend):
    keys = np.array([2**62, -2**62, 0, 2**62, -1, 1], np.int64)
    coeffs = np.array([1, 2, 3, 4, 5, 6], np.int64)
    k, c = kernel_backend["reduce_terms"](keys, coeffs)
    assert k.tolist() == [2**62, 1, 0, -1, -2**62]
    assert c.tolist() == [5, 6, 3, 5, 2]


def test_reduce_large_input_uses_wide_digits(kernel_backend):
    rng = np.random.default_rng(1)
    keys = rng.integers(-10**12, 10**12, 100_000).astype(np.int64)
    keys[: keys.size // 3] = keys[-(keys.size // 3):]
    coeffs = rng.integers(-3, 4, keys.size).astype(np.int64)
    k, c = kernel_backend["reduce_terms"](keys, coeffs)
    rk, rc = _reduce_ref(keys, coeffs)
    assert k.tolist() == rk and c.tolist() == rc


@settings(deadline=None, max_examples=40)
@given(keys_st, keys_st)
@pytest.mark.parametrize("name", ["numpy", "numba"])
def test_product_matches_reference(name, a, b):
    kernel_backend = _kernels.KERNELS[name]
    ka = np.array([k for k, _ in a], np.int64)
    ca = np.array([c for _, c in a], np.int64)
    kb = np.array([k for k, _ in b], np.int64)
    cb = np.array([c for _, c in b], np.int64)
    k, c = kernel_backend["product_terms"](ka, ca, kb, cb)
    keys = [x + y for x in ka.tolist() for y in kb.tolist()]
    coeffs = [x * y for x in ca.tolist() for y in cb.tolist()]
    rk, rc = _reduce_ref(keys, coeffs)
    assert k.tolist() == rk and c.tolist() == rc


def _divide_ref(gid, pos, coeffs):
    strings = defaultdict(dict)
    for g, p, c in zip(gid, pos, coeffs):
        strings[int(g)][int(p)] = int(c)
    out = {}
    for g, d in strings.items():
        total = 0
        for p in range(max(d), min(d) - 1, -1):
            total += d.get(p, 0)
            if total:
                out[(g, p)] = total
        if total:
            return None
    return out


@settings(deadline=None, max_examples=60)
@given(st.lists(st.tuples(st.integers(0, 4), st.integers(-6, 6), st.integers(-3, 3)), max_size=30),
       st.booleans())
@pytest.mark.parametrize("name", ["numpy", "numba"])
def test_string_divide_matches_reference(name, raw, make_exact):
    kernel_backend = _kernels.KERNELS[name]
    # build unique (gid, pos) and, if asked, multiply by (1 - e^-alpha) so it divides
    cells = {}
    for g, p, c in raw:
        if c:
            cells[(g, p)] = c
    if make_exact:
        prod = defaultdict(int)
        for (g, p), c in cells.items():
            prod[(g, p)] += c
            prod[(g, p - 1)] -= c
        cells = {k: v for k, v in prod.items() if v}
    gid = np.array([k[0] for k in cells], np.int64)
    pos = np.array([k[1] for k in cells], np.int64)
    coeffs = np.array(list(cells.values()), np.int64)
    g, p, c, exact = kernel_backend["string_divide"](gid, pos, coeffs)
    ref = _divide_ref(gid, pos, coeffs)
    if make_exact:
        assert ref is not None
    assert exact == (ref is not None)
    if exact:
        assert {(int(a), int(b)): int(x) for a, b, x in zip(g, p, c)} == ref


@given(st.integers(0, 6), st.integers(0, 40), st.data())
def test_codec_round_trip_and_order(n, bound, data):
    codec = Codec(n, bound)
    vec = st.lists(st.integers(-bound, bound), min_size=n, max_size=n)
    rows = data.draw(st.lists(vec, min_size=1, max_size=20))
    exps = np.array(rows, np.int64).reshape(len(rows), n)
    keys = codec.encode(exps)
    assert codec.decode(keys).tolist() == exps.tolist()
    order = sorted(range(len(rows)), key=lambda i: keys[i])
    assert [rows[i] for i in order] == sorted(rows)
    if len(rows) >= 2 and n:
        # additivity on sums that stay in range
        half = Codec(n, 2 * bound)
        s = exps[0] + exps[1]
        assert half.encode(s[None, :])[0] == half.encode(exps[:1])[0] + half.encode(exps[1:2])[0]


def test_backend_flag():
    assert _backend.BACKEND in ("numba", "numpy")
    code = "from repstab import _backend, _kernels; print(_backend.BACKEND, _kernels.reduce_terms.__name__)"
    out = subprocess.run([sys.executable, "-c", code], env=dict(os.environ, REPSTAB_BACKEND="numpy"),
                         capture_output=True, text=True, check=True).stdout.split()
    assert out == ["numpy", "reduce_terms_numpy"]
    bad = subprocess.run([sys.executable, "-c", "import repstab"],
                         env=dict(os.environ, REPSTAB_BACKEND="fortran"), capture_output=True, text=True)
    assert bad.returncode != 0 and "REPSTAB_BACKEND" in bad.stderr


def test_njit_fallback_is_identity(monkeypatch):
    monkeypatch.setattr(_backend, "NUMBA_AVAILABLE", False)

    def f(x):
        return x + 1

    assert _backend.njit(f) is f
    assert _backend.njit(cache=True)(f) is f


@pytest.mark.parametrize("backend", ["numpy", "numba"])
def test_characters_identical_across_backends(backend):
    code = (
        "from repstab import sp_character, gl_character, SpLabel, GlLabel\n"
        "f = sp_character(SpLabel.of((2, 1)), 3) * gl_character(GlLabel.of((1,), (1,)), 3)\n"
        "print(sorted(f.terms().items()))\n"
    )
    out = subprocess.run([sys.executable, "-c", code], env=dict(os.environ, REPSTAB_BACKEND=backend),
                         capture_output=True, text=True, check=True).stdout
    ref = subprocess.run([sys.executable, "-c", code], env=dict(os.environ, REPSTAB_BACKEND="numpy"),
                         capture_output=True, text=True, check=True).stdout
    assert out == ref and out.strip()
