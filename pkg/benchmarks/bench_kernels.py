"""Time the numba and numpy kernels on character-sized inputs.

    python benchmarks/bench_kernels.py [--repeat 5]

Both backends are imported side by side (the env flag only picks the
default), so one run compares them on identical data.
"""

import argparse
import os
import subprocess
import sys
import time

import numpy as np

from repstab import _kernels
from repstab.characters import Codec, _signed_alternant, sp_character
from repstab.labels import SpLabel


def best_of(fn, repeat):
    fn()  # warm-up, includes JIT compilation for numba
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def cases():
    rng = np.random.default_rng(0)
    f = sp_character(SpLabel.of((2, 1)), 5)
    codec = Codec(5, 2 * f.max_abs_exponent())
    keys = codec.encode(f.exps)
    yield "product", "product_terms", (keys, f.coeffs, keys, f.coeffs)

    raw = rng.integers(-5000, 5000, 2_000_000).astype(np.int64)
    yield "reduce", "reduce_terms", (raw, np.ones_like(raw))

    n = 6
    l = [1 + n - i for i in range(n)]
    exps, coeffs = _signed_alternant(l)
    codec = Codec(n, 3 * l[0] + 2)
    k = codec.encode(exps)
    pos = np.floor_divide(codec.digit(k, 0), 2)
    ka = codec.encode_one((2,) + (0,) * (n - 1))
    yield "string_divide", "string_divide", (k - pos * ka, pos, coeffs)


WORKLOAD = """
import time
from repstab import SequenceSpec, generate, sp_character, SpLabel
sp_character(SpLabel.of((1,)), 2)  # JIT warm-up
t = time.perf_counter()
generate(SequenceSpec.h1_ia(), 2, 7)
generate(SequenceSpec.h1_torelli(), 2, 7)
sp_character(SpLabel.of((2, 1, 1)), 6)
print(time.perf_counter() - t)
"""


def end_to_end(backend):
    env = dict(os.environ, REPSTAB_BACKEND=backend)
    out = subprocess.run([sys.executable, "-c", WORKLOAD], env=env, check=True,
                         capture_output=True, text=True).stdout
    return float(out.split()[-1])


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    print(f"{'kernel':<15}{'numpy [ms]':>12}{'numba [ms]':>12}{'speedup':>10}")
    for name, key, data in cases():
        res = {}
        for backend in ("numpy", "numba"):
            fn = _kernels.KERNELS[backend][key]
            res[backend] = best_of(lambda: fn(*data), args.repeat)
        a, b = res["numpy"] * 1e3, res["numba"] * 1e3
        print(f"{name:<15}{a:>12.2f}{b:>12.2f}{a / b:>9.1f}x")
    a, b = end_to_end("numpy") * 1e3, end_to_end("numba") * 1e3
    print(f"{'end-to-end':<15}{a:>12.2f}{b:>12.2f}{a / b:>9.1f}x")


if __name__ == "__main__":
    main()
