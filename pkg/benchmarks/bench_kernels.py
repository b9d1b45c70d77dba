"""Time each kernel's numpy and numba implementations on the same inputs.

Run with ``python3 benchmarks/bench_kernels.py [--repeat N]``. The numba
columns exclude compilation: every kernel is called once before timing.
"""
import argparse
import timeit

import numpy as np

from hspsim.groups import AbelianGroup
from hspsim.kernels import IMPLEMENTATIONS


def _cases():
    rng = np.random.default_rng(0)
    a = rng.integers(0, 2, (256, 256)).astype(bool)
    b = rng.integers(0, 2, (256, 256)).astype(bool)
    yield "bool_matmul 256^3", "bool_matmul", lambda: (a, b)

    G = AbelianGroup([2] * 16)
    w = np.ones(16, dtype=np.int64)
    chars = G.residue_array(rng.integers(0, G.order, 15))
    yield "annihilated_mask Z2^16, 15 chars", "annihilated_mask", \
        lambda: (G._orders, G._strides, w, 2, np.ascontiguousarray(chars))

    C = AbelianGroup([4, 8, 16, 8])
    mask = np.zeros(C.order, dtype=bool)
    mask[0] = True
    gen = np.array([1, 3, 5, 7], dtype=np.int64)
    yield "extend_span Z4xZ8xZ16xZ8", "extend_span", \
        lambda: (C._orders, C._strides, mask, gen, 16)

    rows = rng.integers(0, 1 << 62, 64, dtype=np.uint64)

    def gf2_args():
        return np.zeros(64, dtype=np.uint64), rows

    yield "gf2_insert 64 rows x 64 bits", "gf2_insert", gf2_args

    v = rng.normal(size=1 << 16)
    yield "walsh_hadamard 2^16", "walsh_hadamard", lambda: (v,)

    labels = rng.integers(0, 1 << 10, 1 << 12).astype(np.int64)
    yield "oracle_permutation 2^12 x 2^10", "oracle_permutation", lambda: (labels, 1 << 10)

    S = AbelianGroup([2, 2, 2, 2])
    tab = np.ascontiguousarray(S.mul_table())
    inv = np.ascontiguousarray(S.inverse_table())
    yield "bool_character_scan |K|=16", "bool_character_scan", lambda: (tab, inv, 0)


def _call(fn, name, args):
    if name == "gf2_insert":
        basis, rows = args
        for r in rows:
            fn(basis, r)
    else:
        fn(*args)


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    args = p.parse_args(argv)
    print(f"{'kernel':<36} {'numpy ms':>10} {'numba ms':>10} {'speedup':>8}")
    for label, name, make in _cases():
        times = {}
        for impl in ("numpy", "numba"):
            fn = IMPLEMENTATIONS[impl][name]
            _call(fn, name, make())
            times[impl] = min(timeit.repeat(lambda: _call(fn, name, make()),
                                            number=1, repeat=args.repeat)) * 1e3
        ratio = times["numpy"] / times["numba"] if times["numba"] else float("inf")
        print(f"{label:<36} {times['numpy']:10.3f} {times['numba']:10.3f} {ratio:8.1f}x")


if __name__ == "__main__":
    main()
