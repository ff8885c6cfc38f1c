"""Time the hot kernels under both backends.

Usage: python3 benchmarks/bench_kernels.py [--repeat N] [--size N]

Each kernel runs once to warm the JIT, then ``--repeat`` timed runs; the best
time is reported.  Results from the two backends are compared for equality.
"""

from __future__ import annotations

import argparse
import itertools
import os
import time

import numpy as np

from perfcode import fqlin, kernels
from perfcode.family import LambdaCode, build_family, default_choice, switch
from perfcode.hamming import build
from perfcode.verify import hamming_oracle


def best_of(fn, repeat):
    fn()
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def cases(size):
    h13 = build(3, 3)
    T13 = switch(build_family(h13, default_choice(h13), LambdaCode.from_strings(3, ["111", "222"], "ternary")))
    X13 = kernels.index_digits(0, size, 3, 13)
    h31 = build(2, 5)
    T31 = switch(build_family(h31, default_choice(h31), LambdaCode.from_strings(2, ["11111"])))
    X31 = np.random.default_rng(0).integers(0, 2, (size, 31)).astype(np.uint8)
    listed = np.concatenate(list(hamming_oracle(build(2, 4)).blocks()))
    codes = np.sort(kernels.vector_codes(listed, 2))
    X15 = kernels.index_digits(0, min(size, 2**15), 2, 15)
    F2 = h31.field
    # the audit streams |S_low| * |S_high| codewords; keep it at about `size`
    gen_syn = fqlin.matmul(h31.generator(), T31.program.M.T, F2)
    bits = max(2, int(np.log2(size)))
    lo, hi = bits // 2, bits - bits // 2

    def combos(rows):
        coeffs = np.array(list(itertools.product(range(2), repeat=rows.shape[0])), dtype=np.uint8)
        return fqlin.matmul(coeffs, rows, F2)

    S_low, S_high = combos(gen_syn[:lo]), combos(gen_syn[lo : lo + hi])
    return {
        f"ball_counts ternary n=13 ({X13.shape[0]} vectors)": lambda: T13.ball_counts(X13),
        f"ball_counts binary n=31 ({X31.shape[0]} vectors)": lambda: T31.ball_counts(X31),
        f"table_ball_counts n=15 ({X15.shape[0]} vectors)": lambda: kernels.table_ball_counts(codes, X15, 2, False),
        f"switch_audit n=31 ({S_low.shape[0] * S_high.shape[0]} codewords)": lambda: kernels.switch_audit(
            T31.program, S_low, S_high, F2.add_table, F2.mul_table
        ),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--size", type=int, default=200_000)
    args = ap.parse_args()
    if not kernels.HAVE_NUMBA:
        print("numba is not installed; only the numpy backend can run")
    results = {}
    for name in ("numba", "numpy"):
        os.environ["PERFCODE_BACKEND"] = name
        for label, fn in cases(args.size).items():
            t, out = best_of(fn, args.repeat)
            results.setdefault(label, {})[name] = (t, out)
    print(f"{'kernel':<48} {'numba s':>9} {'numpy s':>9} {'speedup':>8}  same")
    for label, r in results.items():
        (tn, on), (tp, op) = r["numba"], r["numpy"]
        same = on == op if isinstance(on, tuple) else np.array_equal(on, op)
        print(f"{label:<48} {tn:9.4f} {tp:9.4f} {tp / tn:8.1f}  {same}")


if __name__ == "__main__":
    main()
