"""Compare the compiled and pure-Python enumeration kernels.

Runs ``image_codes`` (span enumeration) and ``matmul`` on random matrices
over a few finite semirings, checks that both backends return identical
results, and prints the median time of each.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--seed 0]
"""

from __future__ import annotations

import argparse
import random
import statistics
import time

from semiexact import _pykernels
from semiexact.matrix import flat_tables
from semiexact.semiring import boolean, zmod

try:
    from semiexact import _kernels
except ImportError:  # extension not built
    _kernels = None

CASES = [
    # (semiring, m, n, side)
    (boolean(), 12, 12, 0),
    (boolean(), 12, 12, 1),
    (zmod(4), 6, 6, 0),
    (zmod(6), 5, 5, 1),
    (zmod(12), 4, 4, 0),
]


def timed(fn, repeat):
    times, result = [], None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times), result


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    if _kernels is None:
        print("compiled extension not available; build with "
              "'python3 setup.py build_ext --inplace'")
        return 1
    rng = random.Random(args.seed)
    print(f"{'case':<28} {'python (s)':>11} {'cython (s)':>11} {'speedup':>8}")
    for S, m, n, side in CASES:
        q = S.size
        add, mul = flat_tables(S)
        A = [rng.randrange(q) for _ in range(m * n)]
        tp, rp = timed(lambda: _pykernels.image_codes(A, m, n, add, mul, q, side), args.repeat)
        tc, rc = timed(lambda: _kernels.image_codes(A, m, n, add, mul, q, side), args.repeat)
        assert list(rp) == list(rc), "backends disagree"
        label = f"span {S.spec} {m}x{n} {'row' if side == 0 else 'col'}"
        print(f"{label:<28} {tp:>11.4f} {tc:>11.4f} {tp / tc:>7.1f}x")
    for S, k in ((boolean(), 64), (zmod(12), 48)):
        q = S.size
        add, mul = flat_tables(S)
        A = [rng.randrange(q) for _ in range(k * k)]
        B = [rng.randrange(q) for _ in range(k * k)]
        tp, rp = timed(lambda: _pykernels.matmul(A, B, k, k, k, add, mul, q), args.repeat)
        tc, rc = timed(lambda: _kernels.matmul(A, B, k, k, k, add, mul, q), args.repeat)
        assert list(rp) == list(rc), "backends disagree"
        label = f"matmul {S.spec} {k}x{k}"
        print(f"{label:<28} {tp:>11.4f} {tc:>11.4f} {tp / tc:>7.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
