"""Compare the compiled and pure-Python search kernels.

    python benchmarks/bench_walk.py [--repeat 3]

Each workload is walked to completion (or to its node budget) with every
candidate rejected, so both kernels explore exactly the same tree.
"""
import argparse
import time

from upword import walk as kernels
from upword.automaton import GapRule, build_tables
from upword.pword import DIAMOND

WORKLOADS = [
    ("n=3 cycles, all of length 6", 3, (None,) * 6, True, GapRule(None), None),
    ("n=4 u-words, length 27", 4, (None,) * 27, False, GapRule(None), 300_000),
    ("n=4 cycles, length 14, gap >= 2", 4, (None,) * 14, True, GapRule(2), 300_000),
    ("n=4 cycles, length 14, gap == 3", 4, (None,) * 14, True, GapRule(3, True), 300_000),
    ("n=4 diamond words, length 5", 4, (DIAMOND, None, DIAMOND, None, DIAMOND), False, GapRule(None), None),
]


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - t)
    return min(times), result


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if kernels.walk_compiled is None:
        raise SystemExit("compiled kernel not built; run pip install -e . first")
    reject = lambda seq: False
    print(f"{'workload':40} {'nodes':>10} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for name, n, template, cyclic, gap, budget in WORKLOADS:
        t = build_tables(n, template, cyclic, gap)
        tp, a = best_of(lambda: kernels.walk_python(t, budget, reject), args.repeat)
        tc, b = best_of(lambda: kernels.walk_compiled(t, budget, reject), args.repeat)
        assert a == b, f"kernels disagree on {name}"
        nodes = a[2]["nodes"]
        print(f"{name:40} {nodes:>10} {tp:>10.3f} {tc:>10.4f} {tp / max(tc, 1e-9):>7.1f}x")


if __name__ == "__main__":
    main()
