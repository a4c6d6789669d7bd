#!/usr/bin/env python3
"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 3] [--json]

Each workload runs on both backends with identical inputs; results must
agree, and the script exits non-zero if they don't.
"""

import argparse
import json
import random
import sys
import time
from itertools import combinations

from sbgrs import kernels
from sbgrs.codec import construct_code


def workloads():
    b14 = construct_code(14, 7)
    b13 = construct_code(13, 7)
    b8 = construct_code(8, 4)
    gf = b14.field
    rng = random.Random(0)
    mats = [[[rng.randrange(gf.q) for _ in range(7)] for _ in range(7)] for _ in range(2000)]
    msgs = [[rng.randrange(b13.field.q) for _ in range(7)] for _ in range(20_000)]
    combos = list(combinations(range(14), 7))
    pts_sets = [rng.sample(range(b13.field.q), 13) for _ in range(2000)]
    Zs = b13.design.supports0()
    return {
        "det 7x7 x2000": lambda: [kernels.det(gf, M) for M in mats],
        "mds [14,7] 3432 minors": lambda: kernels.first_singular_minor(gf, b14.G, combos),
        "xi (13,7) x2000": lambda: [kernels.xi_value(b13.field, p, Zs, 7) for p in pts_sets],
        "min distance [8,4] GF(11)": lambda: kernels.min_weight(b8.field, b8.G),
        "encode [13,7] x20000": lambda: kernels.encode_batch(b13.field, b13.G, msgs),
    }


def bench(fn, repeat):
    best, result = float("inf"), None
    for _ in range(repeat):
        t = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t)
    return best, result


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)
    if not kernels.HAVE_COMPILED:
        print("compiled kernels unavailable; build with `pip install -e . --no-build-isolation`",
              file=sys.stderr)
        return 1
    rows, mismatch = [], False
    for name, fn in workloads().items():
        times, results = {}, {}
        for be in ("cython", "python"):
            with kernels.backend_set(be):
                times[be], results[be] = bench(fn, args.repeat)
        same = results["cython"] == results["python"]
        mismatch |= not same
        rows.append({"workload": name, "cython_s": times["cython"], "python_s": times["python"],
                     "speedup": times["python"] / times["cython"], "agree": same})
    if args.json:
        print(json.dumps(rows, indent=2))
    else:
        print(f"{'workload':28} {'cython':>10} {'python':>10} {'speedup':>8}  agree")
        for r in rows:
            print(f"{r['workload']:28} {r['cython_s']:10.4f} {r['python_s']:10.4f} "
                  f"{r['speedup']:7.1f}x  {r['agree']}")
    return 1 if mismatch else 0


if __name__ == "__main__":
    sys.exit(main())
