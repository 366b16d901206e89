"""Compare the compiled and pure-Python elimination kernels.

Synthetic workloads come first, then end-to-end runs of real computations
with each backend selected through ``QUADALG_PURE`` in a fresh interpreter.
The synthetic systems mimic those that dominate real runs: ideal components
of S(K^3), the Koszul complex of the twisted SU(2) algebra and the truncated
filtered span used by the gr heuristic for U(sl2).  Each backend is timed on
identical inputs and the outputs are checked to agree.

    python benchmarks/bench_elim.py [--repeat N]
"""

import argparse
import os
import random
import subprocess
import sys
import time

from quadalg.linalg import _elim_py
from quadalg.linalg import _kernel

END_TO_END = {
    "koszul twisted SU(2), degree 6":
        "from quadalg import corpus, quadratic as Q; Q.koszul_homology(corpus.twisted_su2_quadratic(2), 6)",
    "gr heuristic U(sl2), n=4 margin 2":
        "from quadalg import corpus, nonhomogeneous as N; N.gr_dims_direct(corpus.sl2(), 4, 2)",
    "gorenstein S(K^3), degree 6":
        "from quadalg import corpus, quadratic as Q; Q.gorenstein_check(corpus.symmetric(3), 6)",
}


def end_to_end(stmt, pure):
    env = dict(os.environ)
    env.pop("QUADALG_PURE", None)
    if pure:
        env["QUADALG_PURE"] = "1"
    code = ("import time; t = time.perf_counter(); " + stmt
            + "; print(time.perf_counter() - t)")
    out = subprocess.run([sys.executable, "-c", code], env=env, check=True,
                         capture_output=True, text=True)
    return float(out.stdout.strip().splitlines()[-1])



def random_system(rows, cols, density, seed, bound=9):
    rng = random.Random(seed)
    out = []
    for _ in range(rows):
        row = {}
        for j in range(cols):
            if rng.random() < density:
                v = rng.randint(-bound, bound)
                if v:
                    row[j] = v
        out.append(row)
    return out


def tensor_system(d, n, seed):
    """Rows shaped like E^{r}⊗R⊗E^{s} generators: sparse, few distinct values."""
    rng = random.Random(seed)
    cols = d ** n
    out = []
    for _ in range(cols * 2 // 3):
        row = {}
        for _ in range(3):
            row[rng.randrange(cols)] = rng.choice((-2, -1, 1, 2))
        out.append(row)
    return out, cols


def timed(fn, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t)
    return best, result


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if _kernel._elim_c is None:
        print("compiled kernel unavailable; only the pure backend can be timed")
    cases = [
        ("dense 12x12", *[random_system(12, 12, 0.9, 1, bound=3)], 12),
        ("dense 60x60", *[random_system(60, 60, 0.9, 1)], 60),
        ("sparse 120x160", *[random_system(120, 160, 0.03, 2)], 160),
    ]
    for d, n in ((3, 5), (3, 6), (4, 5)):
        rows, cols = tensor_system(d, n, d * 10 + n)
        cases.append((f"tensor d={d} n={n}", rows, cols))
    print(f"{'case':<20}{'python s':>12}{'compiled s':>12}{'speedup':>10}")
    for name, rows, cols in cases:
        tp, rp = timed(lambda: _elim_py.rref_int(rows, cols), args.repeat)
        if _kernel._elim_c is not None:
            try:
                _kernel._elim_c.rref_int(rows, cols)
                note = ""
            except OverflowError:
                note = "  (int64 overflow: falls back to python)"
            tc, rc = timed(lambda: _kernel.rref_int(rows, cols), args.repeat)
            assert rc == rp, f"backends disagree on {name}"
            print(f"{name:<20}{tp:>12.4f}{tc:>12.4f}{tp / tc:>10.1f}{note}")
        else:
            print(f"{name:<20}{tp:>12.4f}{'-':>12}{'-':>10}")
    print()
    print(f"{'end to end':<36}{'python s':>12}{'compiled s':>12}{'speedup':>10}")
    for name, stmt in END_TO_END.items():
        tp = min(end_to_end(stmt, True) for _ in range(args.repeat))
        tc = min(end_to_end(stmt, False) for _ in range(args.repeat))
        print(f"{name:<36}{tp:>12.4f}{tc:>12.4f}{tp / tc:>10.1f}")


if __name__ == "__main__":
    main()
