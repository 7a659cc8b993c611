"""Time the numba kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--radius 7] [--repeat 3]

Both backends must produce the same verify_bound report; the script checks
that before printing timings. The first numba call includes JIT compilation
(or a cache load) and is reported separately.
"""

import argparse
import time

import numpy as np

from rank3hecke._kernels import available_backends, right_mult_gen, Scratch
from rank3hecke.coxeter import CoxeterSystem
from rank3hecke.coxeter import group_for
from rank3hecke.hecke import verify_bound

SYSTEMS = {
    "case2": CoxeterSystem(0, 0, 2, (1, 5, 2)),
    "case4": CoxeterSystem(5, 4, 2, (2, 2, 1)),
}


def best_of(fn, repeat):
    times = []
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def bench_kernel(system, radius, backend, repeat):
    """One right multiplication per generator on the sum of all T_w, l(w) <= radius."""
    g = group_for(system)
    rmul, rdesc, lengths, _ = g.arrays(radius + 1)
    sup = np.flatnonzero(lengths <= radius).astype(np.int64)
    width = 8 * max(system.weights) + 1
    coef = np.zeros((sup.shape[0], width), dtype=np.int64)
    coef[:, width // 2] = 1
    scratch = Scratch(rmul.shape[0])

    def run():
        for a in range(3):
            right_mult_gen(sup, coef, a, system.weight(a), rmul, rdesc, scratch, backend)

    return best_of(run, repeat)[0]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--radius", type=int, default=7)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    backends = available_backends()
    print(f"backends: {backends}")
    for name, S in SYSTEMS.items():
        r = args.radius
        row = {}
        reports = {}
        for b in backends:
            t0 = time.perf_counter()
            verify_bound(S, 2, 2, backend=b)  # warm-up / JIT
            warm = time.perf_counter() - t0
            t, rep = best_of(lambda: verify_bound(S, r, r, backend=b), args.repeat)
            row[b] = (warm, t)
            reports[b] = rep
        same = len({repr(sorted(v.items())) for v in reports.values()}) == 1
        for b, (warm, t) in row.items():
            print(f"{name:<6} verify_bound r={r} {b:<6} warm-up {warm:7.3f}s  best {t:7.3f}s")
        if len(row) == 2:
            print(f"{name:<6} speedup numba/numpy: {row['numpy'][1] / row['numba'][1]:.2f}x  "
                  f"reports identical: {same}")
        for b in backends:
            print(f"{name:<6} right_mult_gen x3 {b:<6} best "
                  f"{bench_kernel(S, r, b, args.repeat) * 1e3:8.3f}ms")


if __name__ == "__main__":
    main()
