"""Time every batch kernel on both backends over a whole group.

    python benchmarks/bench_kernels.py            # A_8, B_6, D_7
    python benchmarks/bench_kernels.py --n-a 9 --repeat 5
"""

import argparse
import time

import numpy as np

from sortstat import kernels

A_STATS = ("inv", "maj", "sor", "cyc", "rlminl_mask", "cycmin_mask")
D_STATS = ("inv_D", "sor_D")


def best_of(fn, w, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        out = fn(w)
        times.append(time.perf_counter() - start)
    return min(times), out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-a", type=int, default=8)
    ap.add_argument("--n-b", type=int, default=6)
    ap.add_argument("--n-d", type=int, default=7)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    groups = {
        "A": kernels.windows_A(args.n_a),
        "B": kernels.windows_B(args.n_b),
        "D": kernels.windows_D(args.n_d),
    }
    jit = kernels.warmup("numba")
    print(f"numba warm-up (compile or cache load): {jit:.2f}s")
    print(f"{'kernel':<14}{'group':>10}{'rows':>10}{'numpy s':>12}{'numba s':>12}{'speedup':>10}")
    for stat in kernels.STATS:
        g = "A" if stat in A_STATS else "D" if stat in D_STATS else "B"
        w = groups[g]
        t_np, a = best_of(getattr(kernels.backend("numpy"), stat), w, args.repeat)
        t_nb, b = best_of(getattr(kernels.backend("numba"), stat), w, args.repeat)
        if not np.array_equal(a, b):
            raise SystemExit(f"backends disagree on {stat}")
        n = w.shape[1]
        print(f"{stat:<14}{g + '_' + str(n):>10}{len(w):>10}{t_np:>12.4f}{t_nb:>12.4f}{t_np / t_nb:>9.1f}x")


if __name__ == "__main__":
    main()
