"""Compare the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import random
import timeit

from superjac import _kernels_py as py

try:
    from superjac import _ckernels as ck
except ImportError:
    ck = None


def cases():
    rng = random.Random(0)
    p = 7
    mat = [[rng.randrange(p) for _ in range(60)] for _ in range(60)]
    gens = [list(range(1, 12)) + [0], [1, 0] + list(range(2, 12))]
    return [
        ("fp_row_reduce 60x60 over F_7", "fp_row_reduce", (mat, 60, p)),
        ("lattice_count n=50 q=128 (x784 grid)", "lattice_count", (50, 128)),
        ("constancy_classes q=3^5 k=2", "constancy_classes", (243, 3, 2)),
        ("constancy_classes q=2^8 k=127", "constancy_classes", (256, 2, 127)),
        ("pair_orbit_count S_12", "pair_orbit_count", (12, gens)),
    ]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if ck is None:
        print("compiled extension not built; only the Python timings are shown")
    print(f"{'kernel':42s} {'python ms':>10s} {'cython ms':>10s} {'speedup':>8s}")
    for label, name, a in cases():
        number = 20
        t_py = min(timeit.repeat(lambda: getattr(py, name)(*a), number=number, repeat=args.repeat)) / number
        if ck is not None:
            t_c = min(timeit.repeat(lambda: getattr(ck, name)(*a), number=number, repeat=args.repeat)) / number
            print(f"{label:42s} {t_py * 1e3:10.3f} {t_c * 1e3:10.3f} {t_py / t_c:7.1f}x")
        else:
            print(f"{label:42s} {t_py * 1e3:10.3f} {'-':>10s} {'-':>8s}")


if __name__ == "__main__":
    main()
