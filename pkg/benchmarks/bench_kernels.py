"""Benchmark the compiled kernels against the pure-Python fallback.

Times the three hot loops (Jacobi eigensolve, canonical labeling,
degree-sorted mask filtering) on both backends and prints one table row
per case with the speedup.  Outputs are compared for equality while
timing, so a run doubles as a parity smoke test.

    python3 benchmarks/bench_kernels.py
    python3 benchmarks/bench_kernels.py --sizes 8,16,32,64 --repeat 5
"""

import argparse
import time

import numpy as np

from gmlap._kernels import _pure

try:
    from gmlap._kernels import _fastcore
except ImportError:
    _fastcore = None


def best_of(fn, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def bench_jacobi(sizes, repeat, rows):
    rng = np.random.default_rng(1)
    for n in sizes:
        raw = rng.standard_normal((n, n))
        mat = raw + raw.T
        t_pure, (w_p, _v, s_p) = best_of(lambda: _pure.jacobi_eigh(mat), repeat)
        t_ext, (w_c, _v, s_c) = best_of(lambda: _fastcore.jacobi_eigh(mat), repeat)
        assert s_p == s_c and np.array_equal(np.asarray(w_p), np.asarray(w_c))
        rows.append((f"jacobi_eigh n={n}", t_pure, t_ext))


def bench_canonical(repeat, rows):
    n = 6
    masks = _pure.degree_sorted_masks(n)
    t_pure, out_p = best_of(lambda: _pure.canon_bits_batch(n, masks), repeat)
    t_ext, out_c = best_of(lambda: _fastcore.canon_bits_batch(n, masks), repeat)
    assert np.array_equal(out_p, out_c)
    rows.append((f"canon_bits_batch n={n} ({len(masks)} masks)", t_pure, t_ext))


def bench_mask_filter(repeat, rows):
    n = 7
    t_pure, out_p = best_of(lambda: _pure.degree_sorted_masks(n), repeat)
    t_ext, out_c = best_of(lambda: _fastcore.degree_sorted_masks(n), repeat)
    assert np.array_equal(out_p, out_c)
    rows.append((f"degree_sorted_masks n={n}", t_pure, t_ext))


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="8,16,32", help="jacobi matrix sizes")
    parser.add_argument("--repeat", type=int, default=3, help="take the best of this many runs")
    args = parser.parse_args()

    if _fastcore is None:
        print("compiled kernels are not built; nothing to compare")
        return 1

    sizes = [int(s) for s in args.sizes.split(",") if s]
    rows = []
    bench_jacobi(sizes, args.repeat, rows)
    bench_canonical(args.repeat, rows)
    bench_mask_filter(args.repeat, rows)

    name_w = max(len(name) for name, _p, _e in rows)
    print(f"{'case'.ljust(name_w)}  {'pure':>10}  {'ext':>10}  {'speedup':>8}")
    for name, t_pure, t_ext in rows:
        ratio = t_pure / t_ext if t_ext > 0 else float("inf")
        print(
            f"{name.ljust(name_w)}  {t_pure * 1e3:9.2f}ms  {t_ext * 1e3:9.2f}ms  {ratio:7.1f}x"
        )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
