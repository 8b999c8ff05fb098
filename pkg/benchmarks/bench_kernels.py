"""Benchmark the compiled spectral-search kernels against the NumPy fallback.

The grid evaluation of the MUSIC denominator dominates estimation runtime
(grid_points x L x (L - K) complex work per portion), so this is the one
piece worth compiling. Run after an editable install:

    python benchmarks/bench_kernels.py [--grid 4001] [--repeats 7]
"""

import argparse
import time

import numpy as np

from vsarray import _kernels_py
from vsarray.estimator import DENOMINATOR_FLOOR
from vsarray.geometry import build_vshaped

try:
    from vsarray import _kernels as _kernels_cy
except ImportError:
    _kernels_cy = None


def _best_of(fn, repeats):
    best = np.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def bench_case(name, positions, k, grid, repeats):
    rng = np.random.default_rng(0)
    p = np.asarray(positions, dtype=np.float64)
    n = p.size
    en = rng.standard_normal((n, n - k)) + 1j * rng.standard_normal((n, n - k))
    en, _ = np.linalg.qr(en)
    c = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    psis = np.linspace(-1.0, 1.0, grid)

    rows = []
    for label, mod in (("python", _kernels_py), ("cython", _kernels_cy)):
        if mod is None:
            rows.append((label, None, None))
            continue
        t_sp, d_sp = _best_of(lambda m=mod: m.spectrum_denominator(en, p, psis), repeats)
        t_r1, d_r1 = _best_of(
            lambda m=mod: m.rank1_complement_denominator(c, p, psis), repeats
        )
        rows.append((label, (t_sp, d_sp), (t_r1, d_r1)))

    print(f"\n{name}: L = {n}, K = {k}, grid = {grid}")
    print(f"  {'backend':<8} {'spectrum (ms)':>14} {'rank-1 (ms)':>12}")
    ref_sp = ref_r1 = None
    for label, sp, r1 in rows:
        if sp is None:
            print(f"  {label:<8} {'unavailable':>14}")
            continue
        print(f"  {label:<8} {sp[0] * 1e3:>14.3f} {r1[0] * 1e3:>12.3f}")
        if ref_sp is None:
            ref_sp, ref_r1 = sp, r1
        else:
            err_sp = np.max(np.abs(sp[1] - ref_sp[1]))
            err_r1 = np.max(np.abs(r1[1] - ref_r1[1]))
            assert err_sp < DENOMINATOR_FLOOR * n + 1e-9, err_sp
            assert err_r1 < DENOMINATOR_FLOOR * n + 1e-9, err_r1
            print(
                f"  speedup  {ref_sp[0] / sp[0]:>13.2f}x {ref_r1[0] / r1[0]:>11.2f}x"
                f"   (max |diff| {max(err_sp, err_r1):.2e})"
            )


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--grid", type=int, default=4001)
    parser.add_argument("--repeats", type=int, default=7)
    args = parser.parse_args()

    if _kernels_cy is None:
        print("compiled extension not available; timing the NumPy fallback only")

    small = build_vshaped("coprime", (2, 5))
    large = build_vshaped("coprime", (4, 13))
    nested = build_vshaped("nested", (10, 10))
    segment = lambda g: np.arange(g.half_length, dtype=np.float64)
    bench_case("coprime (2, 5)", segment(small), 3, args.grid, args.repeats)
    bench_case("coprime (4, 13)", segment(large), 6, args.grid, args.repeats)
    bench_case("nested (10, 10)", segment(nested), 6, args.grid, args.repeats)


if __name__ == "__main__":
    main()
