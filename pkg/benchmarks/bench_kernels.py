#!/usr/bin/env python3
"""Compare the pure-Python and compiled search kernels on the full
GL_3(F_q) certification workload.

Usage: python benchmarks/bench_kernels.py [--q 3] [--repeat 3]
"""

import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from rdu.search import GroupTable, optimal_rdu_bound  # noqa: E402
from rdu.search.kernels import load_kernel  # noqa: E402


def bench_kernel(name: str, q: int, repeat: int):
    kernel = load_kernel(name)
    build_times, search_times, conj_times = [], [], []
    optimum = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        table = GroupTable(3, q, kernel=kernel)
        build_times.append(time.perf_counter() - t0)

        t0 = time.perf_counter()
        for g, ginv in table.gens:
            kernel.conj_perm(
                table.flats, table.count, g, ginv, table.enc_to_idx, q
            )
        conj_times.append(time.perf_counter() - t0)

        t0 = time.perf_counter()
        report = optimal_rdu_bound(3, q, table=table)
        search_times.append(time.perf_counter() - t0)
        optimum = report.optimum
    return {
        "kernel": kernel.KERNEL_NAME,
        "build": min(build_times),
        "conj_perms": min(conj_times),
        "search": min(search_times),
        "optimum": optimum,
    }


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--q", type=int, default=3, choices=(2, 3))
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    rows = [bench_kernel("python", args.q, args.repeat)]
    try:
        rows.append(bench_kernel("cython", args.q, args.repeat))
    except ValueError:
        pass
    except ImportError:
        print("compiled kernel not built (python setup.py build_ext --inplace)")

    print(f"\nGL_3(F_{args.q}) certification, best of {args.repeat} runs:")
    print(f"{'kernel':<8} {'table build':>12} {'conj perms':>12} {'bound search':>13} {'optimum':>8}")
    for r in rows:
        print(
            f"{r['kernel']:<8} {r['build']:>11.3f}s {r['conj_perms']:>11.3f}s "
            f"{r['search']:>12.3f}s {r['optimum']:>8}"
        )
    if len(rows) == 2:
        speedup = rows[0]["conj_perms"] / rows[1]["conj_perms"]
        total = (rows[0]["build"] + rows[0]["search"]) / (
            rows[1]["build"] + rows[1]["search"]
        )
        print(f"\ncompiled kernel speedup: {speedup:.1f}x on conjugation sweeps, "
              f"{total:.1f}x end to end")


if __name__ == "__main__":
    main()
