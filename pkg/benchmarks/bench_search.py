#!/usr/bin/env python3
"""Compare the pure-Python and compiled search kernels on shared workloads.

Two workload shapes matter in practice: "hit-heavy" (most targets are sums
of squares, the search exits early) and "refutation-heavy" (the search must
exhaust the whole multiset tree to prove a negative).  Both kernels walk
identical trees, so the ratio is pure interpreter overhead.

Usage: python benchmarks/bench_search.py [--trace-bound N] [--repeat K]
"""

from __future__ import annotations

import argparse
import time

from soslab import RingContext, scan_totally_positive
from soslab import _pysearch
from soslab.decompose import _compiled, fits_compiled_kernel


def build_workloads(trace_bound: int) -> dict[str, list[tuple]]:
    """Instances as raw kernel arguments (d, A, B, cands, depth)."""
    hits: list[tuple] = []
    refutations: list[tuple] = []
    for d in (2, 3, 5, 6, 7, 13, 17, 21):
        ctx = RingContext(d)
        for alpha in scan_totally_positive(ctx, trace_bound):
            big_a, big_b = alpha.half_coords
            cands = _pysearch.generate_candidates(d, ctx.kappa == 1, big_a, big_b)
            depth = big_a // 2
            if not fits_compiled_kernel(d, big_a, len(cands), depth):
                continue
            instance = (d, big_a, big_b, cands, depth)
            status, _, _ = _pysearch.run_search(d, big_a, big_b, cands, depth, 10**8)
            (hits if status == _pysearch.STATUS_FOUND else refutations).append(instance)
    return {"hit-heavy": hits, "refutation-heavy": refutations}


def run_all(kernel, instances: list[tuple]) -> tuple[float, int]:
    started = time.perf_counter()
    nodes = 0
    for d, big_a, big_b, cands, depth in instances:
        _, n, _ = kernel(d, big_a, big_b, cands, depth, 10**8)
        nodes += n
    return time.perf_counter() - started, nodes


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--trace-bound", type=int, default=40)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    if _compiled is None:
        raise SystemExit("compiled kernel is not built; nothing to compare")

    workloads = build_workloads(args.trace_bound)
    print(f"trace bound {args.trace_bound}, best of {args.repeat} runs\n")
    print(f"{'workload':>18} {'instances':>9} {'nodes':>10} {'python':>9} {'compiled':>9} {'speedup':>8}")
    for name, instances in workloads.items():
        py_best = min(run_all(_pysearch.run_search, instances) for _ in range(args.repeat))
        cc_best = min(run_all(_compiled.run_search, instances) for _ in range(args.repeat))
        assert py_best[1] == cc_best[1], "kernels disagree on node counts"
        ratio = py_best[0] / cc_best[0] if cc_best[0] > 0 else float("inf")
        print(
            f"{name:>18} {len(instances):>9} {py_best[1]:>10} "
            f"{py_best[0]:>8.3f}s {cc_best[0]:>8.3f}s {ratio:>7.1f}x"
        )


if __name__ == "__main__":
    main()
