#!/usr/bin/env python3
"""Benchmark the compiled kernels against the numpy fallback.

Times the three hot kernels in isolation (pair grouping, congruent-triple
enumeration, masked witness scans) and one end-to-end preprocess+query round
per engine, once per kernel implementation.

Usage: python3 benchmarks/compare_kernels.py [--sizes 256,512,1024] [--repeat 3]
"""

from __future__ import annotations

import argparse
import random
import time

import numpy as np

from threesum import _kernels as kernels
from threesum.core import WorkCounters, mask_from_ordinals
from threesum.generators import generate_instance, sample_query
from threesum.numtheory import ceil_n_pow_3_2, primes_in_range
from threesum.registry import engine


def best_of(repeat, fn, *args, **kwargs):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(*args, **kwargs)
        best = min(best, time.perf_counter() - t0)
    return best * 1e3, result


def kernel_workloads(n, seed, repeat):
    inst = generate_instance(n, n**3, "uniform", seed, with_c=True)
    lo = max(2, ceil_n_pow_3_2(n))
    p = int(primes_in_range(lo, 2 * lo).primes[0])
    rows = []
    for name in kernels.available_implementations():
        impl = kernels.get_implementation(name)
        t_group, (keys, offsets, aidx, bidx) = best_of(repeat, impl.group_pairs_by_sum, inst.a, inst.b)
        t_tri, _ = best_of(repeat, impl.congruent_triples, inst.a, inst.b, inst.c, p, -1)
        rng = random.Random(seed)
        amask = mask_from_ordinals(inst.a.size, np.array([i for i in range(n) if rng.random() < 0.5]))
        bmask = mask_from_ordinals(inst.b.size, np.array([i for i in range(n) if rng.random() < 0.5]))
        picks = np.array([rng.randrange(keys.size) for _ in range(4 * n)], dtype=np.int64)
        starts, ends = offsets[picks], offsets[picks + 1]
        seg = (np.arange(picks.size) % n).astype(np.int32)
        t_scan, _ = best_of(
            repeat, impl.count_present_pairs, aidx, bidx, amask, bmask, starts, ends, seg, n
        )
        rows.append((name, n, t_group, t_tri, t_scan))
    return rows


def engine_round(algo, n, seed):
    eng = engine(algo)
    inst = generate_instance(n, n**3, "uniform", seed, with_c=True)
    rng = random.Random(seed)
    t0 = time.perf_counter()
    state = eng.preprocess(inst, 1)
    pre_ms = (time.perf_counter() - t0) * 1e3
    queries = [sample_query(rng, inst, unknown_c=eng.unknown_c) for _ in range(3)]
    t0 = time.perf_counter()
    for aq, bq, cq in queries:
        eng.query(state, aq, bq, cq, counters=WorkCounters())
    query_ms = (time.perf_counter() - t0) * 1e3 / len(queries)
    return pre_ms, query_ms


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="256,512,1024")
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--seed", type=int, default=1)
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    impls = kernels.available_implementations()
    if len(impls) < 2:
        print(f"note: only {impls} available; build the extension to compare")

    print(f"{'kernel':>8} {'n':>6} {'group_ms':>10} {'triples_ms':>11} {'scan_ms':>9}")
    table = {}
    for n in sizes:
        for row in kernel_workloads(n, args.seed, args.repeat):
            name, n_, tg, tt, ts = row
            table[(name, n_)] = (tg, tt, ts)
            print(f"{name:>8} {n_:>6} {tg:>10.2f} {tt:>11.2f} {ts:>9.3f}")
    if "native" in impls:
        for n in sizes:
            pg, pt, ps = table[("pure", n)]
            ng, nt, ns = table[("native", n)]
            print(
                f"speedup n={n}: group {pg / ng:.1f}x, triples {pt / nt:.1f}x, scan {ps / ns:.1f}x"
            )

    print()
    print(f"{'kernel':>8} {'algo':>16} {'n':>6} {'preprocess_ms':>14} {'query_ms':>9}")
    before = kernels.implementation_name()
    try:
        for name in impls:
            kernels.set_implementation(name)
            for algo in ("known-c", "unknown-c-rand", "unknown-c-det"):
                for n in sizes:
                    pre_ms, query_ms = engine_round(algo, n, args.seed)
                    print(f"{name:>8} {algo:>16} {n:>6} {pre_ms:>14.2f} {query_ms:>9.2f}")
    finally:
        kernels.set_implementation(before)


if __name__ == "__main__":
    main()
