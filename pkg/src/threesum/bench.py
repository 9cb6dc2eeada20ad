"""Counter-based benchmarking across instance sizes.

Work is measured in machine-independent units (vector lengths and scanned
slots); wall-clock milliseconds are reported informationally.  The fitted
log-log slope of per-query work against n is the scaling check used by the
acceptance suite.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass

from .core import WorkCounters
from .generators import generate_instance, sample_query
from .registry import engine


@dataclass
class BenchRow:
    algo: str
    n: int
    preprocess_ms: float
    query_ms_mean: float
    convolution_length: float
    fp_scan_mean: float
    restarts: int
    moduli_count: int

    @property
    def query_work_mean(self) -> float:
        return self.convolution_length + self.fp_scan_mean

    def csv_fields(self) -> list:
        return [
            self.n,
            f"{self.preprocess_ms:.3f}",
            f"{self.query_ms_mean:.3f}",
            f"{self.convolution_length:.1f}",
            f"{self.fp_scan_mean:.1f}",
            self.restarts,
            self.moduli_count,
        ]


CSV_COLUMNS = [
    "n",
    "preprocess_ms",
    "query_ms_mean",
    "convolution_length",
    "fp_scan_mean",
    "restarts",
    "moduli_count",
]


def bench_size(algo: str, n: int, trials: int, seed: int, *, mode: str = "uniform", universe: int | None = None) -> BenchRow:
    eng = engine(algo)
    u = universe if universe is not None else n**3
    inst = generate_instance(n, u, mode, seed, with_c=True)
    rng = random.Random(f"bench:{algo}:{n}:{seed}")
    t0 = time.perf_counter()
    state = eng.preprocess(inst, rng.randrange(2**60))
    preprocess_ms = (time.perf_counter() - t0) * 1e3

    conv_total = 0
    scan_total = 0
    elapsed = 0.0
    moduli_count = 0
    for _ in range(trials):
        aq, bq, cq = sample_query(rng, inst, unknown_c=eng.unknown_c)
        counters = WorkCounters()
        t0 = time.perf_counter()
        eng.query(state, aq, bq, cq, counters=counters)
        elapsed += time.perf_counter() - t0
        conv_total += counters.convolution_length
        scan_total += counters.scan_total()
        moduli_count = max(moduli_count, counters.moduli_count)
    plan = getattr(state, "plan", None)
    if plan is not None:
        moduli_count = len(plan.moduli)
    return BenchRow(
        algo=algo,
        n=n,
        preprocess_ms=preprocess_ms,
        query_ms_mean=elapsed * 1e3 / max(trials, 1),
        convolution_length=conv_total / max(trials, 1),
        fp_scan_mean=scan_total / max(trials, 1),
        restarts=getattr(state, "restarts", 0),
        moduli_count=moduli_count,
    )


def run_bench(algo: str, sizes: list[int], trials: int, seed: int, **kwargs) -> list[BenchRow]:
    if sorted(sizes) != list(sizes):
        raise ValueError("sizes must be ascending")
    return [bench_size(algo, n, trials, seed, **kwargs) for n in sizes]


def fitted_exponent(rows: list[BenchRow]) -> float:
    """Least-squares slope of log(per-query work) against log(n)."""
    xs = [math.log(r.n) for r in rows]
    ys = [math.log(max(r.query_work_mean, 1.0)) for r in rows]
    n = len(xs)
    mx = sum(xs) / n
    my = sum(ys) / n
    denom = sum((x - mx) ** 2 for x in xs)
    return sum((x - mx) * (y - my) for x, y in zip(xs, ys)) / denom
