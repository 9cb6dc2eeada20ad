"""Verification campaigns: engines against the brute-force oracle."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .core import AnswerEntry, WorkCounters
from .generators import Instance, generate_instance, sample_query
from .oracle import brute_force_all_numbers
from .registry import engine


@dataclass
class EngineReport:
    algo: str
    queries: int = 0
    mismatches: int = 0
    restarts: int = 0
    moduli_count: int = 0
    fp_scan_lengths: list[int] = field(default_factory=list)

    @property
    def fp_scan_mean(self) -> float:
        return sum(self.fp_scan_lengths) / len(self.fp_scan_lengths) if self.fp_scan_lengths else 0.0

    @property
    def fp_scan_max(self) -> int:
        return max(self.fp_scan_lengths, default=0)


@dataclass
class VerifyReport:
    engines: list[EngineReport]

    @property
    def total_mismatches(self) -> int:
        return sum(r.mismatches for r in self.engines)


def _flip_one(answer):
    """Fault injection for detector sanity: corrupt the first entry's count."""
    if answer.entries:
        e = answer.entries[0]
        answer.entries[0] = AnswerEntry(e.value, not e.hit, e.count + 1)
    else:
        answer.entries.append(AnswerEntry(0, True, 1))
    return answer


def run_verify(
    algos: list[str],
    *,
    trials: int,
    seed: int,
    instance: Instance | None = None,
    n: int = 32,
    universe: int | None = None,
    mode: str = "uniform",
    queries_per_instance: int = 10,
    inject_fault: bool = False,
) -> VerifyReport:
    """Run random subset queries through each engine and the oracle.

    With no fixed instance, a fresh one is generated every
    ``queries_per_instance`` trials.  Mismatch counts should be zero.
    """
    reports = []
    for algo in algos:
        eng = engine(algo)
        rng = random.Random(f"verify:{algo}:{seed}")
        rep = EngineReport(algo=algo)
        state = None
        inst = instance
        for trial in range(trials):
            if inst is None or (instance is None and trial % queries_per_instance == 0):
                u = universe if universe is not None else n**3
                inst = generate_instance(n, u, mode, seed + trial, with_c=True)
                state = None
            if state is None:
                state = eng.preprocess(inst, rng.randrange(2**60))
                rep.restarts += getattr(state, "restarts", 0)
                plan = getattr(state, "plan", None)
                if plan is not None:
                    rep.moduli_count = max(rep.moduli_count, len(plan.moduli))
            aq, bq, cq = sample_query(rng, inst, unknown_c=eng.unknown_c)
            counters = WorkCounters()
            got = eng.query(state, aq, bq, cq, counters=counters)
            if inject_fault and trial == trials - 1:
                got = _flip_one(got)
            want = brute_force_all_numbers(aq, bq, cq)
            if got.entries != want.entries:
                rep.mismatches += 1
            rep.queries += 1
            rep.fp_scan_lengths.append(counters.scan_total())
        reports.append(rep)
    return VerifyReport(engines=reports)
