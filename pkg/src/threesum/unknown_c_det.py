"""Deterministic engine where only A and B are known at preprocessing time.

No randomness anywhere: two runs on the same input produce bit-identical
states and answers.  Preprocessing builds the witness table, splits sumset
elements into light (at most ceil(sqrt(n)) witnesses, scanned directly at
query time) and heavy ones, and then covers the heavy elements with a small
set M of composite moduli.  Each modulus is a product of three primes from
[ceil(sqrt(n)), 2*ceil(sqrt(n))) picked by three rounds of exact
false-positive minimization; after each modulus is selected, every heavy
element whose false-positive count is at most twice the round average is
assigned to it and removed, which halves the remaining set and bounds
|M| by floor(log2(#heavy)) + 1.

Queries convolve the subsets once per modulus in M.  A light target scans
its own witnesses; a heavy target uses its assigned modulus and the same
congruent-minus-false-positives identity as the randomized engines.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .convolution import modular_sumset_multiplicities
from .core import (
    AnswerEntry,
    QueryAnswer,
    WorkCounters,
    dedup_targets,
    integer_set,
    mask_from_ordinals,
    ordinals_in,
    resolve_universe,
)
from .errors import DomainError, InvariantError
from .numtheory import ceil_sqrt, primes_in_range
from . import _kernels as kernels
from .witness import RemainderLists, WitnessTable, check_pair_budget, masked_bucket_counts


@dataclass
class RoundStats:
    """One iteration of the moduli loop: selected modulus and removal accounting."""

    modulus: int
    x_size: int
    fp_sum: int
    removed: int


@dataclass
class ModuliPlan:
    """Moduli, heavy-element assignments, and per-modulus remainder lists."""

    moduli: list[int] = field(default_factory=list)
    heavy_positions: np.ndarray = field(default_factory=lambda: np.empty(0, np.int64))
    heavy_mod_idx: np.ndarray = field(default_factory=lambda: np.empty(0, np.int32))
    heavy_fp: np.ndarray = field(default_factory=lambda: np.empty(0, np.int64))
    rounds: list[RoundStats] = field(default_factory=list)
    remainder_lists: list[RemainderLists] = field(default_factory=list)


@dataclass
class UnknownCDetState:
    a: np.ndarray
    b: np.ndarray
    universe: int
    size: int
    threshold: int
    table: WitnessTable
    plan: ModuliPlan


def select_modulus(a_values, b_values, x_values, universe: int, *, with_trace: bool = False):
    """Deterministically pick a composite modulus with few false positives on X.

    Three rounds over the primes P in [ceil(sqrt(n)), 2*ceil(sqrt(n))): each
    round evaluates, for every p in P, the number of congruent triples of
    A x B x X modulo (previous modulus * p) via one exact convolution, and
    keeps the minimizing p (ties broken toward the smallest).  Minimizing
    congruent triples minimizes false positives, since the true-solution
    count does not depend on the modulus.  The average over p bounds the
    minimum, so each round shrinks the false-positive count by a factor
    |P| / max-divisors, exactly.
    """
    a = integer_set(a_values)
    b = integer_set(b_values)
    x = integer_set(x_values)
    if x.size == 0:
        raise DomainError("modulus selection needs a nonempty target set")
    u = int(universe)
    if u < 1:
        raise DomainError(f"universe bound must be >= 1, got {u}")
    top_ab = max((int(arr[-1]) for arr in (a, b) if arr.size), default=0)
    if top_ab > u:
        raise DomainError(f"value {top_ab} exceeds the universe bound {u}")
    if x.size and int(x[-1]) > 2 * u:
        raise DomainError(f"target {int(x[-1])} exceeds twice the universe bound {u}")
    n = max(a.size, b.size, 1)
    lo = max(2, ceil_sqrt(n))
    prange = primes_in_range(lo, 2 * lo)

    m = 1
    trace = []
    for _round in range(3):
        best_p = None
        best_mu = None
        for p in prange.primes:
            cand = m * int(p)
            conv = modular_sumset_multiplicities(a, b, cand)
            mu = int(conv.counts[x % cand].sum())
            if best_mu is None or mu < best_mu:
                best_p, best_mu = int(p), mu
        m *= best_p
        trace.append((m, best_mu))
    if with_trace:
        return m, trace
    return m


def preprocess_unknown_c_det(
    a_values,
    b_values,
    *,
    universe: int | None = None,
    memory_budget: int | None = None,
) -> UnknownCDetState:
    a = integer_set(a_values)
    b = integer_set(b_values)
    u = resolve_universe(universe, (a, b))
    n = max(a.size, b.size, 1)
    check_pair_budget(a.size, b.size, memory_budget)
    table = WitnessTable.build(a, b)
    threshold = ceil_sqrt(n)
    wcounts = table.witness_counts()
    heavy = np.flatnonzero(wcounts > threshold).astype(np.int64)
    if heavy.size * (threshold + 1) > n * n:
        raise InvariantError("heavy count exceeds the witness-mass bound")

    plan = ModuliPlan()
    hp: list[int] = []
    hm: list[int] = []
    hf: list[int] = []
    x_pos = heavy
    max_rounds = int(heavy.size).bit_length()  # floor(log2 H) + 1 for H >= 1
    while x_pos.size:
        if len(plan.moduli) >= max_rounds:
            raise InvariantError("moduli loop exceeded its iteration budget")
        x_vals = table.keys[x_pos]
        m = select_modulus(a, b, x_vals, u)
        conv = modular_sumset_multiplicities(a, b, m)
        fp = conv.counts[x_vals % m] - wcounts[x_pos]
        fp_sum = int(fp.sum())
        cnt = int(x_pos.size)
        assign = fp * cnt <= 2 * fp_sum  # fp <= 2 * average, in exact integers
        removed = int(np.count_nonzero(assign))
        if removed < (cnt + 1) // 2:
            raise InvariantError("twice-average rule removed fewer than half the elements")
        hp.extend(int(v) for v in x_pos[assign])
        hm.extend([len(plan.moduli)] * removed)
        hf.extend(int(v) for v in fp[assign])
        plan.rounds.append(RoundStats(modulus=m, x_size=cnt, fp_sum=fp_sum, removed=removed))
        plan.moduli.append(m)
        x_pos = x_pos[~assign]

    order = np.argsort(np.asarray(hp, dtype=np.int64), kind="stable")
    plan.heavy_positions = np.asarray(hp, dtype=np.int64)[order]
    plan.heavy_mod_idx = np.asarray(hm, dtype=np.int32)[order]
    plan.heavy_fp = np.asarray(hf, dtype=np.int64)[order]
    plan.remainder_lists = [RemainderLists.build(table.keys, m) for m in plan.moduli]
    for arr in (plan.heavy_positions, plan.heavy_mod_idx, plan.heavy_fp):
        arr.setflags(write=False)
    return UnknownCDetState(a, b, u, n, threshold, table, plan)


def query_unknown_c_det(
    state: UnknownCDetState, a_query, b_query, c_query, *, counters: WorkCounters | None = None
) -> QueryAnswer:
    """Exact per-target counts; targets may be any integers. Reproducible."""
    aq = integer_set(a_query)
    bq = integer_set(b_query)
    a_ords = ordinals_in(state.a, aq, "A'")
    b_ords = ordinals_in(state.b, bq, "B'")
    targets = dedup_targets(c_query)
    tvals = np.asarray(targets, dtype=np.int64)

    plan = state.plan
    convs = [modular_sumset_multiplicities(aq, bq, m) for m in plan.moduli]
    amask = mask_from_ordinals(state.a.size, a_ords)
    bmask = mask_from_ordinals(state.b.size, b_ords)

    counts = np.zeros(len(targets), dtype=np.int64)
    scanned = 0
    key_pos = state.table.find_many(tvals) if targets else np.zeros(0, np.int64)
    sel = np.flatnonzero(key_pos >= 0)
    if sel.size:
        kp = key_pos[sel]
        wc = state.table.offsets[kp + 1] - state.table.offsets[kp]
        heavy_flag = wc > state.threshold

        light_sel = sel[~heavy_flag]
        light_kp = kp[~heavy_flag]
        if light_sel.size:
            starts = state.table.offsets[light_kp]
            ends = state.table.offsets[light_kp + 1]
            seg = np.arange(light_sel.size, dtype=np.int32)
            present = kernels.count_present_pairs(
                state.table.aidx, state.table.bidx, amask, bmask, starts, ends, seg, light_sel.size
            )
            counts[light_sel] = present
            scanned += int((ends - starts).sum())

        heavy_sel = sel[heavy_flag]
        heavy_kp = kp[heavy_flag]
        if heavy_sel.size:
            slot = np.searchsorted(plan.heavy_positions, heavy_kp)
            if np.any(slot >= plan.heavy_positions.size) or np.any(
                plan.heavy_positions[np.minimum(slot, plan.heavy_positions.size - 1)] != heavy_kp
            ):
                raise InvariantError("heavy sumset element missing from the moduli plan")
            mod_idx = plan.heavy_mod_idx[slot]
            for mi in np.unique(mod_idx):
                grp = mod_idx == mi
                gsel = heavy_sel[grp]
                gvals = tvals[gsel]
                fp, sc = masked_bucket_counts(
                    state.table, plan.remainder_lists[mi], gvals, heavy_kp[grp], amask, bmask
                )
                counts[gsel] = convs[mi].counts[gvals % plan.moduli[mi]] - fp
                scanned += sc

    if counts.size and int(counts.min()) < 0:
        raise InvariantError("false-positive subtraction drove a count negative")
    if counters is not None:
        counters.convolution_length += sum(plan.moduli)
        counters.witness_scan_length += scanned
        counters.moduli_count = max(counters.moduli_count, len(plan.moduli))
    entries = [AnswerEntry(v, int(k) > 0, int(k)) for v, k in zip(targets, counts)]
    return QueryAnswer(entries)
