"""Randomized engine where only A and B are known at preprocessing time.

Without C there is no false-positive set to store, so preprocessing keeps
the full witness table of A + B (all pairs grouped by sum) plus, for one
random prime m ~ n^1.5, the list of sumset elements in each residue class.
A query convolves the subsets mod m once; each target c then costs the
witness mass of its residue class: count = (pairs congruent to c) minus
(witnesses of other sums in c's class that survive the subset masks).
Targets are arbitrary integers, not just members of a preprocessed C.
"""

from __future__ import annotations

from dataclasses import dataclass

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
from .numtheory import ceil_n_pow_3_2, is_prime, primes_in_range, sample_prime
from .witness import RemainderLists, WitnessTable, check_pair_budget, masked_bucket_counts


@dataclass
class UnknownCRandState:
    a: np.ndarray
    b: np.ndarray
    universe: int
    size: int
    modulus: int
    table: WitnessTable
    rem: RemainderLists
    rng_seed: int | None
    forced: bool


def preprocess_unknown_c_rand(
    a_values,
    b_values,
    rng_seed: int,
    *,
    universe: int | None = None,
    force_modulus: int | None = None,
    memory_budget: int | None = None,
) -> UnknownCRandState:
    a = integer_set(a_values)
    b = integer_set(b_values)
    u = resolve_universe(universe, (a, b))
    n = max(a.size, b.size, 1)
    check_pair_budget(a.size, b.size, memory_budget)
    table = WitnessTable.build(a, b)
    if force_modulus is not None:
        m = int(force_modulus)
        if not is_prime(m):
            raise DomainError(f"forced modulus {m} is not prime")
        forced = True
    else:
        lo = max(2, ceil_n_pow_3_2(n))
        m = sample_prime(primes_in_range(lo, 2 * lo), rng_seed)
        forced = False
    rem = RemainderLists.build(table.keys, m)
    return UnknownCRandState(a, b, u, n, m, table, rem, rng_seed, forced)


def query_unknown_c_rand(
    state: UnknownCRandState, a_query, b_query, c_query, *, counters: WorkCounters | None = None
) -> QueryAnswer:
    """Exact per-target counts; targets may be any integers."""
    aq = integer_set(a_query)
    bq = integer_set(b_query)
    a_ords = ordinals_in(state.a, aq, "A'")
    b_ords = ordinals_in(state.b, bq, "B'")
    targets = dedup_targets(c_query)
    tvals = np.asarray(targets, dtype=np.int64)

    conv = modular_sumset_multiplicities(aq, bq, state.modulus)
    amask = mask_from_ordinals(state.a.size, a_ords)
    bmask = mask_from_ordinals(state.b.size, b_ords)

    counts = np.zeros(len(targets), dtype=np.int64)
    key_pos = state.table.find_many(tvals) if targets else np.zeros(0, np.int64)
    sel = np.flatnonzero(key_pos >= 0)
    scanned = 0
    if sel.size:
        fp, scanned = masked_bucket_counts(
            state.table, state.rem, tvals[sel], key_pos[sel], amask, bmask
        )
        counts[sel] = conv.counts[tvals[sel] % state.modulus] - fp
    if counts.size and int(counts.min()) < 0:
        raise InvariantError("false-positive subtraction drove a count negative")
    if counters is not None:
        counters.convolution_length += state.modulus
        counters.witness_scan_length += scanned
    entries = [AnswerEntry(v, int(k) > 0, int(k)) for v, k in zip(targets, counts)]
    return QueryAnswer(entries)
