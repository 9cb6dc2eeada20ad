"""Randomized engine for universes A, B, C all known at preprocessing time.

Preprocessing samples a prime p from [ceil(n^1.5), 2*ceil(n^1.5)), stores
every false positive modulo p (triples with a + b congruent to c but not
equal), and restarts with a fresh prime whenever the store would exceed a
cap set at twice its provable average over the prime range.  A query runs
one exact convolution of the queried subsets mod p and subtracts the stored
false positives that survive into the subsets, leaving exact per-target
solution counts.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from . import _kernels as kernels
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
from .errors import DomainError, InvariantError, ResourceError
from .numtheory import ceil_n_pow_3_2, divisor_budget, is_prime, primes_in_range, sample_prime

MAX_RESTARTS = 64


@dataclass
class KnownCState:
    """Immutable preprocessing output; any number of queries may share it."""

    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    universe: int
    size: int
    modulus: int
    fp_cap: int
    fa: np.ndarray  # ordinals into a
    fb: np.ndarray  # ordinals into b
    fc: np.ndarray  # ordinals into c
    restarts: int
    forced: bool
    rng_seed: int | None

    @property
    def false_positive_count(self) -> int:
        return int(self.fa.size)

    def false_positive_values(self) -> list[tuple[int, int, int]]:
        return [
            (int(self.a[i]), int(self.b[j]), int(self.c[k]))
            for i, j, k in zip(self.fa, self.fb, self.fc)
        ]


def _freeze(*arrays: np.ndarray) -> None:
    for arr in arrays:
        arr.setflags(write=False)


def fp_cap_for(n: int, universe: int, prime_count: int, divisors: int) -> int:
    """Twice the provable average of |F| over the prime range (Markov cap)."""
    return 2 * ((n**3 * divisors + prime_count - 1) // prime_count)


def preprocess_known_c(
    a_values,
    b_values,
    c_values,
    rng_seed: int,
    *,
    universe: int | None = None,
    force_modulus: int | None = None,
    max_restarts: int = MAX_RESTARTS,
    fp_cap_override: int | None = None,
) -> KnownCState:
    """Build the false-positive store for one accepted prime.

    ``force_modulus`` pins the prime for reproducible tests (it must be
    prime); ``fp_cap_override`` replaces the computed restart threshold.
    """
    a = integer_set(a_values)
    b = integer_set(b_values)
    c = integer_set(c_values)
    u = resolve_universe(universe, (a, b, c))
    n = max(a.size, b.size, c.size, 1)
    lo = max(2, ceil_n_pow_3_2(n))
    prange = primes_in_range(lo, 2 * lo)
    budget = divisor_budget(u, lo)
    if fp_cap_override is not None:
        cap = int(fp_cap_override)
    else:
        cap = fp_cap_for(n, u, len(prange), budget.max_divisors)

    if force_modulus is not None:
        p = int(force_modulus)
        if not is_prime(p):
            raise DomainError(f"forced modulus {p} is not prime")
        fa, fb, fc, _total = kernels.congruent_triples(a, b, c, p, -1)
        _freeze(fa, fb, fc)
        return KnownCState(a, b, c, u, n, p, cap, fa, fb, fc, 0, True, rng_seed)

    rng = random.Random(rng_seed)
    for attempt in range(max_restarts):
        p = sample_prime(prange, rng.getrandbits(63))
        fa, fb, fc, total = kernels.congruent_triples(a, b, c, p, cap)
        if total <= cap:
            _freeze(fa, fb, fc)
            return KnownCState(a, b, c, u, n, p, cap, fa, fb, fc, attempt, False, rng_seed)
    raise ResourceError(
        f"no prime met the false-positive cap {cap} in {max_restarts} attempts; "
        "expected about 2, so the cap computation is suspect"
    )


def query_known_c(state: KnownCState, a_query, b_query, c_query, *, counters: WorkCounters | None = None) -> QueryAnswer:
    """Exact per-target counts for subsets of the preprocessed universes."""
    aq = integer_set(a_query)
    bq = integer_set(b_query)
    a_ords = ordinals_in(state.a, aq, "A'")
    b_ords = ordinals_in(state.b, bq, "B'")
    targets = dedup_targets(c_query)
    tvals = np.asarray(targets, dtype=np.int64)
    t_ords = ordinals_in(state.c, tvals, "C'")

    conv = modular_sumset_multiplicities(aq, bq, state.modulus)
    amask = mask_from_ordinals(state.a.size, a_ords)
    bmask = mask_from_ordinals(state.b.size, b_ords)
    cmask = mask_from_ordinals(state.c.size, t_ords)
    if state.fa.size:
        keep = (amask[state.fa] & bmask[state.fb] & cmask[state.fc]).astype(bool)
        dec = np.bincount(state.fc[keep], minlength=state.c.size).astype(np.int64)
    else:
        dec = np.zeros(state.c.size, dtype=np.int64)

    counts = conv.counts[tvals % state.modulus] - dec[t_ords] if targets else np.zeros(0, np.int64)
    if counts.size and int(counts.min()) < 0:
        raise InvariantError("false-positive subtraction drove a count negative")
    if counters is not None:
        counters.convolution_length += state.modulus
        counters.fp_scan_length += int(state.fa.size)
    entries = [AnswerEntry(v, int(k) > 0, int(k)) for v, k in zip(targets, counts)]
    return QueryAnswer(entries)
