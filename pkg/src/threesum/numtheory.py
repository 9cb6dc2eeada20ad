"""Prime enumeration, random prime sampling, and divisor budgets.

The engines always draw primes from dyadic ranges [r, 2r), which are
nonempty for every r >= 2.  The divisor budget D = floor(log_r(2U)) caps
how many primes >= r can divide any nonzero integer of magnitude <= 2U;
it is computed by exact integer powering because an off-by-one here breaks
the false-positive accounting downstream.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InvariantError, ResourceError

DEFAULT_SEGMENT = 1 << 22
DEFAULT_MAX_HI = 1 << 30


@dataclass(frozen=True)
class PrimeRange:
    """All primes in [lo, hi), ascending and complete."""

    lo: int
    hi: int
    primes: np.ndarray

    def __len__(self):
        return int(self.primes.size)


@dataclass(frozen=True)
class DivisorBudget:
    """Largest D with base**D <= 2*universe.

    Any nonzero integer of magnitude <= 2*universe has at most
    ``max_divisors`` prime divisors >= base (their product divides it).
    """

    universe: int
    base: int
    max_divisors: int


def _flat_sieve(limit: int) -> np.ndarray:
    """Boolean primality table for [0, limit)."""
    is_prime = np.ones(limit, dtype=bool)
    is_prime[:2] = False
    for p in range(2, math.isqrt(limit - 1) + 1):
        if is_prime[p]:
            is_prime[p * p :: p] = False
    return is_prime


def primes_in_range(
    lo: int,
    hi: int,
    *,
    segment_size: int = DEFAULT_SEGMENT,
    max_hi: int = DEFAULT_MAX_HI,
) -> PrimeRange:
    """Complete ascending list of primes in [lo, hi) by sieve of Eratosthenes.

    Uses a flat sieve when hi fits one segment, otherwise a segmented sieve
    with ``segment_size`` windows.  Raises ResourceError when hi exceeds
    ``max_hi`` (the configured memory budget).
    """
    lo, hi = int(lo), int(hi)
    if lo < 2 or hi <= lo:
        raise DomainError(f"prime range requires 2 <= lo < hi, got [{lo}, {hi})")
    if hi > max_hi:
        raise ResourceError(f"prime range upper end {hi} exceeds budget {max_hi}")

    if hi <= segment_size:
        table = _flat_sieve(hi)
        primes = np.flatnonzero(table[lo:]).astype(np.int64) + lo
    else:
        base = np.flatnonzero(_flat_sieve(math.isqrt(hi - 1) + 1)).astype(np.int64)
        chunks = []
        start = lo
        while start < hi:
            end = min(start + segment_size, hi)
            window = np.ones(end - start, dtype=bool)
            for p in base:
                p = int(p)
                first = max(p * p, ((start + p - 1) // p) * p)
                if first < end:
                    window[first - start :: p] = False
            if start < 2:
                window[: 2 - start] = False
            chunks.append(np.flatnonzero(window).astype(np.int64) + start)
            start = end
        primes = np.concatenate(chunks) if chunks else np.empty(0, dtype=np.int64)

    primes.setflags(write=False)
    return PrimeRange(lo=lo, hi=hi, primes=primes)


def sample_prime(prime_range: PrimeRange, rng_seed: int) -> int:
    """Uniform draw from ``prime_range.primes``, deterministic per seed."""
    count = len(prime_range)
    if count == 0:
        raise InvariantError(f"no primes in [{prime_range.lo}, {prime_range.hi})")
    rng = random.Random(rng_seed)
    return int(prime_range.primes[rng.randrange(count)])


def divisor_budget(universe: int, base: int) -> DivisorBudget:
    """Exact D = floor(log_base(2*universe)) via repeated multiplication."""
    universe, base = int(universe), int(base)
    if base < 2:
        raise DomainError(f"divisor budget base must be >= 2, got {base}")
    if universe < 1:
        raise DomainError(f"universe bound must be >= 1, got {universe}")
    bound = 2 * universe
    d = 0
    power = base
    while power <= bound:
        d += 1
        power *= base
    return DivisorBudget(universe=universe, base=base, max_divisors=d)


def ceil_sqrt(n: int) -> int:
    """Smallest integer >= sqrt(n)."""
    r = math.isqrt(n)
    return r if r * r == n else r + 1


def ceil_n_pow_3_2(n: int) -> int:
    """Smallest integer >= n**1.5, exactly (equals ceil(sqrt(n**3)))."""
    return ceil_sqrt(n**3)


def is_prime(n: int) -> bool:
    """Trial division; used to vet forced moduli, so exactness beats speed."""
    n = int(n)
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    for d in range(3, math.isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True
