import math
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from threesum import divisor_budget, primes_in_range, sample_prime
from threesum.errors import DomainError, InvariantError, ResourceError
from threesum.numtheory import PrimeRange, ceil_n_pow_3_2, ceil_sqrt, is_prime


def trial_division_primes(lo, hi):
    out = []
    for v in range(max(lo, 2), hi):
        if v >= 2 and all(v % d for d in range(2, math.isqrt(v) + 1)):
            out.append(v)
    return out


def test_known_small_ranges():
    assert primes_in_range(10, 20).primes.tolist() == [11, 13, 17, 19]
    assert primes_in_range(2, 4).primes.tolist() == [2, 3]
    # frozen from trial division over [8, 16)
    assert primes_in_range(8, 16).primes.tolist() == [11, 13]


@given(st.integers(min_value=2, max_value=4000))
@settings(max_examples=50, deadline=None)
def test_completeness_matches_trial_division(lo):
    pr = primes_in_range(lo, 2 * lo)
    assert pr.primes.tolist() == trial_division_primes(lo, 2 * lo)
    assert len(pr) > 0  # Bertrand: [r, 2r) holds a prime for r >= 2


def test_segmented_equals_flat():
    seg = primes_in_range(1000, 50000, segment_size=4096)
    flat = primes_in_range(1000, 50000)
    assert np.array_equal(seg.primes, flat.primes)


def test_range_validation():
    with pytest.raises(DomainError):
        primes_in_range(1, 4)
    with pytest.raises(DomainError):
        primes_in_range(5, 5)
    with pytest.raises(ResourceError):
        primes_in_range(2, 1 << 31)


def test_sample_prime_membership_and_determinism():
    pr = primes_in_range(10, 20)
    assert {sample_prime(pr, s) for s in range(64)} <= {11, 13, 17, 19}
    assert sample_prime(pr, 1234) == sample_prime(pr, 1234)


def test_sample_prime_frequencies():
    pr = primes_in_range(10, 20)
    draws = [sample_prime(pr, s) for s in range(10_000)]
    for p in (11, 13, 17, 19):
        freq = draws.count(p) / len(draws)
        assert 0.15 <= freq <= 0.35, (p, freq)


def test_sample_prime_empty_range():
    empty = PrimeRange(24, 28, np.array([], dtype=np.int64))
    with pytest.raises(InvariantError):
        sample_prime(empty, 0)


def test_divisor_budget_examples():
    assert divisor_budget(2**20, 2**10).max_divisors == 2
    assert divisor_budget(100, 101).max_divisors == 1
    assert divisor_budget(256**3, 4096).max_divisors == 2


@given(st.integers(1, 10**14), st.integers(2, 10**6))
@settings(max_examples=100, deadline=None)
def test_divisor_budget_boundary(universe, base):
    d = divisor_budget(universe, base).max_divisors
    assert base**d <= 2 * universe < base ** (d + 1)


def test_divisor_budget_validation():
    with pytest.raises(DomainError):
        divisor_budget(10, 1)
    with pytest.raises(DomainError):
        divisor_budget(0, 2)


@pytest.mark.parametrize("base", [4, 8, 16])
def test_divisibility_sum_bounded_by_budget(base):
    # sum over all primes in [r, 2r) of per-prime hits is at most |T| * D
    rng = random.Random(base)
    u = 2000
    pr = primes_in_range(base, 2 * base)
    budget = divisor_budget(u, base).max_divisors
    for _ in range(30):
        triples = []
        while len(triples) < 200:
            a, b, c = rng.randrange(u + 1), rng.randrange(u + 1), rng.randrange(u + 1)
            if a + b != c:
                triples.append((a, b, c))
        total = sum(
            sum(1 for (a, b, c) in triples if (a + b - c) % int(p) == 0) for p in pr.primes
        )
        assert total <= len(triples) * budget


def test_integer_root_helpers():
    assert ceil_sqrt(16) == 4
    assert ceil_sqrt(17) == 5
    assert ceil_n_pow_3_2(64) == 512
    assert ceil_n_pow_3_2(2) == 3  # ceil(2.828...)
    assert [is_prime(v) for v in (0, 1, 2, 3, 4, 5, 25, 29)] == [
        False,
        False,
        True,
        True,
        False,
        True,
        False,
        True,
    ]
