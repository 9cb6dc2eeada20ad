import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from threesum import integer_set, modular_sumset_multiplicities
from threesum.convolution import _ntt_multiply
from threesum.errors import DomainError, ResourceError


def pair_count_oracle(a, b, m):
    """Independent direct counting: plain double loop, no library code."""
    counts = [0] * m
    for x in a:
        for y in b:
            counts[(x + y) % m] += 1
    return counts


def test_single_pair_mod_one():
    mv = modular_sumset_multiplicities([0], [0], 1)
    assert mv.counts.tolist() == [1]


def test_tiny_derived_example():
    # pairs of {1,2} x {1,2} sum to 2,3,3,4; mod 3 that is 2,0,0,1
    mv = modular_sumset_multiplicities([1, 2], [1, 2], 3)
    assert mv.counts.tolist() == [2, 1, 1]


@pytest.mark.parametrize("m", [1, 2, 63, 64, 101, 997, 4096])
def test_matches_direct_counting(m):
    rng = random.Random(m)
    a = sorted({rng.randrange(10_000) for _ in range(64)})
    b = sorted({rng.randrange(10_000) for _ in range(64)})
    mv = modular_sumset_multiplicities(a, b, m)
    assert mv.counts.tolist() == pair_count_oracle(a, b, m)


@given(
    st.lists(st.integers(0, 5000), max_size=40),
    st.lists(st.integers(0, 5000), max_size=40),
    st.integers(1, 300),
)
@settings(max_examples=80, deadline=None)
def test_mass_conservation_and_symmetry(a, b, m):
    sa, sb = integer_set(a), integer_set(b)
    ab = modular_sumset_multiplicities(sa, sb, m)
    ba = modular_sumset_multiplicities(sb, sa, m)
    assert ab.total == sa.size * sb.size
    assert np.array_equal(ab.counts, ba.counts)


def test_empty_inputs():
    mv = modular_sumset_multiplicities([], [1, 2], 7)
    assert mv.counts.tolist() == [0] * 7


def test_zero_modulus_rejected():
    with pytest.raises(DomainError):
        modular_sumset_multiplicities([1], [2], 0)


def test_transform_and_direct_paths_agree():
    rng = random.Random(5)
    a = sorted({rng.randrange(2000) for _ in range(50)})
    b = sorted({rng.randrange(2000) for _ in range(50)})
    for m in (61, 62, 63, 64, 65, 66, 67):  # straddles the direct/transform switch
        mv = modular_sumset_multiplicities(a, b, m)
        assert mv.counts.tolist() == pair_count_oracle(a, b, m)


def test_crt_reconstruction_matches_direct_product():
    rng = random.Random(11)
    ca = np.array([rng.randrange(500) for _ in range(40)], dtype=np.int64)
    cb = np.array([rng.randrange(500) for _ in range(33)], dtype=np.int64)
    want = np.convolve(ca, cb)
    # a large stated bound forces the two-prime CRT path
    got = _ntt_multiply(ca, cb, coeff_bound=2**40)
    assert np.array_equal(got, want)
    got_single = _ntt_multiply(ca, cb, coeff_bound=int(want.max()) + 1)
    assert np.array_equal(got_single, want)


def test_crt_capacity_guard():
    with pytest.raises(ResourceError):
        _ntt_multiply(np.ones(4, np.int64), np.ones(4, np.int64), coeff_bound=2**62)


def test_counts_are_readonly():
    mv = modular_sumset_multiplicities([1, 2], [3], 11)
    with pytest.raises(ValueError):
        mv.counts[0] = 5
