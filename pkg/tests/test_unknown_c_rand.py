import random

import pytest

from threesum import (
    WorkCounters,
    brute_force_all_numbers,
    enumerate_false_positives,
    preprocess_unknown_c_rand,
    query_unknown_c_rand,
)
from threesum.errors import DomainError, ResourceError
from threesum.generators import generate_instance, sample_query


def toy_state(**kwargs):
    return preprocess_unknown_c_rand([1, 3], [2, 4], rng_seed=0, **kwargs)


def test_witness_table_contents():
    state = toy_state()
    assert state.table.keys.tolist() == [3, 5, 7]
    assert state.table.total_pairs == 4


def test_single_pair_universe():
    state = preprocess_unknown_c_rand([0], [0], rng_seed=1)
    assert state.table.keys.tolist() == [0]
    assert state.table.total_pairs == 1


def test_partition_size():
    inst = generate_instance(64, 64**3, "uniform", seed=3, with_c=False)
    state = preprocess_unknown_c_rand(inst.a, inst.b, rng_seed=2, universe=inst.universe)
    assert state.table.total_pairs == 64 * 64


def test_query_with_forced_modulus():
    state = toy_state(force_modulus=5)
    ans = query_unknown_c_rand(state, [1, 3], [2, 4], [5, 8])
    assert ans.entries == [(5, True, 2), (8, False, 0)]


def test_target_in_sumset_but_witnesses_absent():
    state = toy_state(force_modulus=5)
    ans = query_unknown_c_rand(state, [1], [4], [3])
    assert ans.entries == [(3, False, 0)]


def test_targets_beyond_sumset_are_false():
    state = toy_state()
    ans = query_unknown_c_rand(state, [1, 3], [2, 4], [100, 200, 8])
    assert ans.entries == [(100, False, 0), (200, False, 0), (8, False, 0)]


def test_duplicate_targets_first_occurrence_order():
    state = toy_state()
    ans = query_unknown_c_rand(state, [1, 3], [2, 4], [7, 5, 7, 5])
    assert [e.value for e in ans.entries] == [7, 5]


def test_subset_validation():
    state = toy_state()
    with pytest.raises(DomainError, match="5 of B'"):
        query_unknown_c_rand(state, [1], [5], [3])


def test_memory_budget():
    with pytest.raises(ResourceError, match="bytes"):
        preprocess_unknown_c_rand(range(100), range(100), rng_seed=0, memory_budget=10_000)


def test_per_target_scan_mass_is_the_full_universe_false_positive_count():
    inst = generate_instance(32, 32**2, "clustered", seed=6, with_c=False)
    state = preprocess_unknown_c_rand(inst.a, inst.b, rng_seed=5, universe=inst.universe)
    rng = random.Random(10)
    for _ in range(20):
        key = int(state.table.keys[rng.randrange(state.table.keys.size)])
        counters = WorkCounters()
        query_unknown_c_rand(state, inst.a, inst.b, [key], counters=counters)
        want = len(enumerate_false_positives(inst.a, inst.b, [key], state.modulus))
        assert counters.witness_scan_length == want


def test_random_queries_match_oracle_including_unseen_targets():
    rng = random.Random(21)
    for trial in range(8):
        n = rng.choice([8, 16, 32, 64])
        u = rng.choice([n, n * n, n**3])
        mode = rng.choice(["uniform", "clustered", "adversarial-progression"])
        inst = generate_instance(n, u, mode, seed=trial, with_c=False)
        state = preprocess_unknown_c_rand(inst.a, inst.b, rng_seed=trial, universe=u)
        for _ in range(25):
            aq, bq, cq = sample_query(rng, inst, unknown_c=True)
            got = query_unknown_c_rand(state, aq, bq, cq)
            want = brute_force_all_numbers(aq, bq, cq)
            assert got.entries == want.entries
