import random

import numpy as np
import pytest

from threesum import (
    WorkCounters,
    brute_force_all_numbers,
    count_false_positives,
    divisor_budget,
    enumerate_false_positives,
    modular_sumset_multiplicities,
    preprocess_unknown_c_det,
    primes_in_range,
    query_unknown_c_det,
    select_modulus,
)
from threesum.errors import DomainError
from threesum.generators import generate_instance, sample_query
from threesum.numtheory import ceil_sqrt


def test_tiny_instance_is_all_light():
    # n = 2, threshold ceil(sqrt(2)) = 2; the largest witness set has 2 pairs
    state = preprocess_unknown_c_det([1, 3], [2, 4])
    assert state.threshold == 2
    assert state.plan.moduli == []
    assert state.plan.heavy_positions.size == 0


def test_light_path_query():
    state = preprocess_unknown_c_det([1, 3], [2, 4])
    counters = WorkCounters()
    ans = query_unknown_c_det(state, [1], [2], [3, 5], counters=counters)
    assert ans.entries == [(3, True, 1), (5, False, 0)]
    assert counters.convolution_length == 0  # no moduli, no transforms


def test_target_outside_sumset_short_circuits():
    state = preprocess_unknown_c_det([1, 3], [2, 4])
    counters = WorkCounters()
    ans = query_unknown_c_det(state, [1, 3], [2, 4], [4], counters=counters)
    assert ans.entries == [(4, False, 0)]
    assert counters.witness_scan_length == 0


def test_select_modulus_stays_in_range_and_minimizes():
    rng = random.Random(1)
    for n in (4, 16, 32):
        a = sorted(rng.sample(range(4 * n**2), n))
        b = sorted(rng.sample(range(4 * n**2), n))
        u = max(a + b)
        x = sorted({ai + bi for ai in a for bi in b})
        m3, trace = select_modulus(a, b, x, u, with_trace=True)
        lo = max(2, ceil_sqrt(n))
        primes = primes_in_range(lo, 2 * lo).primes.tolist()
        # factor m3 into the three chosen primes recorded by the trace
        m1 = trace[0][0]
        m2 = trace[1][0] // m1
        m3_factor = trace[2][0] // trace[1][0]
        assert all(p in primes for p in (m1, m2, m3_factor))
        assert lo**3 <= m3 < (2 * lo) ** 3
        if n in (4, 16):  # exact squares: the constructive range matches n^1.5 scaling
            assert n**3 <= m3**2 < 64 * n**3  # m3 in [n^1.5, 8 n^1.5)
        # minimization postcondition for the final round
        m2_full = trace[1][0]
        mu3 = trace[2][1]
        for p in primes:
            cand = m2_full * p
            conv = modular_sumset_multiplicities(a, b, cand)
            mu = int(conv.counts[np.asarray(x) % cand].sum())
            assert mu3 <= mu


def test_select_modulus_chain_bound_exact():
    rng = random.Random(5)
    for trial in range(6):
        n = rng.choice([16, 32])
        inst = generate_instance(n, n**2, rng.choice(["clustered", "uniform"]), seed=trial, with_c=False)
        a, b = inst.a, inst.b
        u = inst.universe
        x = sorted({int(ai) + int(bi) for ai in a for bi in b})
        m3, trace = select_modulus(a, b, x, u, with_trace=True)
        lo = max(2, ceil_sqrt(max(a.size, b.size)))
        p_count = len(primes_in_range(lo, 2 * lo))
        d_prime = divisor_budget(u, lo).max_divisors
        true_solutions = sum(
            1 for ai in a for bi in b if int(ai) + int(bi) in set(x)
        )
        f_prev = len(x) * a.size * b.size - true_solutions  # |F(1)| computed arithmetically
        assert f_prev == count_false_positives(a, b, x, 1)
        for m_i, _mu in trace:
            f_cur = count_false_positives(a, b, x, m_i)
            assert f_cur * p_count <= f_prev * d_prime  # exact integers on both sides
            f_prev = f_cur


def test_select_modulus_validation():
    with pytest.raises(DomainError):
        select_modulus([1], [2], [], 10)
    with pytest.raises(DomainError):
        select_modulus([1], [2], [50], 10)  # target above 2 * universe


def progression_instance(n, seed):
    """Dense progressions force many heavy sumset elements."""
    return generate_instance(n, n, "adversarial-progression", seed=seed, with_c=False)


def test_preprocess_heavy_classification_and_plan_invariants():
    for n, seed in ((16, 0), (32, 1), (64, 2)):
        inst = progression_instance(n, seed)
        state = preprocess_unknown_c_det(inst.a, inst.b, universe=inst.universe)
        plan = state.plan
        wcounts = state.table.witness_counts()
        heavy = np.flatnonzero(wcounts > state.threshold)
        assert heavy.size > 0, "progression instances must produce heavy elements"
        assert heavy.size <= (n * n) // state.threshold
        assert np.array_equal(np.sort(plan.heavy_positions), heavy)
        assert len(plan.moduli) <= int(heavy.size).bit_length()  # floor(log2)+1
        remaining = heavy.size
        for stats in plan.rounds:
            assert stats.x_size == remaining
            assert stats.removed >= (stats.x_size + 1) // 2
            remaining -= stats.removed
        assert remaining == 0


def test_assigned_moduli_satisfy_twice_average_by_oracle():
    inst = progression_instance(32, 3)
    state = preprocess_unknown_c_det(inst.a, inst.b, universe=inst.universe)
    plan = state.plan
    for mi, stats in enumerate(plan.rounds):
        chosen = plan.heavy_positions[plan.heavy_mod_idx == mi]
        targets = [int(state.table.keys[p]) for p in chosen]
        fps = enumerate_false_positives(inst.a, inst.b, targets, stats.modulus)
        per_target = {t: 0 for t in targets}
        for _, _, z in fps:
            per_target[z] += 1
        for pos, t in zip(chosen, targets):
            stored = int(plan.heavy_fp[np.searchsorted(plan.heavy_positions, pos)])
            assert per_target[t] == stored
            assert per_target[t] * stats.x_size <= 2 * stats.fp_sum


def test_preprocessing_is_deterministic():
    inst = progression_instance(32, 4)
    s1 = preprocess_unknown_c_det(inst.a, inst.b, universe=inst.universe)
    s2 = preprocess_unknown_c_det(inst.a, inst.b, universe=inst.universe)
    assert s1.plan.moduli == s2.plan.moduli
    assert np.array_equal(s1.plan.heavy_positions, s2.plan.heavy_positions)
    assert np.array_equal(s1.plan.heavy_mod_idx, s2.plan.heavy_mod_idx)
    assert np.array_equal(s1.plan.heavy_fp, s2.plan.heavy_fp)
    assert np.array_equal(s1.table.keys, s2.table.keys)
    assert np.array_equal(s1.table.aidx, s2.table.aidx)
    aq, bq, cq = sample_query(random.Random(0), inst, unknown_c=True)
    assert query_unknown_c_det(s1, aq, bq, cq).entries == query_unknown_c_det(s2, aq, bq, cq).entries


def test_heavy_query_scan_bounded_by_recorded_false_positives():
    inst = progression_instance(64, 5)
    state = preprocess_unknown_c_det(inst.a, inst.b, universe=inst.universe)
    plan = state.plan
    assert plan.heavy_positions.size > 0
    for pos, stored_fp in zip(plan.heavy_positions[:10], plan.heavy_fp[:10]):
        target = int(state.table.keys[pos])
        counters = WorkCounters()
        query_unknown_c_det(state, inst.a, inst.b, [target], counters=counters)
        # scanned witness mass for one heavy target is exactly its recorded fp count
        assert counters.witness_scan_length == int(stored_fp)


def test_random_queries_match_oracle_mixed_targets():
    rng = random.Random(30)
    for trial in range(8):
        n = rng.choice([8, 16, 32, 64])
        u = rng.choice([n, n * n, n**3])
        mode = rng.choice(["uniform", "clustered", "adversarial-progression"])
        inst = generate_instance(n, u, mode, seed=trial, with_c=False)
        state = preprocess_unknown_c_det(inst.a, inst.b, universe=u)
        for _ in range(25):
            aq, bq, cq = sample_query(rng, inst, unknown_c=True)
            got = query_unknown_c_det(state, aq, bq, cq)
            want = brute_force_all_numbers(aq, bq, cq)
            assert got.entries == want.entries
