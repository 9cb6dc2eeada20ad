"""Instance and query generation for verification campaigns and benchmarks.

All generators are deterministic per (mode, n, universe, seed); the clustered
mode packs values into at most four arithmetic progressions with a common
difference, which concentrates residues and stresses false-positive handling.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from .core import integer_set
from .errors import DomainError

MODES = ("uniform", "clustered", "adversarial-progression")
CLUSTER_COUNT = 4


@dataclass
class Instance:
    n: int
    universe: int
    a: np.ndarray
    b: np.ndarray
    c: np.ndarray | None
    mode: str
    seed: int


def _rng(tag: str, mode: str, n: int, universe: int, seed: int) -> random.Random:
    return random.Random(f"{tag}:{mode}:{n}:{universe}:{seed}")


def _top_up(rng: random.Random, values: set[int], n: int, universe: int) -> list[int]:
    """Deterministically extend ``values`` to exactly n distinct members of [0, universe]."""
    if universe + 1 < n:
        raise DomainError(f"cannot place {n} distinct values in [0, {universe}]")
    probe = rng.randrange(universe + 1)
    while len(values) < n:
        if probe not in values:
            values.add(probe)
        probe = probe + 1 if probe < universe else 0
    return sorted(values)


def _uniform(rng: random.Random, n: int, universe: int) -> list[int]:
    if universe + 1 < n:
        raise DomainError(f"cannot draw {n} distinct values from [0, {universe}]")
    return sorted(rng.sample(range(universe + 1), n))


def _clustered(rng: random.Random, n: int, universe: int) -> list[int]:
    if universe + 1 < n:
        raise DomainError(f"cannot draw {n} distinct values from [0, {universe}]")
    k = min(CLUSTER_COUNT, n) or 1
    sizes = [n // k + (1 if i < n % k else 0) for i in range(k)]
    diff = max(1, (universe + 1) // (2 * n))
    region = (universe + 1) // k
    values: set[int] = set()
    for i, size in enumerate(sizes):
        span = (size - 1) * diff + 1
        slack = max(1, region - span + 1)
        start = i * region + rng.randrange(slack)
        for j in range(size):
            v = start + j * diff
            if v <= universe:
                values.add(v)
    return _top_up(rng, values, n, universe)


def _adversarial_progression(rng: random.Random, n: int, universe: int) -> list[int]:
    if universe + 1 < n:
        raise DomainError(f"cannot place {n} distinct values in [0, {universe}]")
    start = rng.randrange(universe - n + 2)
    return list(range(start, start + n))


_SET_GENERATORS = {
    "uniform": _uniform,
    "clustered": _clustered,
    "adversarial-progression": _adversarial_progression,
}


def _targets_for(rng: random.Random, a: list[int], b: list[int], n: int, universe: int) -> list[int]:
    """A target set mixing genuine pair sums (when they fit) with uniform noise."""
    values: set[int] = set()
    want_sums = n // 2
    for _ in range(8 * n):
        if len(values) >= want_sums:
            break
        s = rng.choice(a) + rng.choice(b)
        if s <= universe:
            values.add(s)
    for _ in range(64 * n):
        if len(values) >= n:
            break
        values.add(rng.randrange(universe + 1))
    return _top_up(rng, values, n, universe)


def generate_instance(n: int, universe: int, mode: str, seed: int, *, with_c: bool = False) -> Instance:
    if mode not in _SET_GENERATORS:
        raise DomainError(f"unknown generator mode {mode!r}; have {MODES}")
    if n < 1 or universe < 1:
        raise DomainError("n and universe must be >= 1")
    gen = _SET_GENERATORS[mode]
    a = gen(_rng("A", mode, n, universe, seed), n, universe)
    b = gen(_rng("B", mode, n, universe, seed), n, universe)
    c = None
    if with_c:
        c = _targets_for(_rng("C", mode, n, universe, seed), a, b, n, universe)
    return Instance(
        n=n,
        universe=universe,
        a=integer_set(a),
        b=integer_set(b),
        c=integer_set(c) if c is not None else None,
        mode=mode,
        seed=seed,
    )


def sample_subset(rng: random.Random, universe_set: np.ndarray, keep_prob: float) -> list[int]:
    return [int(v) for v in universe_set if rng.random() < keep_prob]


def sample_query(rng: random.Random, inst: Instance, *, unknown_c: bool) -> tuple[list[int], list[int], list[int]]:
    """Random subset query for an instance.

    For unknown-C engines the targets are drawn independently of any
    preprocessed C: a mix of actual sumset members and uniform values from
    [0, 2U], so both hits and misses are represented.
    """
    keep = rng.choice((0.3, 0.5, 0.8))
    aq = sample_subset(rng, inst.a, keep)
    bq = sample_subset(rng, inst.b, keep)
    if not unknown_c:
        if inst.c is None:
            raise DomainError("instance has no target universe C")
        cq = sample_subset(rng, inst.c, rng.choice((0.5, 0.8)))
        if not cq and inst.c.size:
            cq = [int(inst.c[rng.randrange(inst.c.size)])]
        return aq, bq, cq
    cq: list[int] = []
    for _ in range(max(1, inst.n // 2)):
        cq.append(int(inst.a[rng.randrange(inst.a.size)]) + int(inst.b[rng.randrange(inst.b.size)]))
    for _ in range(max(1, inst.n - len(cq))):
        cq.append(rng.randrange(2 * inst.universe + 1))
    rng.shuffle(cq)
    return aq, bq, cq
