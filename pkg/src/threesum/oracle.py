"""Brute-force reference implementations.

Ground truth for everything else: plain Python pair loops over plain Python
containers.  Deliberately shares no pair enumeration or membership machinery
with the engines so a bug cannot hide on both sides of a comparison at once.
Quadratic per call by design.
"""

from __future__ import annotations

from collections import Counter

from .core import AnswerEntry, QueryAnswer
from .errors import DomainError


def _canon(values) -> list[int]:
    return sorted({int(v) for v in values})


def brute_force_all_numbers(a_query, b_query, c_query) -> QueryAnswer:
    """Exact per-target pair counts by enumerating every pair.

    Targets are answered in first-occurrence order with duplicates dropped,
    matching the engines' convention.
    """
    a = _canon(a_query)
    b = _canon(b_query)
    sums = Counter()
    for x in a:
        for y in b:
            sums[x + y] += 1
    entries = []
    seen = set()
    for v in c_query:
        v = int(v)
        if v in seen:
            continue
        seen.add(v)
        k = sums.get(v, 0)
        entries.append(AnswerEntry(v, k > 0, k))
    return QueryAnswer(entries)


def _residue_buckets(values: list[int], m: int) -> dict[int, list[int]]:
    buckets: dict[int, list[int]] = {}
    for v in values:
        buckets.setdefault(v % m, []).append(v)
    return buckets


def enumerate_false_positives(a, b, c, m) -> list[tuple[int, int, int]]:
    """All value triples with x + y congruent to z mod m but x + y != z.

    Enumerated pair-major with each residue bucket of c in ascending order.
    """
    m = int(m)
    if m < 1:
        raise DomainError(f"modulus must be >= 1, got {m}")
    av, bv, cv = _canon(a), _canon(b), _canon(c)
    buckets = _residue_buckets(cv, m)
    triples = []
    for x in av:
        for y in bv:
            s = x + y
            for z in buckets.get(s % m, ()):
                if z != s:
                    triples.append((x, y, z))
    return triples


def count_false_positives(a, b, c, m) -> int:
    """Count-only variant of :func:`enumerate_false_positives`.

    Safe for moduli so small that materializing the triples would be
    enormous (m = 1 counts every non-solution triple).
    """
    m = int(m)
    if m < 1:
        raise DomainError(f"modulus must be >= 1, got {m}")
    av, bv, cv = _canon(a), _canon(b), _canon(c)
    bucket_sizes = Counter(v % m for v in cv)
    exact = set(cv)
    total = 0
    for x in av:
        for y in bv:
            s = x + y
            total += bucket_sizes.get(s % m, 0)
            if s in exact:
                total -= 1
    return total
