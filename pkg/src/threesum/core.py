"""Shared value types: canonical integer sets, query answers, work counters.

All sets handled by the engines are kept in one canonical form: a sorted,
deduplicated, read-only ``numpy.int64`` array of nonnegative values.  The
position of an element in its universe array is its *ordinal*; subset
membership during queries is resolved through ordinals (binary search at
validation time, flat masks afterwards), never through hashing.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

import numpy as np

from .errors import DomainError


def integer_set(values: Iterable[int]) -> np.ndarray:
    """Canonicalize ``values`` into a sorted, deduplicated int64 array.

    Raises DomainError on negative values.  Idempotent: passing an already
    canonical array returns an equal array.
    """
    if isinstance(values, np.ndarray):
        arr = values.astype(np.int64, copy=False)
    else:
        arr = np.asarray(list(values), dtype=np.int64)
    arr = np.unique(arr.ravel())
    if arr.size and int(arr[0]) < 0:
        raise DomainError(f"integer sets must be nonnegative, got {int(arr[0])}")
    arr.setflags(write=False)
    return arr


def ordinals_in(universe: np.ndarray, subset: np.ndarray, set_name: str) -> np.ndarray:
    """Map each element of a canonical ``subset`` to its ordinal in ``universe``.

    Raises DomainError naming the first offending element if the subset
    relation does not hold.
    """
    if subset.size == 0:
        return np.empty(0, dtype=np.int64)
    pos = np.searchsorted(universe, subset)
    clipped = np.minimum(pos, max(universe.size - 1, 0))
    bad = (pos >= universe.size) | (universe[clipped] != subset) if universe.size else np.ones(subset.size, bool)
    if np.any(bad):
        offender = int(subset[np.argmax(bad)])
        raise DomainError(f"element {offender} of {set_name} is not in the preprocessed universe")
    return pos.astype(np.int64)


def mask_from_ordinals(size: int, ordinals: np.ndarray) -> np.ndarray:
    """0/1 uint8 membership mask over a universe of ``size`` ordinals."""
    mask = np.zeros(size, dtype=np.uint8)
    mask[ordinals] = 1
    return mask


def dedup_targets(values: Iterable[int]) -> list[int]:
    """Distinct query targets in first-occurrence order."""
    return list(dict.fromkeys(int(v) for v in values))


def resolve_universe(universe: int | None, sets: tuple[np.ndarray, ...]) -> int:
    """Effective universe bound: the declared one (validated) or the max value seen."""
    top = max((int(arr[-1]) for arr in sets if arr.size), default=0)
    if universe is None:
        return max(top, 1)
    universe = int(universe)
    if universe < 1:
        raise DomainError(f"universe bound must be >= 1, got {universe}")
    if top > universe:
        raise DomainError(f"value {top} exceeds the declared universe bound {universe}")
    return universe


class AnswerEntry(NamedTuple):
    value: int
    hit: bool
    count: int


@dataclass
class QueryAnswer:
    """Per-target answers, ordered like the (deduplicated) query targets.

    Invariant: ``hit == (count > 0)`` and ``count`` is the exact number of
    pairs (a, b) in the queried subsets with a + b equal to the target.
    """

    entries: list[AnswerEntry] = field(default_factory=list)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def hits(self) -> list[bool]:
        return [e.hit for e in self.entries]


@dataclass
class WorkCounters:
    """Machine-independent work units accumulated by engine operations.

    Lengths count elements touched (vector cells, scanned list slots), not
    wall-clock time; all fields are monotone within a run.
    """

    convolution_length: int = 0
    fp_scan_length: int = 0
    witness_scan_length: int = 0
    restarts: int = 0
    moduli_count: int = 0

    def scan_total(self) -> int:
        return self.fp_scan_length + self.witness_scan_length
