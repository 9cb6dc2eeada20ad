"""Witness tables and remainder lists over the full pair set of two universes."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels as kernels
from .errors import ResourceError


def check_pair_budget(na: int, nb: int, budget: int | None) -> None:
    """Witness construction is Theta(|A|*|B|); refuse it when a byte budget is set."""
    if budget is None:
        return
    need = 24 * na * nb + 4096  # sums + flat indices during grouping, ordinals after
    if need > budget:
        raise ResourceError(f"witness table needs about {need} bytes, budget is {budget}")


@dataclass
class WitnessTable:
    """Every pair of A x B grouped by sum.

    ``keys`` holds the distinct sums ascending; the pairs summing to keys[k]
    occupy slots offsets[k]:offsets[k+1] of (aidx, bidx), which store
    ordinals into the sorted universes.  The sorted key array is the
    hash-free ordered dictionary: lookups are binary searches.
    """

    keys: np.ndarray
    offsets: np.ndarray
    aidx: np.ndarray
    bidx: np.ndarray

    @classmethod
    def build(cls, a: np.ndarray, b: np.ndarray) -> "WitnessTable":
        keys, offsets, aidx, bidx = kernels.group_pairs_by_sum(a, b)
        for arr in (keys, offsets, aidx, bidx):
            arr.setflags(write=False)
        return cls(keys=keys, offsets=offsets, aidx=aidx, bidx=bidx)

    @property
    def total_pairs(self) -> int:
        return int(self.offsets[-1])

    def find(self, value: int) -> int:
        """Key position of ``value`` or -1."""
        pos = int(np.searchsorted(self.keys, value))
        if pos < self.keys.size and int(self.keys[pos]) == value:
            return pos
        return -1

    def find_many(self, values: np.ndarray) -> np.ndarray:
        """Key positions for an array of values; -1 where absent."""
        if self.keys.size == 0:
            return np.full(values.size, -1, dtype=np.int64)
        pos = np.searchsorted(self.keys, values)
        clipped = np.minimum(pos, self.keys.size - 1)
        found = self.keys[clipped] == values
        return np.where(found, clipped, -1).astype(np.int64)

    def witness_counts(self) -> np.ndarray:
        return np.diff(self.offsets)

    def pair_ordinals(self, pos: int) -> list[tuple[int, int]]:
        lo, hi = int(self.offsets[pos]), int(self.offsets[pos + 1])
        return [(int(i), int(j)) for i, j in zip(self.aidx[lo:hi], self.bidx[lo:hi])]


@dataclass
class RemainderLists:
    """Witness-key positions grouped by key value modulo ``modulus``.

    bucket(r) yields the positions (into the witness key array) of every sum
    congruent to r, in ascending value order.
    """

    modulus: int
    positions: np.ndarray
    starts: np.ndarray

    @classmethod
    def build(cls, keys: np.ndarray, modulus: int) -> "RemainderLists":
        modulus = int(modulus)
        res = keys % modulus
        counts = np.bincount(res, minlength=modulus)
        starts = np.zeros(modulus + 1, dtype=np.int64)
        np.cumsum(counts, out=starts[1:])
        positions = np.argsort(res, kind="stable").astype(np.int64)
        positions.setflags(write=False)
        starts.setflags(write=False)
        return cls(modulus=modulus, positions=positions, starts=starts)

    def bucket(self, residue: int) -> np.ndarray:
        return self.positions[self.starts[residue] : self.starts[residue + 1]]


def gather_buckets(rem: RemainderLists, residues: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Stacked bucket positions for each residue.

    Returns (positions_flat, lens): lens[i] is the bucket size of
    residues[i]; positions_flat concatenates the buckets in input order.
    """
    starts = rem.starts[residues]
    lens = rem.starts[residues + 1] - starts
    total = int(lens.sum())
    if total == 0:
        return np.empty(0, dtype=np.int64), lens
    base = np.repeat(np.cumsum(lens) - lens, lens)
    flat = np.arange(total, dtype=np.int64) - base + np.repeat(starts, lens)
    return rem.positions[flat], lens


def masked_bucket_counts(
    table: WitnessTable,
    rem: RemainderLists,
    targets: np.ndarray,
    target_pos: np.ndarray,
    amask: np.ndarray,
    bmask: np.ndarray,
) -> tuple[np.ndarray, int]:
    """Per-target false-positive counts among masked pairs.

    For each targets[i] (a sumset member at key position target_pos[i]),
    counts the pairs surviving both masks across every sumset element
    congruent to it mod ``rem.modulus`` except the target itself.  Returns
    (counts, scanned) where scanned is the total witness mass walked.
    """
    if targets.size == 0:
        return np.zeros(0, dtype=np.int64), 0
    residues = targets % rem.modulus
    positions, lens = gather_buckets(rem, residues)
    if positions.size == 0:
        return np.zeros(targets.size, dtype=np.int64), 0
    seg = np.repeat(np.arange(targets.size, dtype=np.int64), lens)
    keep = positions != np.repeat(target_pos, lens)
    positions = positions[keep]
    seg = seg[keep].astype(np.int32)
    starts = table.offsets[positions]
    ends = table.offsets[positions + 1]
    counts = kernels.count_present_pairs(
        table.aidx, table.bidx, amask, bmask, starts, ends, seg, targets.size
    )
    return counts, int((ends - starts).sum())
