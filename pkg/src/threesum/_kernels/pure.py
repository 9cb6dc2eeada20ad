"""Numpy implementations of the hot kernels.

Fallback used when the compiled extension is unavailable (and the reference
the extension is tested against).  Semantics, including element order in
every output array, match ``_native`` exactly.
"""

from __future__ import annotations

import numpy as np

_EMPTY32 = np.empty(0, dtype=np.int32)
_EMPTY64 = np.empty(0, dtype=np.int64)


def _ragged_arange(starts: np.ndarray, lens: np.ndarray) -> np.ndarray:
    """Concatenation of arange(starts[i], starts[i]+lens[i]) for all i."""
    total = int(lens.sum())
    if total == 0:
        return _EMPTY64
    base = np.repeat(np.cumsum(lens) - lens, lens)
    return np.arange(total, dtype=np.int64) - base + np.repeat(starts, lens)


def group_pairs_by_sum(a, b):
    """Group every pair of a x b by its sum.

    Returns (keys, offsets, aidx, bidx): ``keys`` holds the distinct sums
    ascending; the pairs summing to keys[k] occupy slots
    offsets[k]:offsets[k+1] of the ordinal arrays (aidx, bidx), ordered by
    ascending flat (a-major) pair index.
    """
    na, nb = int(a.size), int(b.size)
    total = na * nb
    if total == 0:
        return _EMPTY64, np.zeros(1, dtype=np.int64), _EMPTY32, _EMPTY32
    sums = np.add.outer(a, b).ravel()
    order = np.argsort(sums, kind="stable")
    sorted_sums = sums[order]
    starts = np.concatenate(([0], np.flatnonzero(np.diff(sorted_sums)) + 1))
    keys = sorted_sums[starts].copy()
    offsets = np.concatenate((starts, [total])).astype(np.int64)
    aidx = (order // nb).astype(np.int32)
    bidx = (order % nb).astype(np.int32)
    return keys, offsets, aidx, bidx


def congruent_triples(a, b, c, m, limit=-1):
    """Ordinal triples (i, j, k) with a[i]+b[j] congruent to c[k] mod m but not equal.

    Returns (fa, fb, fc, total).  With limit >= 0 and total > limit the
    triple arrays are unspecified (possibly empty); only ``total`` is
    meaningful and the caller is expected to discard the attempt.  Triples
    come out pair-major (ascending flat pair index) with each residue bucket
    of c scanned in ascending value order.
    """
    na, nb, nc = int(a.size), int(b.size), int(c.size)
    if na == 0 or nb == 0 or nc == 0:
        return _EMPTY32, _EMPTY32, _EMPTY32, 0
    cres = c % m
    corder = np.argsort(cres, kind="stable")
    c_by_res = c[corder]
    bucket_counts = np.bincount(cres, minlength=m)
    bucket_starts = np.concatenate(([0], np.cumsum(bucket_counts)))

    sums = np.add.outer(a, b).ravel()
    rs = sums % m
    per_pair = bucket_counts[rs]
    total_congruent = int(per_pair.sum())
    ins = np.searchsorted(c, sums)
    np.minimum(ins, nc - 1, out=ins)
    trues = int(np.count_nonzero(c[ins] == sums))
    total = total_congruent - trues
    if limit >= 0 and total > limit:
        return _EMPTY32, _EMPTY32, _EMPTY32, total

    pair_rep = np.repeat(np.arange(sums.size, dtype=np.int64), per_pair)
    cpos = _ragged_arange(bucket_starts[rs], per_pair)
    keep = c_by_res[cpos] != sums[pair_rep]
    pair_rep = pair_rep[keep]
    fa = (pair_rep // nb).astype(np.int32)
    fb = (pair_rep % nb).astype(np.int32)
    fc = corder[cpos[keep]].astype(np.int32)
    return fa, fb, fc, total


def count_present_pairs(aidx, bidx, amask, bmask, starts, ends, seg, nseg):
    """Per-segment count of slots whose pair survives both membership masks.

    Each range starts[r]:ends[r] indexes into (aidx, bidx); its surviving
    slots are credited to segment seg[r].
    """
    out = np.zeros(int(nseg), dtype=np.int64)
    lens = ends - starts
    total = int(lens.sum())
    if total == 0:
        return out
    flat = _ragged_arange(starts, lens)
    ok = (amask[aidx[flat]] & bmask[bidx[flat]]).astype(bool)
    seg_flat = np.repeat(seg.astype(np.int64), lens)
    hits = np.bincount(seg_flat[ok], minlength=int(nseg)).astype(np.int64)
    out += hits
    return out
