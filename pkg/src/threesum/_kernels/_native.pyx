# cython: boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
# distutils: language = c++
"""Compiled hot kernels: pair grouping, congruent-triple enumeration, masked scans.

Must stay output-identical (including element order) to ``pure.py``.
"""

import numpy as np

cimport numpy as cnp
from libcpp.vector cimport vector

cnp.import_array()


def group_pairs_by_sum(a_obj, b_obj):
    """See pure.group_pairs_by_sum; LSD radix sort keeps flat order within ties."""
    cdef const cnp.int64_t[::1] a = a_obj
    cdef const cnp.int64_t[::1] b = b_obj
    cdef Py_ssize_t na = a.shape[0], nb = b.shape[0]
    cdef Py_ssize_t total = na * nb
    if total == 0:
        return (np.empty(0, dtype=np.int64), np.zeros(1, dtype=np.int64),
                np.empty(0, dtype=np.int32), np.empty(0, dtype=np.int32))

    keys_np = np.empty(total, dtype=np.int64)
    idx_np = np.empty(total, dtype=np.int64)
    tmp_k_np = np.empty(total, dtype=np.int64)
    tmp_i_np = np.empty(total, dtype=np.int64)
    hist_np = np.empty(65536, dtype=np.int64)
    cdef cnp.int64_t[::1] kk = keys_np
    cdef cnp.int64_t[::1] ii = idx_np
    cdef cnp.int64_t[::1] tk = tmp_k_np
    cdef cnp.int64_t[::1] ti = tmp_i_np
    cdef cnp.int64_t[::1] hist = hist_np

    cdef Py_ssize_t i, j, t, d
    cdef Py_ssize_t k = 0
    cdef cnp.int64_t ai
    for i in range(na):
        ai = a[i]
        for j in range(nb):
            kk[k] = ai + b[j]
            ii[k] = k
            k += 1

    # inputs are sorted ascending, so the last pair carries the max sum
    cdef cnp.int64_t maxkey = a[na - 1] + b[nb - 1]
    cdef int shift = 0
    cdef cnp.int64_t cum, h
    cdef cnp.int64_t[::1] swap
    cdef bint flipped = False
    while shift < 64 and (maxkey >> shift) > 0:
        for d in range(65536):
            hist[d] = 0
        for t in range(total):
            hist[(kk[t] >> shift) & 0xFFFF] += 1
        cum = 0
        for d in range(65536):
            h = hist[d]
            hist[d] = cum
            cum += h
        for t in range(total):
            d = (kk[t] >> shift) & 0xFFFF
            tk[hist[d]] = kk[t]
            ti[hist[d]] = ii[t]
            hist[d] += 1
        swap = kk; kk = tk; tk = swap
        swap = ii; ii = ti; ti = swap
        flipped = not flipped
        shift += 16

    cdef Py_ssize_t ngroups = 1
    for t in range(1, total):
        if kk[t] != kk[t - 1]:
            ngroups += 1
    out_keys_np = np.empty(ngroups, dtype=np.int64)
    out_off_np = np.empty(ngroups + 1, dtype=np.int64)
    cdef cnp.int64_t[::1] out_keys = out_keys_np
    cdef cnp.int64_t[::1] out_off = out_off_np
    cdef Py_ssize_t g = 0
    out_keys[0] = kk[0]
    out_off[0] = 0
    for t in range(1, total):
        if kk[t] != kk[t - 1]:
            g += 1
            out_keys[g] = kk[t]
            out_off[g] = t
    out_off[ngroups] = total
    sorted_idx = tmp_i_np if flipped else idx_np
    aidx_np = (sorted_idx // nb).astype(np.int32)
    bidx_np = (sorted_idx % nb).astype(np.int32)
    return out_keys_np, out_off_np, aidx_np, bidx_np


def congruent_triples(a_obj, b_obj, c_obj, long long m, long long limit=-1):
    """See pure.congruent_triples; stops early once total exceeds limit >= 0."""
    cdef const cnp.int64_t[::1] a = a_obj
    cdef const cnp.int64_t[::1] b = b_obj
    cdef const cnp.int64_t[::1] c = c_obj
    cdef Py_ssize_t na = a.shape[0], nb = b.shape[0], nc = c.shape[0]
    if na == 0 or nb == 0 or nc == 0:
        return (np.empty(0, dtype=np.int32), np.empty(0, dtype=np.int32),
                np.empty(0, dtype=np.int32), 0)

    bstart_np = np.zeros(m + 1, dtype=np.int64)
    cdef cnp.int64_t[::1] bstart = bstart_np
    cdef Py_ssize_t i, j, t
    cdef cnp.int64_t r
    for i in range(nc):
        bstart[(c[i] % m) + 1] += 1
    for i in range(m):
        bstart[i + 1] += bstart[i]
    cvals_np = np.empty(nc, dtype=np.int64)
    cpos_np = np.empty(nc, dtype=np.int32)
    cur_np = bstart_np[:m].copy()
    cdef cnp.int64_t[::1] cvals = cvals_np
    cdef cnp.int32_t[::1] cpos = cpos_np
    cdef cnp.int64_t[::1] cur = cur_np
    for i in range(nc):
        r = c[i] % m
        cvals[cur[r]] = c[i]
        cpos[cur[r]] = <cnp.int32_t> i
        cur[r] += 1

    cdef vector[cnp.int32_t] va, vb, vc
    cdef long long total = 0
    cdef cnp.int64_t s, lo, hi
    cdef bint aborted = False
    for i in range(na):
        for j in range(nb):
            s = a[i] + b[j]
            r = s % m
            lo = bstart[r]
            hi = bstart[r + 1]
            for t in range(lo, hi):
                if cvals[t] != s:
                    total += 1
                    if limit >= 0 and total > limit:
                        aborted = True
                        break
                    va.push_back(<cnp.int32_t> i)
                    vb.push_back(<cnp.int32_t> j)
                    vc.push_back(cpos[t])
            if aborted:
                break
        if aborted:
            break

    cdef Py_ssize_t nfp = va.size()
    fa_np = np.empty(nfp, dtype=np.int32)
    fb_np = np.empty(nfp, dtype=np.int32)
    fc_np = np.empty(nfp, dtype=np.int32)
    cdef cnp.int32_t[::1] fav = fa_np
    cdef cnp.int32_t[::1] fbv = fb_np
    cdef cnp.int32_t[::1] fcv = fc_np
    for t in range(nfp):
        fav[t] = va[t]
        fbv[t] = vb[t]
        fcv[t] = vc[t]
    return fa_np, fb_np, fc_np, total


def count_present_pairs(aidx_obj, bidx_obj, amask_obj, bmask_obj,
                        starts_obj, ends_obj, seg_obj, Py_ssize_t nseg):
    """See pure.count_present_pairs."""
    cdef const cnp.int32_t[::1] aidx = aidx_obj
    cdef const cnp.int32_t[::1] bidx = bidx_obj
    cdef const cnp.uint8_t[::1] amask = amask_obj
    cdef const cnp.uint8_t[::1] bmask = bmask_obj
    cdef const cnp.int64_t[::1] starts = starts_obj
    cdef const cnp.int64_t[::1] ends = ends_obj
    cdef const cnp.int32_t[::1] seg = seg_obj
    out_np = np.zeros(nseg, dtype=np.int64)
    cdef cnp.int64_t[::1] out = out_np
    cdef Py_ssize_t r, t
    cdef cnp.int64_t acc
    for r in range(starts.shape[0]):
        acc = 0
        for t in range(starts[r], ends[r]):
            acc += amask[aidx[t]] & bmask[bidx[t]]
        out[seg[r]] += acc
    return out_np
