# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled depth-first walk; same contract and statistics as ``_walk_py.walk``."""
import numpy as np

from libc.stdint cimport int32_t, int64_t, uint64_t

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil

cdef enum:
    EXHAUSTED = 0
    WITNESS = 1
    BUDGET = 2

STAT_KEYS = ("nodes", "prune_duplicate", "prune_capacity", "prune_closure",
             "leaves", "inexact_leaves", "rejected_leaves")


def walk(t, budget=None, accept=None, bint prune=True, Py_ssize_t init_lo=0, init_hi=None):
    cdef int64_t[:] trans_start = t.trans_start
    cdef int32_t[:] trans_win = t.trans_win
    cdef int32_t[:] trans_next = t.trans_next
    cdef int32_t[:] kind_at = t.kind_at
    cdef int32_t[:] closure = t.closure_t
    cdef int32_t[:, :] suffix = t.suffix_ids
    cdef int32_t[:, :] prefix = t.prefix_ids
    cdef uint64_t[:, :] masks = t.masks
    cdef int32_t[:] pops = t.pops
    cdef int64_t[:] maxcap = t.maxcap
    cdef int64_t[:] mincap = t.mincap
    cdef int32_t[:] init_win = t.init_win
    cdef int32_t[:] init_state = t.init_state

    cdef Py_ssize_t W = t.window_count
    cdef Py_ssize_t nw = masks.shape[1]
    cdef Py_ssize_t nk = len(t.kinds)
    cdef int64_t target = t.target
    cdef int64_t limit = -1 if budget is None else budget
    cdef Py_ssize_t hi0 = init_win.shape[0] if init_hi is None else init_hi

    cdef uint64_t[:, :] cov = np.zeros((W + 1, nw), dtype=np.uint64)
    cdef int64_t[:] cnt = np.zeros(W + 1, dtype=np.int64)
    cdef int64_t[:] pos = np.zeros(W + 1, dtype=np.int64)
    cdef int64_t[:] end = np.zeros(W + 1, dtype=np.int64)
    cdef int32_t[:] seq = np.zeros(W, dtype=np.int32)

    cdef int64_t nodes = 0, dup = 0, cap = 0, clo = 0, leaves = 0, inexact = 0, rejected = 0
    cdef Py_ssize_t j = 0, b, idx, base
    cdef int32_t w, nxt, tc
    cdef int64_t c2, bits
    cdef bint clash
    cdef int status = EXHAUSTED

    pos[0] = init_lo
    end[0] = hi0
    while j >= 0:
        if pos[j] >= end[j]:
            j -= 1
            continue
        idx = pos[j]
        pos[j] += 1
        if j == 0:
            w = init_win[idx]
            nxt = init_state[idx]
        else:
            w = trans_win[idx]
            nxt = trans_next[idx]
            tc = closure[j]
            if tc >= 0 and suffix[w, tc] != prefix[seq[0], tc]:
                clo += 1
                continue
        c2 = cnt[j] + pops[w]
        if prune:
            clash = False
            for b in range(nw):
                if cov[j, b] & masks[w, b]:
                    clash = True
                    break
            if clash:
                dup += 1
                continue
            if c2 + maxcap[j + 1] < target or c2 + mincap[j + 1] > target:
                cap += 1
                continue
        nodes += 1
        if limit >= 0 and nodes > limit:
            status = BUDGET
            break
        seq[j] = w
        for b in range(nw):
            cov[j + 1, b] = cov[j, b] | masks[w, b]
        cnt[j + 1] = c2
        if j + 1 == W:
            leaves += 1
            if not prune:
                bits = 0
                for b in range(nw):
                    bits += __builtin_popcountll(cov[W, b])
                if c2 != target or bits != target:
                    inexact += 1
                    continue
            if accept is None or accept([seq[i] for i in range(W)]):
                status = WITNESS
                break
            rejected += 1
            continue
        j += 1
        base = nxt * nk + kind_at[j]
        pos[j] = trans_start[base]
        end[j] = trans_start[base + 1]

    stats = dict(zip(STAT_KEYS, (nodes, dup, cap, clo, leaves, inexact, rejected)))
    if status == WITNESS:
        return WITNESS, [seq[i] for i in range(W)], stats
    return status, None, stats
