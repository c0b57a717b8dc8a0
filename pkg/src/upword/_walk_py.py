"""Pure-Python depth-first walk over :class:`~upword.automaton.WalkTables`.

Mirrors ``_walk.pyx`` step for step, statistics included.
"""
from __future__ import annotations

EXHAUSTED, WITNESS, BUDGET = 0, 1, 2

STAT_KEYS = ("nodes", "prune_duplicate", "prune_capacity", "prune_closure",
             "leaves", "inexact_leaves", "rejected_leaves")


class _OutOfBudget(Exception):
    pass


def walk(t, budget=None, accept=None, prune=True, init_lo=0, init_hi=None):
    """Search for a window sequence covering every permutation exactly once.

    ``accept(seq)`` gets each exact candidate (a list of window ids) and decides
    whether it counts as a witness. Returns ``(status, seq, stats)``.
    """
    stats = dict.fromkeys(STAT_KEYS, 0)
    W = t.window_count
    target = t.target
    full = (1 << target) - 1
    trans = t.transitions
    kind_at = t.kind_at.tolist()
    closure = t.closure_t.tolist()
    suffix = t.suffix_ids.tolist()
    prefix = t.prefix_ids.tolist()
    masks = t.mask_ints
    pops = t.pops.tolist()
    maxcap = t.maxcap.tolist()
    mincap = t.mincap.tolist()
    init = list(zip(t.init_win.tolist(), t.init_state.tolist()))
    init_hi = len(init) if init_hi is None else init_hi
    seq: list = []

    def admit(w, j, covered, count):
        m = masks[w]
        c2 = count + pops[w]
        if prune:
            if covered & m:
                stats["prune_duplicate"] += 1
                return None
            if c2 + maxcap[j + 1] < target or c2 + mincap[j + 1] > target:
                stats["prune_capacity"] += 1
                return None
        stats["nodes"] += 1
        if budget is not None and stats["nodes"] > budget:
            raise _OutOfBudget
        return covered | m, c2

    def leaf(covered, count):
        stats["leaves"] += 1
        if not prune and (count != target or covered != full):
            stats["inexact_leaves"] += 1
            return False
        if accept is None or accept(list(seq)):
            return True
        stats["rejected_leaves"] += 1
        return False

    def dfs(j, state, covered, count):
        tc = closure[j]
        first = seq[0]
        for w, nxt in trans[state][kind_at[j]]:
            if tc >= 0 and suffix[w][tc] != prefix[first][tc]:
                stats["prune_closure"] += 1
                continue
            r = admit(w, j, covered, count)
            if r is None:
                continue
            seq.append(w)
            if (leaf(*r) if j + 1 == W else dfs(j + 1, nxt, *r)):
                return True
            seq.pop()
        return False

    try:
        for i in range(init_lo, init_hi):
            w, s = init[i]
            r = admit(w, 0, 0, 0)
            if r is None:
                continue
            seq.append(w)
            if (leaf(*r) if W == 1 else dfs(1, s, *r)):
                return WITNESS, seq, stats
            seq.pop()
    except _OutOfBudget:
        return BUDGET, None, stats
    return EXHAUSTED, None, stats
