"""Window-transition tables driving the search kernels.

Whether a word is universal depends only on its sequence of window patterns,
and consecutive windows share ``n-1`` positions. A search therefore walks over
*states* (the reduced pattern of the last ``n-1`` symbols) and each step picks
the relative rank of the next letter among those ``n-1`` symbols only. The
tables flatten that walk into integer arrays shared by the pure-Python and the
compiled kernel.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Sequence

import numpy as np

from .perm_core import permutation_index
from .pword import Diamond, MalformedWindow, check_window, window_coverage, window_key


@dataclass(frozen=True)
class GapRule:
    """Which distances may separate two equal letters inside a window.

    ``min_gap=None`` forbids ties altogether.
    """

    min_gap: Optional[int] = None
    exact: bool = False

    def allows(self, distance: int) -> bool:
        if self.min_gap is None:
            return False
        return distance == self.min_gap if self.exact else distance >= self.min_gap


def _concrete_options(partial: tuple, gap: GapRule) -> list:
    """Every way to append one concrete letter to ``partial``, as window keys."""
    values = sorted({v for v in partial if not isinstance(v, Diamond)})
    doubled = tuple(v if isinstance(v, Diamond) else 2 * v for v in partial)
    out = [window_key(doubled + (2 * r + 1,)) for r in range(len(values) + 1)]
    here = len(partial)
    for v in values:
        if all(gap.allows(here - i) for i, x in enumerate(partial) if x == v):
            out.append(window_key(partial + (v,)))
    return out


def _append(partial: tuple, kind, gap: GapRule) -> list:
    if kind is None:
        return _concrete_options(partial, gap)
    return [window_key(partial + (kind,))]


def _well_formed(window: tuple) -> bool:
    # states are shared across positions, so some kind/state pairs never occur
    # in a real word; those may put clashing restricted diamonds in one window
    try:
        check_window(window, len(window))
    except MalformedWindow:
        return False
    return True


def _layout(window: Sequence) -> tuple:
    return tuple(s if isinstance(s, Diamond) else None for s in window)


def _mask(window: tuple, n: int) -> int:
    index = permutation_index(n)
    mask = 0
    for p in window_coverage(window, n):
        mask |= 1 << index[p]
    return mask


@dataclass
class WalkTables:
    n: int
    length: int
    cyclic: bool
    template: tuple
    windows: list
    states: list
    kinds: list
    trans_start: np.ndarray
    trans_win: np.ndarray
    trans_next: np.ndarray
    kind_at: np.ndarray
    closure_t: np.ndarray
    suffix_ids: np.ndarray
    prefix_ids: np.ndarray
    masks: np.ndarray
    pops: np.ndarray
    maxcap: np.ndarray
    mincap: np.ndarray
    init_win: np.ndarray
    init_state: np.ndarray
    mask_ints: list = field(repr=False)

    @property
    def target(self) -> int:
        return math.factorial(self.n)

    @property
    def window_count(self) -> int:
        return self.length if self.cyclic else self.length - self.n + 1

    @cached_property
    def transitions(self) -> list:
        """``transitions[state][kind]`` as a list of ``(window, next_state)``."""
        out = []
        nk = len(self.kinds)
        for s in range(len(self.states)):
            row = []
            for k in range(nk):
                lo, hi = self.trans_start[s * nk + k], self.trans_start[s * nk + k + 1]
                row.append(list(zip(self.trans_win[lo:hi].tolist(), self.trans_next[lo:hi].tolist())))
            out.append(row)
        return out


def build_tables(n: int, template: Sequence, cyclic: bool, gap: GapRule,
                 prefix: tuple = (), rotation_cut: bool = False) -> WalkTables:
    """Tables for words of ``len(template)`` symbols.

    ``template[i]`` is ``None`` for a free concrete letter or a Diamond.
    ``prefix`` constrains the reduced pattern of the first concrete letters;
    ``rotation_cut`` keeps only first windows whose concrete letters are
    non-decreasing (some window of a u-cycle covers the identity).
    """
    template = tuple(template)
    length = len(template)
    if length < n:
        raise ValueError("window walk needs at least n positions")
    window_count = length if cyclic else length - n + 1

    kinds: list = [None]
    for s in template:
        if s is not None and s not in kinds:
            kinds.append(s)
    kind_id = {k: i for i, k in enumerate(kinds)}

    partials = [()]
    for i in range(n):
        partials = [q for p in partials for q in _append(p, template[i], gap)]
    firsts = []
    for w in dict.fromkeys(partials):
        if not _well_formed(w):
            continue
        concrete = [v for v in w if not isinstance(v, Diamond)]
        if prefix:
            if len(concrete) < len(prefix) or window_key(concrete[:len(prefix)]) != tuple(prefix):
                continue
        if rotation_cut and any(a > b for a, b in zip(concrete, concrete[1:])):
            continue
        firsts.append(w)

    window_ids: dict = {}
    state_ids: dict = {}

    def wid(w):
        if w not in window_ids:
            window_ids[w] = len(window_ids)
        return window_ids[w]

    def sid(s):
        if s not in state_ids:
            state_ids[s] = len(state_ids)
        return state_ids[s]

    init = [(wid(w), sid(window_key(w[1:]))) for w in firsts]
    used_kinds = sorted({kind_id[template[(j + n - 1) % length]] for j in range(1, window_count)})
    trans: dict = {}
    frontier = sorted({s for _, s in init})
    while frontier:
        nxt = []
        states = {v: k for k, v in state_ids.items()}
        for s in frontier:
            for k in used_kinds:
                row = []
                for w in _append(states[s], kinds[k], gap):
                    if not _well_formed(w):
                        continue
                    before = len(state_ids)
                    row.append((wid(w), sid(window_key(w[1:]))))
                    if len(state_ids) > before:
                        nxt.append(row[-1][1])
                trans[s, k] = row
        frontier = nxt

    windows = sorted(window_ids, key=window_ids.get)
    states = sorted(state_ids, key=state_ids.get)
    nk = len(kinds)
    starts = [0]
    flat_w, flat_s = [], []
    for s in range(len(states)):
        for k in range(nk):
            for w, t in trans.get((s, k), ()):
                flat_w.append(w)
                flat_s.append(t)
            starts.append(len(flat_w))

    kind_at = np.zeros(window_count, dtype=np.int32)
    closure_t = np.full(window_count, -1, dtype=np.int32)
    for j in range(1, window_count):
        p = j + n - 1
        kind_at[j] = kind_id[template[p % length]]
        if cyclic and p >= length:
            closure_t[j] = p - length

    keys: dict = {}
    suffix_ids = np.zeros((len(windows), max(n - 1, 1)), dtype=np.int32)
    prefix_ids = np.zeros_like(suffix_ids)
    for i, w in enumerate(windows):
        for t in range(n - 1):
            suffix_ids[i, t] = keys.setdefault(window_key(w[n - 1 - t:]), len(keys))
            prefix_ids[i, t] = keys.setdefault(window_key(w[:t + 1]), len(keys))

    mask_ints = [_mask(w, n) for w in windows]
    words = max(1, (math.factorial(n) + 63) // 64)
    masks = np.zeros((len(windows), words), dtype=np.uint64)
    for i, m in enumerate(mask_ints):
        for b in range(words):
            masks[i, b] = (m >> (64 * b)) & 0xFFFFFFFFFFFFFFFF
    pops = np.array([bin(m).count("1") for m in mask_ints], dtype=np.int32)

    by_layout: dict = {}
    for w, p in zip(windows, pops.tolist()):
        lo, hi = by_layout.get(_layout(w), (p, p))
        by_layout[_layout(w)] = (min(lo, p), max(hi, p))
    maxcap = np.zeros(window_count + 1, dtype=np.int64)
    mincap = np.zeros(window_count + 1, dtype=np.int64)
    for j in range(window_count - 1, -1, -1):
        layout = tuple(template[(j + i) % length] for i in range(n))
        lo, hi = by_layout.get(layout, (math.factorial(n) + 1, 0))
        maxcap[j] = maxcap[j + 1] + hi
        mincap[j] = mincap[j + 1] + lo

    return WalkTables(
        n=n, length=length, cyclic=cyclic, template=template,
        windows=windows, states=states, kinds=kinds,
        trans_start=np.array(starts, dtype=np.int64),
        trans_win=np.array(flat_w, dtype=np.int32),
        trans_next=np.array(flat_s, dtype=np.int32),
        kind_at=kind_at, closure_t=closure_t,
        suffix_ids=suffix_ids, prefix_ids=prefix_ids,
        masks=masks, pops=pops, maxcap=maxcap, mincap=mincap,
        init_win=np.array([w for w, _ in init], dtype=np.int32),
        init_state=np.array([s for _, s in init], dtype=np.int32),
        mask_ints=mask_ints,
    )
