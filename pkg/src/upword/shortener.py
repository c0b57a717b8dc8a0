"""Shortened universal words and cycles from the clustered graph.

Collapsing a double-edge cycle replaces each twin pair
``x1..x(n-1)x1+`` / ``x1..x(n-1)x1-`` by the single label ``x1..x(n-1)x1``
whose first and last letters are incomparable. An Eulerian circuit of the
collapsed graph is a sequence of window patterns; :func:`realize` turns it
into integers by merging tied positions and layering the strict order.
"""
from __future__ import annotations

import math
import random
from collections import defaultdict, deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

from .overlap_graph import ClusteredGraph, Edge, build_clustered_graph, double_edge_cycles
from .pword import Diamond, PWord, window_key


class InfeasibleRealization(Exception):
    """The window constraints contain a strict-order cycle."""


class NotFoundWithinBudget(Exception):
    """No realizable circuit was found; this is not a proof of non-existence."""


@dataclass(frozen=True)
class CollapseSelection:
    chosen: frozenset

    @classmethod
    def least(cls, cycles: Sequence, k: int) -> "CollapseSelection":
        """Pick the ``k`` cycles with the smallest least signature."""
        keys = sorted(c.key for c in cycles)
        if not 0 <= k <= len(keys):
            raise ValueError(f"k must be in 0..{len(keys)}, got {k}")
        return cls(frozenset(keys[:k]))

    def __len__(self) -> int:
        return len(self.chosen)


@dataclass(frozen=True)
class WindowSequence:
    windows: tuple
    n: int
    cyclic: bool

    def __post_init__(self):
        windows = tuple(tuple(w) for w in self.windows)
        object.__setattr__(self, "windows", windows)
        if any(len(w) != self.n for w in windows):
            raise ValueError("every window must have length n")
        pairs = list(zip(windows, windows[1:]))
        if self.cyclic and windows:
            pairs.append((windows[-1], windows[0]))
        for a, b in pairs:
            if window_key(a[1:]) != window_key(b[:-1]):
                raise ValueError(f"windows {a} and {b} do not overlap consistently")

    def __len__(self) -> int:
        return len(self.windows)

    @property
    def word_length(self) -> int:
        return len(self.windows) if self.cyclic else len(self.windows) + self.n - 1


def collapse(g: ClusteredGraph, sel: CollapseSelection) -> ClusteredGraph:
    cycles = {c.key: c for c in double_edge_cycles(g)}
    unknown = sel.chosen - set(cycles)
    if unknown:
        raise ValueError(f"selection names unknown cycles: {sorted(unknown)}")
    drop = set()
    added = []
    for key in sel.chosen:
        cycle = cycles[key]
        for sig, pair in zip(cycle.signatures, cycle.twins):
            drop.update(pair)
            added.append(Edge.of(sig + sig[:1]))
    edges = [e for e in g.edges if e.label not in drop] + added
    out = ClusteredGraph(g.n, edges, g.collapsed | sel.chosen)
    if not (out.is_balanced() and out.is_strongly_connected()):
        raise AssertionError("collapse broke balance or strong connectivity")
    return out


def _check_eulerian(g: ClusteredGraph) -> None:
    if not g.is_balanced():
        raise ValueError("graph is not balanced")
    if not g.is_strongly_connected():
        raise ValueError("graph is not strongly connected")


def _hierholzer(adjacency: dict, start: tuple, total: int) -> list:
    remaining = {v: deque(es) for v, es in adjacency.items()}
    stack: list = [(start, None)]
    path = []
    while stack:
        v, via = stack[-1]
        if remaining.get(v):
            e = remaining[v].popleft()
            stack.append((e.dst, e))
        else:
            stack.pop()
            if via is not None:
                path.append(via)
    path.reverse()
    if len(path) != total:
        raise ValueError(f"trail from {start} covers {len(path)} of {total} edges")
    return path


def _adjacency(edges: Iterable[Edge], rng: Optional[random.Random] = None) -> dict:
    adj: dict = defaultdict(list)
    for e in sorted(edges):
        adj[e.src].append(e)
    if rng is not None:
        for es in adj.values():
            rng.shuffle(es)
    return adj


def increasing(m: int) -> tuple:
    return tuple(range(1, m + 1))


def eulerian_circuit(g: ClusteredGraph, start: Optional[tuple] = None,
                     rng: Optional[random.Random] = None) -> WindowSequence:
    """Hierholzer's algorithm taking the least unused label at each step.

    With ``rng`` the out-edge order of every cluster is shuffled instead.
    """
    _check_eulerian(g)
    start = increasing(g.n - 1) if start is None else tuple(start)
    path = _hierholzer(_adjacency(g.edges, rng), start, len(g.edges))
    return WindowSequence(tuple(e.label for e in path), g.n, cyclic=True)


def eulerian_path(edges: Sequence[Edge], n: int, start: tuple) -> WindowSequence:
    path = _hierholzer(_adjacency(edges), tuple(start), len(edges))
    return WindowSequence(tuple(e.label for e in path), n, cyclic=False)


def _bareiss_det(matrix: list) -> int:
    m = [row[:] for row in matrix]
    size = len(m)
    if size == 0:
        return 1
    sign, prev = 1, 1
    for k in range(size - 1):
        if m[k][k] == 0:
            swap = next((r for r in range(k + 1, size) if m[r][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[-1][-1]


def count_eulerian_circuits(g: ClusteredGraph) -> int:
    """BEST theorem: arborescences times the product of ``(outdeg - 1)!``."""
    _check_eulerian(g)
    sigs = list(g.signatures)
    index = {s: i for i, s in enumerate(sigs)}
    lap = [[0] * len(sigs) for _ in sigs]
    for e in g.edges:
        if e.src != e.dst:
            lap[index[e.src]][index[e.src]] += 1
            lap[index[e.src]][index[e.dst]] -= 1
    minor = [row[1:] for row in lap[1:]]
    trees = _bareiss_det(minor)
    product = 1
    for s in sigs:
        product *= math.factorial(len(g.out_edges(s)) - 1)
    return trees * product


def all_eulerian_circuits(g: ClusteredGraph) -> Iterator[WindowSequence]:
    """Every Eulerian circuit exactly once, each rotated to begin with the least edge."""
    _check_eulerian(g)
    adj = _adjacency(g.edges)
    total = len(g.edges)
    first = g.edges[0]
    used = {first: True}
    path = [first]

    def extend(v) -> Iterator[list]:
        if len(path) == total:
            if v == first.src:
                yield list(path)
            return
        for e in adj[v]:
            if e in used:
                continue
            used[e] = True
            path.append(e)
            yield from extend(e.dst)
            path.pop()
            del used[e]

    for p in extend(first.dst):
        yield WindowSequence(tuple(e.label for e in p), g.n, cyclic=True)


class RealizationConstraints:
    """Equality classes (union-find) plus a strict order over word positions."""

    def __init__(self, size: int):
        self.size = size
        self.parent = list(range(size))
        self.strict: set = set()
        self.diamonds: dict = {}

    def find(self, i: int) -> int:
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def merge(self, i: int, j: int) -> None:
        a, b = self.find(i), self.find(j)
        if a != b:
            self.parent[max(a, b)] = min(a, b)

    def add_window(self, positions: Sequence[int], pattern: Sequence) -> None:
        for i, (p, a) in enumerate(zip(positions, pattern)):
            if isinstance(a, Diamond):
                if self.diamonds.setdefault(p, a) != a:
                    raise InfeasibleRealization(f"position {p} holds two different diamonds")
                continue
            for q, b in zip(positions[i + 1:], pattern[i + 1:]):
                if isinstance(b, Diamond):
                    continue
                if a == b:
                    self.merge(p, q)
                elif a < b:
                    self.strict.add((p, q))
                else:
                    self.strict.add((q, p))

    def class_graph(self) -> tuple:
        classes = sorted({self.find(i) for i in range(self.size) if i not in self.diamonds})
        succ: dict = {c: set() for c in classes}
        for lo, hi in self.strict:
            a, b = self.find(lo), self.find(hi)
            if a == b:
                raise InfeasibleRealization(f"positions {lo} and {hi} are both equal and strictly ordered")
            succ[a].add(b)
        return classes, succ

    def layers(self) -> dict:
        """Longest-path depth of each class (Kahn's algorithm)."""
        classes, succ = self.class_graph()
        indeg = {c: 0 for c in classes}
        for c in classes:
            for d in succ[c]:
                indeg[d] += 1
        queue = deque(c for c in classes if indeg[c] == 0)
        depth = {c: 0 for c in classes}
        seen = 0
        while queue:
            c = queue.popleft()
            seen += 1
            for d in succ[c]:
                depth[d] = max(depth[d], depth[c] + 1)
                indeg[d] -= 1
                if indeg[d] == 0:
                    queue.append(d)
        if seen != len(classes):
            raise InfeasibleRealization("strict-order cycle among window constraints")
        return depth

    def solve(self) -> tuple:
        depth = self.layers()
        return tuple(self.diamonds[i] if i in self.diamonds else depth[self.find(i)] + 1
                     for i in range(self.size))


def constraints_for(ws: WindowSequence) -> RealizationConstraints:
    size = ws.word_length
    rc = RealizationConstraints(size)
    for j, w in enumerate(ws.windows):
        positions = [(j + i) % size for i in range(ws.n)]
        if len(set(positions)) != ws.n:
            raise InfeasibleRealization("cyclic word shorter than the window size")
        rc.add_window(positions, w)
    return rc


def realize(ws: WindowSequence) -> tuple:
    """Integer word whose windows reduce to ``ws.windows``, using as few values as possible."""
    if not ws.windows:
        raise ValueError("nothing to realize")
    try:
        return constraints_for(ws).solve()
    except InfeasibleRealization:
        if not ws.cyclic:
            raise AssertionError("non-cyclic window sequence failed to realize")
        raise


def collapsed_graph(n: int, k: int) -> ClusteredGraph:
    g = build_clustered_graph(n)
    if k == 0:
        return g
    return collapse(g, CollapseSelection.least(double_edge_cycles(g), k))


def _check_nk(n: int, k: int) -> None:
    if not 3 <= n <= 7:
        raise ValueError(f"n must be in 3..7, got {n}")
    if not 0 <= k <= math.factorial(n - 2):
        raise ValueError(f"k must be in 0..{math.factorial(n - 2)}, got {k}")


def generate_uword(n: int, k: int) -> tuple:
    """A u-word of length ``n! + (1-k)(n-1)`` with ties only at distance ``n-1``."""
    _check_nk(n, k)
    circuit = eulerian_circuit(collapsed_graph(n, k))
    return realize(WindowSequence(circuit.windows, n, cyclic=False))


def candidate_circuits(g: ClusteredGraph, budget: int, seed: int = 0) -> Iterator[WindowSequence]:
    """The least-label circuit first, then shuffled Hierholzer circuits, deduplicated."""
    seen = set()
    for attempt in range(budget):
        rng = None if attempt == 0 else random.Random(seed * 1_000_003 + attempt)
        ws = eulerian_circuit(g, rng=rng)
        if ws.windows in seen:
            continue
        seen.add(ws.windows)
        yield ws


def realize_cyclic(circuits: Iterable[WindowSequence]) -> Optional[tuple]:
    for ws in circuits:
        try:
            return realize(ws)
        except InfeasibleRealization:
            continue
    return None


def generate_ucycle(n: int, k: int, budget: int = 1000, seed: int = 0) -> tuple:
    """A u-cycle of length ``n! - k(n-1)``, tried over up to ``budget`` circuits."""
    _check_nk(n, k)
    g = collapsed_graph(n, k)
    word = realize_cyclic(candidate_circuits(g, budget, seed))
    if word is None:
        raise NotFoundWithinBudget(f"no realizable circuit for n={n}, k={k} in {budget} attempts")
    return word


def construct_restricted(n: int, mode: str = "increasing") -> PWord:
    """A u-p-word ``*{1,n} u2 ... uN`` with a monotone prefix ``u2..un``.

    The restricted diamond absorbs the loop at the monotone cluster and the
    twin in-edge whose first letter is extreme; the rest of the word follows
    an Eulerian path of the remaining graph.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    if mode in ("increasing", "inc"):
        sig = increasing(n - 1)
        loop = sig + (n,)
        absorbed = (n,) + sig
    elif mode in ("decreasing", "dec"):
        sig = tuple(reversed(increasing(n - 1)))
        loop = (n,) + sig
        absorbed = (1,) + tuple(v + 1 for v in sig)
    else:
        raise ValueError(f"mode must be increasing or decreasing, got {mode!r}")
    g = build_clustered_graph(n)
    rest = [e for e in g.edges if e.label not in (loop, absorbed)]
    if len(rest) != len(g.edges) - 2:
        raise AssertionError("loop or absorbed edge missing from the graph")
    if rest:
        letters = realize(eulerian_path(rest, n, sig))
    else:
        letters = sig
    return PWord((Diamond(frozenset({1, n})),) + tuple(letters), n)
