"""Clustered graph of overlapping permutations.

Nodes are clusters keyed by an ``(n-1)``-pattern (the signature); every
``n``-pattern ``x`` labels one edge from ``red(x[:-1])`` to ``red(x[1:])``.
"""
from __future__ import annotations

import itertools
from collections import Counter, defaultdict, deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .perm_core import is_permutation, minus, permutations, plus, reduce

MAX_N = 8


def word_str(p: Sequence[int]) -> str:
    return "".join(map(str, p)) if all(v < 10 for v in p) else ".".join(map(str, p))


@dataclass(frozen=True, order=True)
class Edge:
    src: tuple
    label: tuple
    dst: tuple = field(compare=False)

    @classmethod
    def of(cls, label: Sequence[int]) -> "Edge":
        label = tuple(label)
        return cls(reduce(label[:-1]), label, reduce(label[1:]))


@dataclass(frozen=True)
class Cluster:
    signature: tuple
    members: tuple


@dataclass(frozen=True)
class DoubleEdgeCycle:
    signatures: tuple
    twins: tuple

    @property
    def key(self) -> tuple:
        return min(self.signatures)

    def __len__(self) -> int:
        return len(self.signatures)


class ClusteredGraph:
    """Directed multigraph of clusters; immutable once built."""

    def __init__(self, n: int, edges: Iterable[Edge], collapsed: Iterable[tuple] = ()):
        self.n = n
        self.edges = tuple(sorted(edges))
        self.collapsed = frozenset(collapsed)
        out: dict = defaultdict(list)
        for e in self.edges:
            out[e.src].append(e)
        self.signatures = tuple(sorted(set(out) | {e.dst for e in self.edges}))
        self._out = {s: tuple(out.get(s, ())) for s in self.signatures}

    def __repr__(self) -> str:
        return f"ClusteredGraph(n={self.n}, clusters={len(self.signatures)}, edges={len(self.edges)})"

    @property
    def clusters(self) -> dict:
        return {s: Cluster(s, tuple(e.label for e in self._out[s])) for s in self.signatures}

    def out_edges(self, signature: tuple) -> tuple:
        return self._out[signature]

    def degrees(self) -> dict:
        """``signature -> (in_degree, out_degree)``."""
        indeg = Counter(e.dst for e in self.edges)
        return {s: (indeg[s], len(self._out[s])) for s in self.signatures}

    def is_balanced(self) -> bool:
        return all(i == o for i, o in self.degrees().values())

    def _reach(self, start, forward: bool) -> set:
        adj: dict = defaultdict(set)
        for e in self.edges:
            if forward:
                adj[e.src].add(e.dst)
            else:
                adj[e.dst].add(e.src)
        seen = {start}
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for w in adj[v] - seen:
                seen.add(w)
                queue.append(w)
        return seen

    def is_strongly_connected(self) -> bool:
        if not self.signatures:
            return True
        start = self.signatures[0]
        everything = set(self.signatures)
        return self._reach(start, True) == everything and self._reach(start, False) == everything

    def edge_multiplicities(self) -> Counter:
        return Counter((e.src, e.dst) for e in self.edges)

    def to_dot(self) -> str:
        lines = ["digraph clustered {"]
        for s in self.signatures:
            lines.append(f'  "{word_str(s)}" [label="\\"{word_str(s)}\\""];')
        for e in self.edges:
            lines.append(f'  "{word_str(e.src)}" -> "{word_str(e.dst)}" [label="{word_str(e.label)}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_clustered_graph(n: int) -> ClusteredGraph:
    if not 2 <= n <= MAX_N:
        raise ValueError(f"n must be in 2..{MAX_N}, got {n}")
    return ClusteredGraph(n, (Edge.of(p) for p in permutations(n)))


def is_twins(a: Sequence[int], b: Sequence[int]) -> bool:
    a, b = tuple(a), tuple(b)
    if a == b or len(a) != len(b) or len(a) < 2:
        return False
    if not (is_permutation(a) and is_permutation(b)):
        return False
    return (reduce(a[:-1]) == reduce(b[:-1])
            and abs(a[-1] - a[0]) == 1 and abs(b[-1] - b[0]) == 1)


def find_twins(cluster: Cluster) -> tuple:
    """The unique twin pair of an uncollapsed cluster, sorted."""
    pairs = [tuple(sorted(pair)) for pair in itertools.combinations(cluster.members, 2) if is_twins(*pair)]
    if len(pairs) != 1:
        raise ValueError(f"cluster {word_str(cluster.signature)} has {len(pairs)} twin pairs")
    return pairs[0]


def twins_of_signature(signature: Sequence[int]) -> tuple:
    """Twin pair built directly: append ``x1+`` and ``x1-`` to the signature."""
    return tuple(sorted((plus(signature, 1), minus(signature, 1))))


def double_edge_successor(signature: Sequence[int]) -> tuple:
    s = tuple(signature)
    return reduce(s[1:] + s[:1])


def double_edge_cycles(g: ClusteredGraph) -> list:
    """Partition the clusters into cycles of double edges, ordered by least signature."""
    clusters = g.clusters
    succ = {}
    twins = {}
    for s, cluster in clusters.items():
        pair = find_twins(cluster)
        targets = {reduce(p[1:]) for p in pair}
        if len(targets) != 1:
            raise AssertionError(f"twins {pair} do not form a double edge")
        succ[s] = targets.pop()
        twins[s] = pair
    cycles = []
    seen = set()
    for s in sorted(clusters):
        if s in seen:
            continue
        sigs = []
        v = s
        while v not in seen:
            seen.add(v)
            sigs.append(v)
            v = succ[v]
        if v != s:
            raise AssertionError(f"double edges from {word_str(s)} do not close into a cycle")
        cycles.append(DoubleEdgeCycle(tuple(sigs), tuple(twins[x] for x in sigs)))
    return cycles
