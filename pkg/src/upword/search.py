"""Exhaustive search for universal (partial) words and cycles.

Candidates are explored as sequences of window patterns (see
:mod:`upword.automaton`), which enumerates every word up to order isomorphism
of its windows exactly once. Completed candidates are realized as integers
and re-verified before being reported.
"""
from __future__ import annotations

import dataclasses
import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Optional

from . import walk as kernels
from .automaton import GapRule, build_tables
from .perm_core import EqualTo, extend, reduce
from .pword import DIAMOND, Diamond, PWord, is_plain_diamond, verify
from .shortener import (InfeasibleRealization, WindowSequence, all_eulerian_circuits,
                        candidate_circuits, collapsed_graph, count_eulerian_circuits, realize)
from .textio import format_pword

WITNESS = "Witness"
EXHAUSTED = "ExhaustedNoWitness"
BUDGET_EXCEEDED = "BudgetExceeded"

MAX_SUBSET_POSITIONS = 20


@dataclass(frozen=True)
class SearchSpec:
    """What to look for.

    ``min_gap=None`` forbids equal letters inside a window (classical words);
    otherwise equal letters must be at least ``min_gap`` apart, or exactly
    ``min_gap`` apart with ``exact_gap``. Diamonds are either fixed
    (``diamonds``, ``restricted``) or enumerated over every placement with
    ``diamond_count`` diamonds and/or ``diamondicity`` diamonds per window.
    ``budget`` caps the nodes explored per first window of each placement.
    """

    n: int
    length: int
    cyclic: bool = False
    min_gap: Optional[int] = None
    exact_gap: bool = False
    diamonds: tuple = ()
    restricted: tuple = ()
    diamond_count: Optional[int] = None
    diamondicity: Optional[int] = None
    prefix: tuple = ()
    max_letters: Optional[int] = None
    budget: Optional[int] = None
    prune: bool = True
    rotation_cut: Optional[bool] = None

    def __post_init__(self):
        object.__setattr__(self, "diamonds", tuple(sorted(self.diamonds)))
        object.__setattr__(self, "restricted",
                           tuple(sorted((int(p), tuple(sorted(d))) for p, d in self.restricted)))
        object.__setattr__(self, "prefix", tuple(self.prefix))
        if self.n < 2:
            raise ValueError("n must be at least 2")
        if self.length < (1 if self.cyclic else self.n):
            raise ValueError(f"length {self.length} too short for n={self.n}")
        if self.min_gap is not None and not 1 <= self.min_gap:
            raise ValueError("min_gap must be positive")
        positions = list(self.diamonds) + [p for p, _ in self.restricted]
        if len(set(positions)) != len(positions) or any(not 0 <= p < self.length for p in positions):
            raise ValueError("diamond positions must be distinct and inside the word")
        if any(not d or min(d) < 1 or max(d) > self.n for _, d in self.restricted):
            raise ValueError(f"restricted ranks must lie in 1..{self.n}")
        if self.prefix and reduce(self.prefix) != self.prefix:
            raise ValueError("prefix must be a reduced pattern")

    @property
    def gap(self) -> GapRule:
        if self.min_gap is None or self.min_gap >= self.n:
            return GapRule(None)
        return GapRule(self.min_gap, self.exact_gap)

    def to_dict(self) -> dict:
        d = dataclasses.asdict(self)
        d["diamonds"] = list(self.diamonds)
        d["restricted"] = [[p, list(r)] for p, r in self.restricted]
        d["prefix"] = list(self.prefix)
        return d


@dataclass
class SearchOutcome:
    verdict: str
    witness: Optional[PWord]
    spec: SearchSpec
    stats: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "schema": 1,
            "spec": self.spec.to_dict(),
            "verdict": self.verdict,
            "witness": format_pword(self.witness) if self.witness is not None else None,
            "stats": self.stats,
        }


def canonical_words(length: int) -> Iterator[tuple]:
    """Every reduced word of ``length`` letters, each exactly once.

    Children of a reduced prefix append a letter at every insertion rank or
    equal to every existing value, so each word has a unique parent.
    """
    if length == 0:
        yield ()
        return

    def grow(p):
        if len(p) == length:
            yield p
            return
        m = max(p)
        for r in range(m + 1):
            yield from grow(extend(p, r))
        for v in range(1, m + 1):
            yield from grow(extend(p, EqualTo(p.index(v) + 1)))

    yield from grow((1,))


def _periodic_sets(n: int, length: int, cyclic: bool, d: int) -> Iterator[frozenset]:
    """Position sets giving every window exactly ``d`` diamonds."""
    period = math.gcd(n, length) if cyclic else n
    per_window = n // period
    for size in range(period + 1):
        if size * per_window != d:
            continue
        for residues in itertools.combinations(range(period), size):
            yield frozenset(p for p in range(length) if p % period in residues)


def placements(spec: SearchSpec) -> Iterator[tuple]:
    """Yield templates: ``None`` for a free letter, a Diamond otherwise."""
    fixed = {p: Diamond(frozenset(d)) for p, d in spec.restricted}
    if spec.diamond_count is None and spec.diamondicity is None:
        sets = [frozenset(spec.diamonds)]
    elif spec.diamondicity is not None:
        sets = [s for s in _periodic_sets(spec.n, spec.length, spec.cyclic, spec.diamondicity)
                if (spec.diamond_count is None or len(s) == spec.diamond_count)
                and set(spec.diamonds) <= s and not s & fixed.keys()]
    else:
        free = [p for p in range(spec.length) if p not in fixed and p not in spec.diamonds]
        extra = spec.diamond_count - len(spec.diamonds)
        if extra < 0:
            return
        if len(free) > MAX_SUBSET_POSITIONS and extra > 3:
            raise ValueError("too many placements to enumerate; fix some diamond positions")
        sets = [frozenset(spec.diamonds) | frozenset(c) for c in itertools.combinations(free, extra)]
    for s in sets:
        template = tuple(DIAMOND if p in s else fixed.get(p) for p in range(spec.length))
        if all(t is not None for t in template):
            continue  # only diamonds: trivial
        yield template


def _rotation_cut(spec: SearchSpec) -> bool:
    if spec.rotation_cut is not None:
        return spec.rotation_cut
    if not spec.cyclic or spec.restricted:
        return False
    if spec.diamonds and spec.diamond_count is None and spec.diamondicity is None:
        return False
    return True


def _ties_allowed(u: PWord, gap: GapRule) -> bool:
    size = len(u.symbols)
    for i, s in enumerate(u.symbols):
        if isinstance(s, Diamond):
            continue
        for dist in range(1, u.n):
            j = i + dist
            if j >= size:
                if not u.cyclic:
                    break
                j %= size
            if u.symbols[j] == s and not gap.allows(dist):
                return False
    return True


def _accept(tables, spec: SearchSpec, seq: list) -> bool:
    return _realize(tables, spec, seq) is not None


def _realize(tables, spec: SearchSpec, seq: list) -> Optional[PWord]:
    ws = WindowSequence(tuple(tables.windows[w] for w in seq), spec.n, spec.cyclic)
    try:
        symbols = realize(ws)
    except InfeasibleRealization:
        return None
    u = PWord(symbols, spec.n, spec.cyclic)
    if spec.max_letters is not None and len(set(u.concrete_letters())) > spec.max_letters:
        return None
    if spec.cyclic and not _ties_allowed(u, spec.gap):
        return None
    return u


@lru_cache(maxsize=8)
def _tables(spec: SearchSpec, template: tuple):
    return build_tables(spec.n, template, spec.cyclic, spec.gap, spec.prefix, _rotation_cut(spec))


def _run_shard(spec: SearchSpec, template: tuple, shard: int):
    tables = _tables(spec, template)
    return kernels.walk(tables, spec.budget, lambda seq: _accept(tables, spec, seq),
                        spec.prune, shard, shard + 1)


def _merge(stats: dict, extra: dict) -> None:
    for k, v in extra.items():
        stats[k] = stats.get(k, 0) + v


def _walk_template(spec: SearchSpec, template: tuple, stats: dict, jobs: int):
    """Run every first-window shard; the lowest witnessing shard wins."""
    tables = _tables(spec, template)
    shards = range(len(tables.init_win))
    if jobs > 1 and len(shards) > 1:
        with ProcessPoolExecutor(jobs) as pool:
            results = list(pool.map(_run_shard, itertools.repeat(spec), itertools.repeat(template), shards))
    else:
        results = []
        for i in shards:
            results.append(_run_shard(spec, template, i))
            if results[-1][0] == kernels.WITNESS:
                break
    over = False
    for status, seq, st in results:
        _merge(stats, st)
        if status == kernels.WITNESS:
            return WITNESS, _realize(tables, spec, seq)
        over = over or status == kernels.BUDGET
    return (BUDGET_EXCEEDED if over else EXHAUSTED), None


def _brute_force(spec: SearchSpec, template: tuple, stats: dict):
    """Cycles shorter than ``n``: windows revisit positions, so test words directly."""
    free = [i for i, t in enumerate(template) if t is None]
    gap = spec.gap
    if free and not gap.allows(spec.length):
        return EXHAUSTED, None
    over = False
    for letters in canonical_words(len(free)):
        stats["nodes"] = stats.get("nodes", 0) + 1
        if spec.budget is not None and stats["nodes"] > spec.budget:
            over = True
            break
        if spec.prefix and reduce(letters[:len(spec.prefix)]) != spec.prefix:
            continue
        symbols = list(template)
        for i, v in zip(free, letters):
            symbols[i] = v
        u = PWord(tuple(symbols), spec.n, spec.cyclic)
        if spec.max_letters is not None and len(set(letters)) > spec.max_letters:
            continue
        if _ties_allowed(u, gap) and verify(u).exact:
            return WITNESS, u
    return (BUDGET_EXCEEDED if over else EXHAUSTED), None


def search(spec: SearchSpec, jobs: int = 1) -> SearchOutcome:
    stats: dict = {"placements": 0, "backend": kernels.BACKEND}
    over = False
    for template in placements(spec):
        stats["placements"] += 1
        if spec.cyclic and spec.length < spec.n:
            verdict, witness = _brute_force(spec, template, stats)
        else:
            verdict, witness = _walk_template(spec, template, stats, jobs)
        if verdict == WITNESS:
            report = verify(witness)
            if not report.exact or not _ties_allowed(witness, spec.gap):
                raise AssertionError(f"search produced an invalid witness {witness}")
            return SearchOutcome(WITNESS, witness, spec, stats)
        over = over or verdict == BUDGET_EXCEEDED
    return SearchOutcome(BUDGET_EXCEEDED if over else EXHAUSTED, None, spec, stats)


def probe_conjecture1(n: int, k: int, budget: int = 1000, seed: int = 0,
                      exhaustive: Optional[bool] = None) -> SearchOutcome:
    """Look for a u-cycle of length ``n! - k(n-1)`` among Eulerian circuits of the collapsed graph.

    A witness supports the conjecture; exhausting every circuit only shows
    that this construction fails, and is reported as such in ``stats``.
    """
    if not 3 <= n <= 5:
        raise ValueError("probe supports 3 <= n <= 5")
    g = collapsed_graph(n, k)
    total = count_eulerian_circuits(g)
    if exhaustive is None:
        exhaustive = total <= budget
    circuits = all_eulerian_circuits(g) if exhaustive else candidate_circuits(g, budget, seed)
    spec = SearchSpec(n, math.factorial(n) - k * (n - 1), cyclic=True, min_gap=n - 1, exact_gap=True,
                      budget=budget)
    stats = {"circuits_total": total, "circuits_tried": 0, "infeasible": 0, "exhaustive": exhaustive}
    for ws in circuits:
        stats["circuits_tried"] += 1
        if stats["circuits_tried"] > budget:
            stats["circuits_tried"] -= 1
            break
        try:
            word = realize(ws)
        except InfeasibleRealization:
            stats["infeasible"] += 1
            continue
        u = PWord(word, n, cyclic=True)
        if not verify(u).exact:
            raise AssertionError(f"realized circuit is not a u-cycle: {u}")
        return SearchOutcome(WITNESS, u, spec, stats)
    if exhaustive and stats["circuits_tried"] == total:
        stats["note"] = "construction space exhausted; not a refutation"
        return SearchOutcome(EXHAUSTED, None, spec, stats)
    return SearchOutcome(BUDGET_EXCEEDED, None, spec, stats)


_BOOL = {"1": True, "true": True, "yes": True, "0": False, "false": False, "no": False}


def _ints(text: str) -> tuple:
    text = text.strip()
    if not text:
        return ()
    if "," in text:
        return tuple(int(v) for v in text.split(","))
    return tuple(int(c) for c in text)


def spec_from_config(text: str) -> SearchSpec:
    """Parse ``key=value`` lines (``#`` starts a comment)."""
    values: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        values[key] = value
    known = {f.name for f in dataclasses.fields(SearchSpec)}
    unknown = set(values) - known
    if unknown:
        raise ValueError(f"unknown keys: {sorted(unknown)}")
    kwargs: dict = {}
    for key, value in values.items():
        if key in ("cyclic", "exact_gap", "prune", "rotation_cut"):
            if value.lower() not in _BOOL:
                raise ValueError(f"{key}: expected a boolean, got {value!r}")
            kwargs[key] = _BOOL[value.lower()]
        elif key in ("diamonds",):
            kwargs[key] = tuple(int(v) for v in value.split(",") if v.strip())
        elif key == "prefix":
            kwargs[key] = _ints(value)
        elif key == "restricted":
            items = []
            for part in filter(None, (p.strip() for p in value.split(";"))):
                pos, ranks = part.split(":")
                items.append((int(pos), tuple(int(r) for r in ranks.split(","))))
            kwargs[key] = tuple(items)
        elif key == "min_gap" and value.lower() in ("none", ""):
            kwargs[key] = None
        else:
            kwargs[key] = int(value)
    if "n" not in kwargs or "length" not in kwargs:
        raise ValueError("config needs n and length")
    return SearchSpec(**kwargs)
