"""Partial words over permutations: diamonds, window coverage and exact-cover checks.

A window of length ``n`` covers the ``n``-permutations obtained by keeping the
relative order of its concrete letters (equal letters being incomparable) and
letting each diamond take any rank, or any rank from its set ``D`` when it is
a restricted diamond ``*{D}``. Diamonds never tie with concrete letters.
"""
from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Optional, Sequence, Union

from .perm_core import linear_extensions, permutations, reduce


class MalformedWindow(ValueError):
    pass


class NoDiamonds(ValueError):
    pass


class NotPeriodic(ValueError):
    """Windows disagree on their number of diamonds."""


@dataclass(frozen=True)
class Diamond:
    """Wildcard symbol; ``ranks=None`` is the unrestricted diamond."""

    ranks: Optional[frozenset] = None

    def __post_init__(self):
        if self.ranks is not None:
            ranks = frozenset(self.ranks)
            if not ranks or min(ranks) < 1:
                raise ValueError(f"restricted diamond needs a nonempty set of ranks >= 1, got {self.ranks}")
            object.__setattr__(self, "ranks", ranks)

    @property
    def restricted(self) -> bool:
        return self.ranks is not None

    def allowed(self, n: int) -> frozenset:
        return frozenset(range(1, n + 1)) if self.ranks is None else self.ranks

    def __str__(self) -> str:
        if self.ranks is None:
            return "*"
        return "*{" + ",".join(str(r) for r in sorted(self.ranks)) + "}"

    def __repr__(self) -> str:
        return f"Diamond({str(self)!r})"


DIAMOND = Diamond()
Symbol = Union[int, Diamond]


def restricted(*ranks: int) -> Diamond:
    return Diamond(frozenset(ranks))


def is_diamond(s) -> bool:
    return isinstance(s, Diamond)


def is_plain_diamond(s) -> bool:
    return isinstance(s, Diamond) and s.ranks is None


@dataclass(frozen=True)
class PWord:
    symbols: tuple
    n: int
    cyclic: bool = False

    def __post_init__(self):
        symbols = tuple(self.symbols)
        object.__setattr__(self, "symbols", symbols)
        if self.n < 1:
            raise ValueError(f"window size must be positive, got {self.n}")
        for s in symbols:
            if isinstance(s, Diamond):
                if s.ranks is not None and max(s.ranks) > self.n:
                    raise ValueError(f"restricted diamond {s} has ranks outside 1..{self.n}")
            elif not isinstance(s, int) or isinstance(s, bool) or s < 1:
                raise ValueError(f"concrete letters must be positive integers, got {s!r}")
        if self.cyclic and len(symbols) < 1:
            raise ValueError("cyclic word must be nonempty")
        if not self.cyclic and len(symbols) < self.n:
            raise ValueError(f"non-cyclic word shorter than the window size {self.n}")

    def __len__(self) -> int:
        return len(self.symbols)

    def __str__(self) -> str:
        return " ".join(str(s) for s in self.symbols)

    @classmethod
    def from_letters(cls, letters: Union[str, Sequence[int]], n: int, cyclic: bool = False) -> "PWord":
        """Build from digits (``"145243"``) or an integer sequence."""
        if isinstance(letters, str):
            letters = [int(c) for c in letters]
        return cls(tuple(letters), n, cyclic)

    @property
    def window_count(self) -> int:
        return len(self.symbols) if self.cyclic else len(self.symbols) - self.n + 1

    def windows(self) -> Iterator[tuple]:
        """Yield ``(start, window)``; cyclic words wrap around."""
        size = len(self.symbols)
        for start in range(self.window_count):
            if self.cyclic:
                yield start, tuple(self.symbols[(start + j) % size] for j in range(self.n))
            else:
                yield start, self.symbols[start:start + self.n]

    def concrete_letters(self) -> tuple:
        return tuple(s for s in self.symbols if not isinstance(s, Diamond))

    def reversed(self) -> "PWord":
        return PWord(tuple(reversed(self.symbols)), self.n, self.cyclic)

    def complemented(self) -> "PWord":
        concrete = self.concrete_letters()
        top = max(concrete) + 1 if concrete else 0
        out = []
        for s in self.symbols:
            if isinstance(s, Diamond):
                out.append(s if s.ranks is None else Diamond(frozenset(self.n + 1 - r for r in s.ranks)))
            else:
                out.append(top - s)
        return PWord(tuple(out), self.n, self.cyclic)


def window_key(window: Sequence) -> tuple:
    """Canonical form of a window: concrete letters reduced among themselves."""
    concrete = [s for s in window if not isinstance(s, Diamond)]
    if not concrete:
        return tuple(window)
    ranks = iter(reduce(concrete))
    return tuple(s if isinstance(s, Diamond) else next(ranks) for s in window)


def check_window(window: Sequence, n: int) -> None:
    """Raise MalformedWindow unless the restricted diamonds of ``window`` are admissible."""
    if len(window) != n:
        raise MalformedWindow(f"window length {len(window)} != n={n}")
    sets = [s.ranks for s in window if isinstance(s, Diamond) and s.ranks is not None]
    if len(sets) < 2:
        return
    if frozenset.intersection(*sets):
        raise MalformedWindow(
            f"restricted diamonds {sorted(map(sorted, sets))} share a common rank in one window")
    if any(a & b for a, b in itertools.combinations(sets, 2)):
        warnings.warn(f"restricted diamonds {sorted(map(sorted, sets))} overlap pairwise", stacklevel=3)


@lru_cache(maxsize=65536)
def _coverage(key: tuple, n: int) -> frozenset:
    check_window(key, n)
    dpos = [i for i, s in enumerate(key) if isinstance(s, Diamond)]
    cpos = [i for i, s in enumerate(key) if not isinstance(s, Diamond)]
    allowed = [key[i].allowed(n) for i in dpos]
    exts = linear_extensions([key[i] for i in cpos]) if cpos else frozenset([()])
    everything = frozenset(range(1, n + 1))
    out = set()
    for ranks in itertools.permutations(range(1, n + 1), len(dpos)):
        if any(r not in ok for r, ok in zip(ranks, allowed)):
            continue
        rest = sorted(everything.difference(ranks))
        for ext in exts:
            perm = [0] * n
            for i, r in zip(dpos, ranks):
                perm[i] = r
            for i, v in zip(cpos, ext):
                perm[i] = rest[v - 1]
            out.add(tuple(perm))
    return frozenset(out)


def window_coverage(window: Sequence, n: int) -> frozenset:
    """The set of ``n``-permutations covered by a single window.

    >>> sorted(window_coverage((1, DIAMOND, 2), 3))
    [(1, 2, 3), (1, 3, 2), (2, 1, 3)]
    """
    return _coverage(window_key(window), n)


def coverage_count(n: int, k: int) -> int:
    """Permutations covered by a window with ``k`` diamonds and distinct letters."""
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    return math.factorial(n) // math.factorial(n - k)


@dataclass
class CoverageReport:
    n: int
    cyclic: bool
    covers: dict = field(repr=False)
    min_gap: float = math.inf

    @property
    def missing(self) -> list:
        return [p for p, starts in self.covers.items() if not starts]

    @property
    def duplicates(self) -> list:
        """``(permutation, window starts)`` for every permutation covered twice or more."""
        return [(p, list(starts)) for p, starts in self.covers.items() if len(starts) > 1]

    @property
    def verdict(self) -> str:
        if self.duplicates:
            return "Duplicates"
        if self.missing:
            return "Misses"
        return "ExactCover"

    @property
    def exact(self) -> bool:
        return self.verdict == "ExactCover"

    def to_dict(self) -> dict:
        def word(p):
            return "".join(map(str, p)) if self.n < 10 else " ".join(map(str, p))

        return {
            "n": self.n,
            "cyclic": self.cyclic,
            "verdict": self.verdict,
            "missing": [word(p) for p in self.missing],
            "duplicates": [{"permutation": word(p), "windows": s} for p, s in self.duplicates],
            "covered": sum(1 for s in self.covers.values() if s),
            "total": len(self.covers),
            "min_gap": None if self.min_gap == math.inf else self.min_gap,
        }


def concrete_min_gap(u: PWord) -> float:
    """Minimum distance between equal concrete letters; diamonds are skipped."""
    size = len(u.symbols)
    positions: dict = {}
    for i, s in enumerate(u.symbols):
        if not isinstance(s, Diamond):
            positions.setdefault(s, []).append(i)
    best = math.inf
    for pos in positions.values():
        for a, b in zip(pos, pos[1:]):
            best = min(best, b - a)
        if u.cyclic and len(pos) > 1:
            best = min(best, size - pos[-1] + pos[0])
    return best


def verify(u: PWord) -> CoverageReport:
    """Union the coverage of every window and classify the result."""
    covers: dict = {p: [] for p in permutations(u.n)}
    for start, window in u.windows():
        for p in window_coverage(window, u.n):
            covers[p].append(start)
    return CoverageReport(u.n, u.cyclic, covers, concrete_min_gap(u))


def diamond_counts(u: PWord) -> list:
    return [sum(1 for s in w if is_plain_diamond(s)) for _, w in u.windows()]


def diamondicity(u: PWord) -> int:
    """Common number of unrestricted diamonds per window.

    Raises NoDiamonds when there are none and NotPeriodic when windows disagree,
    which rules out a universal partial word or cycle for ``n >= 3``.
    """
    if not any(is_plain_diamond(s) for s in u.symbols):
        raise NoDiamonds("word has no unrestricted diamonds")
    counts = set(diamond_counts(u))
    if len(counts) != 1:
        raise NotPeriodic(f"windows carry {sorted(counts)} diamonds")
    return counts.pop()


def structural_feasibility(n: int, u: PWord) -> list:
    """Necessary conditions on a diamond word that is to be universal.

    Returns human-readable violations; an empty list means none apply.
    """
    if u.n != n:
        raise ValueError(f"word has window size {u.n}, expected {n}")
    size = len(u.symbols)
    flags = [is_plain_diamond(s) for s in u.symbols]
    f = sum(flags)
    if f == 0:
        return ["no unrestricted diamonds"]
    violations = []
    try:
        d = diamondicity(u)
    except NotPeriodic as exc:
        d = None
        violations.append(f"diamondicity undefined: {exc}")
    if n >= 3:
        for i in (i for i, flag in enumerate(flags) if flag):
            for j in (i - n, i + n):
                if u.cyclic:
                    j %= size
                elif not 0 <= j < size:
                    continue
                if not flags[j]:
                    violations.append(f"diamond at {i} but not at {j} (distance n)")
                    break
    if u.cyclic:
        c = math.gcd(n, size)
        if d is not None:
            k = n - d
            if size != math.factorial(k):
                violations.append(f"cycle length {size} != k! = {math.factorial(k)} with k = n - diamondicity = {k}")
            if (n - k) % (n // c):
                violations.append(f"n/c = {n // c} does not divide n-k = {n - k} (c = gcd(n, N) = {c})")
        if n >= 3 and any(flags[i] != flags[(i + c) % size] for i in range(size)):
            violations.append(f"diamond positions are not {c}-periodic (c = gcd(n, N))")
    else:
        if d is not None and size != math.factorial(n - d) + n - 1:
            violations.append(f"word length {size} != (n-d)! + n - 1 = {math.factorial(n - d) + n - 1}")
        if f < size and n > 3 * f + 1:
            violations.append(f"n = {n} exceeds 3f+1 = {3 * f + 1} for f = {f} diamonds")
    return violations
