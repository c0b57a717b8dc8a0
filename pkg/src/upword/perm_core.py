"""Patterns, reduction and order isomorphism.

A *pattern* is a tuple of positive integers using exactly the values
``1..m``. Repeated letters stand for incomparable elements: a pattern
with ties encodes every permutation that respects its strict relations
(its linear extensions).
"""
from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence, Union

Pattern = tuple

MAX_PATTERN_LENGTH = 12


def reduce(word: Iterable[int]) -> Pattern:
    """Replace every letter by the rank of its value among the distinct values.

    >>> reduce([2, 5, 4, 7])
    (1, 3, 2, 4)
    >>> reduce([4, 3, 6, 3, 2, 6])
    (3, 2, 4, 2, 1, 4)
    """
    word = tuple(word)
    if not word:
        raise ValueError("cannot reduce an empty word")
    ranks = {v: i for i, v in enumerate(sorted(set(word)), start=1)}
    return tuple(ranks[v] for v in word)


def is_pattern(word: Sequence[int]) -> bool:
    return len(word) > 0 and reduce(word) == tuple(word)


def complement(p: Sequence[int]) -> Pattern:
    """Map each letter ``v`` of a pattern over ``m`` values to ``m + 1 - v``."""
    p = reduce(p)
    m = max(p)
    return tuple(m + 1 - v for v in p)


def reverse(p: Sequence[int]) -> Pattern:
    return tuple(reversed(tuple(p)))


def order_isomorphic(a: Sequence[int], b: Sequence[int]) -> bool:
    """True iff ``a`` and ``b`` have the same pairwise order relations, ties included."""
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} != {len(b)}")
    if not a:
        return True
    return reduce(a) == reduce(b)


@dataclass(frozen=True)
class EqualTo:
    """Extension target: a letter equal to the letter at 1-based ``position``."""

    position: int


def extend(p: Sequence[int], r: Union[int, EqualTo]) -> Pattern:
    """Append one letter to pattern ``p`` and re-reduce.

    An integer ``r`` is an insertion rank: the new value lies strictly between
    the ``r``-th and ``(r+1)``-th smallest distinct values of ``p`` (``0`` is
    below everything, ``m`` above everything). ``EqualTo(i)`` appends a copy of
    the ``i``-th letter.

    >>> extend((1, 2), 1)
    (1, 3, 2)
    >>> extend((1, 2), 0)
    (2, 3, 1)
    >>> extend((1, 2), EqualTo(1))
    (1, 2, 1)
    """
    p = reduce(p)
    if isinstance(r, EqualTo):
        if not 1 <= r.position <= len(p):
            raise ValueError(f"position {r.position} out of range for length {len(p)}")
        return p + (p[r.position - 1],)
    m = max(p)
    if not 0 <= r <= m:
        raise ValueError(f"rank {r} out of range 0..{m}")
    # doubling keeps the inserted value integral: it sits at 2r + 1
    return reduce([2 * v for v in p] + [2 * r + 1])


def plus(p: Sequence[int], position: int) -> Pattern:
    """Append ``x+`` where ``x`` is the letter at 1-based ``position``."""
    p = reduce(p)
    return extend(p, p[position - 1])


def minus(p: Sequence[int], position: int) -> Pattern:
    """Append ``x-`` where ``x`` is the letter at 1-based ``position``."""
    p = reduce(p)
    return extend(p, p[position - 1] - 1)


def linear_extensions(p: Sequence[int], n: int | None = None) -> frozenset:
    """All ``n``-permutations ``pi`` with ``p[i] < p[j]  =>  pi[i] < pi[j]``.

    Equal letters are incomparable, so each block of equal letters receives a
    contiguous block of values in every possible order.
    """
    p = reduce(p)
    if n is not None and n != len(p):
        raise ValueError(f"pattern length {len(p)} != n={n}")
    if len(p) > MAX_PATTERN_LENGTH:
        raise ValueError(f"pattern longer than {MAX_PATTERN_LENGTH}")
    blocks = [[i for i, v in enumerate(p) if v == letter] for letter in range(1, max(p) + 1)]
    choices = []
    base = 1
    for block in blocks:
        values = range(base, base + len(block))
        choices.append([list(zip(block, perm)) for perm in itertools.permutations(values)])
        base += len(block)
    result = set()
    for combo in itertools.product(*choices):
        perm = [0] * len(p)
        for assignment in combo:
            for pos, val in assignment:
                perm[pos] = val
        result.add(tuple(perm))
    return frozenset(result)


def equal_letter_distances(word: Sequence[int], cyclic: bool = False) -> float:
    """Minimum positional gap between two equal letters (``inf`` if none).

    Cyclic words measure the gap around the cycle as well.
    """
    last: dict[int, int] = {}
    first: dict[int, int] = {}
    best = math.inf
    for i, v in enumerate(word):
        if v in last:
            best = min(best, i - last[v])
        else:
            first[v] = i
        last[v] = i
    if cyclic:
        for v, i in first.items():
            if last[v] != i:
                best = min(best, len(word) - last[v] + i)
    return best


def tie_distances(word: Sequence[int], n: int, cyclic: bool = False) -> Counter:
    """Count equal-letter pairs at distances ``1..n-1``, i.e. ties inside windows."""
    counts: Counter = Counter()
    size = len(word)
    for i in range(size):
        for gap in range(1, min(n, size)):
            j = i + gap
            if j >= size:
                if not cyclic:
                    break
                j -= size
            if word[i] == word[j]:
                counts[gap] += 1
    return counts


@lru_cache(maxsize=None)
def permutations(n: int) -> tuple:
    """All ``n``-permutations in lexicographic order."""
    return tuple(itertools.permutations(range(1, n + 1)))


@lru_cache(maxsize=None)
def permutation_index(n: int) -> dict:
    return {p: i for i, p in enumerate(permutations(n))}


def is_permutation(word: Sequence[int]) -> bool:
    return sorted(word) == list(range(1, len(word) + 1))
