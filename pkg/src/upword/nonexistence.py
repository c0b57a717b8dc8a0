"""Desk-scale checks of the non-existence results for diamond words.

Each claim is turned into a finite family of candidate shapes (length plus
diamond placement). A shape survives if its window coverages can add up to
``n!`` and it passes :func:`~upword.pword.structural_feasibility`; surviving
shapes are searched exhaustively. Any witness is reported as an inconsistency.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterator, Optional

from .pword import DIAMOND, Diamond, PWord, structural_feasibility, window_coverage
from .search import BUDGET_EXCEEDED, EXHAUSTED, WITNESS, SearchSpec, search
from .textio import format_pword

STRUCTURAL = "StructurallyImpossible"
FULL_SUBSETS_UP_TO = 12

THEOREMS = {
    "diamond-at-first": (3, 4),
    "diamond-at-second": (3, 4),
    "single-diamond": (3, 4),
    "upcycle-prime-or-4": (2, 3, 4, 5),
    "period-2": (3, 4),
    "restricted-a-not-1": (3, 4),
    "period-3": (6,),
}
HEAVY = {"period-3"}
SUBSET_THEOREMS = {"diamond-at-first", "diamond-at-second", "upcycle-prime-or-4"}


@dataclass
class CaseResult:
    length: int
    cyclic: bool
    template: str
    status: str
    reasons: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)
    cross_check: Optional[str] = None

    def to_dict(self) -> dict:
        return dict(self.__dict__)


@dataclass
class NonexistenceReport:
    theorem_id: str
    n: int
    verdict: str
    cases: list
    shapes: int
    count_impossible: int
    lemma_restricted: bool
    witness: Optional[PWord] = None

    @property
    def inconsistent(self) -> bool:
        return self.witness is not None

    @property
    def refuted(self) -> bool:
        return self.verdict in (EXHAUSTED, STRUCTURAL)

    def to_dict(self) -> dict:
        return {
            "schema": 1,
            "theorem": self.theorem_id,
            "n": self.n,
            "verdict": self.verdict,
            "inconsistent": self.inconsistent,
            "witness": format_pword(self.witness) if self.witness is not None else None,
            "shapes": self.shapes,
            "count_impossible": self.count_impossible,
            "lemma_restricted": self.lemma_restricted,
            "cases": [c.to_dict() for c in self.cases],
        }


def _position_sets(n: int, length: int, cyclic: bool, must: frozenset) -> Iterator[frozenset]:
    """Diamond position sets containing ``must``.

    Short words get every subset; longer ones only sets that repeat with the
    period forced by the periodicity lemma (see ``lemma_restricted``).
    """
    if length <= FULL_SUBSETS_UP_TO:
        rest = [p for p in range(length) if p not in must]
        for r in range(len(rest) + 1):
            for extra in itertools.combinations(rest, r):
                yield must | frozenset(extra)
        return
    period = math.gcd(n, length) if cyclic else n
    for r in range(1, period + 1):
        for residues in itertools.combinations(range(period), r):
            s = frozenset(p for p in range(length) if p % period in residues)
            if must <= s:
                yield s


def _shapes(theorem_id: str, n: int) -> Iterator[tuple]:
    """Yield ``(length, cyclic, template)`` for every candidate shape."""
    fact = math.factorial(n)
    word_lengths = range(n, fact + n)
    cycle_lengths = range(1, fact + 1)

    def from_set(length, s):
        return tuple(DIAMOND if p in s else None for p in range(length))

    if theorem_id in ("diamond-at-first", "diamond-at-second"):
        at = 0 if theorem_id == "diamond-at-first" else 1
        for length in word_lengths:
            for s in _position_sets(n, length, False, frozenset([at])):
                yield length, False, from_set(length, s)
    elif theorem_id == "single-diamond":
        for length in word_lengths:
            for p in range(length):
                yield length, False, from_set(length, {p})
    elif theorem_id == "upcycle-prime-or-4":
        for length in cycle_lengths:
            for s in _position_sets(n, length, True, frozenset()):
                if s:
                    yield length, True, from_set(length, s)
    elif theorem_id in ("period-2", "period-3"):
        period = 2 if theorem_id == "period-2" else 3
        cyclic_options = (False, True) if theorem_id == "period-2" else (True,)
        for cyclic in cyclic_options:
            for length in (cycle_lengths if cyclic else word_lengths):
                if cyclic and length % period:
                    continue
                for r in range(1, period):
                    for residues in itertools.combinations(range(period), r):
                        s = {p for p in range(length) if p % period in residues}
                        yield length, cyclic, from_set(length, s)
    elif theorem_id == "restricted-a-not-1":
        for a, b in itertools.combinations(range(2, n + 1), 2):
            head = Diamond(frozenset((a, b)))
            for length in word_lengths:
                yield length, False, (head,) + (None,) * (length - 1)
    else:
        raise ValueError(f"unknown theorem {theorem_id!r}")


def _placeholder(template: tuple, n: int, cyclic: bool) -> PWord:
    return PWord(tuple(s if s is not None else i + 1 for i, s in enumerate(template)), n, cyclic)


def _trivial(template: tuple, n: int, cyclic: bool) -> bool:
    diamonds = sum(s is not None for s in template)
    if diamonds == len(template):
        return True
    return not cyclic and len(template) == n and diamonds == n - 1


def _spec_for(n: int, length: int, cyclic: bool, template: tuple, prefix: tuple,
              budget: Optional[int]) -> SearchSpec:
    plain = tuple(i for i, s in enumerate(template) if s == DIAMOND)
    restr = tuple((i, tuple(sorted(s.ranks))) for i, s in enumerate(template)
                  if s is not None and s != DIAMOND)
    # short cycles repeat positions inside a window, so allow ties there:
    # a strictly larger space than the classical one
    gap = 1 if cyclic and length < n else None
    return SearchSpec(n, length, cyclic, min_gap=gap, diamonds=plain, restricted=restr,
                      prefix=prefix, budget=budget, rotation_cut=False)


def confirm_nonexistence(theorem_id: str, n: int, cross_check: Optional[bool] = None,
                         cross_budget: int = 2_000_000, heavy: bool = False,
                         jobs: int = 1) -> NonexistenceReport:
    """Check a non-existence claim for window size ``n`` at desk scale.

    ``cross_check`` also searches (within ``cross_budget`` nodes per first
    window) the shapes that the structural conditions already rule out; it
    defaults to on for ``n <= 3``.
    """
    if theorem_id not in THEOREMS:
        raise ValueError(f"unknown theorem {theorem_id!r}; known: {sorted(THEOREMS)}")
    if n not in THEOREMS[theorem_id]:
        raise ValueError(f"{theorem_id} is checked for n in {THEOREMS[theorem_id]}, not {n}")
    if theorem_id in HEAVY and not heavy:
        raise ValueError(f"{theorem_id} is a heavy search; pass heavy=True")
    if cross_check is None:
        cross_check = n <= 3
    prefix = tuple(range(1, n)) if theorem_id == "restricted-a-not-1" else ()
    fact = math.factorial(n)
    lemma_restricted = False
    cases: list = []
    shapes = count_bad = 0
    witness = None
    over = False
    searched = False
    for length, cyclic, template in _shapes(theorem_id, n):
        if _trivial(template, n, cyclic):
            continue
        shapes += 1
        if length > FULL_SUBSETS_UP_TO and theorem_id in SUBSET_THEOREMS:
            lemma_restricted = True
        text = " ".join("_" if s is None else str(s) for s in template)
        if length >= n:
            u = _placeholder(template, n, cyclic)
            if sum(len(window_coverage(w, n)) for _, w in u.windows()) != fact:
                count_bad += 1
                continue
            reasons = structural_feasibility(n, u) if any(s == DIAMOND for s in template) else []
        else:
            reasons = []
        case = CaseResult(length, cyclic, text, "", reasons)
        if reasons:
            case.status = STRUCTURAL
            if cross_check:
                out = search(_spec_for(n, length, cyclic, template, prefix, cross_budget), jobs)
                case.cross_check, case.stats = out.verdict, out.stats
                if out.verdict == WITNESS:
                    witness = witness or out.witness
        else:
            searched = True
            out = search(_spec_for(n, length, cyclic, template, prefix, None), jobs)
            case.status, case.stats = out.verdict, out.stats
            if out.verdict == WITNESS:
                witness = witness or out.witness
            over = over or out.verdict == BUDGET_EXCEEDED
        cases.append(case)
    if witness is not None:
        verdict = WITNESS
    elif over:
        verdict = BUDGET_EXCEEDED
    elif searched:
        verdict = EXHAUSTED
    else:
        verdict = STRUCTURAL
    return NonexistenceReport(theorem_id, n, verdict, cases, shapes, count_bad, lemma_restricted, witness)
