import pytest

from upword.nonexistence import STRUCTURAL, THEOREMS, confirm_nonexistence
from upword.search import EXHAUSTED


def test_upcycle_n4_admissible_lengths():
    r = confirm_nonexistence("upcycle-prime-or-4", 4)
    assert r.refuted and not r.inconsistent
    searched = {c.length for c in r.cases if c.status == EXHAUSTED}
    structural = {c.length for c in r.cases if c.status == STRUCTURAL}
    # cycles shorter than n are searched directly; N = 6 already fails the coverage count
    # (one diamond gives 4*4 + 2 = 18 windows' worth), leaving single-diamond N = 12 shapes
    assert searched == {2, 3}
    assert structural == {12}
    assert r.lemma_restricted


def test_single_diamond_n4_is_structural():
    r = confirm_nonexistence("single-diamond", 4)
    assert r.verdict == STRUCTURAL
    assert all(c.reasons for c in r.cases)


def test_cross_check_searches_structural_cases():
    r = confirm_nonexistence("diamond-at-first", 3, cross_check=True)
    crossed = [c for c in r.cases if c.status == STRUCTURAL]
    assert crossed and all(c.cross_check == EXHAUSTED for c in crossed)


@pytest.mark.parametrize("tid, n", [("period-2", 3), ("diamond-at-second", 4), ("restricted-a-not-1", 3)])
def test_refuted(tid, n):
    r = confirm_nonexistence(tid, n)
    assert r.refuted and r.witness is None
    d = r.to_dict()
    assert d["schema"] == 1 and d["theorem"] == tid


def test_errors():
    with pytest.raises(ValueError):
        confirm_nonexistence("no-such-claim", 3)
    with pytest.raises(ValueError):
        confirm_nonexistence("single-diamond", 7)
    with pytest.raises(ValueError):
        confirm_nonexistence("period-3", 6)
    assert set(THEOREMS) >= {"diamond-at-first", "diamond-at-second", "single-diamond",
                             "upcycle-prime-or-4", "period-2"}
