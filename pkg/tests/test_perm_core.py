import itertools

import pytest
from hypothesis import given, strategies as st

from oracles import reduce_naive
from upword.perm_core import (EqualTo, complement, equal_letter_distances, extend, is_pattern,
                              linear_extensions, minus, order_isomorphic, permutation_index,
                              permutations, plus, reduce, reverse, tie_distances)

words = st.lists(st.integers(1, 9), min_size=1, max_size=8)


def test_reduce_examples():
    assert reduce([5, 2, 7, 2]) == (2, 1, 3, 1)
    assert reduce([3, 4, 3, 2, 1]) == (3, 4, 3, 2, 1)
    with pytest.raises(ValueError):
        reduce([])


@given(words)
def test_reduce_matches_naive(w):
    assert reduce(w) == reduce_naive(w)


@given(words)
def test_reduce_idempotent_and_isomorphic(w):
    r = reduce(w)
    assert reduce(r) == r
    assert is_pattern(r)
    assert order_isomorphic(w, r)


@given(words)
def test_complement_and_reverse_are_involutions(w):
    r = reduce(w)
    assert complement(complement(r)) == r
    assert reverse(reverse(r)) == r
    assert complement(r) == tuple(max(r) + 1 - v for v in r)


def test_order_isomorphic_length_mismatch():
    with pytest.raises(ValueError):
        order_isomorphic((1, 2), (1, 2, 3))
    assert order_isomorphic((), ())
    assert not order_isomorphic((1, 2), (2, 1))


def test_extend_ranks_and_ties():
    assert extend((1, 2), 0) == (2, 3, 1)
    assert extend((1, 2), 1) == (1, 3, 2)
    assert extend((1, 2), 2) == (1, 2, 3)
    assert extend((2, 1, 2), EqualTo(2)) == (2, 1, 2, 1)
    with pytest.raises(ValueError):
        extend((1, 2), 3)
    with pytest.raises(ValueError):
        extend((1, 2), EqualTo(3))


def test_plus_minus():
    # x+ sits just above x, x- just below
    assert plus((1, 3, 2), 1) == (1, 4, 3, 2)
    assert minus((1, 3, 2), 1) == (2, 4, 3, 1)
    assert plus((1, 2), 2) == (1, 2, 3)
    assert minus((1, 2), 1) == (2, 3, 1)


@given(words, st.integers(0, 10))
def test_extend_gives_every_strict_extension_once(w, _):
    p = reduce(w)
    kids = [extend(p, r) for r in range(max(p) + 1)]
    assert len(set(kids)) == len(kids)
    assert all(k[:-1] == p or reduce(k[:-1]) == p for k in kids)
    assert all(k.count(k[-1]) == 1 for k in kids)


def _extensions_naive(p):
    n = len(p)
    return frozenset(pi for pi in itertools.permutations(range(1, n + 1))
                     if all(not (p[i] < p[j]) or pi[i] < pi[j] for i in range(n) for j in range(n)))


@given(st.lists(st.integers(1, 4), min_size=1, max_size=6))
def test_linear_extensions_match_definition(w):
    assert linear_extensions(w) == _extensions_naive(reduce(w))


def test_linear_extensions_examples():
    assert linear_extensions((1, 1, 2)) == {(1, 2, 3), (2, 1, 3)}
    assert linear_extensions((1, 2, 1)) == {(1, 3, 2), (2, 3, 1)}
    assert len(linear_extensions((1, 1, 1))) == 6
    with pytest.raises(ValueError):
        linear_extensions((1, 2), n=3)


def test_distances():
    assert equal_letter_distances((1, 2, 3)) == float("inf")
    assert equal_letter_distances((1, 2, 3, 2, 1, 2)) == 2
    assert equal_letter_distances((1, 2, 3, 1), cyclic=True) == 1
    # the 1s sit 4 apart, outside any window
    assert tie_distances((1, 2, 3, 2, 1, 2), 3) == {2: 2}
    assert tie_distances((1, 2, 3, 2), 3, cyclic=True) == {2: 2}


def test_permutations_index():
    for n in range(1, 6):
        perms = permutations(n)
        assert len(perms) == len(set(perms)) == len(permutation_index(n))
        assert list(perms) == sorted(perms)
        assert all(permutation_index(n)[p] == i for i, p in enumerate(perms))
