import itertools
from math import factorial

import pytest
import sympy
from hypothesis import given, strategies as st

from signed_eulerian.combinatorics import (
    EnumerationCapError, Permutation, SignedPermutation, b_descents, b_inversions, b_sign,
    descent_count, divisors, enumerate_hyperoctahedral, enumerate_symmetric, mobius,
    necklace_count, reiner_exponent, statistics,
)
from signed_eulerian.combinatorics import descents, inversions, symmetric_words

perms = st.integers(1, 9).flatmap(lambda n: st.permutations(list(range(1, n + 1))))
signed_perms = st.integers(1, 7).flatmap(
    lambda n: st.tuples(st.permutations(list(range(1, n + 1))), st.lists(st.booleans(), min_size=n, max_size=n))
).map(lambda p: tuple(-x if neg else x for x, neg in zip(*p)))


def test_descents_of_431265():
    w = Permutation.parse("4|3|126|5")
    assert w.word == (4, 3, 1, 2, 6, 5)
    assert descent_count(w) == 3


def test_identity_and_reversal_extremes():
    assert Permutation.identity(5).des == 0
    assert Permutation((5, 4, 3, 2, 1)).des == 4


def test_n1_point_mass():
    s = statistics(Permutation((1,)))
    assert (s.des, s.sgn, s.cycles) == (0, 1, 1)


@pytest.mark.parametrize("word", [(), (1, 1), (0, 1), (1, 3)])
def test_invalid_words_rejected(word):
    with pytest.raises(ValueError):
        Permutation(word)


def test_negative_entries_need_signed_type():
    with pytest.raises(ValueError):
        Permutation((-1, 2))
    with pytest.raises(ValueError):
        SignedPermutation.from_word((1, -1))


def test_type_b_descents_use_virtual_zero():
    assert b_descents((-1, 2)) == 1
    assert b_descents((1, 2)) == 0
    assert b_descents((-2, -1)) == 1
    assert b_descents((2, -1)) == 1


def test_type_b_sign_examples():
    assert SignedPermutation.from_word((-1,)).stats.sgn_B == -1
    assert SignedPermutation.identity(3).stats.sgn_B == 1
    s = SignedPermutation.from_word((-2, -1)).stats
    # two negations, odd underlying permutation
    assert (s.delta, s.eta, s.sgn_B) == (1, -1, -1)


def test_signed_call_convention():
    w = SignedPermutation.from_word((2, -1))
    assert w(0) == 0
    assert w(1) == 2 and w(2) == -1
    assert w(-1) == -2 and w(-2) == 1


@given(perms)
def test_sign_from_inversions_matches_cycles(word):
    s = Permutation(tuple(word)).stats
    assert s.sgn == (-1) ** (len(word) - s.cycles)
    assert s.des + s.asc == len(word) - 1


@given(perms)
def test_inverse_is_involutive_and_preserves_sign(word):
    w = Permutation(tuple(word))
    assert w.inverse().inverse() == w
    assert w.inverse().sgn == w.sgn
    assert w.compose(w.inverse()) == Permutation.identity(w.n)


@given(perms)
def test_reversal_complements_descents(word):
    w = Permutation(tuple(word))
    assert w.reversal().des == w.n - 1 - w.des


@given(signed_perms)
def test_type_b_sign_three_ways(word):
    w = SignedPermutation.from_word(word)
    s = w.stats
    assert s.sgn_B == s.delta * s.eta == b_sign(word)
    assert s.sgn_B == (-1) ** (b_inversions(word) % 2)
    assert sum(k * c for k, c in (s.pos_cycles + s.neg_cycles).items()) == w.n


@given(signed_perms)
def test_type_b_inverse_and_negation(word):
    w = SignedPermutation.from_word(word)
    assert w.inverse().inverse() == w
    assert w.inverse().stats.sgn_B == w.stats.sgn_B
    assert w.negated().negated() == w
    assert b_descents(w.negated().word) == w.n - b_descents(word)


def test_enumeration_orders_and_sizes():
    words = [w.word for w in enumerate_symmetric(3)]
    assert words == sorted(words) and len(words) == 6
    assert sum(1 for _ in enumerate_hyperoctahedral(3)) == 48
    assert len({w.word for w in enumerate_hyperoctahedral(3)}) == 48


def test_enumeration_caps():
    with pytest.raises(EnumerationCapError) as err:
        list(enumerate_symmetric(11))
    assert err.value.cap == 10 and err.value.n == 11
    with pytest.raises(EnumerationCapError):
        list(enumerate_hyperoctahedral(8))


@pytest.mark.parametrize("n", range(1, 201))
def test_mobius_against_sympy(n):
    assert mobius(n) == sympy.mobius(n)
    assert divisors(n) == sympy.divisors(n)


def test_necklace_counts():
    assert [necklace_count(j, 2) for j in range(1, 7)] == [2, 1, 2, 3, 6, 9]
    assert necklace_count(1, 5) == 5


@given(st.integers(1, 6), st.integers(1, 12))
def test_necklace_words_decompose(k, j):
    # every word of length j over k letters is a power of a unique primitive word
    assert sum(d * necklace_count(d, k) for d in divisors(j)) == k ** j


def test_reiner_exponents():
    # k = 1 means 2k - 1 = 1, so every exponent vanishes
    assert all(reiner_exponent(1, m) == 0 for m in range(1, 20))
    assert reiner_exponent(2, 1) == 1  # (3 - 1) / 2
    with pytest.raises(ValueError):
        reiner_exponent(0, 1)


def test_group_orders():
    for n in range(1, 6):
        assert sum(1 for _ in itertools.islice(enumerate_symmetric(n), 10 ** 6)) == factorial(n)


@pytest.mark.parametrize("n", range(1, 7))
def test_array_statistics_match_word_statistics(n):
    from signed_eulerian.combinatorics import array_descents, array_inversions, symmetric_word_array
    arr = symmetric_word_array(n)
    words = list(symmetric_words(n))
    assert [tuple(r) for r in arr.tolist()] == words
    assert array_descents(arr).tolist() == [descents(w) for w in words]
    assert array_inversions(arr).tolist() == [inversions(w) for w in words]
