import json
from math import factorial

import pytest
from hypothesis import given, strategies as st

from signed_eulerian.eulerian import (
    DistributionTable, b_eulerian_table, b_pm_eulerian_table, brute_force_table, eulerian_table,
    homogeneous, pm_eulerian_table, table,
)

from reference_rows import ROWS


@pytest.mark.parametrize("key", sorted(ROWS))
def test_reference_rows(key):
    group, variant = key
    for n, row in ROWS[key].items():
        assert list(table(group, n, variant).counts) == row, (group, variant, n)


@pytest.mark.parametrize("n", range(1, 8))
def test_type_a_against_enumeration(n):
    for variant in ("all", "positive", "negative"):
        assert brute_force_table("A", n, variant) == table("A", n, variant)


@pytest.mark.parametrize("n", range(1, 6))
def test_type_b_against_enumeration(n):
    for variant in ("all", "positive", "negative"):
        assert brute_force_table("B", n, variant) == table("B", n, variant)


def test_spot_values():
    assert eulerian_table(7)[4] == 2416
    assert pm_eulerian_table(6, "+")[3] == 147
    assert pm_eulerian_table(6, "-")[3] == 155
    assert b_eulerian_table(6)[3] == 23548
    assert b_pm_eulerian_table(4, "-")[2] == 112


def test_small_rows():
    assert pm_eulerian_table(1, "-").counts == (0,)
    assert b_eulerian_table(1).counts == (1, 1)
    assert b_pm_eulerian_table(1, "+").counts == (1, 0)
    assert b_pm_eulerian_table(1, "-").counts == (0, 1)


@pytest.mark.parametrize("n", [0, -1])
def test_nonpositive_n_rejected(n):
    with pytest.raises(ValueError):
        eulerian_table(n)
    with pytest.raises(ValueError):
        b_eulerian_table(n)


def test_unknown_variant_rejected():
    with pytest.raises(ValueError):
        table("A", 3, "odd")
    with pytest.raises(ValueError):
        table("C", 3, "all")


@given(st.integers(1, 40))
def test_type_a_totals(n):
    full, plus, minus = (table("A", n, v) for v in ("all", "positive", "negative"))
    assert full.total == factorial(n)
    assert plus.total + minus.total == factorial(n)
    assert [p + m for p, m in zip(plus.counts, minus.counts)] == list(full.counts)
    assert plus.total - minus.total == (1 if n == 1 else 0)


@given(st.integers(1, 30))
def test_type_b_totals(n):
    full, plus, minus = (table("B", n, v) for v in ("all", "positive", "negative"))
    assert full.total == factorial(n) * 2 ** n
    assert plus.total == minus.total == full.total // 2
    assert [p + m for p, m in zip(plus.counts, minus.counts)] == list(full.counts)


@given(st.integers(1, 40))
def test_full_rows_are_palindromes(n):
    assert eulerian_table(n).polynomial().shift(-1).is_palindromic()
    if n <= 30:
        assert b_eulerian_table(n).polynomial().is_palindromic()


def test_statistic_filters():
    # no interior valley means unimodal (up then down): 2^(n-1) of them
    none = brute_force_table("A", 4, "all", statistic_filter={"valleys": 0})
    assert none.total == 8
    # filtering on the sign reproduces the signed rows
    assert brute_force_table("A", 5, "all", {"sgn": 1}) == DistributionTable("A", 5, "all", table("A", 5, "+").counts)
    # predicates see the one-line word: an even number of negative entries
    assert brute_force_table("B", 3, "all", lambda w: sum(x < 0 for x in w) % 2 == 0).total == 24


def test_exports():
    t = pm_eulerian_table(4, "-")
    assert json.loads(t.dumps()) == {"group": "A", "variant": "negative", "n": 4, "k_start": 1,
                                     "counts": [0, 6, 6, 0]}
    assert t.to_csv().splitlines() == ["n,k,count", "4,1,0", "4,2,6", "4,3,6", "4,4,0"]
    assert homogeneous(t).coeffs == (0, 6, 6, 0)
    assert homogeneous(b_eulerian_table(2)).coeffs == (1, 6, 1)


def test_table_validation():
    with pytest.raises(ValueError):
        DistributionTable("A", 3, "all", (1, 4))
    with pytest.raises(ValueError):
        DistributionTable("B", 1, "all", (1, -1))
