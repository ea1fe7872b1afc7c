import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from signed_eulerian import identities as ids
from signed_eulerian.algebra import ExactPolynomial as P, one_minus_t_power
from signed_eulerian.eulerian import pm_polynomial


@pytest.mark.parametrize("n", range(1, 17))
def test_type_a_series(n):
    assert ids.verify_series_a(n)
    assert ids.verify_sign_descent_series(n)


@pytest.mark.parametrize("n", range(1, 17))
def test_type_b_series(n):
    assert ids.verify_series_b(n)
    assert ids.verify_type_b_series(n)


def test_signed_coefficients_small_case():
    # A_3^+ / (1-t)^4: coefficient of t^k is (k^3 + k^2)/2
    got = ids.series_coefficients(pm_polynomial(3, "+"), 4, 5)
    assert got == [0, 1, 6, 18, 40]


@pytest.mark.parametrize("n", range(1, 9))
def test_desarmenien_foata(n):
    assert ids.verify_desarmenien_foata(n)


@pytest.mark.parametrize("n", range(1, 11))
def test_b_minus_one(n):
    r = ids.verify_b_minus_one(n)
    assert r
    assert r.note == ("tables+enumeration" if n <= 6 else "tables")


def test_signed_inversion_enumeration():
    assert ids.signed_inversion_polynomial("B", 3) == one_minus_t_power(3)
    # type A: A_4(-1, t) = (1-t)^2 A_2(t) = t(1+t)(1-t)^2 in the k = des+1 indexing
    assert ids.signed_inversion_polynomial("A", 4) == P([0, 1, 1]) * one_minus_t_power(2)


@pytest.mark.parametrize("k", range(1, 11))
def test_necklace_products(k):
    assert ids.verify_necklace_product(k)
    assert ids.verify_sign_necklace_product(k)


@pytest.mark.parametrize("k", range(1, 7))
def test_fnp_product(k):
    assert ids.verify_fnp_product(k)


@pytest.mark.parametrize("a", range(1, 6))
def test_shuffle_sign_product(a):
    assert ids.verify_shuffle_sign_product(a)


def test_character_sums():
    assert ids.character_sum(3, "eta") == P([1, 1]) * one_minus_t_power(2)
    assert ids.character_sum(4, "eta") == one_minus_t_power(4)
    assert ids.character_sum(2, "delta") == one_minus_t_power(2)
    with pytest.raises(ValueError):
        ids.character_sum(2, "chi")


def test_reiner_specializations():
    assert ids.verify_reiner_specializations(6, 6)


def test_symmetries_and_recurrences():
    assert ids.verify_symmetries(40, 30, 7, 4)
    assert ids.verify_recurrences(40, 30)
    assert ids.verify_worpitzky(10, 6)
    assert ids.verify_against_brute_force(6, 4)


def test_failure_reports_first_mismatch():
    chk = ids._Checker("demo", n=1)
    chk.eq(0, 1, 1)
    chk.eq(1, Fraction(1, 2), Fraction(1, 3))
    chk.eq(2, 5, 6)
    r = chk.done()
    assert not r and r.index == 1 and r.checked == 3
    d = json.loads(r.dumps())
    assert d["mismatch"] == {"index": 1, "expected": "1/2", "actual": "1/3"}


def test_series_check_catches_a_corrupted_row(monkeypatch):
    real = ids.pm_polynomial

    def corrupted(n, sign):
        p = real(n, sign)
        return p + P.monomial(2) if (n, sign) == (5, "+") else p

    monkeypatch.setattr(ids, "pm_polynomial", corrupted)
    r = ids.verify_sign_descent_series(5)
    assert not r
    assert r.index == ("signed difference", 2)


@given(st.integers(1, 12), st.integers(0, 30))
def test_series_coefficients_are_worpitzky_powers(n, k):
    from signed_eulerian.eulerian import eulerian_polynomial
    assert ids.series_coefficients(eulerian_polynomial(n), n + 1, k + 1)[k] == k ** n
