"""End-to-end acceptance checks.

Each test prints exactly one ``[PASS]``/``[FAIL]`` line with its runtime and
budget, then asserts. Run with ``pytest tests/test_acceptance.py -v``; the
lines are written straight to the terminal even when output is captured.
"""

import time
from fractions import Fraction

import pytest

from signed_eulerian import identities as ids
from signed_eulerian.algebra import ExactPolynomial, one_minus_t_power
from signed_eulerian.clt import moments, normality_diagnostic, verify_moment_matching
from signed_eulerian.eulerian import brute_force_table, eulerian_polynomial, table
from signed_eulerian.roots import certify_conjecture_sweep, interlacing_sweep
from signed_eulerian.shuffles import (
    ShuffleSpec, b_sign_probability_exact, eigenfunction_sum, exact_distribution, gsr_probability,
    shelf_positive_mass, shelf_total, sign_probability_exact, simulate, valley_sign_counts,
    verify_sign_eigenfunction,
)
from signed_eulerian.combinatorics import inversions, symmetric_words

from reference_rows import ROWS

SEED = 20240917


def _run(capsys, number, title, budget, check):
    start = time.perf_counter()
    failures = check()
    elapsed = time.perf_counter() - start
    if elapsed > budget:
        failures.append(f"runtime {elapsed:.1f}s over budget {budget}s")
    status = "PASS" if not failures else "FAIL"
    with capsys.disabled():
        print(f"\n[{status}] criterion {number:2d}: {title} ({elapsed:.1f}s / {budget}s)"
              + ("" if not failures else f" :: {failures[:3]}"))
    assert not failures, failures


def _tables(group, n_max, spot):
    failures = []
    for n in range(1, n_max + 1):
        for variant in ("all", "positive", "negative"):
            rec = table(group, n, variant).counts
            if rec != brute_force_table(group, n, variant).counts:
                failures.append(f"{group}{n} {variant}: recurrence != brute force")
            if list(rec) != ROWS[group, variant][n]:
                failures.append(f"{group}{n} {variant}: differs from reference row")
    for (n, variant, k), value in spot.items():
        got = table(group, n, variant)[k]
        if got != value:
            failures.append(f"{group}{n}{variant}[{k}] = {got}, expected {value}")
    return failures


def test_criterion_01_type_a_tables(capsys):
    spot = {(7, "all", 4): 2416, (6, "positive", 3): 147, (6, "negative", 3): 155}
    _run(capsys, 1, "type A tables n<=7, recurrence = brute force", 5, lambda: _tables("A", 7, spot))


def test_criterion_02_type_b_tables(capsys):
    spot = {(6, "all", 3): 23548, (4, "negative", 2): 112}
    _run(capsys, 2, "type B tables n<=6, recurrence = brute force", 60, lambda: _tables("B", 6, spot))


def _fails(*reports):
    return [f"{r.name} {r.params}: index {r.index} expected {r.expected} got {r.actual}"
            for r in reports if not r]


def test_criterion_03_coefficient_identities(capsys):
    def check():
        out = []
        for n in range(1, 17):
            out += _fails(ids.verify_series_a(n, 24), ids.verify_sign_descent_series(n, 24),
                          ids.verify_series_b(n, 24), ids.verify_type_b_series(n, 24))
        return out
    _run(capsys, 3, "signed coefficient identities, n<=16, k<=24", 10, check)


def test_criterion_04_product_identities(capsys):
    def check():
        out = []
        for k in range(1, 11):
            out += _fails(ids.verify_necklace_product(k, 32))
        for k in range(1, 7):
            out += _fails(ids.verify_fnp_product(k, 32))
        return out
    _run(capsys, 4, "necklace products k<=10 and FNP products k<=6 to u^32", 10, check)


def test_criterion_05_sign_identities_and_symmetries(capsys):
    def check():
        out = []
        # tables: A up to 40, B up to 30
        for n in range(1, 20):
            out += _fails(ids.verify_desarmenien_foata(n))
        for n in range(1, 31):
            out += _fails(ids.verify_b_minus_one(n))
        # enumeration: A up to 10
        for m in range(1, 11):
            got = ids.signed_inversion_polynomial("A", m)
            h = m // 2
            want = one_minus_t_power(h) * eulerian_polynomial(h if m % 2 == 0 else h + 1)
            if h == 0:
                want = eulerian_polynomial(1)
            if got != want:
                out.append(f"A_{m}(-1,t) by enumeration")
        out += _fails(ids.verify_reiner_delta(6), ids.verify_reiner_eta(6),
                      ids.verify_symmetries(40, 30, 10, 6))
        odd_eta = ids.character_sum(5, "eta")
        if odd_eta != ExactPolynomial([1, 1]) * one_minus_t_power(4):
            out.append("eta sum for n = 5")
        return out
    _run(capsys, 5, "sign identities, delta/eta sums, symmetries within caps", 120, check)


def test_criterion_06_real_rootedness(capsys):
    def check():
        out = []
        for family, n_max in (("A+", 40), ("A-", 40), ("B+", 30), ("B-", 30)):
            sweep = certify_conjecture_sweep(family, n_max, workers=2)
            if not (sweep.complete and sweep.all_real):
                bad = [c.label for c in sweep.certificates if not c.all_real]
                out.append(f"{family}: complete={sweep.complete} not all_real: {bad[:3]}")
        inter = interlacing_sweep("A", 12)
        if inter.first_failure is None:
            out.append("type A interlacing sweep found no not_interlacing instance")
        return out
    _run(capsys, 6, "Sturm certificates A+-<=40, B+-<=30; A interlacing fails somewhere", 1800, check)


def test_criterion_07_moment_matching(capsys):
    def check():
        rep = verify_moment_matching(30, 5)
        out = [str(f) for f in rep.failures[:3]]
        for n in range(1, 31):
            for sign in "+-":
                a = moments(table("A", n, sign), 2) if table("A", n, sign).total else None
                b = moments(table("B", n, sign), 2)
                if n >= 4 and a.mean != Fraction(n + 1, 2):
                    out.append(f"A{sign} n={n} mean {a.mean}")
                if n >= 6 and a.variance != Fraction(n + 1, 12):
                    out.append(f"A{sign} n={n} variance {a.variance}")
                if n >= 2 and b.mean != Fraction(n, 2):
                    out.append(f"B{sign} n={n} mean {b.mean}")
                if n >= 3 and b.variance != Fraction(n + 1, 12):
                    out.append(f"B{sign} n={n} variance {b.variance}")
        return out
    _run(capsys, 7, "signed moments match unsigned for r<=5, n<=30", 30, check)


def test_criterion_08_normality(capsys):
    def check():
        out = []
        for family, ns in (("A+", [8, 16, 32, 64]), ("B+", [6, 12, 24])):
            d = [row.kolmogorov_distance for row in normality_diagnostic(family, ns)]
            if not all(x > y for x, y in zip(d, d[1:])):
                out.append(f"{family} distances not decreasing: {d}")
        return out
    _run(capsys, 8, "Kolmogorov distances strictly decreasing", 60, check)


def test_criterion_09_shuffle_exactness(capsys):
    def check():
        out = []
        for n in range(1, 9):
            for a in (2, 3, 4, 5):
                if sum(exact_distribution(ShuffleSpec("gsr", n, a)).values()) != 1:
                    out.append(f"gsr n={n} a={a} does not sum to 1")
        for n in range(1, 6):
            for a in (3, 5):
                if sum(exact_distribution(ShuffleSpec("type_b", n, a)).values()) != 1:
                    out.append(f"type B n={n} a={a} does not sum to 1")
        for n in range(1, 9):
            for a in (2, 3, 4, 5):
                if eigenfunction_sum(n, a) != Fraction(1, a ** (n // 2)):
                    out.append(f"eigenfunction n={n} a={a}")
            if not verify_sign_eigenfunction(n, 2):
                out.append(f"eigenfunction enumeration n={n}")
        oracle = sum(gsr_probability(w, 2) for w in symmetric_words(3) if inversions(w) % 2 == 0)
        if not sign_probability_exact(3, 2, 1) == oracle == Fraction(3, 4):
            out.append("P(sign = +1) for n=3, a=2")
        return out
    _run(capsys, 9, "shuffle laws sum to 1, eigenfunction sums, 3/4 example", 60, check)


@pytest.mark.slow
def test_criterion_10_monte_carlo(capsys):
    def check():
        out = []
        cases = [("gsr", 3, 2, 1), ("gsr", 6, 2, 1), ("gsr", 6, 2, 2), ("gsr", 10, 4, 1),
                 ("type_b", 2, 3, 1), ("type_b", 4, 3, 1)]
        for variant, n, a, k in cases:
            spec = ShuffleSpec(variant, n, a, k)
            r = simulate(spec, 200_000, seed=SEED, workers=2)
            exact = (sign_probability_exact(n, a, k) if variant == "gsr"
                     else b_sign_probability_exact(n, a, k))
            if r.exact_probability != exact or abs(r.z_score) >= 4:
                out.append(f"{variant} {(n, a, k)}: z = {r.z_score:.2f}")
        return out
    _run(capsys, 10, "Monte Carlo sign frequencies within 4 sigma at 2e5 trials", 120, check)


def test_criterion_11_shelf(capsys):
    def check():
        out = []
        for n in range(1, 8):
            for m in (1, 2, 3, 4):
                if shelf_total(n, m) != 1:
                    out.append(f"shelf n={n} m={m} does not sum to 1")
                if n >= 2 and shelf_positive_mass(n, m) != Fraction(1, 2):
                    out.append(f"shelf n={n} m={m} positive mass")
        for n in range(2, 9):
            counts = valley_sign_counts(n)
            for v in {v for v, _ in counts}:
                if counts[v, 1] != counts[v, -1]:
                    out.append(f"valley balance n={n} val={v}")
        return out
    _run(capsys, 11, "shelf law sums to 1, positive mass 1/2, valley balance", 60, check)
