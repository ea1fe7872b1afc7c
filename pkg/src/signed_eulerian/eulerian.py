"""Eulerian triangles for S_n and B_n, split by sign.

Type A rows are indexed by k = des + 1 (so A_n(t) = sum_k <n k> t^k, k = 1..n);
type B rows by k = des_B (B_n(t) = sum_k <B_n k> t^k, k = 0..n). Every signed
row is produced by two independent routes which must agree exactly.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Callable, Mapping

from .algebra import ExactPolynomial, HomogeneousBivariate, apply_operator, one_minus_t_power
from .combinatorics import (
    B_CAP, S_CAP, b_descents, b_inversions, cycle_count, descents, hyperoctahedral_words,
    inversions, symmetric_words, valleys,
)

__all__ = [
    "DistributionTable", "MethodMismatchError",
    "eulerian_table", "pm_eulerian_table", "b_eulerian_table", "b_pm_eulerian_table",
    "brute_force_table", "table", "eulerian_polynomial", "pm_polynomial",
    "b_polynomial", "b_pm_polynomial", "homogeneous",
]

GROUPS = ("A", "B")
VARIANTS = ("all", "positive", "negative")


class MethodMismatchError(RuntimeError):
    """Two independent computations of the same row disagreed."""


def _variant(sign) -> str:
    aliases = {"+": "positive", "+1": "positive", 1: "positive", "pos": "positive",
               "-": "negative", "-1": "negative", -1: "negative", "neg": "negative"}
    v = aliases.get(sign, sign)
    if v not in VARIANTS:
        raise ValueError(f"unknown variant {sign!r}; expected one of {VARIANTS}")
    return v


@dataclass(frozen=True)
class DistributionTable:
    group: str
    n: int
    variant: str
    counts: tuple[int, ...]

    def __post_init__(self):
        if self.group not in GROUPS:
            raise ValueError(f"group must be A or B, got {self.group!r}")
        expected = self.n if self.group == "A" else self.n + 1
        if len(self.counts) != expected:
            raise ValueError(f"{self.group}_{self.n} row needs {expected} entries, got {len(self.counts)}")
        if any(c < 0 for c in self.counts):
            raise ValueError("negative count in distribution table")

    @property
    def k_start(self) -> int:
        return 1 if self.group == "A" else 0

    @property
    def ks(self) -> range:
        return range(self.k_start, self.k_start + len(self.counts))

    def __getitem__(self, k: int) -> int:
        i = k - self.k_start
        return self.counts[i] if 0 <= i < len(self.counts) else 0

    def items(self):
        return zip(self.ks, self.counts)

    def as_dict(self) -> dict[int, int]:
        return dict(self.items())

    @property
    def total(self) -> int:
        return sum(self.counts)

    def expected_total(self) -> int:
        size = factorial(self.n) * (2 ** self.n if self.group == "B" else 1)
        if self.variant == "all" or (self.group == "A" and self.n == 1):
            return size if self.variant != "negative" else 0
        return size // 2

    def polynomial(self) -> ExactPolynomial:
        """sum_k count_k t^k."""
        return ExactPolynomial(self.counts).shift(self.k_start)

    def label(self) -> str:
        sym = {"all": "", "positive": "+", "negative": "-"}[self.variant]
        return f"{self.group}{sym}, n={self.n}"

    def to_json(self) -> dict:
        return {"group": self.group, "variant": self.variant, "n": self.n,
                "k_start": self.k_start, "counts": list(self.counts)}

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "k", "count"])
        for k, c in self.items():
            w.writerow([self.n, k, c])
        return buf.getvalue()

    def dumps(self, fmt: str = "json") -> str:
        if fmt == "csv":
            return self.to_csv()
        return json.dumps(self.to_json(), sort_keys=True)


def _check_n(n: int):
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")


# ---------------------------------------------------------------------------
# type A

@lru_cache(maxsize=None)
def _eulerian_row(n: int) -> tuple[int, ...]:
    if n == 1:
        return (1,)
    prev = _eulerian_row(n - 1)

    def e(k):
        return prev[k - 1] if 1 <= k <= n - 1 else 0

    return tuple((n + 1 - k) * e(k - 1) + k * e(k) for k in range(1, n + 1))


def eulerian_table(n: int) -> DistributionTable:
    _check_n(n)
    return DistributionTable("A", n, "all", _eulerian_row(n))


def eulerian_polynomial(n: int) -> ExactPolynomial:
    """A_n(t); A_0(t) = 1 by convention."""
    if n == 0:
        return ExactPolynomial([1])
    return eulerian_table(n).polynomial()


def _pm_by_combination(n: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """2 A_n^pm = A_n pm (1-t)^floor(n/2) A_ceil(n/2)."""
    half, ceil_half = n // 2, (n + 1) // 2
    correction = one_minus_t_power(half) * eulerian_polynomial(ceil_half)
    full = eulerian_polynomial(n)
    rows = []
    for p in (full + correction, full - correction):
        if any(c % 2 for c in p.coeffs):
            raise MethodMismatchError(f"A_{n} pm correction has odd coefficients")
        rows.append(tuple(p[k] // 2 for k in range(1, n + 1)))
        if p[0] != 0 or p.degree > n:
            raise MethodMismatchError(f"A_{n} pm combination left the range 1..n")
    return rows[0], rows[1]


@lru_cache(maxsize=None)
def _pm_by_recurrence(n: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Coefficient recurrences for the signed triangles, even and odd steps."""
    if n == 1:
        return (1,), (0,)
    plus, minus = _pm_by_recurrence(n - 1)
    full = _eulerian_row(n - 1)

    def at(row, k):
        return row[k - 1] if 1 <= k <= n - 1 else 0

    out = []
    if n % 2 == 0:
        two_m = n
        for same, other in ((plus, minus), (minus, plus)):
            row = []
            for k in range(1, n + 1):
                v = (at(other, k - 1)
                     + Fraction(two_m - k, 2) * at(full, k - 1)
                     + Fraction(k - 1, 2) * at(full, k)
                     + at(same, k))
                if v.denominator != 1:
                    raise MethodMismatchError(f"non-integer signed Eulerian number at n={n}, k={k}: {v}")
                row.append(int(v))
            out.append(tuple(row))
    else:
        # n = 2m + 1, so 2m + 2 - k = n + 1 - k
        for same in (plus, minus):
            out.append(tuple((n + 1 - k) * at(same, k - 1) + k * at(same, k)
                             for k in range(1, n + 1)))
    return out[0], out[1]


def pm_eulerian_table(n: int, sign="positive") -> DistributionTable:
    _check_n(n)
    variant = _variant(sign)
    if variant == "all":
        return eulerian_table(n)
    comb = _pm_by_combination(n)
    rec = _pm_by_recurrence(n)
    if comb != rec:
        raise MethodMismatchError(f"signed Eulerian rows disagree at n={n}: {comb} vs {rec}")
    return DistributionTable("A", n, variant, comb[0] if variant == "positive" else comb[1])


def pm_polynomial(n: int, sign) -> ExactPolynomial:
    return pm_eulerian_table(n, sign).polynomial()


# ---------------------------------------------------------------------------
# type B

@lru_cache(maxsize=None)
def _b_form(n: int) -> HomogeneousBivariate:
    if n == 1:
        return HomogeneousBivariate(1, [1, 1])
    return apply_operator("U", _b_form(n - 1))


def b_eulerian_table(n: int) -> DistributionTable:
    _check_n(n)
    return DistributionTable("B", n, "all", _b_form(n).coeffs)


def b_polynomial(n: int) -> ExactPolynomial:
    if n == 0:
        return ExactPolynomial([1])
    return b_eulerian_table(n).polynomial()


def _b_pm_by_combination(n: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """2 B_n^pm = B_n pm (1-t)^n."""
    full = b_polynomial(n)
    corr = one_minus_t_power(n)
    rows = []
    for p in (full + corr, full - corr):
        if any(c % 2 for c in p.coeffs):
            raise MethodMismatchError(f"B_{n} pm correction has odd coefficients")
        rows.append(tuple(p[k] // 2 for k in range(n + 1)))
    return rows[0], rows[1]


@lru_cache(maxsize=None)
def _b_pm_forms(n: int) -> tuple[HomogeneousBivariate, HomogeneousBivariate]:
    """B_{n+1}^pm = s B_n^pm + t B_n^mp + st(d/ds + d/dt) B_n."""
    if n == 1:
        return HomogeneousBivariate(1, [1, 0]), HomogeneousBivariate(1, [0, 1])
    plus, minus = _b_pm_forms(n - 1)
    drift = (plus + minus).st_d()
    return (plus.times_s() + minus.times_t() + drift,
            minus.times_s() + plus.times_t() + drift)


def b_pm_eulerian_table(n: int, sign="positive") -> DistributionTable:
    _check_n(n)
    variant = _variant(sign)
    if variant == "all":
        return b_eulerian_table(n)
    comb = _b_pm_by_combination(n)
    plus, minus = _b_pm_forms(n)
    rec = (plus.coeffs, minus.coeffs)
    if comb != rec:
        raise MethodMismatchError(f"type B signed rows disagree at n={n}: {comb} vs {rec}")
    return DistributionTable("B", n, variant, comb[0] if variant == "positive" else comb[1])


def b_pm_polynomial(n: int, sign) -> ExactPolynomial:
    return b_pm_eulerian_table(n, sign).polynomial()


def table(group: str, n: int, variant="all") -> DistributionTable:
    """Dispatch on (group, variant) to the recurrence-backed tables."""
    variant = _variant(variant)
    if group == "A":
        return eulerian_table(n) if variant == "all" else pm_eulerian_table(n, variant)
    if group == "B":
        return b_eulerian_table(n) if variant == "all" else b_pm_eulerian_table(n, variant)
    raise ValueError(f"group must be A or B, got {group!r}")


def homogeneous(t: DistributionTable) -> HomogeneousBivariate:
    """A_n(s,t) = (s^n/t) A_n(t/s) (degree n-1) or B_n(s,t) = s^n B_n(t/s) (degree n)."""
    if t.group == "A":
        return HomogeneousBivariate(t.n - 1, t.counts)
    return HomogeneousBivariate(t.n, t.counts)


# ---------------------------------------------------------------------------
# brute force oracle

def _a_stat(word, name, cache):
    if name not in cache:
        if name == "des":
            cache[name] = descents(word)
        elif name == "inv":
            cache[name] = inversions(word)
        elif name == "sgn":
            cache[name] = -1 if _a_stat(word, "inv", cache) & 1 else 1
        elif name == "valleys":
            cache[name] = valleys(word)
        elif name == "cycles":
            cache[name] = cycle_count(word)
        elif name == "asc":
            cache[name] = len(word) - 1 - _a_stat(word, "des", cache)
        else:
            raise ValueError(f"unknown type A statistic {name!r}")
    return cache[name]


def _b_stat(word, name, cache, eta):
    if name not in cache:
        if name in ("des", "des_B"):
            cache[name] = b_descents(word)
        elif name == "delta":
            cache[name] = -1 if sum(1 for x in word if x < 0) & 1 else 1
        elif name == "eta":
            cache[name] = eta
        elif name in ("sgn", "sgn_B"):
            cache[name] = _b_stat(word, "delta", cache, eta) * eta
        elif name in ("inv", "inv_B"):
            cache[name] = b_inversions(word)
        else:
            raise ValueError(f"unknown type B statistic {name!r}")
    return cache[name]


def brute_force_table(group: str, n: int, variant="all",
                      statistic_filter: Mapping[str, int] | Callable | None = None,
                      cap: int | None = None) -> DistributionTable:
    """Count group elements by descents via full enumeration.

    ``statistic_filter`` is either a mapping ``{stat_name: required_value}``
    (type A: des, asc, inv, sgn, valleys, cycles; type B: des_B, inv_B,
    sgn_B, delta, eta) or a predicate on the one-line word.
    """
    _check_n(n)
    variant = _variant(variant)
    want_sign = {"all": None, "positive": 1, "negative": -1}[variant]
    if isinstance(statistic_filter, Mapping):
        conds = dict(statistic_filter)
        predicate = None
    else:
        conds = {}
        predicate = statistic_filter

    if group == "A":
        counts = [0] * n
        for word in symmetric_words(n, S_CAP if cap is None else cap):
            cache: dict = {}
            if want_sign is not None and _a_stat(word, "sgn", cache) != want_sign:
                continue
            if any(_a_stat(word, k, cache) != v for k, v in conds.items()):
                continue
            if predicate is not None and not predicate(word):
                continue
            counts[descents(word)] += 1
        return DistributionTable("A", n, variant, tuple(counts))

    if group == "B":
        counts = [0] * (n + 1)
        eta = None
        for i, word in enumerate(hyperoctahedral_words(n, B_CAP if cap is None else cap)):
            if i % (1 << n) == 0:
                eta = -1 if inversions([abs(x) for x in word]) & 1 else 1
            cache = {}
            if want_sign is not None and _b_stat(word, "sgn_B", cache, eta) != want_sign:
                continue
            if any(_b_stat(word, k, cache, eta) != v for k, v in conds.items()):
                continue
            if predicate is not None and not predicate(word):
                continue
            counts[b_descents(word)] += 1
        return DistributionTable("B", n, variant, tuple(counts))

    raise ValueError(f"group must be A or B, got {group!r}")
