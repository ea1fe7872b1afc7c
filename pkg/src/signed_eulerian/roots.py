"""Exact real-rootedness certificates via Sturm sequences.

Everything is done over the integers/rationals: square-free decomposition by
Yun's algorithm on primitive gcds, Sturm chains built from primitive
pseudo-remainders, and root isolation by bisection on Sturm counts.
"""

from __future__ import annotations

import itertools
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

from .algebra import ExactPolynomial, apply_operator
from .eulerian import b_pm_polynomial, homogeneous, pm_eulerian_table, pm_polynomial

__all__ = [
    "RootCertificate", "SweepResult", "InterlacingResult",
    "sturm_sequence", "count_real_roots", "squarefree_decomposition",
    "certify_real_rooted", "certify_conjecture_sweep", "reciprocal_structure_check",
    "isolate_real_roots", "interlacing_probe", "family_polynomial", "FAMILIES",
    "InterlacingSweep", "interlacing_sweep", "OperatorPairProbe", "operator_pair_sweep",
]

FAMILIES = ("A+", "A-", "B+", "B-")
ALL_REAL = "all_real"
NOT_ALL_REAL = "not_all_real"
OVERFLOW = "inconclusive_overflow"

# coefficients beyond this many bits anywhere in a Sturm chain give up
DEFAULT_BIT_CAP = 1 << 20


class _Overflow(Exception):
    pass


def _sgn(x) -> int:
    return (x > 0) - (x < 0)


def sturm_sequence(p: ExactPolynomial, bit_cap: int = DEFAULT_BIT_CAP) -> list[ExactPolynomial]:
    """Sturm chain of p, each term a positive multiple of the classical one."""
    p = p.primitive()
    if p.degree < 1:
        return [p]
    seq = [p, p.derivative().primitive()]
    while seq[-1].degree > 0:
        a, b = seq[-2], seq[-1]
        delta = a.degree - b.degree + 1
        r = a.pseudo_remainder(b)
        if not r:
            break
        # prem = lc(b)^delta * rem, and the chain wants -rem up to a positive factor
        if _sgn(b.leading()) ** delta > 0:
            r = -r
        g = r.content()
        r = ExactPolynomial(c // g for c in r.coeffs)
        if max(abs(c).bit_length() for c in r.coeffs) > bit_cap:
            raise _Overflow
        seq.append(r)
    return seq


def _variations(signs: Sequence[int]) -> int:
    nz = [s for s in signs if s]
    return sum(1 for a, b in zip(nz, nz[1:]) if a != b)


def _variations_at(seq: Sequence[ExactPolynomial], x) -> int:
    if x is None or x == float("inf"):
        return _variations([_sgn(s.leading()) for s in seq])
    if x == float("-inf"):
        return _variations([_sgn(s.leading()) * (-1) ** s.degree for s in seq])
    return _variations([s.sign_at(x) for s in seq])


def count_real_roots(p: ExactPolynomial, a=None, b=None, seq=None) -> int:
    """Number of distinct real roots in (a, b]; None stands for -inf / +inf."""
    if seq is None:
        seq = sturm_sequence(p)
    lo = float("-inf") if a is None else Fraction(a)
    hi = float("inf") if b is None else Fraction(b)
    return _variations_at(seq, lo) - _variations_at(seq, hi)


def squarefree_decomposition(p: ExactPolynomial) -> list[ExactPolynomial]:
    """Yun: primitive [f_1, f_2, ...] with p = c * prod f_i^i (over Q)."""
    p = p.primitive()
    if p.degree < 1:
        return []
    dp = p.derivative()
    a0 = p.gcd(dp)
    b = p // a0
    c = dp // a0
    d = c - b.derivative()
    out = []
    while b.degree > 0:
        a = b.gcd(d)
        out.append(a.primitive())
        b = b // a
        c = d // a
        d = c - b.derivative()
    while out and out[-1].degree == 0:
        out.pop()
    return out


@dataclass
class RootCertificate:
    label: str
    degree: int
    zero_root_multiplicity: int
    squarefree_degree: int
    distinct_real_roots_counted: int
    verdict: str
    factor_degrees: dict[int, int] = field(default_factory=dict)  # multiplicity -> degree
    multiple_part: Optional["RootCertificate"] = None
    elapsed: float = 0.0

    @property
    def all_real(self) -> bool:
        return self.verdict == ALL_REAL

    def to_json(self) -> dict:
        d = asdict(self)
        d["factor_degrees"] = {str(k): v for k, v in self.factor_degrees.items()}
        d.pop("elapsed")
        if self.multiple_part is not None:
            d["multiple_part"] = self.multiple_part.to_json()
        return d

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def certify_real_rooted(p: ExactPolynomial, label: str = "", bit_cap: int = DEFAULT_BIT_CAP) -> RootCertificate:
    """Decide whether every complex root of the integer polynomial p is real."""
    if not p:
        raise ValueError("cannot certify the zero polynomial")
    if not p.is_integral():
        p = p.clear_denominators()
    t0 = time.perf_counter()
    zero_mult = p.valuation()
    core = p.strip_zero_roots().primitive()
    if core.degree < 1:
        return RootCertificate(label, p.degree, zero_mult, 0, 0, ALL_REAL, {},
                               None, time.perf_counter() - t0)
    try:
        g = core.gcd(core.derivative())
        q = (core // g).primitive()
        distinct = count_real_roots(q, seq=sturm_sequence(q, bit_cap))
        factors = squarefree_decomposition(core)
    except _Overflow:
        return RootCertificate(label, p.degree, zero_mult, -1, -1, OVERFLOW, {},
                               None, time.perf_counter() - t0)
    fdeg = {i + 1: f.degree for i, f in enumerate(factors) if f.degree > 0}
    if zero_mult + sum(m * d for m, d in fdeg.items()) != p.degree:
        raise AssertionError(f"square-free decomposition does not account for degree of {label or p}")
    multiple = None
    if g.degree > 0:
        multiple = certify_real_rooted(g, f"gcd({label or 'p'}, d/dt)", bit_cap)
    verdict = ALL_REAL if distinct == q.degree else NOT_ALL_REAL
    if multiple is not None and multiple.verdict != ALL_REAL and verdict == ALL_REAL:
        verdict = multiple.verdict
    return RootCertificate(label, p.degree, zero_mult, q.degree, distinct, verdict, fdeg,
                           multiple, time.perf_counter() - t0)


def family_polynomial(family: str, n: int) -> ExactPolynomial:
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")
    sign = "positive" if family[1] == "+" else "negative"
    return pm_polynomial(n, sign) if family[0] == "A" else b_pm_polynomial(n, sign)


def _certify_member(args) -> RootCertificate:
    family, n, bit_cap = args
    return certify_real_rooted(family_polynomial(family, n), f"{family}, n={n}", bit_cap)


@dataclass
class SweepResult:
    family: str
    certificates: list[RootCertificate]
    complete: bool
    last_certified: Optional[int]

    @property
    def all_real(self) -> bool:
        return self.complete and all(c.all_real for c in self.certificates)

    def to_csv(self) -> str:
        lines = ["family,n,verdict,distinct_real_roots,degree"]
        for c in self.certificates:
            n = c.label.rsplit("=", 1)[-1]
            lines.append(f"{self.family},{n},{c.verdict},{c.distinct_real_roots_counted},{c.degree}")
        return "\n".join(lines) + "\n"


def certify_conjecture_sweep(family: str, n_max: int, n_min: int | None = None,
                             budget_seconds: float | None = None, workers: int = 1,
                             bit_cap: int = DEFAULT_BIT_CAP) -> SweepResult:
    """Certificates for every member of the family up to n_max.

    A- starts at n = 2 (A_1^- = 0). When the wall-clock budget runs out the
    partial list is returned with ``complete=False``.
    """
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")
    start = n_min if n_min is not None else (2 if family == "A-" else 1)
    ns = list(range(start, n_max + 1))
    t0 = time.monotonic()
    certs: list[RootCertificate] = []

    def out_of_time():
        return budget_seconds is not None and time.monotonic() - t0 > budget_seconds

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            # map preserves order; budget is checked as results arrive
            for cert in pool.map(_certify_member, [(family, n, bit_cap) for n in ns]):
                certs.append(cert)
                if out_of_time():
                    pool.shutdown(cancel_futures=True)
                    break
    else:
        for n in ns:
            if out_of_time():
                break
            certs.append(_certify_member((family, n, bit_cap)))
    complete = len(certs) == len(ns)
    last = ns[len(certs) - 1] if certs else None
    return SweepResult(family, certs, complete, last)


def reciprocal_structure_check(n: int, family: str) -> bool:
    """Coefficient form of the reversal/negation symmetries.

    Type A: A_n^pm(t) = t^(n+1) A_n^pm(1/t) for n = 0,1 mod 4 and
    A_n^pm(t) = t^(n+1) A_n^mp(1/t) for n = 2,3 mod 4.
    Type B: B_n^pm(t) = t^n B_n^pm(1/t) for n even, t^n B_n^mp(1/t) for n odd.
    """
    group = family[0]
    if group == "A":
        plus, minus = pm_polynomial(n, "+"), pm_polynomial(n, "-")
        d = n + 1
        same = n % 4 in (0, 1)
    elif group == "B":
        plus, minus = b_pm_polynomial(n, "+"), b_pm_polynomial(n, "-")
        d = n
        same = n % 2 == 0
    else:
        raise ValueError(f"family must start with A or B, got {family!r}")
    if same:
        return plus.reversed(d) == plus and minus.reversed(d) == minus
    return plus.reversed(d) == minus and minus.reversed(d) == plus


# ---------------------------------------------------------------------------
# root isolation and interlacing

def _root_bound(p: ExactPolynomial) -> Fraction:
    """A power of two strictly above every |root| (Fujiwara's bound, doubled for float slack)."""
    d = p.degree
    lc = abs(p.leading())
    m = max((abs(p[d - k]) / lc) ** (1.0 / k) for k in range(1, d + 1))
    return Fraction(2) ** (math.ceil(math.log2(2 * m + 1)) + 1)


def _split_point(q: ExactPolynomial, a: Fraction, b: Fraction) -> Fraction:
    """A point strictly inside (a, b) that is not a root of q."""
    for den in itertools.count(2):
        for num in range(1, den):
            if gcd(num, den) != 1:
                continue
            m = a + (b - a) * Fraction(num, den)
            if q(m) != 0:
                return m


def _isolate(q: ExactPolynomial) -> list[tuple[Fraction, Fraction]]:
    """Disjoint (a, b] intervals, one per distinct real root of square-free q."""
    if q.degree < 1:
        return []
    seq = sturm_sequence(q)
    B = _root_bound(q)
    out = []
    stack = [(-B, B, count_real_roots(q, -B, B, seq))]
    while stack:
        a, b, c = stack.pop()
        if c == 0:
            continue
        if c == 1:
            out.append((a, b))
            continue
        m = _split_point(q, a, b)
        left = count_real_roots(q, a, m, seq)
        stack.append((m, b, c - left))
        stack.append((a, m, left))
    out.sort()
    return out


def _factor_chains(p: ExactPolynomial) -> list[tuple[int, ExactPolynomial, list]]:
    """(multiplicity, square-free factor, its Sturm chain) for the nonzero roots of p."""
    factors = squarefree_decomposition(p.strip_zero_roots())
    return [(i + 1, f, sturm_sequence(f)) for i, f in enumerate(factors) if f.degree > 0]


def _mult_in(chains, zero: int, a: Fraction, b: Fraction) -> int:
    if a == b == 0:
        return zero
    for mult, f, seq in chains:
        if count_real_roots(f, a, b, seq) == 1:
            return mult
    return 0


def _joint_squarefree(chains) -> ExactPolynomial:
    q = ExactPolynomial([1])
    for _, f, _ in chains:
        q = q * f
    if q.degree > 0:
        q = (q // q.gcd(q.derivative())).primitive()
    return q


def isolate_real_roots(p: ExactPolynomial) -> list[tuple[Fraction, Fraction, int]]:
    """Real roots of p as sorted (a, b, multiplicity); the root lies in (a, b], a == b means exact."""
    zero = p.valuation()
    chains = _factor_chains(p)
    res = [(a, b, _mult_in(chains, 0, a, b)) for a, b in _isolate(_joint_squarefree(chains))]
    if zero:
        res.append((Fraction(0), Fraction(0), zero))
    res.sort(key=lambda r: (r[0], r[1]))
    return res


@dataclass
class InterlacingResult:
    verdict: str  # interlacing | not_interlacing | undefined
    detail: str = ""
    merged: list = field(default_factory=list)  # sorted (approx root, mult in p, mult in q)

    def __bool__(self):
        return self.verdict == "interlacing"


def interlacing_probe(p: ExactPolynomial, q: ExactPolynomial) -> InterlacingResult:
    """Decide weak interlacing of the real roots of p and q (ties allowed).

    With N_p(x), N_q(x) the number of roots (with multiplicity) <= x, the roots
    alternate iff N_p - N_q stays in {0, 1} for all x, or stays in {-1, 0}.
    """
    if not p or not q:
        return InterlacingResult("undefined", "zero polynomial")
    for name, f in (("p", p), ("q", q)):
        if not certify_real_rooted(f).all_real:
            return InterlacingResult("undefined", f"{name} is not real-rooted")
    if abs(p.degree - q.degree) > 1:
        return InterlacingResult("not_interlacing", "degrees differ by more than one")
    zp, zq = p.valuation(), q.valuation()
    fp, fq = _factor_chains(p), _factor_chains(q)
    intervals = _isolate(_joint_squarefree(fp + fq))
    if zp or zq:
        intervals.append((Fraction(0), Fraction(0)))
        intervals.sort()
    merged = []
    for a, b in intervals:
        mp, mq = _mult_in(fp, zp, a, b), _mult_in(fq, zq, a, b)
        merged.append(((a + b) / 2, mp, mq))
    if sum(m for _, m, _ in merged) != p.degree or sum(m for _, _, m in merged) != q.degree:
        return InterlacingResult("undefined", "root multiplicities do not account for the degrees", merged)
    diffs = [0]
    np_, nq_ = 0, 0
    for _, mp, mq in merged:
        np_ += mp
        nq_ += mq
        diffs.append(np_ - nq_)
    if set(diffs) <= {0, 1} or set(diffs) <= {-1, 0}:
        return InterlacingResult("interlacing", "", merged)
    bad = next(i for i, d in enumerate(diffs) if abs(d) > 1 or (d and -d in diffs))
    return InterlacingResult("not_interlacing",
                             f"root counts diverge near x ~ {float(merged[bad - 1][0]):.6g}", merged)


@dataclass
class InterlacingSweep:
    group: str
    results: dict[int, str]  # n -> verdict

    @property
    def first_failure(self) -> Optional[int]:
        bad = [n for n, v in self.results.items() if v == "not_interlacing"]
        return min(bad) if bad else None


def interlacing_sweep(group: str, n_max: int, n_min: int = 2) -> InterlacingSweep:
    """Probe whether the roots of the positive and negative polynomials interlace, per n."""
    if group not in ("A", "B"):
        raise ValueError(f"group must be A or B, got {group!r}")
    results = {}
    for n in range(max(n_min, 1), n_max + 1):
        p, q = family_polynomial(group + "+", n), family_polynomial(group + "-", n)
        results[n] = interlacing_probe(p, q).verdict
    return InterlacingSweep(group, results)


@dataclass
class OperatorPairProbe:
    """T_s T A_2m^(sign) against T_t T A_2m^(other sign), dehomogenized at s = 1.

    The two summands add up to A_{2m+2}^(sign). Nothing is claimed about them;
    this only reports what the certificates and the interlacing probe say.
    """
    m: int
    sign: str
    left_verdict: str
    right_verdict: str
    interlacing: str


def operator_pair_sweep(m_max: int) -> list[OperatorPairProbe]:
    out = []
    for m in range(1, m_max + 1):
        halves = {s: homogeneous(pm_eulerian_table(2 * m, s)) for s in "+-"}
        for sign, other in (("+", "-"), ("-", "+")):
            left = apply_operator("T_s", apply_operator("T", halves[sign])).to_univariate()
            right = apply_operator("T_t", apply_operator("T", halves[other])).to_univariate()
            out.append(OperatorPairProbe(m, sign, certify_real_rooted(left).verdict,
                                         certify_real_rooted(right).verdict,
                                         interlacing_probe(left, right).verdict))
    return out
