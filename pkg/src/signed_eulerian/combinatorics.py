"""Permutations of [n] and signed permutations of [±n], with their statistics.

Words are one-line notation ``w(1) ... w(n)`` stored as tuples. For signed
permutations a negative entry ``-i`` is what is usually written with a bar.
The raw-tuple helpers (``descents``, ``inversions``, ...) are what the
brute-force oracles use in their inner loops; the dataclasses wrap them.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, NamedTuple, Sequence

import numpy as np

__all__ = [
    "EnumerationCapError", "Permutation", "SignedPermutation", "PermStats", "BStats",
    "descents", "ascents", "inversions", "cycle_count", "valleys", "sign",
    "b_descents", "b_inversions", "b_sign",
    "descent_count", "statistics", "b_statistics",
    "enumerate_symmetric", "enumerate_hyperoctahedral",
    "symmetric_word_array", "array_descents", "array_inversions",
    "S_CAP", "B_CAP",
    "mobius", "divisors", "necklace_count", "reiner_exponent",
]

# default enumeration caps: |S_10| = 3.6e6, |B_7| = 6.5e5
S_CAP = 10
B_CAP = 7


class EnumerationCapError(ValueError):
    """Raised when an exhaustive enumeration would exceed its configured cap."""

    def __init__(self, group: str, n: int, cap: int):
        super().__init__(f"refusing to enumerate {group}_{n}: enumeration cap is n <= {cap}")
        self.group = group
        self.n = n
        self.cap = cap


# ---------------------------------------------------------------------------
# raw word statistics

def descents(word: Sequence[int]) -> int:
    return sum(1 for a, b in zip(word, word[1:]) if a > b)


def ascents(word: Sequence[int]) -> int:
    return sum(1 for a, b in zip(word, word[1:]) if a < b)


def inversions(word: Sequence[int]) -> int:
    n = len(word)
    return sum(1 for i in range(n) for j in range(i + 1, n) if word[i] > word[j])


def sign(word: Sequence[int]) -> int:
    return -1 if inversions(word) & 1 else 1


def _cycles(word: Sequence[int]) -> list[list[int]]:
    """Cycles of the map i -> |word[i-1]| on {1..n}, each listed from its least element."""
    n = len(word)
    seen = [False] * (n + 1)
    out = []
    for start in range(1, n + 1):
        if seen[start]:
            continue
        cyc = []
        j = start
        while not seen[j]:
            seen[j] = True
            cyc.append(j)
            j = abs(word[j - 1])
        out.append(cyc)
    return out


def cycle_count(word: Sequence[int]) -> int:
    return len(_cycles(word))


def valleys(word: Sequence[int]) -> int:
    """Interior positions i (2 <= i <= n-1) with w(i-1) > w(i) < w(i+1)."""
    return sum(1 for a, b, c in zip(word, word[1:], word[2:]) if a > b < c)


def b_descents(word: Sequence[int]) -> int:
    """Type B descents: positions 0 <= i <= n-1 with w(i) > w(i+1), where w(0) = 0."""
    return descents((0, *word))


def b_inversions(word: Sequence[int]) -> int:
    n = len(word)
    total = sum(1 for x in word if x < 0)
    for i in range(n):
        for j in range(i + 1, n):
            if word[i] > word[j]:
                total += 1
            if -word[i] > word[j]:
                total += 1
    return total


def b_sign(word: Sequence[int]) -> int:
    """sgn_B(u^J) = (-1)^|J| sgn(u)."""
    neg = sum(1 for x in word if x < 0)
    s = sign([abs(x) for x in word])
    return -s if neg & 1 else s


# ---------------------------------------------------------------------------
# value types

class PermStats(NamedTuple):
    des: int
    asc: int
    inv: int
    sgn: int
    cycles: int
    valleys: int


class BStats(NamedTuple):
    des_B: int
    inv_B: int
    sgn_B: int
    delta: int
    eta: int
    pos_cycles: Counter  # cycle size -> n_i(w)
    neg_cycles: Counter  # cycle size -> m_i(w)


def _check_bijection(word: Sequence[int]) -> None:
    n = len(word)
    if n < 1:
        raise ValueError("permutations must have degree n >= 1")
    if sorted(abs(x) for x in word) != list(range(1, n + 1)):
        raise ValueError(f"{tuple(word)} is not a (signed) permutation of 1..{n}")


@dataclass(frozen=True)
class Permutation:
    """A bijection of {1..n} in one-line notation."""

    word: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "word", tuple(int(x) for x in self.word))
        _check_bijection(self.word)
        if any(x < 0 for x in self.word):
            raise ValueError("use SignedPermutation for words with negative entries")

    @classmethod
    def parse(cls, text: str) -> Permutation:
        """Read ``"4|3|126|5"``, ``"4 3 1 2 6 5"`` or ``"431265"`` (single digits only)."""
        text = text.replace("|", "").strip()
        if " " in text or "," in text:
            return cls(tuple(int(x) for x in text.replace(",", " ").split()))
        return cls(tuple(int(c) for c in text))

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(1, n + 1)))

    @property
    def n(self) -> int:
        return len(self.word)

    def __call__(self, i: int) -> int:
        return self.word[i - 1]

    def __str__(self):
        return "".join(map(str, self.word)) if self.n < 10 else " ".join(map(str, self.word))

    def inverse(self) -> Permutation:
        inv = [0] * self.n
        for i, x in enumerate(self.word, 1):
            inv[x - 1] = i
        return Permutation(tuple(inv))

    def reversal(self) -> Permutation:
        return Permutation(self.word[::-1])

    def compose(self, other: Permutation) -> Permutation:
        """(self o other)(i) = self(other(i))."""
        return Permutation(tuple(self.word[j - 1] for j in other.word))

    def cycles(self) -> list[list[int]]:
        return _cycles(self.word)

    @cached_property
    def stats(self) -> PermStats:
        return statistics(self)

    @property
    def des(self) -> int:
        return self.stats.des

    @property
    def sgn(self) -> int:
        return self.stats.sgn


@dataclass(frozen=True)
class SignedPermutation:
    """An element u^J of B_n: w(j) = -u(j) for j in J, u(j) otherwise."""

    underlying: Permutation
    negations: frozenset[int] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "negations", frozenset(self.negations))
        if not self.negations <= set(range(1, self.underlying.n + 1)):
            raise ValueError(f"negation set {set(self.negations)} not inside 1..{self.underlying.n}")

    @classmethod
    def from_word(cls, word: Sequence[int]) -> SignedPermutation:
        _check_bijection(word)
        u = Permutation(tuple(abs(x) for x in word))
        return cls(u, frozenset(i for i, x in enumerate(word, 1) if x < 0))

    @classmethod
    def identity(cls, n: int) -> SignedPermutation:
        return cls(Permutation.identity(n))

    @property
    def n(self) -> int:
        return self.underlying.n

    @cached_property
    def word(self) -> tuple[int, ...]:
        return tuple(-x if i in self.negations else x
                     for i, x in enumerate(self.underlying.word, 1))

    def __call__(self, i: int) -> int:
        if i == 0:
            return 0
        return -self.word[-i - 1] if i < 0 else self.word[i - 1]

    def __str__(self):
        return " ".join(f"-{-x}" if x < 0 else str(x) for x in self.word)

    def inverse(self) -> SignedPermutation:
        inv = [0] * self.n
        for i, x in enumerate(self.word, 1):
            inv[abs(x) - 1] = i if x > 0 else -i
        return SignedPermutation.from_word(inv)

    def negated(self) -> SignedPermutation:
        """The involution w -> w-bar negating every entry."""
        return SignedPermutation(self.underlying, frozenset(range(1, self.n + 1)) - self.negations)

    def signed_cycles(self) -> list[tuple[list[int], int]]:
        """Cycles of u on {1..n} paired with the product of the signs along them."""
        out = []
        for cyc in _cycles(self.word):
            eps = 1
            for j in cyc:
                if self.word[j - 1] < 0:
                    eps = -eps
            out.append((cyc, eps))
        return out

    @cached_property
    def stats(self) -> BStats:
        return b_statistics(self)


# ---------------------------------------------------------------------------
# operations

def descent_count(w: Permutation) -> int:
    return descents(w.word)


def statistics(w: Permutation) -> PermStats:
    word = w.word
    n = len(word)
    inv = inversions(word)
    c = cycle_count(word)
    sgn = -1 if inv & 1 else 1
    if sgn != (-1) ** (n - c):
        raise AssertionError(f"sign parity mismatch for {w}: inv={inv}, cycles={c}")
    return PermStats(des=descents(word), asc=ascents(word), inv=inv, sgn=sgn,
                     cycles=c, valleys=valleys(word))


def b_statistics(w: SignedPermutation) -> BStats:
    word = w.word
    pos: Counter = Counter()
    neg: Counter = Counter()
    for cyc, eps in w.signed_cycles():
        (pos if eps > 0 else neg)[len(cyc)] += 1
    n = w.n
    sgn_b = (-1) ** (n - sum(pos.values()))
    delta = -1 if len(w.negations) & 1 else 1
    eta = w.underlying.sgn
    if sgn_b != delta * eta:
        raise AssertionError(f"type B sign mismatch for {w}")
    return BStats(des_B=b_descents(word), inv_B=b_inversions(word), sgn_B=sgn_b,
                  delta=delta, eta=eta, pos_cycles=pos, neg_cycles=neg)


def enumerate_symmetric(n: int, cap: int = S_CAP) -> Iterator[Permutation]:
    """All of S_n in lexicographic order of one-line words."""
    for word in symmetric_words(n, cap):
        yield Permutation(word)


def symmetric_words(n: int, cap: int = S_CAP) -> Iterator[tuple[int, ...]]:
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > cap:
        raise EnumerationCapError("S", n, cap)
    return itertools.permutations(range(1, n + 1))


def symmetric_word_array(n: int, cap: int = S_CAP) -> np.ndarray:
    """S_n as an (n!, n) int8 array, rows in the same order as ``symmetric_words``."""
    words = symmetric_words(n, cap)
    return np.fromiter(itertools.chain.from_iterable(words), dtype=np.int8).reshape(-1, n)


def array_descents(words: np.ndarray) -> np.ndarray:
    return (words[:, :-1] > words[:, 1:]).sum(axis=1)


def array_inversions(words: np.ndarray) -> np.ndarray:
    n = words.shape[1]
    out = np.zeros(len(words), dtype=np.int64)
    for i in range(n - 1):
        out += (words[:, i:i + 1] > words[:, i + 1:]).sum(axis=1)
    return out


def hyperoctahedral_words(n: int, cap: int = B_CAP) -> Iterator[tuple[int, ...]]:
    """Signed words of B_n: underlying words in lex order, then negation masks 0..2^n-1."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > cap:
        raise EnumerationCapError("B", n, cap)
    masks = range(1 << n)
    for u in itertools.permutations(range(1, n + 1)):
        for mask in masks:
            yield tuple(-x if mask >> i & 1 else x for i, x in enumerate(u))


def enumerate_hyperoctahedral(n: int, cap: int = B_CAP) -> Iterator[SignedPermutation]:
    for word in hyperoctahedral_words(n, cap):
        yield SignedPermutation.from_word(word)


# ---------------------------------------------------------------------------
# number theory

def divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def mobius(n: int) -> int:
    if n < 1:
        raise ValueError("mobius is defined for n >= 1")
    result = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    if n > 1:
        result = -result
    return result


def necklace_count(j: int, k: int) -> int:
    """Number of primitive necklaces of length j over k letters."""
    if j < 1 or k < 1:
        raise ValueError("necklace_count needs j >= 1 and k >= 1")
    total = sum(mobius(d) * k ** (j // d) for d in divisors(j))
    q, r = divmod(total, j)
    assert r == 0
    return q


def reiner_exponent(k: int, m: int) -> int:
    """N*(2k-1, 2m) = (1/2m) sum over odd d | m of mu(d) [(2k-1)^(m/d) - 1]."""
    if k < 1 or m < 1:
        raise ValueError("reiner_exponent needs k >= 1 and m >= 1")
    q = 2 * k - 1
    total = sum(mobius(d) * (q ** (m // d) - 1) for d in divisors(m) if d & 1)
    out, r = divmod(total, 2 * m)
    assert r == 0
    return out
