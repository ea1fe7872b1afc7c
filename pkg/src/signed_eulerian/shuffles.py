"""Riffle shuffles of types A and B and the shelf shuffler: exact laws and a seeded simulator.

Decks are words read top to bottom; starting from the identity, the deck after
shuffling is the permutation ``w`` whose probability the closed formulas give
(they depend on ``des(w^-1)``, or on ``des_B(w^-1)`` for type B).
"""

from __future__ import annotations

import itertools
import math
import time
from collections import Counter, defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

import numpy as np

from .combinatorics import (
    B_CAP, S_CAP, b_descents, descents, hyperoctahedral_words, inversions, symmetric_words,
    valleys,
)
from .eulerian import b_eulerian_table, eulerian_table

__all__ = [
    "VARIANTS", "RNG_ALGORITHM", "ShuffleSpec", "SimulationResult",
    "gsr_probability", "sign_probability_exact", "b_shuffle_probability",
    "b_sign_probability_exact", "shelf_probability", "exact_sign_probability",
    "exact_descent_histogram", "exact_distribution", "mechanism_distribution",
    "verify_sign_eigenfunction", "eigenfunction_sum", "valley_sign_counts",
    "shelf_total", "shelf_positive_mass", "simulate",
]

VARIANTS = ("gsr", "type_b", "shelf")
_ALIASES = {"gsr_a": "gsr", "a": "gsr", "typeb": "type_b", "type_b_a": "type_b", "b": "type_b",
            "shelf_m": "shelf"}
RNG_ALGORITHM = "numpy.PCG64/SeedSequence(seed, spawn_key=(chunk,))"
CHUNK = 1 << 15
MECHANISM_CAP = 1 << 18   # max label sequences enumerated per exact mechanism step


def _word(w) -> tuple[int, ...]:
    return tuple(w.word) if hasattr(w, "word") else tuple(w)


def _inverse(word: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(word)
    for i, x in enumerate(word, 1):
        inv[abs(x) - 1] = i if x > 0 else -i
    return tuple(inv)


def _require_odd(a: int):
    if a < 1 or a % 2 == 0:
        raise ValueError(f"type B shuffles need an odd parameter a >= 1, got {a}")


@dataclass(frozen=True)
class ShuffleSpec:
    """variant in {gsr, type_b, shelf}; parameter is a (riffles) or m (shelves)."""

    variant: str
    n: int
    parameter: int
    iterations: int = 1

    def __post_init__(self):
        v = _ALIASES.get(self.variant, self.variant)
        if v not in VARIANTS:
            raise ValueError(f"unknown shuffle variant {self.variant!r}; expected one of {VARIANTS}")
        object.__setattr__(self, "variant", v)
        if self.n < 1:
            raise ValueError("deck size n must be >= 1")
        if self.iterations < 1:
            raise ValueError("iterations must be >= 1")
        if self.parameter < 1:
            raise ValueError("shuffle parameter must be >= 1")
        if v == "type_b":
            _require_odd(self.parameter)
        if v == "shelf" and self.iterations != 1:
            raise ValueError("the shelf shuffler formula covers a single pass only")

    @property
    def effective_parameter(self) -> int:
        """k a-shuffles act as one a^k-shuffle."""
        return self.parameter ** self.iterations

    def to_json(self) -> dict:
        return {"variant": self.variant, "n": self.n, "parameter": self.parameter,
                "iterations": self.iterations}


# ---------------------------------------------------------------------------
# exact formulas

def gsr_probability(w, a: int) -> Fraction:
    """P_{n,a}(w) = C(n + a - des(w^-1) - 1, n) / a^n."""
    if a < 1:
        raise ValueError("a must be >= 1")
    word = _word(w)
    n = len(word)
    return Fraction(comb(n + a - descents(_inverse(word)) - 1, n), a ** n)


def sign_probability_exact(n: int, a: int, k: int = 1) -> Fraction:
    """Chance of an even permutation after k a-shuffles from the identity."""
    if n < 1 or a < 1 or k < 1:
        raise ValueError("need n, a, k >= 1")
    return Fraction(1, 2) + Fraction(1, 2 * a ** (k * (n // 2)))


def b_shuffle_probability(w, a: int) -> Fraction:
    """P^B_{n,a}(w) = C(n + (a-1)/2 - des_B(w^-1), n) / a^n for odd a."""
    _require_odd(a)
    word = _word(w)
    n = len(word)
    return Fraction(comb(n + (a - 1) // 2 - b_descents(_inverse(word)), n), a ** n)


def b_sign_probability_exact(n: int, a: int, r: int = 1) -> Fraction:
    _require_odd(a)
    if n < 1 or r < 1:
        raise ValueError("need n, r >= 1")
    return Fraction(1, 2) + Fraction(1, 2 * a ** (r * n))


def _binom(top: int, bottom: int) -> int:
    return comb(top, bottom) if 0 <= bottom <= top else 0


def shelf_probability(w, m: int) -> Fraction:
    """4^(val+1) / (2 (2m)^n) * sum_{a<m} C(n+m-a-1, n) C(n-1-2val, a-val)."""
    if m < 1:
        raise ValueError("the shelf shuffler needs m >= 1 shelves")
    word = _word(w)
    return _shelf_by_valleys(len(word), valleys(word), m)


def _shelf_by_valleys(n: int, val: int, m: int) -> Fraction:
    s = sum(_binom(n + m - a - 1, n) * _binom(n - 1 - 2 * val, a - val) for a in range(m))
    return Fraction(4 ** (val + 1) * s, 2 * (2 * m) ** n)


def exact_sign_probability(spec: ShuffleSpec) -> Fraction:
    if spec.variant == "gsr":
        return sign_probability_exact(spec.n, spec.parameter, spec.iterations)
    if spec.variant == "type_b":
        return b_sign_probability_exact(spec.n, spec.parameter, spec.iterations)
    return shelf_positive_mass(spec.n, spec.parameter)


def exact_descent_histogram(spec: ShuffleSpec) -> dict[int, Fraction]:
    """Law of des(w^-1) (type B: des_B(w^-1)) after the shuffle, from the Eulerian rows."""
    n, a = spec.n, spec.effective_parameter
    if spec.variant == "gsr":
        return {k - 1: Fraction(c * comb(n + a - k, n), a ** n)
                for k, c in eulerian_table(n).items()}
    if spec.variant == "type_b":
        return {k: Fraction(c * _binom(n + (a - 1) // 2 - k, n), a ** n)
                for k, c in b_eulerian_table(n).items()}
    raise ValueError("descent histograms are defined for riffle shuffles only")


def exact_distribution(spec: ShuffleSpec) -> dict[tuple[int, ...], Fraction]:
    """Closed-form probability of every group element (enumeration caps apply)."""
    a = spec.effective_parameter
    if spec.variant == "gsr":
        return {w: gsr_probability(w, a) for w in symmetric_words(spec.n, S_CAP)}
    if spec.variant == "type_b":
        return {w: b_shuffle_probability(w, a) for w in hyperoctahedral_words(spec.n, B_CAP)}
    return {w: shelf_probability(w, spec.parameter) for w in symmetric_words(spec.n, S_CAP)}


def eigenfunction_sum(n: int, a: int) -> Fraction:
    """sum_{w in S_n} P_{n,a}(w) sgn(w), by enumeration."""
    total = Fraction(0)
    for w in symmetric_words(n, S_CAP):
        p = gsr_probability(w, a)
        total += -p if inversions(w) & 1 else p
    return total


def verify_sign_eigenfunction(n: int, a: int) -> bool:
    """sgn is a right eigenfunction of the a-shuffle chain with eigenvalue a^-floor(n/2)."""
    return eigenfunction_sum(n, a) == Fraction(1, a ** (n // 2))


def valley_sign_counts(n: int) -> Counter:
    """(valleys, sign) -> number of permutations in S_n."""
    out: Counter = Counter()
    for w in symmetric_words(n, S_CAP):
        out[valleys(w), -1 if inversions(w) & 1 else 1] += 1
    return out


def shelf_total(n: int, m: int) -> Fraction:
    return sum((c * _shelf_by_valleys(n, v, m) for (v, _), c in valley_sign_counts(n).items()),
               Fraction(0))


def shelf_positive_mass(n: int, m: int) -> Fraction:
    return sum((c * _shelf_by_valleys(n, v, m)
                for (v, s), c in valley_sign_counts(n).items() if s > 0), Fraction(0))


# ---------------------------------------------------------------------------
# the physical mechanism

def _deal(deck: Sequence[int], drops: Sequence[int], a: int, face_up: bool) -> tuple[int, ...]:
    """One riffle given the packet each successive dropped card comes from."""
    sizes = [0] * a
    for p in drops:
        sizes[p] += 1
    packets, start = [], 0
    for i, s in enumerate(sizes):
        chunk = list(deck[start:start + s])
        if face_up and i % 2 == 1:
            chunk = [-x for x in reversed(chunk)]
        packets.append(iter(chunk))
        start += s
    return tuple(next(packets[p]) for p in drops)


def mechanism_distribution(spec: ShuffleSpec) -> dict[tuple[int, ...], Fraction]:
    """Exact law of the cut-and-drop mechanism, independent of the closed formulas.

    Given cut sizes j, each interleaving has probability 1/multinomial(n; j), so
    each sequence of source packets in [a]^n occurs with probability a^-n.
    """
    if spec.variant == "shelf":
        raise ValueError("no cut-and-drop mechanism for the shelf shuffler")
    n, a = spec.n, spec.parameter
    if a ** n > MECHANISM_CAP:
        raise ValueError(f"{a}^{n} drop sequences exceed the enumeration cap {MECHANISM_CAP}")
    face_up = spec.variant == "type_b"
    weight = Fraction(1, a ** n)
    law = {tuple(range(1, n + 1)): Fraction(1)}
    for _ in range(spec.iterations):
        nxt: dict = defaultdict(Fraction)
        for deck, p in law.items():
            for drops in itertools.product(range(a), repeat=n):
                nxt[_deal(deck, drops, a, face_up)] += p * weight
        law = dict(nxt)
    return law


# ---------------------------------------------------------------------------
# simulation

@dataclass
class SimulationResult:
    spec: ShuffleSpec
    trials: int
    seed: int
    positive_sign_count: int
    descent_of_inverse_histogram: dict[int, int]
    elapsed: float = 0.0
    rng: str = RNG_ALGORITHM
    workers: int = 1

    def __post_init__(self):
        assert 0 <= self.positive_sign_count <= self.trials
        assert sum(self.descent_of_inverse_histogram.values()) == self.trials

    @property
    def positive_fraction(self) -> float:
        return self.positive_sign_count / self.trials

    @property
    def exact_probability(self) -> Fraction:
        return exact_sign_probability(self.spec)

    @property
    def z_score(self) -> float:
        p = float(self.exact_probability)
        sd = math.sqrt(p * (1 - p) / self.trials)
        diff = self.positive_fraction - p
        if sd == 0:
            return 0.0 if diff == 0 else math.copysign(math.inf, diff)
        return diff / sd


def _sign_parity(decks: np.ndarray) -> np.ndarray:
    """Parity (0 even, 1 odd) of the underlying permutations, row-wise."""
    mags = np.abs(decks)
    n = decks.shape[1]
    inv = np.zeros(decks.shape[0], dtype=np.int64)
    for i in range(n - 1):
        inv += (mags[:, i:i + 1] > mags[:, i + 1:]).sum(axis=1)
    return inv & 1


def _shuffle_once(decks: np.ndarray, a: int, face_up: bool, rng: np.random.Generator) -> np.ndarray:
    t, n = decks.shape
    rows = np.arange(t)
    # cut: n balls into a boxes, then packet i takes the next j_i cards from the top
    labels = rng.integers(0, a, size=(t, n))
    sizes = np.bincount((labels + a * rows[:, None]).ravel(), minlength=t * a).reshape(t, a)
    starts = np.cumsum(sizes, axis=1) - sizes
    if face_up:
        packet = np.sort(labels, axis=1)
        pos = np.arange(n)[None, :]
        st = np.take_along_axis(starts, packet, axis=1)
        sz = np.take_along_axis(sizes, packet, axis=1)
        up = packet % 2 == 1
        src = np.where(up, 2 * st + sz - 1 - pos, pos)
        decks = np.take_along_axis(decks, src, axis=1) * np.where(up, -1, 1)
    # drop: the next card comes from packet i with probability (cards left in i) / (cards left)
    remaining = sizes.copy()
    taken = np.zeros_like(sizes)
    out = np.empty_like(decks)
    for step in range(n):
        u = rng.integers(0, n - step, size=t)
        p = (np.cumsum(remaining, axis=1) <= u[:, None]).sum(axis=1)
        out[:, step] = decks[rows, starts[rows, p] + taken[rows, p]]
        taken[rows, p] += 1
        remaining[rows, p] -= 1
    return out


def _simulate_chunk(args) -> tuple[int, dict[int, int]]:
    variant, n, a, iterations, size, seed, chunk = args
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(chunk,))))
    face_up = variant == "type_b"
    decks = np.tile(np.arange(1, n + 1, dtype=np.int64), (size, 1))
    for _ in range(iterations):
        decks = _shuffle_once(decks, a, face_up, rng)
    parity = _sign_parity(decks)
    if face_up:
        parity ^= (decks < 0).sum(axis=1) & 1
    # inverse: position of card |x|, signed like x
    inv = np.empty_like(decks)
    rows = np.arange(size)[:, None]
    inv[rows, np.abs(decks) - 1] = np.arange(1, n + 1)[None, :] * np.sign(decks)
    if face_up:
        inv = np.concatenate([np.zeros((size, 1), dtype=inv.dtype), inv], axis=1)
    des = (inv[:, :-1] > inv[:, 1:]).sum(axis=1)
    hist = np.bincount(des, minlength=n + 1)
    return int(size - parity.sum()), {d: int(c) for d, c in enumerate(hist) if c}


def simulate(spec: ShuffleSpec, trials: int, seed: int, workers: int = 1) -> SimulationResult:
    """Run ``trials`` independent shuffles from the identity.

    Trials are split into fixed chunks, chunk i drawing from its own spawned
    PCG64 stream, so the result depends on (spec, trials, seed) and not on
    ``workers``.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if spec.variant == "shelf":
        raise ValueError("the shelf shuffler is exact-formula only: no mechanism is simulated")
    seed = int(seed) & ((1 << 64) - 1)
    jobs = []
    for chunk, lo in enumerate(range(0, trials, CHUNK)):
        jobs.append((spec.variant, spec.n, spec.parameter, spec.iterations,
                     min(CHUNK, trials - lo), seed, chunk))
    t0 = time.perf_counter()
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_simulate_chunk, jobs))
    else:
        parts = [_simulate_chunk(j) for j in jobs]
    positive = sum(p for p, _ in parts)
    hist: Counter = Counter()
    for _, h in parts:
        hist.update(h)
    return SimulationResult(spec, trials, seed, positive, dict(sorted(hist.items())),
                            time.perf_counter() - t0, RNG_ALGORITHM, workers)
