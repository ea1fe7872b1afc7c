"""Exact univariate polynomials, homogeneous bivariate forms and truncated power series.

Coefficients are Python ints where the objects are integral and ``Fraction``
otherwise; nothing here ever touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from numbers import Rational
from typing import Iterable, Sequence, Union

__all__ = [
    "ExactPolynomial", "HomogeneousBivariate", "TruncatedSeries",
    "apply_operator", "series_inverse_power", "one_minus_t_power",
]

Coeff = Union[int, Fraction]


def _normalize(c) -> Coeff:
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, int):
        return c
    if isinstance(c, Rational):
        return _normalize(Fraction(c))
    raise TypeError(f"exact coefficients only, got {type(c).__name__}")


def _fmt(c: Coeff):
    return c if isinstance(c, int) else f"{c.numerator}/{c.denominator}"


class ExactPolynomial:
    """Dense polynomial in one variable, coefficients lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_normalize(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Coeff, ...] = tuple(cs)

    # -- construction ------------------------------------------------------
    @classmethod
    def monomial(cls, k: int, c: Coeff = 1) -> ExactPolynomial:
        return cls([0] * k + [c])

    @classmethod
    def from_json(cls, obj: dict) -> ExactPolynomial:
        offset = obj.get("offset", 0)
        return cls([0] * offset + [Fraction(c) if isinstance(c, str) else c
                                   for c in obj["coefficients"]])

    def to_json(self) -> dict:
        m = self.valuation() if self else 0
        return {"offset": m, "coefficients": [_fmt(c) for c in self.coeffs[m:]]}

    # -- basic queries -----------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def __bool__(self):
        return bool(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, k: int) -> Coeff:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, ExactPolynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == ExactPolynomial([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"ExactPolynomial({list(self.coeffs)!r})"

    def __str__(self):
        if not self:
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            if mono and c == 1:
                terms.append(mono)
            elif mono and c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{_fmt(c)}{'*' if mono else ''}{mono}")
        return " + ".join(terms).replace("+ -", "- ")

    def leading(self) -> Coeff:
        return self.coeffs[-1] if self.coeffs else 0

    def valuation(self) -> int:
        """Multiplicity of t as a factor (order of the zero root)."""
        if not self:
            raise ValueError("the zero polynomial has no valuation")
        k = 0
        while self.coeffs[k] == 0:
            k += 1
        return k

    def strip_zero_roots(self) -> ExactPolynomial:
        return ExactPolynomial(self.coeffs[self.valuation():]) if self else self

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.coeffs)

    def is_palindromic(self) -> bool:
        return self.coeffs == self.coeffs[::-1]

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        n = max(len(self), len(other))
        return ExactPolynomial(self[k] + other[k] for k in range(n))

    __radd__ = __add__

    def __neg__(self):
        return ExactPolynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return ExactPolynomial(c * other for c in self.coeffs)
        if not isinstance(other, ExactPolynomial):
            return NotImplemented
        if not self or not other:
            return ExactPolynomial()
        out = [0] * (len(self) + len(other) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return ExactPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers of polynomials are series; use TruncatedSeries")
        result = ExactPolynomial([1])
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def shift(self, k: int) -> ExactPolynomial:
        """Multiply by t^k (k >= 0) or divide exactly by t^-k."""
        if k >= 0:
            return ExactPolynomial([0] * k + list(self.coeffs))
        if any(self[i] for i in range(-k)):
            raise ValueError(f"polynomial not divisible by t^{-k}")
        return ExactPolynomial(self.coeffs[-k:])

    def derivative(self, r: int = 1) -> ExactPolynomial:
        p = self
        for _ in range(r):
            p = ExactPolynomial(k * c for k, c in enumerate(p.coeffs) if k)
        return p

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def sign_at(self, x) -> int:
        if self.is_integral() and isinstance(x, (int, Fraction)):
            # den^d p(num/den) in integers; den > 0 so the sign is unchanged
            x = Fraction(x)
            num, den = x.numerator, x.denominator
            acc = 0
            scale = 1
            for c in reversed(self.coeffs):
                acc = acc * num + c * scale
                scale *= den
            v = acc
        else:
            v = self(x)
        return (v > 0) - (v < 0)

    def reversed(self, degree: int | None = None) -> ExactPolynomial:
        """t^d p(1/t) for d = degree (default: the actual degree)."""
        d = self.degree if degree is None else degree
        if d < self.degree:
            raise ValueError("reversal degree below polynomial degree")
        return ExactPolynomial([self[d - k] for k in range(d + 1)])

    def content(self) -> Coeff:
        """Positive gcd of the integer coefficients (0 for the zero polynomial)."""
        if not self.is_integral():
            raise ValueError("content is only defined for integer polynomials")
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g

    def primitive(self) -> ExactPolynomial:
        """Integer polynomial with content 1 and positive leading coefficient."""
        p = self.clear_denominators()
        if not p:
            return p
        g = p.content()
        if p.leading() < 0:
            g = -g
        return ExactPolynomial(c // g for c in p.coeffs)

    def clear_denominators(self) -> ExactPolynomial:
        if self.is_integral():
            return self
        lcm = 1
        for c in self.coeffs:
            if isinstance(c, Fraction):
                lcm = lcm * c.denominator // gcd(lcm, c.denominator)
        return self * lcm

    def divmod(self, other: ExactPolynomial) -> tuple[ExactPolynomial, ExactPolynomial]:
        """Euclidean division over the rationals."""
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = [Fraction(c) for c in self.coeffs]
        q = [Fraction(0)] * max(len(rem) - len(other) + 1, 0)
        lead = Fraction(other.leading())
        db = other.degree
        for k in range(len(rem) - 1, db - 1, -1):
            c = rem[k] / lead
            if c:
                q[k - db] = c
                for i, b in enumerate(other.coeffs):
                    rem[k - db + i] -= c * b
        return ExactPolynomial(q), ExactPolynomial(rem[:db] if db > 0 else [])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def pseudo_remainder(self, other: ExactPolynomial) -> ExactPolynomial:
        """prem(a, b) = lc(b)^(deg a - deg b + 1) * a mod b, computed in integers."""
        if not other:
            raise ZeroDivisionError("pseudo-remainder by zero")
        a = list(self.coeffs)
        b = other.coeffs
        db = len(b) - 1
        lb = b[-1]
        delta = len(a) - len(b) + 1
        if delta <= 0:
            return self
        for _ in range(delta):
            if len(a) - 1 < db:
                a = [c * lb for c in a]
                continue
            lead = a[-1]
            shift = len(a) - 1 - db
            a = [c * lb for c in a]
            for i, bc in enumerate(b):
                a[shift + i] -= lead * bc
            a.pop()
            while a and a[-1] == 0:
                a.pop()
        return ExactPolynomial(a)

    def gcd(self, other: ExactPolynomial) -> ExactPolynomial:
        """Primitive gcd of two integer polynomials (primitive PRS)."""
        a, b = self.primitive(), other.primitive()
        if a.degree < b.degree:
            a, b = b, a
        while b:
            a, b = b, a.pseudo_remainder(b).primitive()
        return a.primitive()


def _as_poly(x) -> ExactPolynomial | None:
    if isinstance(x, ExactPolynomial):
        return x
    if isinstance(x, (int, Fraction)):
        return ExactPolynomial([x])
    return None


def one_minus_t_power(m: int) -> ExactPolynomial:
    return ExactPolynomial([1, -1]) ** m


# ---------------------------------------------------------------------------

class HomogeneousBivariate:
    """Homogeneous form of degree d: sum_j c_j s^(d-j) t^j."""

    __slots__ = ("degree", "coeffs")

    def __init__(self, degree: int, coeffs: Sequence):
        if len(coeffs) > degree + 1:
            raise ValueError("more coefficients than a homogeneous form of this degree has")
        cs = [_normalize(c) for c in coeffs]
        self.degree = degree
        self.coeffs: tuple[Coeff, ...] = tuple(cs + [0] * (degree + 1 - len(cs)))

    @classmethod
    def from_univariate(cls, p: ExactPolynomial, degree: int, shift: int = 0) -> HomogeneousBivariate:
        """Homogenize: coefficient of t^(j+shift) in p becomes that of s^(d-j) t^j.

        ``shift=1`` gives (s^n/t) A_n(t/s) for type A, ``shift=0`` gives s^n B_n(t/s).
        """
        if p and p.valuation() < shift:
            raise ValueError("polynomial has terms below the homogenization shift")
        if p.degree - shift > degree:
            raise ValueError("polynomial degree exceeds the form degree")
        return cls(degree, [p[j + shift] for j in range(degree + 1)])

    def to_univariate(self, shift: int = 0) -> ExactPolynomial:
        """Set s = 1 and multiply by t^shift."""
        return ExactPolynomial(self.coeffs).shift(shift)

    def swapped(self) -> HomogeneousBivariate:
        """p(t, s)."""
        return HomogeneousBivariate(self.degree, self.coeffs[::-1])

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.coeffs)

    def __add__(self, other: HomogeneousBivariate) -> HomogeneousBivariate:
        if self.degree != other.degree:
            raise ValueError("adding forms of different degree")
        return HomogeneousBivariate(self.degree, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: HomogeneousBivariate) -> HomogeneousBivariate:
        return self + other * -1

    def __mul__(self, c):
        return HomogeneousBivariate(self.degree, [x * c for x in self.coeffs])

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, HomogeneousBivariate):
            return NotImplemented
        return self.degree == other.degree and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.degree, self.coeffs))

    def __repr__(self):
        return f"HomogeneousBivariate({self.degree}, {list(self.coeffs)!r})"

    def times_s(self) -> HomogeneousBivariate:
        return HomogeneousBivariate(self.degree + 1, list(self.coeffs) + [0])

    def times_t(self) -> HomogeneousBivariate:
        return HomogeneousBivariate(self.degree + 1, [0] + list(self.coeffs))

    def st_d(self) -> HomogeneousBivariate:
        """st (d/ds + d/dt) applied to the form."""
        d = self.degree
        out = [0] * (d + 2)
        for j, c in enumerate(self.coeffs):
            out[j] += j * c            # st d/dt: s^(d-j) t^j -> j s^(d-j+1) t^j
            out[j + 1] += (d - j) * c  # st d/ds: -> (d-j) s^(d-j) t^(j+1)
        return HomogeneousBivariate(d + 1, out)


_HALF = Fraction(1, 2)


def apply_operator(op: str, p: HomogeneousBivariate) -> HomogeneousBivariate:
    """Apply one of the linear operators

    - ``T   = s + t + st(d/ds + d/dt)``
    - ``T_s = s + (st/2)(d/ds + d/dt)``
    - ``T_t = t + (st/2)(d/ds + d/dt)``
    - ``U   = s + t + 2st(d/ds + d/dt)``

    T_s and T_t must land on integer coefficients; anything else raises.
    """
    D = p.st_d()
    if op == "T":
        out = p.times_s() + p.times_t() + D
    elif op == "U":
        out = p.times_s() + p.times_t() + D * 2
    elif op == "T_s":
        out = p.times_s() + D * _HALF
    elif op == "T_t":
        out = p.times_t() + D * _HALF
    else:
        raise ValueError(f"unknown operator {op!r}; expected T, T_s, T_t or U")
    if op in ("T_s", "T_t") and not out.is_integral():
        raise ArithmeticError(f"{op} produced non-integer coefficients: {out.coeffs}")
    return out


# ---------------------------------------------------------------------------

class TruncatedSeries:
    """Power series with exact rational coefficients, kept modulo x^order."""

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs: Iterable, order: int):
        if order < 1:
            raise ValueError("truncation order must be >= 1")
        cs = [_normalize(c) for c in coeffs][:order]
        self.order = order
        self.coeffs: tuple[Coeff, ...] = tuple(cs + [0] * (order - len(cs)))

    @classmethod
    def one(cls, order: int) -> TruncatedSeries:
        return cls([1], order)

    @classmethod
    def from_polynomial(cls, p: ExactPolynomial, order: int) -> TruncatedSeries:
        return cls(p.coeffs, order)

    @classmethod
    def sparse(cls, terms: dict[int, Coeff], order: int) -> TruncatedSeries:
        cs = [0] * order
        for k, c in terms.items():
            if 0 <= k < order:
                cs[k] += c
        return cls(cs, order)

    def __getitem__(self, k: int) -> Coeff:
        return self.coeffs[k] if 0 <= k < self.order else 0

    def _check(self, other: TruncatedSeries):
        if not isinstance(other, TruncatedSeries):
            raise TypeError("expected a TruncatedSeries")
        if other.order != self.order:
            raise ValueError(f"truncation orders differ: {self.order} vs {other.order}")

    def __add__(self, other):
        self._check(other)
        return TruncatedSeries([a + b for a, b in zip(self.coeffs, other.coeffs)], self.order)

    def __neg__(self):
        return TruncatedSeries([-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries([c * other for c in self.coeffs], self.order)
        self._check(other)
        N = self.order
        out = [0] * N
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j in range(N - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] += a * b
        return TruncatedSeries(out, N)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        return series_inverse_power(self, e)

    def inverse(self) -> TruncatedSeries:
        return series_inverse_power(self, -1)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries([Fraction(c) / other for c in self.coeffs], self.order)
        return self * other.inverse()

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def __repr__(self):
        return f"TruncatedSeries({[_fmt(c) for c in self.coeffs]!r}, order={self.order})"

    def first_difference(self, other: TruncatedSeries) -> int | None:
        self._check(other)
        for k, (a, b) in enumerate(zip(self.coeffs, other.coeffs)):
            if a != b:
                return k
        return None


def series_inverse_power(base: TruncatedSeries, e: int) -> TruncatedSeries:
    """base**e for any integer e, needing only a nonzero constant term.

    Uses the recurrence from differentiating f**e: for f = sum b_k x^k and
    g = f**e, k b_0 g_k = sum_{j=1..k} (e*j - k + j) b_j g_{k-j}.
    """
    b = base.coeffs
    N = base.order
    if e >= 0 and b[0] == 0:
        # plain repeated squaring still works without an invertible constant
        result = TruncatedSeries.one(N)
        sq = base
        while e:
            if e & 1:
                result = result * sq
            sq = sq * sq
            e >>= 1
        return result
    if b[0] == 0:
        raise ZeroDivisionError("series with zero constant term has no negative powers")
    support = [j for j in range(1, N) if b[j]]
    b0 = Fraction(b[0])
    g = [Fraction(0)] * N
    g[0] = b0 ** e
    for k in range(1, N):
        acc = Fraction(0)
        for j in support:
            if j > k:
                break
            acc += (e * j - k + j) * b[j] * g[k - j]
        g[k] = acc / (k * b0)
    return TruncatedSeries(g, N)
