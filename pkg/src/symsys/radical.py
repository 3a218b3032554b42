"""Exact numbers of the form a + b*sqrt(q) with rational a, b and a fixed integer q.

Every bound in this package has that shape, so comparisons against integer
counts can be decided without floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

Rational = int | Fraction


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def _sign(x) -> int:
    return (x > 0) - (x < 0)


@dataclass(frozen=True)
class RadicalValue:
    """The value ``a + b*sqrt(q)``."""

    q: int
    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)

    def __post_init__(self):
        a, b = _frac(self.a), _frac(self.b)
        r = math.isqrt(self.q)
        if r * r == self.q and b:
            a, b = a + b * r, Fraction(0)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @classmethod
    def rational(cls, q: int, x) -> RadicalValue:
        return cls(q, _frac(x))

    @classmethod
    def half_power(cls, q: int, n: int) -> RadicalValue:
        """q^(n/2) for any integer n."""
        if n % 2 == 0:
            return cls(q, Fraction(q) ** (n // 2))
        return cls(q, Fraction(0), Fraction(q) ** ((n - 1) // 2))

    # -- arithmetic ------------------------------------------------------------

    def _lift(self, other) -> RadicalValue:
        if isinstance(other, RadicalValue):
            if other.q != self.q:
                raise ValueError("radicals of different q")
            return other
        return RadicalValue(self.q, _frac(other))

    def __add__(self, other):
        o = self._lift(other)
        return RadicalValue(self.q, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return RadicalValue(self.q, -self.a, -self.b)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        return RadicalValue(
            self.q,
            self.a * o.a + self.b * o.b * self.q,
            self.a * o.b + self.b * o.a,
        )

    __rmul__ = __mul__

    # -- order -------------------------------------------------------------------

    def sign(self) -> int:
        sa, sb = _sign(self.a), _sign(self.b)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: compare a^2 with b^2 q
        diff = self.a * self.a - self.b * self.b * self.q
        return sa * _sign(diff)

    def _cmp(self, other) -> int:
        return (self - self._lift(other)).sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __eq__(self, other):
        if isinstance(other, (RadicalValue, int, Fraction)):
            o = self._lift(other)
            return self.a == o.a and self.b == o.b
        return NotImplemented

    def __hash__(self):
        return hash((self.q, self.a, self.b))

    # -- output ------------------------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def floor(self) -> int:
        """Largest integer n with n <= value."""
        # floor(|b| sqrt(q)) = isqrt(num^2 q) // den, exact for any size
        num, den = abs(self.b.numerator), self.b.denominator
        r = math.isqrt(num * num * self.q) // den
        n = math.floor(self.a) + (r if self.b >= 0 else -r - 1) - 2
        while self >= n + 1:
            n += 1
        while self < n:
            n -= 1
        return n

    def approx(self) -> float:
        """Float approximation, for human-readable output only."""
        return float(self.a) + float(self.b) * math.sqrt(self.q)

    def to_json(self) -> dict:
        return {"rational": frac_str(self.a), "sqrt_coeff": frac_str(self.b), "q": self.q}

    def __str__(self):
        if self.b == 0:
            return str(frac_str(self.a))
        s = f"{frac_str(self.b)}*sqrt({self.q})"
        if self.a == 0:
            return s
        return f"{frac_str(self.a)} + {s}"

    def __repr__(self):
        return f"RadicalValue({self})"


def frac_str(x) -> str | int:
    """Exact JSON form of a rational: an int, or the string 'a/b'."""
    x = _frac(x)
    if x.denominator == 1:
        return x.numerator
    return f"{x.numerator}/{x.denominator}"


def within(count: int, main: Rational, bound: RadicalValue) -> bool:
    """Decide |count - main| <= bound exactly.

    With bound = b0 + a0*sqrt(q): let L = |count - main| - b0.  If L <= 0 the
    inequality holds; otherwise it holds iff a0 >= 0 and L^2 <= a0^2 q.
    """
    L = abs(_frac(count) - _frac(main)) - bound.a
    if L <= 0 and bound.b >= 0:
        return True
    if L <= 0:
        return (bound - abs(_frac(count) - _frac(main))).sign() >= 0
    return bound.b > 0 and L * L <= bound.b * bound.b * bound.q
