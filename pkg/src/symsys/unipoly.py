"""Dense univariate polynomials, factorization over F_q, and subresultants.

Coefficients are raw ring values (codes for a FieldSpec, ints/Fractions for
QQ, MPolys for a PolyRing), stored ascending without trailing zeros.
"""

from __future__ import annotations

import math
import re
import threading
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterator, Sequence

from .fields import QQ, CapExceeded, FieldSpec, iter_codes
from .linalg import det, nullspace

N_MAX = 12


class UniPoly:
    __slots__ = ("ring", "coeffs")

    def __init__(self, ring, coeffs: Sequence = ()):
        c = list(coeffs)
        is_zero = ring.is_zero
        while c and is_zero(c[-1]):
            c.pop()
        self.ring = ring
        self.coeffs = tuple(c)

    # -- constructors ----------------------------------------------------------

    @classmethod
    def from_values(cls, ring, values: Sequence) -> UniPoly:
        """Build from user-level values (ints, Fractions, Fe); ints are ring integers."""
        return cls(ring, [ring.coerce(v) for v in values])

    @classmethod
    def T(cls, ring) -> UniPoly:
        return cls(ring, [ring.zero, ring.one])

    @classmethod
    def constant(cls, ring, c) -> UniPoly:
        return cls(ring, [c])

    @classmethod
    def monomial(cls, ring, n: int, c=None) -> UniPoly:
        return cls(ring, [ring.zero] * n + [ring.one if c is None else c])

    @classmethod
    def from_roots(cls, ring, roots: Sequence) -> UniPoly:
        f = cls(ring, [ring.one])
        for r in roots:
            f = f * cls(ring, [ring.neg(r), ring.one])
        return f

    # -- basic properties --------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.ring.zero

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == self.ring.one

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.ring.one

    def coeff(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.ring.zero

    def __len__(self):
        return len(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.ring == other.ring and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return self.format()

    def format(self, var: str = "T") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if self.ring.is_zero(c):
                continue
            s = self.ring.format(c)
            neg = s.startswith("-") and not any(ch in s[1:] for ch in "+-")
            if neg:
                s = s[1:]
            compound = any(ch in s for ch in "+-*")
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            if not mono:
                body = s
            elif s == "1":
                body = mono
            else:
                body = f"({s})*{mono}" if compound else f"{s}*{mono}"
            parts.append(("-" if neg else "+") + body)
        out = "".join(parts)
        return out[1:] if out.startswith("+") else out

    # -- arithmetic ------------------------------------------------------------

    def _lift(self, other) -> UniPoly:
        if isinstance(other, UniPoly):
            if other.ring != self.ring:
                raise ValueError("polynomials over different rings")
            return other
        return UniPoly(self.ring, [self.ring.coerce(other)])

    def __add__(self, other):
        other = self._lift(other)
        R = self.ring
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = R.add(out[i], c)
        return UniPoly(R, out)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(self.ring, [self.ring.neg(c) for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def scale(self, c) -> UniPoly:
        R = self.ring
        return UniPoly(R, [R.mul(c, x) for x in self.coeffs])

    def __mul__(self, other):
        other = self._lift(other)
        R = self.ring
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly(R)
        if getattr(R, "is_prime_field", False):
            p = R.p
            out = [0] * (len(a) + len(b) - 1)
            for i, ai in enumerate(a):
                if ai:
                    for j, bj in enumerate(b):
                        out[i + j] += ai * bj
            return UniPoly(R, [c % p for c in out])
        out = [R.zero] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if R.is_zero(ai):
                continue
            for j, bj in enumerate(b):
                out[i + j] = R.add(out[i + j], R.mul(ai, bj))
        return UniPoly(R, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = UniPoly(self.ring, [self.ring.one])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        other = self._lift(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        R = self.ring
        r = list(self.coeffs)
        db = other.degree
        if len(r) - 1 < db:
            return UniPoly(R), self
        b = other.coeffs
        inv = R.inv(b[-1])
        qt = [R.zero] * (len(r) - db)
        if getattr(R, "is_prime_field", False):
            p = R.p
            for k in range(len(r) - 1, db - 1, -1):
                c = r[k] % p
                if c:
                    c = c * inv % p
                    qt[k - db] = c
                    for j in range(db + 1):
                        r[k - db + j] -= c * b[j]
            return UniPoly(R, qt), UniPoly(R, [c % p for c in r[:db]])
        for k in range(len(r) - 1, db - 1, -1):
            if R.is_zero(r[k]):
                continue
            c = R.mul(r[k], inv)
            qt[k - db] = c
            for j in range(db + 1):
                r[k - db + j] = R.sub(r[k - db + j], R.mul(c, b[j]))
        return UniPoly(R, qt), UniPoly(R, r[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> UniPoly:
        qt, r = divmod(self, other)
        if not r.is_zero():
            raise ValueError("division is not exact")
        return qt

    def derivative(self) -> UniPoly:
        R = self.ring
        return UniPoly(R, [R.mul(R.from_int(i), c) for i, c in enumerate(self.coeffs) if i])

    def monic(self) -> UniPoly:
        if self.is_zero():
            return self
        return self.scale(self.ring.inv(self.lc))

    def evaluate(self, x):
        R = self.ring
        acc = R.zero
        for c in reversed(self.coeffs):
            acc = R.add(R.mul(acc, x), c)
        return acc

    __call__ = evaluate

    def powmod(self, n: int, mod: UniPoly) -> UniPoly:
        result = UniPoly(self.ring, [self.ring.one]) % mod
        base = self % mod
        while n:
            if n & 1:
                result = (result * base) % mod
            base = (base * base) % mod
            n >>= 1
        return result

    def sort_key(self):
        """Degree first, then coefficients read as a base-q number (top digit most significant)."""
        return (self.degree, tuple(reversed(self.coeffs)))


def gcd(f: UniPoly, g: UniPoly) -> UniPoly:
    """Monic gcd over a field (zero if both inputs are zero)."""
    while not g.is_zero():
        f, g = g, f % g
    return f.monic()


# ---------------------------------------------------------------------------
# patterns


@dataclass(frozen=True)
class Lambda:
    """A factorization pattern 1^{l_1} 2^{l_2} ... n^{l_n}; counts[i-1] = l_i."""

    counts: tuple[int, ...]

    def __post_init__(self):
        if any(c < 0 for c in self.counts):
            raise ValueError("negative multiplicity in pattern")

    @property
    def n(self) -> int:
        return sum((i + 1) * c for i, c in enumerate(self.counts))

    @classmethod
    def from_degrees(cls, degrees, n: int | None = None) -> Lambda:
        degrees = list(degrees)
        size = n if n is not None else sum(degrees)
        counts = [0] * size
        for d in degrees:
            counts[d - 1] += 1
        lam = cls(tuple(counts))
        if n is not None and lam.n != n:
            raise ValueError("degrees do not sum to n")
        return lam

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> Lambda:
        degrees = []
        for tok in text.replace(",", " ").split():
            m = re.fullmatch(r"(\d+)(?:\^(\d+))?", tok)
            if not m:
                raise ValueError(f"bad pattern token {tok!r}")
            degrees += [int(m.group(1))] * int(m.group(2) or 1)
        return cls.from_degrees(degrees, n)

    def degrees(self) -> list[int]:
        return [i + 1 for i, c in enumerate(self.counts) for _ in range(c)]

    def __getitem__(self, i: int) -> int:
        """l_i for 1 <= i <= n."""
        return self.counts[i - 1] if 1 <= i <= len(self.counts) else 0

    def w(self) -> int:
        out = 1
        for i, c in enumerate(self.counts, start=1):
            out *= i**c * math.factorial(c)
        return out

    def T(self) -> Fraction:
        return Fraction(1, self.w())

    def sort_key(self):
        return tuple(reversed(self.counts))

    def __str__(self):
        return " ".join(f"{i}^{c}" for i, c in enumerate(self.counts, start=1) if c)

    def __repr__(self):
        return f"Lambda({self})"


def partitions(n: int) -> list[Lambda]:
    """All patterns of degree n, from 1^n to n^1."""
    out = []

    def rec(rem, maxpart, parts):
        if rem == 0:
            out.append(Lambda.from_degrees(parts, n))
            return
        for d in range(min(rem, maxpart), 0, -1):
            rec(rem - d, d, parts + [d])

    rec(n, n, [])
    return sorted(out, key=Lambda.sort_key)


# ---------------------------------------------------------------------------
# factorization over F_q


@dataclass(frozen=True)
class Factorization:
    unit: int
    factors: tuple[tuple[UniPoly, int], ...]
    ring: FieldSpec

    def expand(self) -> UniPoly:
        f = UniPoly(self.ring, [self.unit])
        for g, m in self.factors:
            f = f * g**m
        return f

    def pattern(self) -> Lambda:
        return Lambda.from_degrees([g.degree for g, m in self.factors for _ in range(m)])

    def is_squarefree(self) -> bool:
        return all(m == 1 for _, m in self.factors)


def _pth_root(f: UniPoly) -> UniPoly:
    F = f.ring
    p = F.p
    e = F.q // p
    return UniPoly(F, [F.pow(c, e) for c in f.coeffs[::p]])


def squarefree_decomposition(f: UniPoly) -> list[tuple[UniPoly, int]]:
    """Pairwise coprime square-free monic parts with multiplicities."""
    F = f.ring
    f = f.monic()
    if f.degree <= 0:
        return []
    out = []
    g = gcd(f, f.derivative())
    w = f // g
    i = 1
    while w.degree > 0:
        y = gcd(w, g)
        z = w // y
        if z.degree > 0:
            out.append((z, i))
        i += 1
        w = y
        g = g // y
    if g.degree > 0:
        out += [(h, m * F.p) for h, m in squarefree_decomposition(_pth_root(g))]
    return out


def distinct_degree(f: UniPoly) -> list[tuple[UniPoly, int]]:
    """Split a monic square-free f into products of same-degree irreducibles."""
    F = f.ring
    out = []
    x = UniPoly.T(F)
    h = x
    d = 0
    while f.degree > 0:
        d += 1
        if 2 * d > f.degree:
            out.append((f, f.degree))
            break
        h = h.powmod(F.q, f)
        g = gcd(f, h - x)
        if g.degree > 0:
            out.append((g, d))
            f = f // g
            h = h % f
    return out


def _equal_degree(f: UniPoly, d: int) -> list[UniPoly]:
    """Berlekamp splitting of a monic square-free product of degree-d irreducibles."""
    n = f.degree
    r = n // d
    if r == 1:
        return [f]
    F = f.ring
    xq = UniPoly.T(F).powmod(F.q, f)
    rows = []
    cur = UniPoly(F, [F.one])
    for _ in range(n):
        rows.append([cur.coeff(j) for j in range(n)])
        cur = (cur * xq) % f
    # v with sum_i v_i rows[i] = v
    mat = [[F.sub(rows[i][j], F.one if i == j else F.zero) for i in range(n)] for j in range(n)]
    kernel = nullspace(mat, F)
    factors = [f]
    for v in kernel:
        vp = UniPoly(F, v)
        if vp.degree <= 0:
            continue
        split = []
        for u in factors:
            if u.degree == d:
                split.append(u)
                continue
            for s in iter_codes(F):
                g = gcd(u, vp - UniPoly(F, [s]))
                if g.degree > 0:
                    split.append(g)
        factors = split
        if len(factors) == r:
            break
    assert len(factors) == r
    return factors


def factor(f: UniPoly, n_max: int = N_MAX) -> Factorization:
    """Complete factorization of a nonzero polynomial over F_q."""
    F = f.ring
    if not isinstance(F, FieldSpec):
        raise TypeError("factor() needs coefficients in a finite field")
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    if f.degree > n_max:
        raise CapExceeded(f"degree {f.degree} exceeds n_max={n_max}")
    unit = f.lc
    parts = []
    for g, m in squarefree_decomposition(f):
        for h, d in distinct_degree(g):
            parts += [(u, m) for u in _equal_degree(h, d)]
    parts.sort(key=lambda t: t[0].sort_key())
    return Factorization(unit, tuple(parts), F)


def pattern(f: UniPoly) -> Lambda:
    """Degrees of the irreducible factors of a monic f, with multiplicity."""
    if not f.is_monic():
        raise ValueError("pattern() needs a monic polynomial")
    degrees = []
    for g, m in squarefree_decomposition(f):
        for h, d in distinct_degree(g):
            degrees += [d] * (m * (h.degree // d))
    return Lambda.from_degrees(degrees, f.degree)


def pattern_and_squarefree(f: UniPoly) -> tuple[Lambda, bool]:
    degrees = []
    sqf = True
    for g, m in squarefree_decomposition(f):
        sqf = sqf and m == 1
        for h, d in distinct_degree(g):
            degrees += [d] * (m * (h.degree // d))
    return Lambda.from_degrees(degrees, f.degree), sqf


def all_monic(F: FieldSpec, n: int) -> Iterator[UniPoly]:
    """Monic polynomials of degree n, lower coefficients read as a base-q number."""
    codes = iter_codes(F)
    for low in product(codes, repeat=n):
        yield UniPoly(F, list(reversed(low)) + [F.one])


_IRRED: dict[tuple, list[UniPoly]] = {}
_IRRED_LOCK = threading.Lock()


def monic_irreducibles(F: FieldSpec, d: int) -> list[UniPoly]:
    """Monic irreducibles of degree d, sieved as the complement of all products."""
    key = (F, d)
    got = _IRRED.get(key)
    if got is not None:
        return got
    smaller = [monic_irreducibles(F, e) for e in range(1, d)]
    with _IRRED_LOCK:
        got = _IRRED.get(key)
        if got is not None:
            return got
        reducible = set()

        def rec(start_deg, start_idx, acc, deg):
            if deg == d:
                reducible.add(acc.coeffs)
                return
            for e in range(start_deg, d - deg + 1):
                if e == d:
                    break
                pool = smaller[e - 1]
                for i in range(start_idx if e == start_deg else 0, len(pool)):
                    rec(e, i, acc * pool[i], deg + e)

        rec(1, 0, UniPoly(F, [F.one]), 0)
        got = [g for g in all_monic(F, d) if g.coeffs not in reducible]
        _IRRED[key] = got
    return got


def is_irreducible(f: UniPoly) -> bool:
    """Trial division by every monic irreducible of degree <= deg f / 2."""
    if f.degree <= 0:
        return False
    for d in range(1, f.degree // 2 + 1):
        for g in monic_irreducibles(f.ring, d):
            if (f % g).is_zero():
                return False
    return True


# ---------------------------------------------------------------------------
# subresultants


def sylvester_submatrix(P: UniPoly, Q: UniPoly, j: int, q_degree: int | None = None):
    """The square matrix whose determinant is the j-th scalar subresultant.

    Rows are T^{q-1-j}P, ..., P, T^{p-1-j}Q, ..., Q with p = deg P and q the
    (formal) degree of Q.  Columns are the coefficients of T^{p+q-1-j} down
    to T^j.
    """
    R = P.ring
    p = P.degree
    q = Q.degree if q_degree is None else q_degree
    if Q.degree > q:
        raise ValueError("formal degree below actual degree")
    if not p > q >= 0:
        raise ValueError("need deg P > deg Q >= 0")
    if not (0 <= j < q or j == 0):
        raise ValueError(f"subresultant index {j} out of range")
    top = p + q - 1 - j
    size = p + q - 2 * j
    rows = []
    for poly, shifts in ((P, q - j), (Q, p - j)):
        for s in range(shifts - 1, -1, -1):
            rows.append([poly.coeff(deg - s) for deg in range(top, top - size, -1)])
    return rows


def subresultant(P: UniPoly, Q: UniPoly, j: int, q_degree: int | None = None):
    R = P.ring
    if Q.ring != R:
        raise ValueError("polynomials over different rings")
    return det(sylvester_submatrix(P, Q, j, q_degree), R)


def subdisc(f: UniPoly, j: int):
    """sRes_j(f, f'), with f' taken at its formal degree deg f - 1."""
    if not f.is_monic() or f.degree < 2:
        raise ValueError("subdisc needs a monic polynomial of degree >= 2")
    if not 0 <= j < f.degree - 1:
        raise ValueError(f"subdisc index {j} out of range")
    return subresultant(f, f.derivative(), j, q_degree=f.degree - 1)


def rj_remainder(m: int, j: int, ring=QQ) -> UniPoly:
    """f_j - f_j' * T/m for f_j = T^m + A_{m-j} T^j + ... + A_m with symbolic A's.

    Coefficients live in the polynomial ring over ``ring`` in A_1..A_m.
    """
    from .multipoly import MPoly, PolyRing

    if not 0 <= j < m:
        raise ValueError("need 0 <= j < m")
    minv = ring.from_int(m)
    if ring.is_zero(minv):
        raise ValueError(f"{m} vanishes in {ring!r}")
    names = tuple(f"A{i}" for i in range(1, m + 1))
    PR = PolyRing(ring, m, names)
    coeffs = [PR.zero] * (j + 1)
    for i in range(j + 1):
        a = MPoly.var(ring, m, m - i - 1, names)
        c = ring.div(ring.from_int(m - i), minv)
        coeffs[i] = a.scale(c)
    return UniPoly(PR, coeffs)
