"""Sparse multivariate polynomials and the symmetric-function toolkit.

An :class:`MPoly` maps exponent tuples to nonzero coefficients of a ring
(``QQ`` for generic identities, a FieldSpec for F_q work).  Polynomials in
the elementary-symmetric variables E_1..E_m are ordinary MPolys whose
variables are named ``E1..Em``.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, combinations_with_replacement, permutations
from typing import Iterable, Sequence

from .fields import QQ, Fe
from .linalg import det

SYMBOLIC_CAP = 7


def _default_names(n: int, prefix: str = "X") -> tuple[str, ...]:
    return tuple(f"{prefix}{i}" for i in range(1, n + 1))


class MPoly:
    __slots__ = ("ring", "nvars", "terms", "names")

    def __init__(self, ring, nvars: int, terms=None, names: Sequence[str] | None = None):
        self.ring = ring
        self.nvars = nvars
        if terms:
            is_zero = ring.is_zero
            self.terms = {e: c for e, c in terms.items() if not is_zero(c)}
        else:
            self.terms = {}
        self.names = tuple(names) if names is not None else _default_names(nvars)

    # -- constructors ----------------------------------------------------------

    @classmethod
    def zero(cls, ring, nvars, names=None) -> MPoly:
        return cls(ring, nvars, None, names)

    @classmethod
    def const(cls, ring, nvars, c, names=None) -> MPoly:
        return cls(ring, nvars, {(0,) * nvars: c}, names)

    @classmethod
    def one(cls, ring, nvars, names=None) -> MPoly:
        return cls.const(ring, nvars, ring.one, names)

    @classmethod
    def var(cls, ring, nvars, i: int, names=None) -> MPoly:
        """The variable with 0-based index i."""
        e = [0] * nvars
        e[i] = 1
        return cls(ring, nvars, {tuple(e): ring.one}, names)

    @classmethod
    def monomial(cls, ring, exps: Sequence[int], c=None, names=None) -> MPoly:
        return cls(ring, len(exps), {tuple(exps): ring.one if c is None else c}, names)

    def _new(self, terms) -> MPoly:
        out = MPoly.__new__(MPoly)
        out.ring, out.nvars, out.terms, out.names = self.ring, self.nvars, terms, self.names
        return out

    def with_names(self, names: Sequence[str]) -> MPoly:
        return MPoly(self.ring, self.nvars, self.terms, names)

    # -- queries ---------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, self.ring.zero)

    def coefficient(self, exps: Sequence[int]):
        return self.terms.get(tuple(exps), self.ring.zero)

    @property
    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self.terms), default=-1)

    def weighted_degree(self, weights: Sequence[int]) -> int:
        return max((sum(a * w for a, w in zip(e, weights)) for e in self.terms), default=-1)

    def used_variables(self) -> set[int]:
        return {i for e in self.terms for i, a in enumerate(e) if a}

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.ring == other.ring and self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction, Fe)):
            return self == self._lift(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    # -- arithmetic ------------------------------------------------------------

    def _lift(self, other) -> MPoly:
        if isinstance(other, MPoly):
            if other.nvars != self.nvars or other.ring != self.ring:
                raise ValueError("polynomials over different rings")
            return other
        return MPoly.const(self.ring, self.nvars, self.ring.coerce(other), self.names)

    def __add__(self, other):
        other = self._lift(other)
        R = self.ring
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                s = R.add(v, c)
                if R.is_zero(s):
                    del out[e]
                else:
                    out[e] = s
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        R = self.ring
        return self._new({e: R.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def scale(self, c) -> MPoly:
        R = self.ring
        if R.is_zero(c):
            return self._new({})
        out = {}
        for e, v in self.terms.items():
            w = R.mul(c, v)
            if not R.is_zero(w):
                out[e] = w
        return self._new(out)

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            return self.scale(self.ring.coerce(other))
        other = self._lift(other)
        R = self.ring
        if len(self.terms) < len(other.terms):
            a, b = self.terms, other.terms
        else:
            a, b = other.terms, self.terms
        out: dict = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                v = R.mul(ca, cb)
                prev = out.get(e)
                out[e] = v if prev is None else R.add(prev, v)
        return self._new({e: c for e, c in out.items() if not R.is_zero(c)})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = MPoly.one(self.ring, self.nvars, self.names)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- structure ---------------------------------------------------------------

    def diff(self, i: int) -> MPoly:
        R = self.ring
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                v = R.mul(R.from_int(e[i]), c)
                if not R.is_zero(v):
                    out[tuple(f)] = v
        return self._new(out)

    def homogeneous_component(self, d: int) -> MPoly:
        return self._new({e: c for e, c in self.terms.items() if sum(e) == d})

    def evaluate(self, point: Sequence):
        """Value at a point given as raw ring values."""
        R = self.ring
        if len(point) != self.nvars:
            raise ValueError("point has the wrong length")
        cache: dict = {}
        total = R.zero
        for e, c in self.terms.items():
            v = c
            for i, a in enumerate(e):
                if a:
                    key = (i, a)
                    pw = cache.get(key)
                    if pw is None:
                        pw = R.pow(point[i], a)
                        cache[key] = pw
                    v = R.mul(v, pw)
            total = R.add(total, v)
        return total

    def compose(self, subs: Sequence[MPoly]) -> MPoly:
        """Substitute variable i by subs[i]; all subs share a ring and variable count."""
        if len(subs) < self.nvars:
            raise ValueError("not enough substitutions")
        if not subs:
            return self
        target = subs[0]
        powers: dict = {}

        def power(i, a):
            key = (i, a)
            got = powers.get(key)
            if got is None:
                got = subs[i] if a == 1 else power(i, a - 1) * subs[i]
                powers[key] = got
            return got

        total = MPoly.zero(self.ring, target.nvars, target.names)
        for e, c in self.terms.items():
            t = MPoly.const(self.ring, target.nvars, c, target.names)
            for i, a in enumerate(e):
                if a:
                    t = t * power(i, a)
            total = total + t
        return total

    def extend(self, nvars: int, names: Sequence[str] | None = None) -> MPoly:
        """Same polynomial viewed in more variables (new ones appended)."""
        if nvars < self.nvars:
            if any(any(e[nvars:]) for e in self.terms):
                raise ValueError("polynomial uses variables beyond the new count")
            terms = {e[:nvars]: c for e, c in self.terms.items()}
        else:
            pad = (0,) * (nvars - self.nvars)
            terms = {e + pad: c for e, c in self.terms.items()}
        if names is None:
            prefix = self.names[0].rstrip("0123456789") if self.names else "X"
            names = _default_names(nvars, prefix)
        return MPoly(self.ring, nvars, terms, names)

    def swap(self, i: int, j: int) -> MPoly:
        out = {}
        for e, c in self.terms.items():
            f = list(e)
            f[i], f[j] = f[j], f[i]
            out[tuple(f)] = c
        return self._new(out)

    def is_symmetric(self) -> bool:
        return all(self.swap(i, i + 1).terms == self.terms for i in range(self.nvars - 1))

    def map_coeffs(self, ring, fn) -> MPoly:
        return MPoly(ring, self.nvars, {e: fn(c) for e, c in self.terms.items()}, self.names)

    def sorted_terms(self):
        """Terms in graded lexicographic order, largest first."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def lex_leading(self):
        e = max(self.terms)
        return e, self.terms[e]

    # -- output ------------------------------------------------------------------

    def format(self) -> str:
        if not self.terms:
            return "0"
        out = ""
        for e, c in self.sorted_terms():
            s = self.ring.format(c)
            neg = s.startswith("-") and not any(ch in s[1:] for ch in "+-")
            if neg:
                s = s[1:]
            mono = "*".join(
                n if a == 1 else f"{n}^{a}" for n, a in zip(self.names, e) if a
            )
            if not mono:
                body = s
            elif s == "1":
                body = mono
            elif any(ch in s for ch in "+-*"):
                body = f"({s})*{mono}"
            else:
                body = f"{s}*{mono}"
            out += ("-" if neg else "+") + body
        return out[1:] if out.startswith("+") else out

    __repr__ = format

    def to_json(self) -> dict:
        """Term map keyed by comma-joined exponents, keys sorted."""
        items = sorted(self.terms.items())
        return {",".join(map(str, e)): _json_scalar(self.ring, c) for e, c in items}


def _json_scalar(ring, c):
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}"
    if ring is QQ:
        return int(c)
    return ring.format(c) if getattr(ring, "e", 1) > 1 else int(c)


class PolyRing:
    """MPolys over ``base`` in ``nvars`` variables, as a ring object."""

    is_field = False
    is_prime_field = False

    def __init__(self, base, nvars: int, names: Sequence[str] | None = None):
        self.base = base
        self.nvars = nvars
        self.names = tuple(names) if names is not None else _default_names(nvars)
        self.zero = MPoly.zero(base, nvars, self.names)
        self.one = MPoly.one(base, nvars, self.names)
        self.characteristic = getattr(base, "characteristic", 0)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def pow(self, a, n):
        return a**n

    def is_zero(self, a):
        return a.is_zero()

    def from_int(self, n):
        return MPoly.const(self.base, self.nvars, self.base.from_int(n), self.names)

    def coerce(self, value):
        if isinstance(value, MPoly):
            return value
        return MPoly.const(self.base, self.nvars, self.base.coerce(value), self.names)

    def format(self, a):
        return a.format()

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.base == other.base and self.nvars == other.nvars

    def __hash__(self):
        return hash(("PolyRing", self.nvars))

    def __repr__(self):
        return f"{self.base!r}[{','.join(self.names)}]"


# ---------------------------------------------------------------------------
# weights


@dataclass(frozen=True)
class WeightSpec:
    weights: tuple[int, ...]

    @classmethod
    def elementary(cls, m: int) -> WeightSpec:
        """wt(E_j) = j."""
        return cls(tuple(range(1, m + 1)))

    def weight(self, exps: Sequence[int]) -> int:
        return sum(a * w for a, w in zip(exps, self.weights))


def weight_component(g: MPoly, w: WeightSpec, mode: str = "highest"):
    """Highest-weight part of g, or all weighted-homogeneous parts as {weight: MPoly}."""
    if len(w.weights) < g.nvars:
        raise ValueError("weights missing for some variables")
    parts: dict[int, dict] = {}
    for e, c in g.terms.items():
        parts.setdefault(w.weight(e), {})[e] = c
    if mode == "decompose":
        return {k: g._new(v) for k, v in sorted(parts.items())}
    if mode != "highest":
        raise ValueError(f"unknown mode {mode!r}")
    if not parts:
        return g
    return g._new(parts[max(parts)])


# ---------------------------------------------------------------------------
# symmetric polynomials


def elementary(m: int, i: int, ring=QQ, names=None) -> MPoly:
    if i < 0 or i > m:
        return MPoly.zero(ring, m, names)
    terms = {}
    for S in combinations(range(m), i):
        e = [0] * m
        for s in S:
            e[s] = 1
        terms[tuple(e)] = ring.one
    return MPoly(ring, m, terms, names)


def complete_homogeneous(m: int, i: int, ring=QQ, names=None) -> MPoly:
    if i < 0:
        return MPoly.zero(ring, m, names)
    terms = {}
    for S in combinations_with_replacement(range(m), i):
        e = [0] * m
        for s in S:
            e[s] += 1
        terms[tuple(e)] = ring.one
    return MPoly(ring, m, terms, names)


def elementary_names(m: int) -> tuple[str, ...]:
    return _default_names(m, "E")


def from_elementary(G: MPoly, m: int) -> MPoly:
    """Substitute E_j := elementary(m, j) (E_j with j > m become 0)."""
    subs = [elementary(m, j, G.ring) for j in range(1, G.nvars + 1)]
    return G.compose(subs)


@lru_cache(maxsize=None)
def _elementary_product(m: int, a: tuple[int, ...]) -> tuple[tuple[tuple[int, ...], int], ...]:
    """E_1^{a_1}...E_m^{a_m} in m variables, as (partition, integer coefficient) pairs.

    Only nonincreasing exponent vectors are kept; they determine a symmetric
    polynomial completely.
    """
    if not any(a):
        return (((0,) * m, 1),)
    r = max(i for i, x in enumerate(a) if x) + 1
    prev = list(a)
    prev[r - 1] -= 1
    base = dict(_elementary_product(m, tuple(prev)))
    return tuple(sorted(_times_elementary(base, m, r).items(), reverse=True))


def _times_elementary(A: dict, m: int, r: int) -> dict:
    subsets = list(combinations(range(m), r))
    candidates = set()
    for alpha in A:
        for S in subsets:
            beta = list(alpha)
            for s in S:
                beta[s] += 1
            candidates.add(tuple(sorted(beta, reverse=True)))
    out = {}
    for beta in candidates:
        total = 0
        for S in subsets:
            gamma = list(beta)
            ok = True
            for s in S:
                gamma[s] -= 1
                if gamma[s] < 0:
                    ok = False
                    break
            if ok:
                total += A.get(tuple(sorted(gamma, reverse=True)), 0)
        if total:
            out[beta] = total
    return out


def to_elementary(f: MPoly, check: bool = True) -> MPoly:
    """Express a symmetric f as a polynomial in E_1..E_m (m = f.nvars)."""
    m = f.nvars
    R = f.ring
    if check and not f.is_symmetric():
        raise ValueError("polynomial is not symmetric")
    A = {e: c for e, c in f.terms.items() if all(e[i] >= e[i + 1] for i in range(m - 1))}
    G = {}
    while A:
        lam = max(A)
        c = A[lam]
        a = tuple(lam[i] - (lam[i + 1] if i + 1 < m else 0) for i in range(m))
        G[a] = c
        for beta, n in _elementary_product(m, a):
            v = R.sub(A.get(beta, R.zero), R.mul(c, R.from_int(n)))
            if R.is_zero(v):
                A.pop(beta, None)
            else:
                A[beta] = v
    return MPoly(R, m, G, elementary_names(m))


# ---------------------------------------------------------------------------
# determinant identities


def _check_cap(m: int, cap: int = SYMBOLIC_CAP):
    if m > cap:
        from .fields import CapExceeded

        raise CapExceeded(f"symbolic size {m} exceeds cap {cap}")


def _poly_det(rows: list[list[MPoly]], ring, nvars: int) -> MPoly:
    if not rows:
        return MPoly.one(ring, nvars)
    return det(rows, PolyRing(ring, nvars, rows[0][0].names))


def jacobian_pi(m: int, ring=QQ) -> list[list[MPoly]]:
    """Rows are Pi_1..Pi_m, columns d/dX_1..d/dX_m."""
    pis = [elementary(m, i, ring) for i in range(1, m + 1)]
    return [[p.diff(j) for j in range(m)] for p in pis]


def jacobian_pi_det(m: int, ring=QQ) -> MPoly:
    _check_cap(m)
    return _poly_det(jacobian_pi(m, ring), ring, m)


def vandermonde(m: int, upto: int | None = None, ring=QQ, ascending: bool = True) -> MPoly:
    """prod_{i<j<=upto} (X_j - X_i) if ascending else prod (X_i - X_j), in m variables."""
    n = m if upto is None else upto
    out = MPoly.one(ring, m)
    X = [MPoly.var(ring, m, i) for i in range(m)]
    for i in range(n):
        for j in range(i + 1, n):
            out = out * ((X[j] - X[i]) if ascending else (X[i] - X[j]))
    return out


def jacobian_pi_closed_form(m: int, ring=QQ) -> MPoly:
    sign = -1 if ((m - 1) * m // 2) % 2 else 1
    return vandermonde(m, ring=ring).scale(ring.from_int(sign))


def matrix_B(m: int, k: int, ring=QQ) -> list[list[MPoly]]:
    """B[r][c] = d Pi_{c+1} / d X_{r+1} for r, c < m - k."""
    if not 1 <= k < m:
        raise ValueError("need 1 <= k < m")
    n = m - k
    pis = [elementary(m, c, ring) for c in range(1, n + 1)]
    return [[pis[c].diff(r) for c in range(n)] for r in range(n)]


def matrix_Bj(m: int, k: int, j: int, ring=QQ) -> list[list[MPoly]]:
    """B with column j replaced by minus the gradient of Pi_{m-k+1} in X_1..X_{m-k}."""
    n = m - k
    if not 1 <= j <= n:
        raise ValueError("need 1 <= j <= m - k")
    B = matrix_B(m, k, ring)
    nxt = elementary(m, n + 1, ring)
    for r in range(n):
        B[r][j - 1] = -nxt.diff(r)
    return B


def matrix_B_det(m: int, k: int, ring=QQ) -> MPoly:
    _check_cap(m, 6)
    return _poly_det(matrix_B(m, k, ring), ring, m)


def matrix_Bj_det(m: int, k: int, j: int, ring=QQ) -> MPoly:
    _check_cap(m, 6)
    return _poly_det(matrix_Bj(m, k, j, ring), ring, m)


def matrix_B_sign(m: int, k: int) -> int:
    """The sign s with det(B) = s * prod_{i<j<=m-k} (X_i - X_j)."""
    d = matrix_B_det(m, k)
    v = vandermonde(m, m - k, ascending=False)
    if d == v:
        return 1
    if d == -v:
        return -1
    raise AssertionError("det(B) is not a signed Vandermonde product")


def matrix_Bj_closed_form(m: int, k: int, j: int, ring=QQ) -> MPoly:
    """(-1)^{m-k+1-j} h_{m-k+1-j}(X_{m-k+1}, ..., X_m) * prod_{i<l<=m-k} (X_i - X_l)."""
    n = m - k
    deg = n + 1 - j
    h = {}
    for S in combinations_with_replacement(range(n, m), deg):
        e = [0] * m
        for s in S:
            e[s] += 1
        h[tuple(e)] = ring.one
    sign = ring.from_int(-1 if deg % 2 else 1)
    return MPoly(ring, m, h) * vandermonde(m, n, ring, ascending=False).scale(sign)


def toeplitz_hessenberg(i: int, ring=QQ, nvars: int | None = None) -> list[list[MPoly]]:
    """The i x i matrix with entries a_{r-c+1}, a_0 = -1 and a_s = (-1)^{s-1} E_s."""
    n = i if nvars is None else nvars
    names = elementary_names(n)

    def a(s):
        if s < 0:
            return MPoly.zero(ring, n, names)
        if s == 0:
            return MPoly.const(ring, n, ring.from_int(-1), names)
        if s > n:
            return MPoly.zero(ring, n, names)
        e = MPoly.var(ring, n, s - 1, names)
        return e if s % 2 else -e

    return [[a(r - c + 1) for c in range(i)] for r in range(i)]


def toeplitz_hessenberg_det(i: int, ring=QQ, nvars: int | None = None) -> MPoly:
    _check_cap(i)
    n = i if nvars is None else nvars
    if i == 0:
        return MPoly.one(ring, n, elementary_names(n))
    return _poly_det(toeplitz_hessenberg(i, ring, nvars), ring, n)


# ---------------------------------------------------------------------------
# subdiscriminants


def generic_subdisc(m: int, k: int, ring=QQ) -> MPoly:
    """Sum over (m-k)-subsets I of prod_{i<j in I} (X_i - X_j)^2."""
    _check_cap(m, 6)
    if not 0 <= k <= m - 1:
        raise ValueError("need 0 <= k <= m - 1")
    X = [MPoly.var(ring, m, i) for i in range(m)]
    sq = {}
    for i in range(m):
        for j in range(i + 1, m):
            d = X[i] - X[j]
            sq[i, j] = d * d
    total = MPoly.zero(ring, m)
    for I in combinations(range(m), m - k):
        t = MPoly.one(ring, m)
        for a, b in combinations(I, 2):
            t = t * sq[a, b]
        total = total + t
    return total


_SUBDISC_E: dict = {}
_SUBDISC_LOCK = threading.Lock()


def generic_subdisc_elementary(m: int, k: int) -> MPoly:
    key = (m, k)
    with _SUBDISC_LOCK:
        got = _SUBDISC_E.get(key)
    if got is None:
        got = to_elementary(generic_subdisc(m, k), check=False)
        with _SUBDISC_LOCK:
            _SUBDISC_E[key] = got
    return got


@dataclass(frozen=True)
class LeadingCheck:
    m: int
    j: int
    k: int
    monomial: tuple[int, ...]
    coefficient: int
    expected_abs: int
    leading: tuple[int, ...]
    leading_coefficient: int

    @property
    def coefficient_ok(self) -> bool:
        return abs(self.coefficient) == self.expected_abs

    @property
    def is_leading(self) -> bool:
        return self.leading == self.monomial

    @property
    def passed(self) -> bool:
        return self.coefficient_ok and self.is_leading

    def describe(self) -> str:
        mono = "*".join(f"E{i + 1}^{a}" for i, a in enumerate(self.monomial) if a) or "1"
        lead = "*".join(f"E{i + 1}^{a}" for i, a in enumerate(self.leading) if a) or "1"
        return (
            f"m={self.m} j={self.j}: coeff of {mono} = {self.coefficient}, "
            f"expected |.| = {self.expected_abs}; leading monomial {lead}"
        )


def composite_key(exps: Sequence[int], m: int, k: int):
    """Order key for the appendix refinement: larger is more leading.

    First the weight of the last k variables (E_{m-j} weighs m-j), then the
    least total degree in those k variables, then for i = 1..k-1 the least
    degree in E_m..E_{m-i}.
    """
    last = range(m - k, m)
    wt = sum((i + 1) * exps[i] for i in last)
    deg = sum(exps[i] for i in last)
    refine = tuple(-sum(exps[m - 1 - l] for l in range(i + 1)) for i in range(1, k))
    return (wt, -deg) + refine


def appendix_leading_check(m: int, j: int, k: int | None = None) -> LeadingCheck:
    if not (m <= 5 and 0 <= j <= 2 and j < m - 1):
        raise ValueError("appendix check covers m <= 5, 0 <= j <= 2, j < m - 1")
    k = j + 1 if k is None else k
    G = generic_subdisc_elementary(m, j)
    target = [0] * m
    target[m - j - 1] = m - j - 1
    target = tuple(target)
    lead = max(G.terms, key=lambda e: composite_key(e, m, k))
    return LeadingCheck(
        m=m,
        j=j,
        k=k,
        monomial=target,
        coefficient=int(G.coefficient(target)),
        expected_abs=m * (m - j) ** (m - j - 1),
        leading=lead,
        leading_coefficient=int(G.terms[lead]),
    )


# ---------------------------------------------------------------------------
# partitions of the coordinate set


@dataclass(frozen=True)
class PartitionMap:
    """A set partition of {1..m} into ordered blocks."""

    m: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        seen = sorted(i for b in self.blocks for i in b)
        if seen != list(range(1, self.m + 1)) or any(not b for b in self.blocks):
            raise ValueError("blocks must be nonempty and partition {1..m}")

    @property
    def r(self) -> int:
        return len(self.blocks)

    def indicator(self, j: int) -> tuple[int, ...]:
        b = set(self.blocks[j])
        return tuple(1 if l in b else 0 for l in range(1, self.m + 1))


def partition_embed(pm: PartitionMap, x: Sequence):
    if len(x) != pm.r:
        raise ValueError(f"expected {pm.r} coordinates, got {len(x)}")
    out = [None] * pm.m
    for xj, block in zip(x, pm.blocks):
        for l in block:
            out[l - 1] = xj
    return out


def set_partitions(m: int, r: int | None = None) -> Iterable[PartitionMap]:
    """All set partitions of {1..m} (into exactly r blocks if given), blocks ordered by minimum."""

    def rec(i, blocks):
        if i > m:
            if r is None or len(blocks) == r:
                yield PartitionMap(m, tuple(tuple(b) for b in blocks))
            return
        if r is not None and len(blocks) + (m - i + 1) < r:
            return
        for b in blocks:
            b.append(i)
            yield from rec(i + 1, blocks)
            b.pop()
        if r is None or len(blocks) < r:
            blocks.append([i])
            yield from rec(i + 1, blocks)
            blocks.pop()

    yield from rec(1, [])


def power_sum(m: int, i: int, ring=QQ) -> MPoly:
    out = MPoly.zero(ring, m)
    for v in range(m):
        e = [0] * m
        e[v] = i
        out = out + MPoly.monomial(ring, e)
    return out


def cycle_types(n: int) -> dict[tuple[int, ...], int]:
    """Count permutations of n points by sorted cycle type (enumeration)."""
    out: dict = {}
    for perm in permutations(range(n)):
        seen = [False] * n
        lens = []
        for s in range(n):
            if not seen[s]:
                c, x = 0, s
                while not seen[x]:
                    seen[x] = True
                    x = perm[x]
                    c += 1
                lens.append(c)
        key = tuple(sorted(lens))
        out[key] = out.get(key, 0) + 1
    return out


def multinomial(parts: Sequence[int]) -> int:
    out = math.factorial(sum(parts))
    for p in parts:
        out //= math.factorial(p)
    return out
