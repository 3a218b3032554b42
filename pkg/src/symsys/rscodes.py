"""Standard Reed-Solomon codes over F_q^*: distances, deep holes and the tail system.

A word w of length n = |D| has a unique generator f_w of degree < n with
w = (f_w(x))_{x in D}.  For a tail polynomial
f = T^{k+d} + f_{d-1} T^{k+d-1} + ... + f_0 T^k the coefficient of T^k in
f mod prod (T - x_i) is the symmetric polynomial H_f(x_1..x_{k+1}); a zero
of H_f with distinct nonzero coordinates exhibits a codeword agreeing with
w in k+1 places.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

import numpy as np

from .fields import QQ, CapExceeded, FieldSpec, prime_power
from .multipoly import MPoly, elementary_names, multinomial
from .radical import RadicalValue
from .unipoly import UniPoly
from .vec import elementary_values, eval_mpoly, points_block, vec_field

DISTANCE_BUDGET = 10**7
SEARCH_BUDGET = 10**7


@dataclass(frozen=True)
class RSCode:
    field: FieldSpec
    k: int
    eval_set: tuple[int, ...] = ()

    def __post_init__(self):
        pts = tuple(self.eval_set) or tuple(range(1, self.field.q))
        if len(set(pts)) != len(pts):
            raise ValueError("evaluation points must be distinct")
        if not 0 < self.k < len(pts):
            raise ValueError("need 0 < k < n")
        object.__setattr__(self, "eval_set", pts)

    @property
    def n(self) -> int:
        return len(self.eval_set)

    @property
    def covering_radius(self) -> int:
        return self.n - self.k

    def is_standard(self) -> bool:
        return sorted(self.eval_set) == list(range(1, self.field.q))

    def word(self, f: UniPoly) -> Word:
        return Word(tuple(f.evaluate(x) for x in self.eval_set), f)

    def codewords(self, budget: int = DISTANCE_BUDGET) -> np.ndarray:
        """All q^k codewords as rows; row index = base-q number of (c_0..c_{k-1}) read high to low."""
        q, k, n = self.field.q, self.k, self.n
        if q**k * n > budget:
            raise CapExceeded(f"{q}^{k} codewords exceed the budget {budget}")
        V = vec_field(self.field)
        coeffs = points_block(q, k, 0, q**k)  # coeffs[i] is the coefficient of T^i
        out = np.zeros((q**k, n), dtype=np.int64)
        for col, x in enumerate(self.eval_set):
            acc = np.zeros(q**k, dtype=np.int64)
            for i in range(k - 1, -1, -1):  # Horner
                acc = V.add(V.mul(acc, V.const(x, q**k)), coeffs[i])
            out[:, col] = acc
        return out


@dataclass(frozen=True)
class Word:
    values: tuple[int, ...]
    generator: UniPoly | None = field(default=None, compare=False)


def distance(w: Word, code: RSCode, codewords: np.ndarray | None = None) -> int:
    """Hamming distance from w to the code, by maximizing agreements over every codeword."""
    if len(w.values) != code.n:
        raise ValueError("word length differs from the code length")
    C = codewords if codewords is not None else code.codewords()
    agree = (C == np.asarray(w.values, dtype=np.int64)).sum(axis=1)
    return code.n - int(agree.max())


def is_deep_hole(w: Word, code: RSCode, codewords: np.ndarray | None = None) -> bool:
    return distance(w, code, codewords) == code.covering_radius


# ---------------------------------------------------------------------------
# H_d and H_f


def _compositions(d: int):
    """Exponent vectors (i_1..i_d) with i_1 + 2 i_2 + ... + d i_d = d."""

    def rec(j, rem):
        if j == 0:
            if rem == 0:
                yield ()
            return
        for a in range(rem // j + 1):
            for rest in rec(j - 1, rem - a * j):
                yield rest + (a,)

    yield from rec(d, d)


def H_expr(d: int, ring=QQ) -> MPoly:
    """H_d in E_1..E_d: sum over compositions of (-1)^(i_2+i_4+...) * multinomial * E^i."""
    if d < 0:
        raise ValueError("need d >= 0")
    names = elementary_names(d)
    if d == 0:
        return MPoly.one(ring, 0, names)
    terms = {}
    for e in _compositions(d):
        sign = -1 if sum(e[1::2]) % 2 else 1
        terms[e] = ring.from_int(sign * multinomial(e))
    return MPoly(ring, d, terms, names)


@dataclass(frozen=True)
class TailPoly:
    """f = T^{k+d} + f_{d-1} T^{k+d-1} + ... + f_0 T^k over F."""

    field: FieldSpec
    k: int
    coeffs: tuple[int, ...]  # f_0..f_{d-1}

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if self.d < 1:
            raise ValueError("need d >= 1")
        if self.k < 1:
            raise ValueError("need k >= 1")

    @property
    def d(self) -> int:
        return len(self.coeffs)

    def in_regime(self) -> bool:
        """k + d < q - 1."""
        return self.k + self.d < self.field.q - 1

    def poly(self) -> UniPoly:
        F = self.field
        return UniPoly(F, [F.zero] * self.k + list(self.coeffs) + [F.one])


def H_f_expr(tail: TailPoly) -> MPoly:
    """H_d + f_{d-1} H_{d-1} + ... + f_1 H_1 + f_0, in E_1..E_d over F_q."""
    F = tail.field
    d = tail.d
    names = elementary_names(d)
    out = MPoly.zero(F, d, names)
    for i in range(d + 1):
        h = H_expr(i, QQ).map_coeffs(F, lambda c: F.coerce(c)).extend(d, names)
        c = F.one if i == d else tail.coeffs[i]
        out = out + h.scale(c)
    return out


def H_f_eval(tail: TailPoly, x: Sequence[int], method: str = "formula") -> int:
    """H_f at x in F_q^{k+1}, from the E-expression ('formula') or from f mod prod (T - x_i) ('remainder')."""
    F = tail.field
    if len(x) != tail.k + 1:
        raise ValueError("x must have k+1 coordinates")
    if method == "formula":
        pis = UniPoly.from_roots(F, x)
        m = len(x)
        # coefficient of T^{m-i} is (-1)^i Pi_i
        vals = []
        for i in range(1, tail.d + 1):
            c = pis.coeff(m - i) if i <= m else F.zero
            vals.append(F.neg(c) if i % 2 else c)
        return H_f_expr(tail).evaluate(vals)
    if method == "remainder":
        Q = UniPoly.from_roots(F, x)
        return (tail.poly() % Q).coeff(tail.k)
    raise ValueError("method must be 'formula' or 'remainder'")


def colex_subsets(elements: Sequence[int], r: int):
    """r-subsets in colexicographic order: compare largest elements first."""
    return sorted(combinations(sorted(elements), r), key=lambda S: S[::-1])


def good_zero_search(tail: TailPoly, code: RSCode | None = None, budget: int = SEARCH_BUDGET):
    """First (k+1)-subset of the evaluation set (colex order) on which H_f vanishes, or None."""
    F = tail.field
    if code is None:
        code = RSCode(F, tail.k)
    pts = [x for x in code.eval_set if x != 0]
    r = tail.k + 1
    if math.comb(len(pts), r) > budget:
        raise CapExceeded("too many subsets to scan")
    subsets = colex_subsets(pts, r)
    if not subsets:
        return None
    arr = np.array(subsets, dtype=np.int64)
    V = vec_field(F)
    cols = [arr[:, i] for i in range(r)]
    pis = elementary_values(cols, min(tail.d, r), V)
    while len(pis) < tail.d:
        pis.append(np.zeros(len(arr), dtype=np.int64))
    vals = eval_mpoly(H_f_expr(tail), pis, V)
    hits = np.nonzero(vals == 0)[0]
    if len(hits) == 0:
        return None
    return tuple(int(v) for v in arr[hits[0]])


def word_of(tail: TailPoly, code: RSCode | None = None) -> Word:
    return (code or RSCode(tail.field, tail.k)).word(tail.poly())


# ---------------------------------------------------------------------------
# bounds and criteria


def _c(q: int) -> Fraction:
    return 1 + Fraction(1, q)


def _face_bound(q: int, k: int, d: int) -> RadicalValue:
    """q^{k-1} + q^{(k+d-2)/2}(1+q^{-1})((d-1)^{k-d+1} + 6(d+2)^{k+1} q^{-1/2})."""
    hp = RadicalValue.half_power
    inner = RadicalValue(q, (d - 1) ** (k - d + 1)) + hp(q, -1) * (6 * (d + 2) ** (k + 1))
    return hp(q, 2 * (k - 1)) + hp(q, k + d - 2) * _c(q) * inner


def count_error_bound(q: int, k: int, d: int) -> RadicalValue:
    """q^{(k+d-1)/2}(1+q^{-1})((d-1)^{k-d+2} + 6(d+2)^{k+2} q^{-1/2})."""
    hp = RadicalValue.half_power
    inner = RadicalValue(q, (d - 1) ** (k - d + 2)) + hp(q, -1) * (6 * (d + 2) ** (k + 2))
    return hp(q, k + d - 1) * _c(q) * inner


def N1_bound(q: int, k: int, d: int) -> RadicalValue:
    return _face_bound(q, k, d) * (k + 1)


def N2_bound(q: int, k: int, d: int) -> RadicalValue:
    return _face_bound(q, k, d) * ((k + 1) * k // 2)


def N_lower(q: int, k: int, d: int) -> RadicalValue:
    """The displayed lower bound for points with nonzero, pairwise distinct coordinates."""
    hp = RadicalValue.half_power
    c = _c(q)
    t = Fraction((k + 1) * (k + 2), 2)
    a = hp(q, 2 * k) - hp(q, 2 * (k - 1)) * t
    b = hp(q, k + d - 1) * (c * (d - 1) ** (k - d + 1)) * (RadicalValue(q, d - 1) + hp(q, -1) * t)
    e = hp(q, k + d - 2) * (6 * c * (d + 2) ** (k + 1)) * (RadicalValue(q, d + 2) + hp(q, -1) * t)
    return a - b - e


def _iroot(n: int, b: int) -> int:
    """floor(n^(1/b)) for n >= 0."""
    if n < 2:
        return n
    x = int(round(n ** (1.0 / b)))
    while x**b > n:
        x -= 1
    while (x + 1) ** b <= n:
        x += 1
    return x


def q_exceeds_power(const: int, d: int, eps: Fraction) -> int:
    """Smallest integer q with q > const * d^{2+eps}."""
    eps = Fraction(eps)
    a, b = eps.numerator, eps.denominator
    return _iroot(const**b * d ** (2 * b + a), b) + 1


@dataclass(frozen=True)
class Criterion:
    name: str
    k_bound: Fraction  # the displayed k-threshold value
    k_strict: bool  # k > bound rather than k >= bound
    q_const: int  # q > max{(k+1)^2, q_const * d^{2+eps}}
    extra_k_min: int = 0  # further hypotheses on k, e.g. k > 3d

    @property
    def k_threshold(self) -> int:
        """The k-threshold as an exact integer (ceiling of the displayed value)."""
        return math.ceil(self.k_bound)

    @property
    def k_min(self) -> int:
        if self.k_strict:
            base = math.floor(self.k_bound) + 1
        else:
            base = math.ceil(self.k_bound)
        return max(base, self.extra_k_min)

    def q_min(self, k: int, d: int, eps: Fraction) -> int:
        return max((k + 1) ** 2 + 1, q_exceeds_power(self.q_const, d, eps))

    def holds(self, q: int, k: int, d: int, eps: Fraction) -> bool:
        return k >= self.k_min and q >= self.q_min(k, d, eps)


def criteria(d: int, eps) -> dict[str, Criterion]:
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("need eps > 0")
    r = 2 / eps + 1
    return {
        "sharpened": Criterion("sharpened", (d - 2) * r, False, 12, 3 * d + 1),
        "constant-14": Criterion("constant-14", d * r, False, 14),
        "constant-1": Criterion("constant-1", r * d + 8 / eps + 2, True, 1),
    }


@dataclass(frozen=True)
class DeepHoleBounds:
    q: int
    k: int
    d: int
    eps: Fraction
    count_error: RadicalValue
    N1_bound: RadicalValue
    N2_bound: RadicalValue
    N_lower: RadicalValue
    N_lower_split: RadicalValue
    verdicts: dict
    domain: dict

    @property
    def in_domain(self) -> bool:
        return all(self.domain.values())

    @property
    def N_positive(self) -> bool:
        return self.N_lower > 0


def domain_flags(q: int, k: int, d: int) -> dict[str, bool]:
    try:
        p, _ = prime_power(q)
    except ValueError:
        p = None
    return {
        "q-prime-power": p is not None,
        "d>=3": d >= 3,
        "d<k": d < k,
        "q-1>k+d": q - 1 > k + d,
        "char-ok": p is not None and all(f % p for f in range(max(d - 1, 1), k + 2)),
    }


def bounds_report(q: int, k: int, d: int, eps=1) -> DeepHoleBounds:
    eps = Fraction(eps)
    E = count_error_bound(q, k, d)
    n1, n2 = N1_bound(q, k, d), N2_bound(q, k, d)
    low = N_lower(q, k, d)
    split = RadicalValue.half_power(q, 2 * k) - E - n1 - n2
    dom = domain_flags(q, k, d)
    verdicts = {}
    for name, crit in criteria(d, eps).items():
        ok = dom["q-prime-power"] and dom["d>=3"] and dom["q-1>k+d"] and dom["char-ok"]
        verdicts[name] = {
            "k_threshold": crit.k_threshold,
            "k_min": crit.k_min,
            "q_min": crit.q_min(k, d, eps),
            "holds": crit.holds(q, k, d, eps) if ok else None,
        }
    return DeepHoleBounds(q, k, d, eps, E, n1, n2, low, split, verdicts, dom)
