"""Factorization patterns: type-lambda arrays over normal bases, censuses and bounds.

Conventions.  A monic f = T^n + a_{n-1} T^{n-1} + ... + a_0 has ascending
coefficients a_j.  Family constraints are polynomials in Z_1..Z_{n-1} with
Z_l standing for a_{n-l}, the coefficient of T^{n-l}; for f = prod (T - Y_l)
this is (-1)^l Pi_l(Y).  A prescribed-coefficient family with index set I
fixes Z_i for i in I.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterator, Sequence

from .fields import CapExceeded, FieldSpec, NormalFrame, iter_codes, normal_element
from .linalg import row_echelon
from .multipoly import MPoly, cycle_types
from .systems import SymmetricSystem, char_condition, check_assumption
from .unipoly import Lambda, UniPoly, all_monic, partitions, pattern_and_squarefree

DEFAULT_BUDGET = 10**7


def w_lambda(lam: Lambda) -> int:
    return lam.w()


def T_lambda(lam: Lambda) -> Fraction:
    return lam.T()


def perm_pattern_count(n: int, lam: Lambda) -> int:
    """Permutations of n points with cycle pattern lam, by enumeration."""
    if n > 8:
        raise CapExceeded("permutation enumeration is limited to n <= 8")
    if lam.n != n:
        raise ValueError("pattern has the wrong degree")
    return cycle_types(n).get(tuple(sorted(lam.degrees())), 0)


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Block:
    i: int
    j: int
    offset: int


class PatternFrame:
    """Blocks, offsets and normal frames for a pattern lam over F_q."""

    def __init__(self, field: FieldSpec, lam: Lambda):
        self.field = field
        self.lam = lam
        self.n = lam.n
        blocks = []
        for i in range(1, self.n + 1):
            for j in range(1, lam[i] + 1):
                off = sum(k * lam[k] for k in range(1, i)) + (j - 1) * i
                blocks.append(Block(i, j, off))
        self.blocks = tuple(blocks)
        self.frames: dict[int, NormalFrame] = {
            i: normal_element(field, i) for i in range(1, self.n + 1) if lam[i]
        }
        self._block_poly: dict = {}

    def offset(self, i: int, j: int) -> int:
        for b in self.blocks:
            if (b.i, b.j) == (i, j):
                return b.offset
        raise KeyError((i, j))

    def sub_arrays(self, x: Sequence[int]):
        for b in self.blocks:
            yield b, tuple(x[b.offset:b.offset + b.i])

    def linear_forms(self, x: Sequence[int]) -> list[int]:
        """Y_1..Y_n; each block's values are codes of its own F_{q^i}."""
        out = []
        for b, sub in self.sub_arrays(x):
            out += self.frames[b.i].linear_forms(sub)
        return out

    def block_poly(self, i: int, sub: tuple[int, ...]) -> UniPoly:
        """prod_g (T - Y_g) over one block, pulled back to F_q[T]."""
        key = (i, sub)
        got = self._block_poly.get(key)
        if got is not None:
            return got
        fr = self.frames[i]
        ext = fr.ext
        ys = fr.linear_forms(sub)
        poly = UniPoly.from_roots(ext, ys)
        back = self.field.restriction(ext)
        try:
            coeffs = [back[c] for c in poly.coeffs]
        except KeyError as exc:
            raise AssertionError("block polynomial has coefficients outside F_q") from exc
        got = UniPoly(self.field, coeffs)
        self._block_poly[key] = got
        return got


def is_full_cycle(sub: Sequence[int]) -> bool:
    """No proper cyclic shift fixes the tuple."""
    i = len(sub)
    sub = tuple(sub)
    return all(sub[r:] + sub[:r] != sub for r in range(1, i) if i % r == 0)


def is_type_lambda(x: Sequence[int], frame: PatternFrame) -> bool:
    if len(x) != frame.n:
        raise ValueError("x has the wrong length")
    return all(is_full_cycle(sub) for _, sub in frame.sub_arrays(x))


def build_G(x: Sequence[int], frame: PatternFrame) -> UniPoly:
    """G(x, T) = prod over the n linear forms of (T - Y_l(x)), as an F_q polynomial."""
    if len(x) != frame.n:
        raise ValueError("x has the wrong length")
    F = frame.field
    out = UniPoly(F, [F.one])
    for b, sub in frame.sub_arrays(x):
        out = out * frame.block_poly(b.i, sub)
    return out


# ---------------------------------------------------------------------------
# families


def coefficient_names(n: int) -> tuple[str, ...]:
    return tuple(f"Z{l}" for l in range(1, n))


@dataclass(frozen=True)
class PolyFamily:
    """Monic degree-n polynomials whose coefficients satisfy G_1 = ... = G_m = 0."""

    n: int
    field: FieldSpec
    constraints: tuple[MPoly, ...] = ()
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "constraints", tuple(self.constraints))
        for g in self.constraints:
            if g.nvars != self.n - 1:
                raise ValueError(f"constraints must be polynomials in Z1..Z{self.n - 1}")
        if self.m >= self.n:
            raise ValueError("need fewer constraints than the degree")

    @property
    def m(self) -> int:
        return len(self.constraints)

    @classmethod
    def prescribed(cls, n: int, field: FieldSpec, values: dict[int, int]) -> PolyFamily:
        """Fix Z_i (the coefficient of T^{n-i}) to values[i] (field codes)."""
        names = coefficient_names(n)
        gs = []
        for i in sorted(values):
            if not 1 <= i <= n - 1:
                raise ValueError(f"index {i} out of range for degree {n}")
            z = MPoly.var(field, n - 1, i - 1, names)
            gs.append(z - MPoly.const(field, n - 1, values[i], names))
        label = ",".join(f"Z{i}={field.format(values[i])}" for i in sorted(values))
        return cls(n, field, tuple(gs), label)

    @classmethod
    def from_ascending(cls, n: int, field: FieldSpec, values: dict[int, int]) -> PolyFamily:
        """Fix a_j (coefficient of T^j) to values[j]."""
        return cls.prescribed(n, field, {n - j: v for j, v in values.items()})

    def weights(self) -> tuple[int, ...]:
        """wt(Z_l) = l."""
        return tuple(range(1, self.n))

    def degree_data(self) -> tuple[int, int]:
        """(delta, D) from the weighted degrees of the constraints."""
        ws = [g.weighted_degree(self.weights()) for g in self.constraints]
        return math.prod(ws), sum(w - 1 for w in ws)

    def contains(self, f: UniPoly) -> bool:
        point = [f.coeff(self.n - l) for l in range(1, self.n)]
        return all(g.evaluate(point) == 0 for g in self.constraints)

    def as_system(self) -> SymmetricSystem:
        """The constraints rewritten in E-variables via Z_l = (-1)^l E_l, with k = 3."""
        F = self.field
        n = self.n
        nv = n - 3
        if any(i >= nv for g in self.constraints for i in g.used_variables()):
            raise ValueError("constraints use Z_{n-2} or later")
        names = tuple(f"E{i}" for i in range(1, nv + 1))
        subs = []
        for l in range(1, n):
            if l <= nv:
                e = MPoly.var(F, nv, l - 1, names)
                subs.append(-e if l % 2 else e)
            else:
                subs.append(MPoly.zero(F, nv, names))
        G = tuple(g.compose(subs).with_names(names) for g in self.constraints)
        return SymmetricSystem(n, 3, G)

    def is_linear(self) -> bool:
        return all(g.total_degree <= 1 for g in self.constraints)

    def size_hint(self) -> int:
        q = self.field.q
        if self.is_linear():
            return q ** (self.n - self._linear_rank())
        return q**self.n

    def _linear_rank(self) -> int:
        mat, _ = self._linear_system()
        return len(row_echelon(mat, self.field)[1]) if mat else 0

    def _linear_system(self):
        F = self.field
        nv = self.n - 1
        mat, rhs = [], []
        for g in self.constraints:
            row = []
            for i in range(nv):
                e = [0] * nv
                e[i] = 1
                row.append(g.coefficient(e))
            mat.append(row)
            rhs.append(F.neg(g.constant_term()))
        return mat, rhs

    def members(self, budget: int = DEFAULT_BUDGET) -> Iterator[UniPoly]:
        """All members, in the order of their coefficient vectors."""
        F = self.field
        n = self.n
        if self.size_hint() > budget:
            raise CapExceeded(f"family of size {self.size_hint()} exceeds budget {budget}")
        if not self.constraints:
            yield from all_monic(F, n)
            return
        if not self.is_linear():
            for f in all_monic(F, n):
                if self.contains(f):
                    yield f
            return
        mat, rhs = self._linear_system()
        nv = n - 1
        aug = [row + [b] for row, b in zip(mat, rhs)]
        red, piv = row_echelon(aug, F)
        if nv in piv:
            return
        free = [c for c in range(nv) if c not in piv]
        codes = iter_codes(F)
        for a0 in codes:
            for vals in product(codes, repeat=len(free)):
                z = [F.zero] * nv
                for c, v in zip(free, vals):
                    z[c] = v
                for row, c in zip(red, piv):
                    acc = row[nv]
                    for fc, v in zip(free, vals):
                        if v:
                            acc = F.sub(acc, F.mul(row[fc], v))
                    z[c] = acc
                coeffs = [a0] + [z[n - j - 1] for j in range(1, n)] + [F.one]
                yield UniPoly(F, coeffs)


@dataclass
class PatternCensus:
    n: int
    q: int
    counts: dict[Lambda, tuple[int, int]] = field(default_factory=dict)
    family_size: int = 0

    def total(self, lam: Lambda) -> int:
        return self.counts.get(lam, (0, 0))[0]

    def squarefree(self, lam: Lambda) -> int:
        return self.counts.get(lam, (0, 0))[1]

    def rows(self):
        """(lambda, total, squarefree) for every pattern of degree n, in canonical order."""
        return [(lam, self.total(lam), self.squarefree(lam)) for lam in partitions(self.n)]


def census(family: PolyFamily, budget: int = DEFAULT_BUDGET) -> PatternCensus:
    tallies: dict[Lambda, list[int]] = {}
    size = 0
    for f in family.members(budget):
        lam, sqf = pattern_and_squarefree(f)
        t = tallies.setdefault(lam, [0, 0])
        t[0] += 1
        t[1] += int(sqf)
        size += 1
    counts = {lam: tuple(v) for lam, v in tallies.items()}
    return PatternCensus(family.n, family.field.q, counts, size)


# ---------------------------------------------------------------------------
# correspondence between squarefree members and type-lambda points


@dataclass(frozen=True)
class CorrespondenceReport:
    lam: Lambda
    w: int
    squarefree: int
    points: int

    @property
    def passed(self) -> bool:
        return self.w * self.squarefree == self.points

    def describe(self) -> str:
        return (
            f"lambda={self.lam}: w*|A_sq| = {self.w}*{self.squarefree} = "
            f"{self.w * self.squarefree}, type-lambda points off the diagonals = {self.points}"
        )


def type_lambda_points(family: PolyFamily, lam: Lambda, budget: int = DEFAULT_BUDGET) -> int:
    """Count x in F_q^n of type lam with G_j(coefficients of G(x,T)) = 0 and
    Y-values of different same-degree blocks pairwise distinct."""
    F = family.field
    q = F.q
    if q**family.n > budget:
        raise CapExceeded(f"{q}^{family.n} points exceed the budget {budget}")
    frame = PatternFrame(F, lam)
    # per block degree, the full-cycle sub-arrays and their block polynomials
    choices = {}
    for i in frame.frames:
        subs = [s for s in product(iter_codes(F), repeat=i) if is_full_cycle(s)]
        choices[i] = [(s, frame.block_poly(i, s)) for s in subs]
    count = 0
    per_block = [choices[b.i] for b in frame.blocks]
    for combo in product(*per_block):
        polys = [p for _, p in combo]
        seen = set()
        clash = False
        for p in polys:
            if p.coeffs in seen:
                clash = True
                break
            seen.add(p.coeffs)
        if clash:
            continue
        g = UniPoly(F, [F.one])
        for p in polys:
            g = g * p
        if family.contains(g):
            count += 1
    return count


def correspondence_check(
    family: PolyFamily, lam: Lambda, census_result: PatternCensus | None = None
) -> CorrespondenceReport:
    if census_result is None:
        census_result = census(family)
    pts = type_lambda_points(family, lam)
    return CorrespondenceReport(lam, lam.w(), census_result.squarefree(lam), pts)


# ---------------------------------------------------------------------------
# bounds


def prescribed_degree_data(I: Sequence[int]) -> tuple[int, int]:
    """(delta_I, D_I) = (prod i_j, sum (i_j - 1))."""
    return math.prod(I), sum(i - 1 for i in I)


def bound_patterns(n: int, m: int, delta: int, D: int, q: int, lam: Lambda) -> tuple[Fraction, Fraction]:
    """(squarefree bound, total bound) for | |A_lam| - T(lam) q^{n-m} |."""
    if not m < n:
        raise ValueError("need m < n")
    scale = Fraction(q) ** (n - m - 1) * lam.T()
    core = 17 * D**3 * delta**2
    return scale * (core + n**2 * delta), scale * (core + 2 * n**2 * delta)


@dataclass(frozen=True)
class PatternBoundRow:
    lam: Lambda
    total: int
    squarefree: int
    main_term: Fraction
    sq_bound: Fraction
    total_bound: Fraction

    @property
    def total_ok(self) -> bool:
        return abs(self.total - self.main_term) <= self.total_bound

    @property
    def squarefree_ok(self) -> bool:
        return abs(self.squarefree - self.main_term) <= self.sq_bound

    @property
    def vacuous(self) -> bool:
        return self.total_bound >= self.main_term


@dataclass(frozen=True)
class FamilyHypotheses:
    char_ok: bool
    no_late_variables: bool
    A1: str
    A2: str
    q_gt_n: bool

    @property
    def all_hold(self) -> bool:
        return (
            self.char_ok and self.no_late_variables and self.q_gt_n
            and self.A1.startswith("pass") and self.A2.startswith("pass")
        )


def family_hypotheses(family: PolyFamily) -> FamilyHypotheses:
    n = family.n
    F = family.field
    late = {n - 3, n - 2}  # 0-based indices of Z_{n-2}, Z_{n-1}
    no_late = not any(i in late for g in family.constraints for i in g.used_variables())
    if family.constraints and no_late:
        sys = family.as_system()
        a1 = check_assumption(sys, "A1", F).verdict
        a2 = check_assumption(sys, "A2", F).verdict
    elif not family.constraints:
        a1 = a2 = "pass-exact"
    else:
        a1 = a2 = "not-checked"
    return FamilyHypotheses(char_condition(n, 3, F.p, "thm1"), no_late, a1, a2, F.q > n)


def pattern_bound_rows(family: PolyFamily, result: PatternCensus) -> list[PatternBoundRow]:
    delta, D = family.degree_data()
    n, m, q = family.n, family.m, family.field.q
    rows = []
    for lam, total, sq in result.rows():
        sqb, totb = bound_patterns(n, m, delta, D, q, lam)
        main = lam.T() * Fraction(q) ** (n - m)
        rows.append(PatternBoundRow(lam, total, sq, main, sqb, totb))
    return rows
