"""Exhaustive point counting over F_q and the closed-form estimates it is checked against."""

from __future__ import annotations

import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Sequence

import numpy as np

from .fields import CapExceeded, FieldSpec
from .multipoly import MPoly
from .radical import RadicalValue, within
from .systems import SymmetricSystem, system_evaluator
from .vec import eval_mpoly, points_block, vec_field

DEFAULT_BUDGET = 10**8
_CHUNK = 1 << 17


@dataclass(frozen=True)
class Predicate:
    """Coordinate condition applied on top of F_1 = ... = F_s = 0.

    kind is one of all, distinct, slice, nonzero, distinct-nonzero.  Pairs
    and slice indices are 1-based; ``pairs=None`` means all pairs.
    """

    kind: str = "all"
    pairs: tuple[tuple[int, int], ...] | None = None
    i: int = 0
    j: int = 0

    def __post_init__(self):
        if self.kind not in ("all", "distinct", "slice", "nonzero", "distinct-nonzero"):
            raise ValueError(f"unknown predicate {self.kind!r}")
        if self.kind == "slice" and not (self.i and self.j and self.i != self.j):
            raise ValueError("slice needs two different indices")

    @classmethod
    def parse(cls, text: str) -> Predicate:
        text = text.strip()
        if text.startswith("slice"):
            nums = [int(t) for t in text[5:].strip("() ").replace(",", " ").split()]
            if len(nums) != 2:
                raise ValueError("slice needs two indices, e.g. slice(1,2)")
            return cls("slice", i=nums[0], j=nums[1])
        return cls(text)

    def resolved_pairs(self, m: int):
        if self.pairs is not None:
            return [tuple(p) for p in self.pairs]
        return list(combinations(range(1, m + 1), 2))

    def mask(self, cols, m: int):
        n = len(cols[0])
        out = np.ones(n, dtype=bool)
        if self.kind in ("distinct", "distinct-nonzero"):
            for a, b in self.resolved_pairs(m):
                out &= cols[a - 1] != cols[b - 1]
        if self.kind in ("nonzero", "distinct-nonzero"):
            for c in cols:
                out &= c != 0
        if self.kind == "slice":
            out &= cols[self.i - 1] == cols[self.j - 1]
        return out

    def describe(self) -> str:
        if self.kind == "slice":
            return f"slice({self.i},{self.j})"
        if self.pairs is not None and self.kind.startswith("distinct"):
            return f"{self.kind}{list(self.pairs)}"
        return self.kind


@dataclass(frozen=True)
class CountReport:
    q: int
    m: int
    s: int
    k: int | None
    exact_count: int
    main_term: int
    predicate: str
    shards: int
    wall_time: float = field(compare=False)
    bound: RadicalValue | None = None
    bound_case: str | None = None
    upper_only: bool = False

    @property
    def deviation(self) -> int:
        return abs(self.exact_count - self.main_term)

    @property
    def satisfied(self) -> bool | None:
        if self.bound is None:
            return None
        if self.upper_only:
            return self.bound >= self.exact_count
        return within(self.exact_count, self.main_term, self.bound)

    @property
    def vacuous(self) -> bool | None:
        """Whether the error bound is at least the main term at this q."""
        if self.bound is None:
            return None
        return self.bound >= self.main_term

    def with_bound(self, bound: RadicalValue, case: str, upper_only: bool = False) -> CountReport:
        return CountReport(
            self.q, self.m, self.s, self.k, self.exact_count, self.main_term, self.predicate,
            self.shards, self.wall_time, bound, case, upper_only,
        )


def _as_evaluator(F, V) -> Callable:
    if isinstance(F, SymmetricSystem):
        return system_evaluator(F)
    items = list(F)
    if all(isinstance(f, MPoly) for f in items):
        return lambda cols, V: [eval_mpoly(f, cols, V) for f in items]
    return lambda cols, V: [f(cols, V) for f in items]


def count_points(
    F,
    field: FieldSpec,
    predicate: Predicate | str = "all",
    *,
    m: int | None = None,
    shards: int = 1,
    budget: int = DEFAULT_BUDGET,
    workers: int | None = None,
) -> CountReport:
    """Count x in F_q^m with every F_i(x) = 0 and the predicate true.

    F is a SymmetricSystem, a list of MPolys in X_1..X_m, or a list of
    vectorized evaluators ``f(cols, V) -> array``.  Points are enumerated in
    lexicographic order; shard i gets the i-th contiguous block of that order.
    """
    if isinstance(predicate, str):
        predicate = Predicate.parse(predicate)
    if isinstance(F, SymmetricSystem):
        m, s, k = F.m, F.s, F.k
    else:
        F = list(F)
        s, k = len(F), None
        if m is None:
            m = F[0].nvars
    q = field.q
    total = q**m
    if total > budget:
        raise CapExceeded(f"{q}^{m} points exceed the budget {budget}")
    if shards < 1:
        raise ValueError("shards must be positive")
    V = vec_field(field)
    ev = _as_evaluator(F, V)
    bounds = [total * i // shards for i in range(shards + 1)]

    def run(i):
        lo, hi = bounds[i], bounds[i + 1]
        c = 0
        for start in range(lo, hi, _CHUNK):
            stop = min(hi, start + _CHUNK)
            cols = points_block(q, m, start, stop)
            mask = predicate.mask(cols, m)
            for val in ev(cols, V):
                mask &= val == 0
            c += int(np.count_nonzero(mask))
        return c

    t0 = time.perf_counter()
    nworkers = workers if workers is not None else min(shards, os.cpu_count() or 1)
    if nworkers > 1 and shards > 1:
        with ThreadPoolExecutor(max_workers=nworkers) as pool:
            counts = list(pool.map(run, range(shards)))
    else:
        counts = [run(i) for i in range(shards)]
    elapsed = time.perf_counter() - t0
    main = q ** (m - s) if predicate.kind != "slice" else 0
    return CountReport(q, m, s, k, sum(counts), main, predicate.describe(), shards, elapsed)


# ---------------------------------------------------------------------------
# bounds


@dataclass(frozen=True)
class BoundParams:
    m: int
    s: int
    k: int
    q: int
    delta: int = 1
    D: int = 0
    d: int = 1

    @classmethod
    def from_system(cls, sys: SymmetricSystem, q: int) -> BoundParams:
        dd = sys.degree_data()
        return cls(sys.m, sys.s, sys.k, q, dd.delta, dd.D, dd.d)


def _qpow(q: int, half: int) -> RadicalValue:
    return RadicalValue.half_power(q, half)


def _one_plus_inv(q: int) -> Fraction:
    return 1 + Fraction(1, q)


def bound_thm_main(params: BoundParams, case: str) -> RadicalValue:
    """Error bound for | |V(F_q)| - q^{m-s} | in the k=2, k=3 or general case."""
    m, s, k, q = params.m, params.s, params.k, params.q
    delta, D, d = params.delta, params.D, params.d
    if s < 1:
        raise ValueError("need s >= 1")
    c = _one_plus_inv(q)
    if case == "k2":
        if k < 2:
            raise ValueError("case k2 needs k >= 2")
        inner = RadicalValue(q, delta * (D - 2) + 2) + _qpow(q, -1) * (14 * D**2 * delta**2)
        return _qpow(q, 2 * (m - s) - 1) * c * inner
    if case == "k3":
        if k < 3:
            raise ValueError("case k3 needs k >= 3")
        return _qpow(q, 2 * (m - s - 1)) * (c * 14 * D**3 * delta**2)
    if case == "general":
        if not 2 <= k < m - s:
            raise ValueError("general case needs 2 <= k < m - s")
        inner = RadicalValue(q, math.comb(m + 1, s + 1) * (d + 1) ** m) + _qpow(q, -1) * (
            9 * 2**s * (s * d + 3) ** (m + 1)
        )
        return _qpow(q, 2 * (m - s) - (k - 1)) * c * inner
    raise ValueError(f"unknown case {case!r}")


def bound_hypersurface(params: BoundParams, case: str) -> RadicalValue:
    """Error bound for | |V_F(F_q)| - q^{m-1} | for one equation F of degree d.

    For d = 1 the bound is 0: V_F is then a hyperplane with exactly q^{m-1} points.
    """
    m, k, q, d = params.m, params.k, params.q, params.d
    if params.s != 1:
        raise ValueError("hypersurface bounds need s = 1")
    if case not in ("k2", "k3", "general"):
        raise ValueError(f"unknown case {case!r}")
    if case == "k2" and k < 2 or case == "k3" and k < 3:
        raise ValueError(f"case {case} needs larger k")
    if case == "general" and not 2 <= k < m - 1:
        raise ValueError("general case needs 2 <= k < m - 1")
    if d == 1:
        return RadicalValue(q, 0)
    c = _one_plus_inv(q)
    if case == "k2":
        inner = RadicalValue(q, (d - 1) * (d - 2)) + _qpow(q, -1) * (14 * (d - 1) ** 2 * d**2)
        return _qpow(q, 2 * m - 3) * c * inner
    if case == "k3":
        return _qpow(q, 2 * m - 4) * (c * 14 * (d - 1) ** 3 * d**2)
    inner = RadicalValue(q, (d - 1) ** k) + _qpow(q, -1) * (6 * (d + 2) ** (m + 1))
    return _qpow(q, 2 * m - (k + 1)) * c * inner


def bound_slice(params: BoundParams) -> int:
    """Upper bound delta * q^{m-s-1} for the points on a hyperplane X_i = X_j."""
    if params.s < 1:
        raise ValueError("need s >= 1")
    return params.delta * params.q ** (params.m - params.s - 1)


def bound_Vneq(params: BoundParams, n_pairs: int, case: str) -> RadicalValue:
    """Main bound plus n_pairs slice bounds, for points off the given diagonals."""
    if case not in ("k2", "k3"):
        raise ValueError("the distinct-coordinate bound uses case k2 or k3")
    return bound_thm_main(params, case) + bound_slice(params) * n_pairs


def nonempty_threshold(params: BoundParams, variant: str = "system") -> int:
    if variant == "system":
        return 36 * params.D**2 * params.delta**2
    if variant == "hypersurface":
        return 36 * (params.d - 1) ** 2 * params.d**2
    raise ValueError("variant must be 'system' or 'hypersurface'")


def nonempty_criterion(params: BoundParams, variant: str = "system") -> bool:
    """Whether q reaches the threshold that guarantees a rational point."""
    return params.q >= nonempty_threshold(params, variant)


def p_l(q: int, l: int) -> int:
    """q^l + q^{l-1} + ... + 1 (0 for l < 0)."""
    return sum(q**i for i in range(l + 1))


def count_with_bounds(
    sys: SymmetricSystem,
    field: FieldSpec,
    cases: Sequence[str] = ("k2", "k3"),
    *,
    shards: int = 1,
    budget: int = DEFAULT_BUDGET,
) -> list[CountReport]:
    """Count V(F_q) and V^{!=}(F_q) and attach every applicable bound."""
    params = BoundParams.from_system(sys, field.q)
    out = []
    base = count_points(sys, field, "all", shards=shards, budget=budget)
    distinct = count_points(sys, field, "distinct", shards=shards, budget=budget)
    npairs = math.comb(sys.m, 2)
    for case in cases:
        if case == "k3" and sys.k < 3 or case == "general" and not 2 <= sys.k < sys.m - sys.s:
            continue
        if sys.hypersurface:
            out.append(base.with_bound(bound_hypersurface(params, case), f"hypersurface-{case}"))
            continue
        out.append(base.with_bound(bound_thm_main(params, case), f"main-{case}"))
        if case in ("k2", "k3"):
            out.append(distinct.with_bound(bound_Vneq(params, npairs, case), f"distinct-{case}"))
    return out
