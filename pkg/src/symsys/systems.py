"""Symmetric systems F_i = G_i(Pi_1, ..., Pi_{m-k}) and their hypotheses."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .fields import CapExceeded, FieldSpec
from .linalg import rank, row_echelon
from .multipoly import MPoly, WeightSpec, elementary_names, from_elementary, weight_component
from .vec import elementary_values, eval_mpoly, vec_field

EXPAND_CAP = 7


@dataclass(frozen=True)
class DegreeData:
    degrees: tuple[int, ...]

    @property
    def delta(self) -> int:
        return math.prod(self.degrees)

    @property
    def D(self) -> int:
        return sum(d - 1 for d in self.degrees)

    @property
    def d(self) -> int:
        return max(self.degrees)


@dataclass(frozen=True)
class SymmetricSystem:
    """G_1..G_s in E_1..E_{m-k} (or E_1..E_{m-k+1} for a hypersurface).

    ``ring`` is the coefficient ring of the G's.  ``hypersurface`` selects
    the single-equation regime where G may also use E_{m-k+1}.
    """

    m: int
    k: int
    G: tuple[MPoly, ...]
    hypersurface: bool = False
    ring: object = field(default=None, compare=False)

    def __post_init__(self):
        G = tuple(self.G)
        object.__setattr__(self, "G", G)
        if not G:
            raise ValueError("a system needs at least one equation")
        if self.ring is None:
            object.__setattr__(self, "ring", G[0].ring)
        if self.hypersurface and len(G) != 1:
            raise ValueError("the hypersurface regime has exactly one equation")
        if not self.s < self.m:
            raise ValueError("need s < m")
        if self.k < 1:
            raise ValueError("need k >= 1")
        limit = self.n_y
        for g in G:
            used = g.used_variables()
            if used and max(used) >= limit:
                raise ValueError(
                    f"G uses E{max(used) + 1}, beyond E{limit} allowed for m={self.m}, k={self.k}"
                )
        object.__setattr__(self, "G", tuple(g.extend(limit, elementary_names(limit)) for g in G))

    @property
    def s(self) -> int:
        return len(self.G)

    @property
    def n_y(self) -> int:
        """Number of elementary variables the G's may use."""
        return self.m - self.k + (1 if self.hypersurface else 0)

    def degree_data(self) -> DegreeData:
        w = WeightSpec.elementary(self.n_y)
        return DegreeData(tuple(g.weighted_degree(w.weights) for g in self.G))

    def highest_weight(self) -> tuple[MPoly, ...]:
        w = WeightSpec.elementary(self.n_y)
        return tuple(weight_component(g, w) for g in self.G)

    def is_linear(self) -> bool:
        return all(g.total_degree <= 1 for g in self.G)


def induced_F(sys: SymmetricSystem, mode: str = "expand"):
    """The F_i as MPolys in X_1..X_m, or as vectorized evaluators when mode='eval'."""
    if mode == "eval":
        return [make_evaluator(sys, i) for i in range(sys.s)]
    if mode != "expand":
        raise ValueError(f"unknown mode {mode!r}")
    if sys.m > EXPAND_CAP:
        raise CapExceeded(f"symbolic expansion needs m <= {EXPAND_CAP}")
    return [from_elementary(g, sys.m) for g in sys.G]


def make_evaluator(sys: SymmetricSystem, i: int) -> Callable:
    """x -> G_i(Pi_1(x), ...) on column arrays of field codes."""
    g = sys.G[i]

    def ev(cols, V):
        pis = elementary_values(cols, sys.n_y, V)
        return eval_mpoly(g, pis, V)

    return ev


def system_evaluator(sys: SymmetricSystem) -> Callable:
    """All equations at once, sharing the elementary symmetric values."""

    def ev(cols, V):
        pis = elementary_values(cols, sys.n_y, V)
        return [eval_mpoly(g, pis, V) for g in sys.G]

    return ev


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AssumptionReport:
    which: str
    verdict: str  # "pass-exact", "pass-necessary" or "fail"
    checked_extensions: tuple[int, ...]
    witness: tuple | None = None
    witness_field: FieldSpec | None = None
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.verdict.startswith("pass")


def _linear_parts(G: Sequence[MPoly], n: int, F: FieldSpec):
    mat, rhs = [], []
    for g in G:
        row = [F.zero] * n
        for i in range(n):
            e = [0] * n
            e[i] = 1
            row[i] = g.coefficient(e)
        mat.append(row)
        rhs.append(F.neg(g.constant_term()))
    return mat, rhs


def check_assumption(
    sys: SymmetricSystem,
    which: str = "A1",
    field: FieldSpec | None = None,
    t_max: int = 3,
    budget: int = 10**7,
) -> AssumptionReport:
    """Check (A1) or (A2): full-rank Jacobian of G (or of G^wt) on its zero set.

    Linear systems get an exact verdict.  Otherwise the zero set is scanned
    over F_{q^t} for t = 1..t_max; a pass only means no singular point was
    found there.
    """
    F = field if field is not None else sys.ring
    if not isinstance(F, FieldSpec):
        raise TypeError("check_assumption needs a finite field")
    if which not in ("A1", "A2"):
        raise ValueError("which must be 'A1' or 'A2'")
    G = sys.G if which == "A1" else sys.highest_weight()
    n = sys.n_y
    s = len(G)
    if all(g.total_degree <= 1 for g in G):
        mat, rhs = _linear_parts(G, n, F)
        if rank(mat, F) == s:
            return AssumptionReport(which, "pass-exact", ())
        aug = [row + [b] for row, b in zip(mat, rhs)]
        red, piv = row_echelon(aug, F)
        if n in piv:
            return AssumptionReport(which, "pass-exact", (), note="zero set is empty")
        sol = [F.zero] * n
        for row, c in zip(red, piv):
            sol[c] = row[n]
        return AssumptionReport(which, "fail", (1,), tuple(sol), F, "linear parts are dependent")

    checked = []
    for t in range(1, t_max + 1):
        E = F.extension(t) if t > 1 else F
        if E.q**n > budget:
            break
        w = _scan_singular(G, n, F, E)
        checked.append(t)
        if w is not None:
            return AssumptionReport(which, "fail", tuple(checked), w, E)
    if not checked:
        raise CapExceeded("zero set of G too large to enumerate even over the base field")
    return AssumptionReport(which, "pass-necessary", tuple(checked))


def _scan_singular(G, n, F: FieldSpec, E: FieldSpec):
    emb = F.embedding(E)
    GE = [g.map_coeffs(E, lambda c: emb[c]) for g in G]
    grads = [[g.diff(i) for i in range(n)] for g in GE]
    V = vec_field(E)
    qE = E.q
    total = qE**n
    chunk = 1 << 16
    for start in range(0, total, chunk):
        stop = min(total, start + chunk)
        idx = np.arange(start, stop, dtype=np.int64)
        cols = [(idx // qE ** (n - 1 - i)) % qE for i in range(n)]
        mask = np.ones(len(idx), dtype=bool)
        for g in GE:
            mask &= eval_mpoly(g, cols, V) == 0
        for pos in np.nonzero(mask)[0]:
            y = tuple(int(c[pos]) for c in cols)
            J = [[gr.evaluate(y) for gr in row] for row in grads]
            if rank(J, E) < len(G):
                return y
    return None


def char_condition(m: int, k: int, p: int, variant: str = "thm1") -> bool:
    """True iff p divides none of m, m-1, ..., m-k+1 (thm1) or ..., m-k (thm2)."""
    if variant == "thm1":
        factors = range(m - k + 1, m + 1)
    elif variant == "thm2":
        factors = range(m - k, m + 1)
    else:
        raise ValueError("variant must be 'thm1' or 'thm2'")
    return all(f % p for f in factors)


def singular_points(F_polys: Sequence[MPoly], field: FieldSpec):
    """F_q-points of V(F) where the Jacobian of F is rank deficient (exhaustive)."""
    m = F_polys[0].nvars
    V = vec_field(field)
    grads = [[f.diff(i) for i in range(m)] for f in F_polys]
    q = field.q
    total = q**m
    out = []
    chunk = 1 << 16
    for start in range(0, total, chunk):
        stop = min(total, start + chunk)
        idx = np.arange(start, stop, dtype=np.int64)
        cols = [(idx // q ** (m - 1 - i)) % q for i in range(m)]
        mask = np.ones(len(idx), dtype=bool)
        for f in F_polys:
            mask &= eval_mpoly(f, cols, V) == 0
        for pos in np.nonzero(mask)[0]:
            x = tuple(int(c[pos]) for c in cols)
            J = [[g.evaluate(x) for g in row] for row in grads]
            if rank(J, field) < len(F_polys):
                out.append(x)
    return out


def parse_system(spec: dict) -> tuple[SymmetricSystem, FieldSpec]:
    """Build a system from the JSON form {m, k, s, G: [...], field: "7"}."""
    from .parsing import parse_field, parse_mpoly

    F = parse_field(str(spec["field"]))
    m, k = int(spec["m"]), int(spec["k"])
    hyper = bool(spec.get("hypersurface", False))
    n_y = m - k + (1 if hyper else 0)
    G = [parse_mpoly(text, F, elementary_names(n_y)) for text in spec["G"]]
    if "s" in spec and int(spec["s"]) != len(G):
        raise ValueError("s does not match the number of equations")
    return SymmetricSystem(m, k, tuple(G), hypersurface=hyper), F

