"""Exact dense linear algebra over the ring objects used in this package.

A ring is anything with ``add/sub/mul/neg/is_zero/zero/one``; fields also
provide ``inv``.  Integer matrices over QQ go through Bareiss' fraction-free
elimination, other field matrices through plain Gaussian elimination, and
matrices over polynomial rings through memoized cofactor expansion.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

from .fields import QQ


def det(matrix: Sequence[Sequence], ring=QQ):
    n = len(matrix)
    if n == 0:
        return ring.one
    if any(len(row) != n for row in matrix):
        raise ValueError("matrix is not square")
    if ring is QQ and all(isinstance(x, int) for row in matrix for x in row):
        return bareiss(matrix)
    if getattr(ring, "is_field", False):
        return _gauss_det(matrix, ring)
    return laplace_det(matrix, ring)


def bareiss(matrix: Sequence[Sequence[int]]) -> int:
    """Fraction-free determinant of an integer matrix."""
    a = [list(row) for row in matrix]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def _gauss_det(matrix, ring):
    a = [list(row) for row in matrix]
    n = len(a)
    result = ring.one
    for c in range(n):
        piv = next((r for r in range(c, n) if not ring.is_zero(a[r][c])), None)
        if piv is None:
            return ring.zero
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            result = ring.neg(result)
        pv = a[c][c]
        result = ring.mul(result, pv)
        inv = ring.inv(pv)
        for r in range(c + 1, n):
            if ring.is_zero(a[r][c]):
                continue
            f = ring.mul(a[r][c], inv)
            row_r, row_c = a[r], a[c]
            for j in range(c + 1, n):
                row_r[j] = ring.sub(row_r[j], ring.mul(f, row_c[j]))
    return result


def laplace_det(matrix, ring):
    """Cofactor expansion along rows, memoized on the set of remaining columns."""
    a = [list(row) for row in matrix]
    n = len(a)

    @lru_cache(maxsize=None)
    def minor(row: int, cols: int):
        if row == n:
            return ring.one
        total = ring.zero
        sign_pos = 0
        for c in range(n):
            bit = 1 << c
            if not cols & bit:
                continue
            entry = a[row][c]
            if not ring.is_zero(entry):
                sub = minor(row + 1, cols & ~bit)
                if not ring.is_zero(sub):
                    term = ring.mul(entry, sub)
                    total = ring.sub(total, term) if sign_pos & 1 else ring.add(total, term)
            sign_pos += 1
        return total

    return minor(0, (1 << n) - 1)


def row_echelon(matrix, fld):
    """Reduced row echelon form over a field; returns (rows, pivot columns)."""
    a = [list(row) for row in matrix]
    if not a:
        return a, []
    ncols = len(a[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if not fld.is_zero(a[i][c])), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = fld.inv(a[r][c])
        a[r] = [fld.mul(inv, x) for x in a[r]]
        for i in range(len(a)):
            if i != r and not fld.is_zero(a[i][c]):
                f = a[i][c]
                a[i] = [fld.sub(x, fld.mul(f, y)) for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a, pivots


def rank(matrix, fld) -> int:
    return len(row_echelon(matrix, fld)[1])


def solve(matrix, rhs, fld):
    """One solution x of matrix * x = rhs, or raise ValueError if inconsistent."""
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    ncols = len(matrix[0]) if matrix else 0
    red, pivots = row_echelon(aug, fld)
    if ncols in pivots:
        raise ValueError("inconsistent linear system")
    x = [fld.zero] * ncols
    for row, c in zip(red, pivots):
        x[c] = row[ncols]
    return x


def nullspace(matrix, fld, ncols: int | None = None):
    """Basis of the right kernel."""
    if ncols is None:
        ncols = len(matrix[0])
    if not matrix:
        return [[fld.one if i == j else fld.zero for i in range(ncols)] for j in range(ncols)]
    red, pivots = row_echelon(matrix, fld)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [fld.zero] * ncols
        v[f] = fld.one
        for row, c in zip(red, pivots):
            v[c] = fld.neg(row[f])
        basis.append(v)
    return basis
