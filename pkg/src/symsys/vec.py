"""numpy arithmetic on arrays of field codes, for exhaustive enumeration."""

from __future__ import annotations

import threading

import numpy as np

from .fields import FieldSpec

_DENSE_MAX = 2048


class VecField:
    """Vectorized add/sub/mul on int64 code arrays of one FieldSpec."""

    def __init__(self, F: FieldSpec):
        self.F = F
        self.q = F.q
        self.prime = F.e == 1
        if self.prime:
            return
        t = F._tabs()
        q = F.q
        self.log = np.array(t.log, dtype=np.int64)
        self.exp = np.array(t.exp + t.exp[:1], dtype=np.int64)
        if q <= _DENSE_MAX:
            codes = np.arange(q, dtype=np.int64)
            self.add_tab = np.array([[F.add(a, b) for b in range(q)] for a in range(q)], dtype=np.int64)
            self.neg_tab = np.array([F.neg(a) for a in codes], dtype=np.int64)
        else:
            self.add_tab = None
            self.neg_tab = None

    def add(self, a, b):
        if self.prime:
            return (a + b) % self.q
        if self.F.p == 2:
            return np.bitwise_xor(a, b)
        if self.add_tab is not None:
            return self.add_tab[a, b]
        return self._digitwise(a, b, 1)

    def neg(self, a):
        if self.prime:
            return (-a) % self.q
        if self.F.p == 2:
            return a
        if self.neg_tab is not None:
            return self.neg_tab[a]
        return self._digitwise(np.zeros_like(a), a, -1)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def _digitwise(self, a, b, sign):
        p = self.F.p
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        place = 1
        a = np.asarray(a, dtype=np.int64).copy()
        b = np.asarray(b, dtype=np.int64).copy()
        for _ in range(self.F.e):
            out += ((a % p + sign * (b % p)) % p) * place
            a //= p
            b //= p
            place *= p
        return out

    def mul(self, a, b):
        if self.prime:
            return (a * b) % self.q
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        res = self.exp[(self.log[a] + self.log[b]) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, res)

    def const(self, c: int, n: int):
        return np.full(n, c, dtype=np.int64)

    def pow(self, a, n: int):
        if n == 0:
            return np.ones_like(a)
        result = None
        base = a
        while n:
            if n & 1:
                result = base if result is None else self.mul(result, base)
            n >>= 1
            if n:
                base = self.mul(base, base)
        return result


_CACHE: dict = {}
_LOCK = threading.Lock()


def vec_field(F: FieldSpec) -> VecField:
    key = (F.p, F.e, F.modulus)
    with _LOCK:
        got = _CACHE.get(key)
        if got is None:
            got = VecField(F)
            _CACHE[key] = got
    return got


def eval_mpoly(poly, cols, V: VecField):
    """Evaluate an MPoly with code coefficients at the points given column-wise."""
    n = len(cols[0]) if cols else 1
    total = np.zeros(n, dtype=np.int64)
    powers: dict = {}
    for e, c in poly.terms.items():
        v = None
        for i, a in enumerate(e):
            if a:
                key = (i, a)
                pw = powers.get(key)
                if pw is None:
                    pw = V.pow(cols[i], a)
                    powers[key] = pw
                v = pw if v is None else V.mul(v, pw)
        if v is None:
            v = V.const(c, n)
        elif c != 1:
            v = V.mul(v, np.int64(c) if V.prime else V.const(c, n))
        total = V.add(total, v)
    return total


def elementary_values(cols, r: int, V: VecField):
    """Pi_1..Pi_r evaluated at the points given column-wise."""
    n = len(cols[0])
    e = [np.ones(n, dtype=np.int64)] + [np.zeros(n, dtype=np.int64) for _ in range(r)]
    for x in cols:
        for j in range(r, 0, -1):
            e[j] = V.add(e[j], V.mul(x, e[j - 1]))
    return e[1:]


def points_block(q: int, m: int, start: int, stop: int):
    """Columns x_1..x_m of the points with lexicographic indices in [start, stop)."""
    idx = np.arange(start, stop, dtype=np.int64)
    cols = []
    for i in range(m):
        cols.append((idx // q ** (m - 1 - i)) % q)
    return cols
