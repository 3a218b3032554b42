"""Finite fields F_{p^e} with canonical moduli, and the rational field.

An element of F_{p^e} is stored as an integer code c_0 + c_1 p + ... + c_{e-1} p^{e-1},
where c_0 + c_1 t + ... + c_{e-1} t^{e-1} is its residue modulo the field's
modulus.  Codes double as the canonical enumeration order, so ``range(q)``
walks the field in order.  The arithmetic methods of :class:`FieldSpec` act on
codes; :class:`Fe` wraps a code together with its field for operator syntax.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

DEFAULT_CAP = 2**20
_cap = DEFAULT_CAP

# Tables for fields up to this order are dense q x q lists.
_ADD_TABLE_MAX = 512


class CapExceeded(RuntimeError):
    """An enumeration or evaluation budget was exceeded."""


def get_cap() -> int:
    return _cap


def set_cap(cap: int) -> None:
    """Set the global enumeration cap (number of field elements)."""
    global _cap
    if cap < 2:
        raise ValueError("cap must be at least 2")
    _cap = int(cap)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, e) with q = p**e, or raise ValueError."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    ps = prime_factors(q)
    if len(ps) != 1:
        raise ValueError(f"{q} is not a prime power")
    p, e = ps[0], 0
    while q > 1:
        q //= p
        e += 1
    return p, e


# ---------------------------------------------------------------------------
# residue polynomials over F_p, used to build tables


def _digits(code: int, p: int, e: int) -> list[int]:
    out = []
    for _ in range(e):
        code, r = divmod(code, p)
        out.append(r)
    return out


def _undigits(digits: Sequence[int], p: int) -> int:
    code = 0
    for c in reversed(digits):
        code = code * p + c
    return code


def _mulmod(a: list[int], b: list[int], modulus: Sequence[int], p: int) -> list[int]:
    e = len(modulus) - 1
    prod = [0] * (2 * e - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] += ai * bj
    # modulus is monic, reduce from the top
    for k in range(len(prod) - 1, e - 1, -1):
        c = prod[k] % p
        if c:
            for j in range(e):
                prod[k - e + j] -= c * modulus[j]
    return [c % p for c in prod[:e]]


def _poly_has_root_mod_p(poly: Sequence[int], p: int) -> bool:
    for x in range(p):
        acc = 0
        for c in reversed(poly):
            acc = (acc * x + c) % p
        if acc == 0:
            return True
    return False


def _is_irreducible_mod_p(poly: Sequence[int], p: int) -> bool:
    """Trial division of a monic polynomial by every monic polynomial of degree <= deg/2."""
    n = len(poly) - 1
    if n <= 1:
        return True
    if _poly_has_root_mod_p(poly, p):
        return False
    for d in range(2, n // 2 + 1):
        for low in range(p**d):
            divisor = _digits(low, p, d) + [1]
            if _divides_mod_p(divisor, poly, p):
                return False
    return True


def _divides_mod_p(g: Sequence[int], f: Sequence[int], p: int) -> bool:
    r = list(f)
    dg = len(g) - 1
    for k in range(len(r) - 1, dg - 1, -1):
        c = r[k] % p
        if c:
            for j in range(dg + 1):
                r[k - dg + j] -= c * g[j]
    return all(c % p == 0 for c in r[:dg])


def canonical_modulus(p: int, e: int) -> tuple[int, ...]:
    """First monic irreducible of degree e over F_p, lower coefficients read base p."""
    if e == 1:
        return (0, 1)
    for low in range(p**e):
        poly = _digits(low, p, e) + [1]
        if poly[0] == 0:
            continue
        if _is_irreducible_mod_p(poly, p):
            return tuple(poly)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


# ---------------------------------------------------------------------------


class _Tables:
    """Lazily built log/exp (and small addition) tables of an extension field."""

    def __init__(self, p: int, e: int, modulus: tuple[int, ...]):
        q = p**e
        self.p, self.e, self.q = p, e, q
        self.digits = [_digits(c, p, e) for c in range(q)]
        one = [1] + [0] * (e - 1)
        factors = prime_factors(q - 1)
        gen = None
        for g in range(2, q):
            gd = self.digits[g]
            if all(self._slow_pow(gd, (q - 1) // r, modulus) != one for r in factors):
                gen = gd
                break
        assert gen is not None
        exp = [0] * (2 * (q - 1))
        log = [0] * q
        cur = one
        for i in range(q - 1):
            c = _undigits(cur, p)
            exp[i] = c
            log[c] = i
            cur = _mulmod(cur, gen, modulus, p)
        for i in range(q - 1, 2 * (q - 1)):
            exp[i] = exp[i - (q - 1)]
        self.exp, self.log = exp, log
        self.generator = _undigits(gen, p)
        self.powers = [p**j for j in range(e)]
        self.add_table = None
        if q <= _ADD_TABLE_MAX:
            self.add_table = [[self._slow_add(a, b) for b in range(q)] for a in range(q)]

    def _slow_pow(self, a, n, modulus):
        result = [1] + [0] * (self.e - 1)
        while n:
            if n & 1:
                result = _mulmod(result, a, modulus, self.p)
            a = _mulmod(a, a, modulus, self.p)
            n >>= 1
        return result

    def _slow_add(self, a, b):
        p = self.p
        da, db = self.digits[a], self.digits[b]
        return _undigits([(x + y) % p for x, y in zip(da, db)], p)


_TABLES: dict[tuple, _Tables] = {}
_LOCK = threading.RLock()


def _tables_for(p, e, modulus) -> _Tables:
    key = (p, e, modulus)
    t = _TABLES.get(key)
    if t is None:
        with _LOCK:
            t = _TABLES.get(key)
            if t is None:
                t = _Tables(p, e, modulus)
                _TABLES[key] = t
    return t


@dataclass(frozen=True)
class FieldSpec:
    """The field F_{p^e} = F_p[t]/(modulus).

    ``modulus`` is ascending and monic.  For e = 1 it is ``(0, 1)``, i.e. the
    element t is the residue 0 and codes are plain residues mod p.
    """

    p: int
    e: int
    modulus: tuple[int, ...]
    base: FieldSpec | None = field(default=None, compare=False, repr=False)
    _memo: dict = field(default_factory=dict, init=False, compare=False, repr=False)

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.e < 1:
            raise ValueError("extension degree must be at least 1")
        mod = tuple(int(c) % self.p for c in self.modulus)
        object.__setattr__(self, "modulus", mod)
        if len(mod) != self.e + 1 or mod[-1] != 1:
            raise ValueError("modulus must be monic of degree e")
        if self.e > 1 and not _is_irreducible_mod_p(mod, self.p):
            raise ValueError(f"modulus {mod} is reducible over F_{self.p}")
        if self.base is not None:
            if self.base.p != self.p or self.e % self.base.e:
                raise ValueError("base field is not a subfield")

    # -- basic data --------------------------------------------------------

    @property
    def q(self) -> int:
        return self.p**self.e

    order = q

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def is_prime_field(self) -> bool:
        return self.e == 1

    zero = 0
    one = 1
    is_field = True

    def __repr__(self):
        if self.e == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.e}, {self.format_poly(self.modulus)})"

    def __str__(self):
        return repr(self)

    def _tabs(self) -> _Tables:
        return _tables_for(self.p, self.e, self.modulus)

    # -- arithmetic on codes -------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        t = self._tabs()
        if t.add_table is not None:
            return t.add_table[a][b]
        return self._digitwise(a, b, 1)

    def sub(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a - b) % self.p
        if self.p == 2:
            return a ^ b
        return self._digitwise(a, b, -1)

    def _digitwise(self, a, b, sign):
        p = self.p
        out, place = 0, 1
        while a or b:
            a, x = divmod(a, p)
            b, y = divmod(b, p)
            out += ((x + sign * y) % p) * place
            place *= p
        return out

    def neg(self, a: int) -> int:
        if self.e == 1:
            return -a % self.p
        if self.p == 2:
            return a
        return self._digitwise(0, a, -1)

    def mul(self, a: int, b: int) -> int:
        if self.e == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        t = self._tabs()
        return t.exp[t.log[a] + t.log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        if self.e == 1:
            return pow(a, -1, self.p)
        t = self._tabs()
        return t.exp[(self.q - 1 - t.log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            a, n = self.inv(a), -n
        if n == 0:
            return 1
        if a == 0:
            return 0
        if self.e == 1:
            return pow(a, n, self.p)
        t = self._tabs()
        return t.exp[(t.log[a] * n) % (self.q - 1)]

    def from_int(self, n: int) -> int:
        return int(n) % self.p

    def is_zero(self, a: int) -> bool:
        return a == 0

    def digits(self, a: int) -> list[int]:
        return _digits(a, self.p, self.e)

    def from_digits(self, digits: Sequence[int]) -> int:
        if len(digits) > self.e:
            raise ValueError("too many coefficients for this field")
        return _undigits([int(c) % self.p for c in digits], self.p)

    def generator(self) -> int:
        """A primitive element (code), the first one in canonical order."""
        if self.e == 1:
            if self.p == 2:
                return 1
            fs = prime_factors(self.p - 1)
            for g in range(2, self.p):
                if all(pow(g, (self.p - 1) // r, self.p) != 1 for r in fs):
                    return g
        if self.q == 2:
            return 1
        return self._tabs().generator

    # -- formatting ------------------------------------------------------------

    @staticmethod
    def format_poly(coeffs: Sequence[int], var: str = "t") -> str:
        parts = []
        for i in range(len(coeffs) - 1, -1, -1):
            c = coeffs[i]
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
                continue
            mono = var if i == 1 else f"{var}^{i}"
            parts.append(mono if c == 1 else f"{c}*{mono}")
        return "+".join(parts) if parts else "0"

    def format(self, a: int) -> str:
        if self.e == 1:
            return str(a)
        return self.format_poly(self.digits(a))

    # -- elements ----------------------------------------------------------

    def __call__(self, value) -> Fe:
        return Fe(self, self.coerce(value))

    def coerce(self, value) -> int:
        """Convert an int, digit list or Fe into a code of this field."""
        if isinstance(value, Fe):
            if value.field != self:
                raise ValueError("mixed-field operands")
            return value.value
        if isinstance(value, (list, tuple)):
            return self.from_digits(value)
        if isinstance(value, Fraction):
            if value.denominator == 1:
                return self.from_int(value.numerator)
            return self.div(self.from_int(value.numerator), self.from_int(value.denominator))
        return self.from_int(value)

    def elements(self) -> list[Fe]:
        return [Fe(self, c) for c in iter_codes(self)]

    # -- towers ----------------------------------------------------------------

    def extension(self, i: int) -> FieldSpec:
        """F_{q^i}, realised as the canonical F_{p^(e*i)} with this field as base."""
        key = ("ext", i)
        ext = self._memo.get(key)
        if ext is None:
            with _LOCK:
                ext = self._memo.get(key)
                if ext is None:
                    c = make_field(self.p, self.e * i)
                    ext = FieldSpec(self.p, self.e * i, c.modulus, base=self)
                    self._memo[key] = ext
        return ext

    def embedding(self, big: FieldSpec) -> tuple[int, ...]:
        """Codes of the images of this field's elements in ``big``.

        t is sent to the first root of our modulus in ``big``'s enumeration order.
        """
        if big.p != self.p or big.e % self.e:
            raise ValueError(f"{self!r} does not embed in {big!r}")
        key = ("emb", big.p, big.e, big.modulus)
        emb = self._memo.get(key)
        if emb is not None:
            return emb
        with _LOCK:
            emb = self._memo.get(key)
            if emb is None:
                emb = self._build_embedding(big)
                self._memo[key] = emb
        return emb

    def _build_embedding(self, big: FieldSpec) -> tuple[int, ...]:
        if self.e == 1:
            return tuple(range(self.p))
        mod = self.modulus
        root = None
        for r in iter_codes(big):
            acc = 0
            for c in reversed(mod):
                acc = big.add(big.mul(acc, r), c)
            if acc == 0:
                root = r
                break
        assert root is not None
        rpow = [1]
        for _ in range(self.e - 1):
            rpow.append(big.mul(rpow[-1], root))
        out = []
        for code in range(self.q):
            acc = 0
            for c, rp in zip(self.digits(code), rpow):
                if c:
                    acc = big.add(acc, big.mul(c, rp))
            out.append(acc)
        return tuple(out)

    def restriction(self, big: FieldSpec) -> dict[int, int]:
        """Inverse of :meth:`embedding`, as a dict from big codes to our codes."""
        key = ("res", big.p, big.e, big.modulus)
        res = self._memo.get(key)
        if res is None:
            res = {b: a for a, b in enumerate(self.embedding(big))}
            self._memo[key] = res
        return res


class RationalField:
    """Exact rationals (ints and Fractions) behind the same interface as FieldSpec."""

    characteristic = 0
    p = 0
    zero = 0
    one = 1
    is_field = True
    is_prime_field = False

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return _norm(Fraction(1) / a)

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero")
        return _norm(Fraction(a) / b)

    def pow(self, a, n):
        return _norm(Fraction(a) ** n) if n < 0 else a**n

    def from_int(self, n):
        return int(n)

    def is_zero(self, a):
        return a == 0

    def coerce(self, value):
        if isinstance(value, Fraction):
            return _norm(value)
        return int(value)

    def format(self, a):
        return str(a)

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")


def _norm(x: Fraction):
    return x.numerator if x.denominator == 1 else x


QQ = RationalField()


class Fe:
    """An element of a FieldSpec."""

    __slots__ = ("field", "value")

    def __init__(self, fld: FieldSpec, value: int):
        if not 0 <= value < fld.q:
            raise ValueError(f"code {value} out of range for {fld!r}")
        self.field = fld
        self.value = value

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(self.field.digits(self.value))

    def _other(self, other) -> int:
        return self.field.coerce(other)

    def __add__(self, other):
        return Fe(self.field, self.field.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return Fe(self.field, self.field.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return Fe(self.field, self.field.sub(self._other(other), self.value))

    def __mul__(self, other):
        return Fe(self.field, self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return Fe(self.field, self.field.div(self.value, self._other(other)))

    def __rtruediv__(self, other):
        return Fe(self.field, self.field.div(self._other(other), self.value))

    def __neg__(self):
        return Fe(self.field, self.field.neg(self.value))

    def __pow__(self, n: int):
        return Fe(self.field, self.field.pow(self.value, n))

    def inverse(self) -> Fe:
        return Fe(self.field, self.field.inv(self.value))

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        if isinstance(other, Fe):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == self.field.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __repr__(self):
        return self.field.format(self.value)


# ---------------------------------------------------------------------------

_FIELDS: dict[tuple[int, int], FieldSpec] = {}


def make_field(p: int, e: int = 1, *, cap: int | None = None) -> FieldSpec:
    """The field of order p**e with the canonical modulus."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if e < 1:
        raise ValueError("extension degree must be at least 1")
    limit = _cap if cap is None else cap
    if p**e > limit:
        raise CapExceeded(f"field of order {p}^{e} exceeds cap {limit}")
    key = (p, e)
    fld = _FIELDS.get(key)
    if fld is None:
        with _LOCK:
            fld = _FIELDS.get(key)
            if fld is None:
                fld = FieldSpec(p, e, canonical_modulus(p, e))
                _FIELDS[key] = fld
    return fld


def field_of_order(q: int, **kw) -> FieldSpec:
    p, e = prime_power(q)
    return make_field(p, e, **kw)


def iter_codes(fld: FieldSpec, cap: int | None = None) -> range:
    limit = _cap if cap is None else cap
    if fld.q > limit:
        raise CapExceeded(f"cannot enumerate {fld!r}: exceeds cap {limit}")
    return range(fld.q)


def enumerate_field(fld: FieldSpec, cap: int | None = None) -> list[Fe]:
    """All elements in canonical order."""
    return [Fe(fld, c) for c in iter_codes(fld, cap)]


def frobenius(a: Fe, base_order: int) -> Fe:
    """a ** base_order, where base_order is the order of a subfield of a's field."""
    fld = a.field
    p, f = prime_power(base_order)
    if p != fld.p or fld.e % f:
        raise ValueError(f"no subfield of order {base_order} in {fld!r}")
    return Fe(fld, fld.pow(a.value, base_order))


def frobenius_code(fld: FieldSpec, a: int, base_order: int, times: int = 1) -> int:
    for _ in range(times):
        a = fld.pow(a, base_order)
    return a


@dataclass(frozen=True)
class NormalFrame:
    """A normal element of F_{q^i} over F_q with its conjugate matrix.

    ``A[g][h]`` is theta^(q^(g+h)), the image of theta^(q^h) under the g-th
    power of Frobenius.  ``embedding`` maps codes of the base into codes of
    ``ext``.
    """

    i: int
    base: FieldSpec
    ext: FieldSpec
    theta: int
    A: tuple[tuple[int, ...], ...]
    embedding: tuple[int, ...]

    @property
    def theta_fe(self) -> Fe:
        return Fe(self.ext, self.theta)

    def conjugates(self, alpha: int) -> list[int]:
        out = [alpha]
        for _ in range(self.i - 1):
            out.append(self.ext.pow(out[-1], self.base.q))
        return out

    def combine(self, x: Sequence[int]) -> int:
        """x_1 theta + x_2 theta^q + ... for base codes x."""
        ext, emb = self.ext, self.embedding
        acc = 0
        for xh, th in zip(x, self.A[0]):
            if xh:
                acc = ext.add(acc, ext.mul(emb[xh], th))
        return acc

    def linear_forms(self, x: Sequence[int]) -> list[int]:
        """The i values Y_1..Y_i = A x, which are the conjugates of combine(x)."""
        ext, emb = self.ext, self.embedding
        out = []
        for row in self.A:
            acc = 0
            for xh, a in zip(x, row):
                if xh:
                    acc = ext.add(acc, ext.mul(emb[xh], a))
            out.append(acc)
        return out


_FRAMES: dict[tuple, NormalFrame] = {}


def normal_element(base: FieldSpec, i: int) -> NormalFrame:
    """First element of F_{q^i}, in enumeration order, whose conjugates form a basis over F_q."""
    from .linalg import det

    key = (base.p, base.e, base.modulus, i)
    frame = _FRAMES.get(key)
    if frame is not None:
        return frame
    with _LOCK:
        frame = _FRAMES.get(key)
        if frame is not None:
            return frame
        ext = base.extension(i)
        q = base.q
        for theta in iter_codes(ext):
            if theta == 0:
                continue
            conj = [theta]
            for _ in range(2 * i - 2):
                conj.append(ext.pow(conj[-1], q))
            A = tuple(tuple(conj[g + h] for h in range(i)) for g in range(i))
            if det([list(r) for r in A], ext) != 0:
                frame = NormalFrame(i, base, ext, theta, A, base.embedding(ext))
                _FRAMES[key] = frame
                return frame
    raise AssertionError("no normal element found")  # pragma: no cover


def coordinates(frame: NormalFrame, alpha: int) -> list[int]:
    """Coordinates of alpha in the basis theta, theta^q, ... (as base codes)."""
    from .linalg import solve

    ext, sub = frame.ext, frame.base
    p = ext.p
    # write every (theta^{q^h} * t^j) in F_p-coordinates and solve over F_p
    sub_basis = [frame.embedding[p**j] for j in range(sub.e)]
    cols = [ext.digits(ext.mul(th, sb)) for th in frame.A[0] for sb in sub_basis]
    mat = [[col[r] for col in cols] for r in range(ext.e)]
    sol = solve(mat, ext.digits(alpha), make_field(p))
    return [sub.from_digits(sol[h * sub.e:(h + 1) * sub.e]) for h in range(frame.i)]
