"""Literal grammars for fields, univariate and multivariate polynomials.

Fields:       "5", "9=3^2", "9=3^2:t^2+1", "9=3^2:[1,0,1]"
Univariate:   "T^3+2*T+1" or an ascending list "[1,2,0,1]"
Multivariate: "X1^2*X2 - 3*X3", "E1 + 2*E2"; in an extension field the
              generator may appear as "t", e.g. "E3 - t".
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Sequence

from .fields import FieldSpec, make_field, prime_power
from .multipoly import MPoly
from .unipoly import UniPoly


class ParseError(ValueError):
    """Malformed literal."""


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def _tokenize(text: str):
    pos = 0
    out = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            break
        num, name, sym = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif name is not None:
            out.append(("name", name))
        else:
            out.append(("sym", sym))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text, ring, names, generator_name="t"):
        self.toks = _tokenize(text)
        self.i = 0
        self.ring = ring
        self.names = tuple(names)
        self.index = {n: k for k, n in enumerate(self.names)}
        self.gen = None
        if isinstance(ring, FieldSpec) and ring.e > 1 and generator_name not in self.index:
            self.gen = generator_name
        self.text = text

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def fail(self, msg):
        raise ParseError(f"{msg} in {self.text!r}")

    def const(self, c):
        return MPoly.const(self.ring, len(self.names), c, self.names)

    def parse(self) -> MPoly:
        if not self.toks:
            self.fail("empty expression")
        out = self.expr()
        if self.i != len(self.toks):
            self.fail(f"unexpected token {self.peek()[1]!r}")
        return out

    def expr(self):
        sign = 1
        kind, val = self.peek()
        if kind == "sym" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while True:
            kind, val = self.peek()
            if kind == "sym" and val in "+-":
                self.take()
                t = self.term()
                acc = acc + t if val == "+" else acc - t
            else:
                return acc

    def term(self):
        acc = self.power()
        while True:
            kind, val = self.peek()
            if kind == "sym" and val == "*":
                self.take()
                acc = acc * self.power()
            elif kind == "sym" and val == "/":
                self.take()
                k2, v2 = self.take()
                if k2 != "num" or v2 == 0:
                    self.fail("division only by a nonzero integer")
                acc = acc.scale(self.ring.inv(self.ring.from_int(v2)))
            else:
                return acc

    def power(self):
        base = self.atom()
        kind, val = self.peek()
        if kind == "sym" and val == "^":
            self.take()
            k2, v2 = self.take()
            if k2 != "num":
                self.fail("exponent must be a nonnegative integer")
            return base**v2
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return self.const(self.ring.from_int(val))
        if kind == "name":
            if val in self.index:
                return MPoly.var(self.ring, len(self.names), self.index[val], self.names)
            if val == self.gen:
                return self.const(self.ring.p)  # code of t
            self.fail(f"unknown variable {val!r}")
        if kind == "sym" and val == "(":
            inner = self.expr()
            if self.take() != ("sym", ")"):
                self.fail("missing ')'")
            return inner
        if kind == "sym" and val == "-":
            return -self.power()
        self.fail(f"unexpected token {val!r}")


def parse_mpoly(text: str, ring, names: Sequence[str]) -> MPoly:
    return _Parser(text, ring, names).parse()


def parse_list(text: str) -> list:
    try:
        val = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad list literal {text!r}") from exc
    if not isinstance(val, list) or not all(isinstance(v, int) for v in val):
        raise ParseError(f"expected a list of integers, got {text!r}")
    return val


def parse_unipoly(text: str, ring, var: str = "T") -> UniPoly:
    text = text.strip()
    if text.startswith("["):
        return UniPoly(ring, [ring.from_int(v) for v in parse_list(text)])
    p = parse_mpoly(text, ring, (var,))
    deg = p.total_degree
    coeffs = [p.coefficient((i,)) for i in range(deg + 1)]
    return UniPoly(ring, coeffs)


def parse_field(text: str) -> FieldSpec:
    text = text.strip()
    m = re.fullmatch(r"(\d+)(?:\s*=\s*(\d+)\s*\^\s*(\d+))?(?:\s*:\s*(.+))?", text)
    if not m:
        raise ParseError(f"bad field literal {text!r}")
    q = int(m.group(1))
    try:
        p, e = prime_power(q)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    if m.group(2) is not None and (int(m.group(2)), int(m.group(3))) != (p, e):
        raise ParseError(f"{q} is not {m.group(2)}^{m.group(3)}")
    mod_text = m.group(4)
    if mod_text is None:
        return make_field(p, e)
    prime = make_field(p)
    mod = parse_unipoly(mod_text, prime, var="t")
    coeffs = list(mod.coeffs)
    if len(coeffs) != e + 1 or coeffs[-1] != 1:
        raise ParseError(f"modulus must be monic of degree {e}")
    try:
        return FieldSpec(p, e, tuple(coeffs))
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def parse_element(text: str, F: FieldSpec) -> int:
    """A field element: integer, polynomial in t, or digit list."""
    text = text.strip()
    if text.startswith("["):
        return F.from_digits(parse_list(text))
    poly = parse_mpoly(text, F, ())
    return poly.constant_term()


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {text!r}") from exc
