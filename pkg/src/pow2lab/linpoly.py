"""Homogeneous linear polynomials over edge variables and 2-adic valuations.

Variables are indexed from 1, matching the text form ``x1 - 2*x3``.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, NamedTuple

INF = math.inf


def nu2(k: int) -> int | float:
    """2-adic valuation; ``nu2(0)`` is infinity."""
    k = int(k)
    if k == 0:
        return INF
    return (k & -k).bit_length() - 1


def _clean(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


class LinPoly:
    """Immutable map from variable index to nonzero exact coefficient."""

    __slots__ = ("terms", "_hash")

    def __init__(self, coeffs: Mapping[int, Rational] | Iterable[tuple[int, Rational]] = ()):
        items = coeffs.items() if isinstance(coeffs, dict) else coeffs
        acc: dict[int, Rational] = {}
        for var, c in items:
            if var < 1:
                raise ValueError(f"variable index {var} must be >= 1")
            acc[var] = acc.get(var, 0) + c
        self.terms = tuple(sorted((v, _clean(c)) for v, c in acc.items() if c != 0))
        self._hash = None

    @classmethod
    def _raw(cls, terms: tuple) -> "LinPoly":
        """Wrap terms already sorted, cleaned and free of zeros."""
        p = cls.__new__(cls)
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def var(cls, i: int, c: Rational = 1) -> "LinPoly":
        return cls({i: c})

    @property
    def coeffs(self) -> dict[int, Rational]:
        return dict(self.terms)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(v for v, _ in self.terms)

    def __getitem__(self, var: int):
        for v, c in self.terms:
            if v == var:
                return c
        return 0

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def term_count(self) -> int:
        return len(self.terms)

    def __add__(self, other: "LinPoly") -> "LinPoly":
        return LinPoly(self.terms + other.terms)

    def __sub__(self, other: "LinPoly") -> "LinPoly":
        return LinPoly(self.terms + tuple((v, -c) for v, c in other.terms))

    def __neg__(self) -> "LinPoly":
        return LinPoly._raw(tuple((v, -c) for v, c in self.terms))

    def scale(self, k: Rational) -> "LinPoly":
        return LinPoly((v, c * k) for v, c in self.terms)

    __mul__ = scale
    __rmul__ = scale

    def __eq__(self, other):
        return isinstance(other, LinPoly) and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.terms)
        return self._hash

    def evaluate(self, values: Mapping[int, Rational] | list) -> Rational:
        """Evaluate with ``values[var]``; a list is indexed by ``var - 1``."""
        if isinstance(values, Mapping):
            return sum((c * values[v] for v, c in self.terms), 0)
        return sum((c * values[v - 1] for v, c in self.terms), 0)

    def substitute(self, j: int, i: int, d: int) -> "LinPoly":
        return substitute(self, j, i, d)

    def integerize(self) -> "LinPoly":
        return integerize(self)

    def normal_form(self) -> "LinPoly":
        """Integerised, with the lowest-index coefficient positive; same zero set as ``self``."""
        p = integerize(self)
        if p.terms and p.terms[0][1] < 0:
            return LinPoly._raw(tuple((v, -c) for v, c in p.terms))
        return p

    def __str__(self):
        return format_linpoly(self)

    def __repr__(self):
        return f"LinPoly({format_linpoly(self)!r})"


def integerize(p: LinPoly) -> LinPoly:
    """Scale by a positive rational so the coefficients are coprime integers."""
    terms = p.terms
    if not terms:
        return p
    den = 1
    for _, c in terms:
        if type(c) is Fraction:
            den = den * c.denominator // math.gcd(den, c.denominator)
    if den == 1:
        g = 0
        for _, c in terms:
            g = math.gcd(g, c)
        if g == 1:
            return p
        return LinPoly._raw(tuple((v, c // g) for v, c in terms))
    ints = [int(c * den) for _, c in terms]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    return LinPoly._raw(tuple((v, c // g) for (v, _), c in zip(terms, ints)))


def substitute(p: LinPoly, j: int, i: int, d: int) -> LinPoly:
    """Replace ``x_j`` by ``2**d * x_i``."""
    if i == j:
        raise ValueError("substitution needs distinct variables")
    if d < 0:
        raise ValueError("shift must be nonnegative")
    cj = 0
    for v, c in p.terms:
        if v == j:
            cj = c
            break
    if cj == 0:
        return p
    add = cj * (1 << d)
    out = []
    placed = False
    for v, c in p.terms:
        if v == j:
            continue
        if not placed and v >= i:
            placed = True
            if v == i:
                c = _clean(c + add)
                if c != 0:
                    out.append((v, c))
                continue
            out.append((i, add))
        out.append((v, c))
    if not placed:
        out.append((i, add))
    return LinPoly._raw(tuple(out))


def term_count(p: LinPoly) -> int:
    return len(p.terms)


def _fmt_coeff(c) -> str:
    return str(c) if not isinstance(c, Fraction) else f"{c.numerator}/{c.denominator}"


def format_linpoly(p: LinPoly, name: str = "x") -> str:
    if not p.terms:
        return "0"
    parts = []
    for k, (v, c) in enumerate(p.terms):
        sign = "-" if c < 0 else "+"
        a = -c if c < 0 else c
        body = f"{name}{v}" if a == 1 else f"{_fmt_coeff(a)}*{name}{v}"
        if k == 0:
            parts.append(("-" if sign == "-" else "") + body)
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)


_TERM = re.compile(r"\s*([+-]?)\s*(?:(\d+(?:/\d+)?)\s*\*\s*)?([a-z])(\d+)\s*")


def parse_linpoly(text: str) -> LinPoly:
    """Parse the text form written by :func:`format_linpoly`."""
    s = text.strip()
    if s == "0":
        return LinPoly()
    pos = 0
    terms = []
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial at {s[pos:]!r}")
        if pos > 0 and not m.group(1):
            raise ValueError(f"missing operator before {s[pos:]!r}")
        sign, coeff, _, idx = m.groups()
        c = Fraction(coeff) if coeff else Fraction(1)
        terms.append((int(idx), -c if sign == "-" else c))
        pos = m.end()
    return LinPoly(terms)


class ExpExpr(NamedTuple):
    """Exponent expression ``y_root + offset``."""

    root: int
    offset: int = 0

    def shifted(self, d: int) -> "ExpExpr":
        return ExpExpr(self.root, self.offset + d)

    def __str__(self):
        return f"y{self.root}" if self.offset == 0 else f"y{self.root}+{self.offset}"
