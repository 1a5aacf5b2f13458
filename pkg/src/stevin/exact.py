"""Exact scalars and rational-coefficient polynomials in one variable.

Rationals are :class:`fractions.Fraction`, which is always stored in lowest
terms with a positive denominator, so structural equality is value equality.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import PolynomialSyntaxError

Rational = Fraction

_RATIONAL_RE = re.compile(r"^\s*([+-]?)\s*(\d+)(?:\.(\d+)|/(\d+))?\s*$")


def parse_rational(text: str | int | Fraction) -> Fraction:
    """Read ``"3"``, ``"-3/2"`` or ``"0.25"`` as an exact rational."""
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise ValueError(f"not a rational literal: {text!r}")
    sign, whole, frac, den = m.groups()
    if frac is not None:
        value = Fraction(int(whole + frac), 10 ** len(frac))
    elif den is not None:
        if int(den) == 0:
            raise ZeroDivisionError(f"zero denominator in {text!r}")
        value = Fraction(int(whole), int(den))
    else:
        value = Fraction(int(whole))
    return -value if sign == "-" else value


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class Polynomial:
    """Dense polynomial; ``coeffs[k]`` multiplies ``x**k``.

    Trailing zero coefficients are stripped, so the zero polynomial has an
    empty coefficient tuple and degree -1.
    """

    coeffs: tuple[Fraction, ...] = ()

    def __post_init__(self):
        cs = [Fraction(c) for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def from_roots(cls, roots: Iterable[Fraction], lead: Fraction = Fraction(1)) -> Polynomial:
        p = cls((lead,))
        for r in roots:
            p = p * cls((-Fraction(r), Fraction(1)))
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x):
        return poly_eval(self, x)

    def __add__(self, other: Polynomial) -> Polynomial:
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return Polynomial(tuple(x + y for x, y in zip(a, b)))

    def __neg__(self) -> Polynomial:
        return Polynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other: Polynomial) -> Polynomial:
        return self + (-other)

    def __mul__(self, other: Polynomial | Fraction | int) -> Polynomial:
        if not isinstance(other, Polynomial):
            return Polynomial(tuple(c * other for c in self.coeffs))
        if self.is_zero() or other.is_zero():
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(tuple(out))

    __rmul__ = __mul__

    def derivative(self) -> Polynomial:
        return Polynomial(tuple(k * c for k, c in enumerate(self.coeffs) if k))

    def deflate(self, root: Fraction) -> tuple[Polynomial, Fraction]:
        """Synthetic division by ``x - root``; returns (quotient, remainder)."""
        if self.is_zero():
            return Polynomial(), Fraction(0)
        acc = Fraction(0)
        quotient = []
        for c in reversed(self.coeffs):
            acc = acc * root + c
            quotient.append(acc)
        remainder = quotient.pop()
        return Polynomial(tuple(reversed(quotient))), remainder

    def range_bound(self, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
        """Rational interval containing ``p(x)`` for every ``x`` in [lo, hi]."""
        acc_lo = acc_hi = Fraction(0)
        for c in reversed(self.coeffs):
            products = (acc_lo * lo, acc_lo * hi, acc_hi * lo, acc_hi * hi)
            acc_lo, acc_hi = min(products) + c, max(products) + c
        return acc_lo, acc_hi

    def __str__(self) -> str:
        return format_polynomial(self)


def poly_eval(p: Polynomial, x):
    """Horner evaluation. ``x`` may be any ring element that mixes with Fraction."""
    acc = Fraction(0)
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


def sign_change(p: Polynomial, a: Fraction, b: Fraction) -> bool:
    """True iff p(a) and p(b) are nonzero with opposite signs.

    An exact root at either endpoint gives False; callers check endpoints first.
    """
    if not a < b:
        raise ValueError("sign_change needs a < b")
    return p(a) * p(b) < 0


def format_polynomial(p: Polynomial, var: str = "x") -> str:
    if p.is_zero():
        return "0"
    parts = []
    for k in range(p.degree, -1, -1):
        c = p.coeffs[k]
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = format_rational(mag)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if mag == 1 else f"{format_rational(mag)}*{mono}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)


_TOKEN_RE = re.compile(r"\s*(?:(\d+(?:\.\d+)?)|([A-Za-z_]\w*)|(.))")


def tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:  # only trailing whitespace left
            break
        num, name, sym = m.groups()
        start = m.start(m.lastindex)
        if num is not None:
            tokens.append(("num", num, start))
        elif name is not None:
            tokens.append(("name", name, start))
        elif sym in "+-*/^()":
            tokens.append((sym, sym, start))
        else:
            raise PolynomialSyntaxError(f"unexpected character {sym!r}", text, start)
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _PolyParser:
    def __init__(self, text: str, var: str):
        self.text = text
        self.var = var
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, message, tok=None):
        tok = tok or self.peek()
        raise PolynomialSyntaxError(message, self.text, tok[2])

    def parse(self) -> Polynomial:
        total: dict[int, Fraction] = {}
        sign = 1
        if self.peek()[0] in ("+", "-"):
            sign = -1 if self.take()[0] == "-" else 1
        while True:
            coeff, power = self.term()
            total[power] = total.get(power, Fraction(0)) + sign * coeff
            kind = self.peek()[0]
            if kind == "end":
                break
            if kind not in ("+", "-"):
                self.fail("expected '+' or '-'")
            sign = -1 if self.take()[0] == "-" else 1
        if not total:
            return Polynomial()
        dense = [Fraction(0)] * (max(total) + 1)
        for k, c in total.items():
            dense[k] = c
        return Polynomial(tuple(dense))

    def term(self) -> tuple[Fraction, int]:
        coeff = None
        if self.peek()[0] == "num":
            coeff = self.coeff()
        if self.peek()[0] == "*":
            if coeff is None:
                self.fail("'*' without a coefficient")
            self.take()
            if self.peek()[0] != "name":
                self.fail(f"expected {self.var!r} after '*'")
        if self.peek()[0] == "name":
            tok = self.take()
            if tok[1] != self.var:
                self.fail(f"unsupported variable {tok[1]!r}", tok)
            power = 1
            if self.peek()[0] == "^":
                self.take()
                power = self.exponent()
            return (Fraction(1) if coeff is None else coeff), power
        if coeff is None:
            self.fail("expected a coefficient or variable")
        return coeff, 0

    def coeff(self) -> Fraction:
        tok = self.take()
        value = parse_rational(tok[1])
        if self.peek()[0] == "/":
            if "." in tok[1]:
                self.fail("decimal numerator in fraction")
            self.take()
            den = self.peek()
            if den[0] != "num" or "." in den[1]:
                self.fail("expected natural denominator")
            self.take()
            if int(den[1]) == 0:
                self.fail("zero denominator", den)
            value = Fraction(int(tok[1]), int(den[1]))
        return value

    def exponent(self) -> int:
        tok = self.peek()
        if tok[0] == "-":
            self.fail("non-integer exponent (negative)")
        if tok[0] != "num":
            self.fail("expected exponent")
        self.take()
        if "." in tok[1] or self.peek()[0] == "/":
            self.fail("non-integer exponent", tok)
        return int(tok[1])


def poly_parse(text: str, var: str = "x") -> Polynomial:
    """Parse ``"x^3 - 2*x - 5"``-style input; decimals become exact rationals."""
    return _PolyParser(text, var).parse()


def as_polynomial(p: Polynomial | str | Sequence) -> Polynomial:
    if isinstance(p, Polynomial):
        return p
    if isinstance(p, str):
        return poly_parse(p)
    return Polynomial(tuple(p))
