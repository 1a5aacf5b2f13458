"""Infinitesimals of arbitrary rational order over a base infinitesimal ``i``.

A :class:`SeriesNumber` is a finite sum of terms ``c * i**a`` with rational
exponents.  An inexact series also carries a truncation exponent ``T``: the
true value differs from the shown terms by something of order at least
``T``.  ``truncation=None`` marks an exact series.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

import mpmath

from .errors import (
    Inconclusive,
    NegativeLeadingCoefficient,
    NonRationalSquareRoot,
    ExpressionSyntaxError,
    Unlimited,
)
from .exact import as_polynomial, format_rational, parse_rational, poly_eval, tokenize


def _min_trunc(*ts):
    known = [t for t in ts if t is not None]
    return min(known) if known else None


class SeriesNumber:
    """Immutable truncated series in the base infinitesimal ``i``."""

    __slots__ = ("terms", "truncation")

    def __init__(self, terms: Iterable[tuple] | Mapping = (), truncation=None):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Fraction, Fraction] = {}
        for e, c in items:
            e = Fraction(e)
            acc[e] = acc.get(e, Fraction(0)) + Fraction(c)
        t = None if truncation is None else Fraction(truncation)
        kept = tuple(sorted((e, c) for e, c in acc.items() if c != 0 and (t is None or e < t)))
        object.__setattr__(self, "terms", kept)
        object.__setattr__(self, "truncation", t)

    def __setattr__(self, name, value):
        raise AttributeError("SeriesNumber is immutable")

    @classmethod
    def constant(cls, q) -> SeriesNumber:
        return cls(((0, q),))

    @property
    def exact(self) -> bool:
        return self.truncation is None

    @property
    def leading(self) -> tuple[Fraction, Fraction] | None:
        return self.terms[0] if self.terms else None

    def _valuation_bound(self):
        """Lower bound on the order of the true value (None for exact zero)."""
        if self.terms:
            return self.terms[0][0]
        return self.truncation

    def coefficient(self, e) -> Fraction:
        return dict(self.terms).get(Fraction(e), Fraction(0))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = SeriesNumber.constant(other)
        if not isinstance(other, SeriesNumber):
            return NotImplemented
        return self.terms == other.terms and self.truncation == other.truncation

    def __hash__(self):
        return hash((self.terms, self.truncation))

    def __repr__(self):
        return f"SeriesNumber({str(self)!r})"

    def __str__(self):
        parts = []
        for e, c in self.terms:
            mag = abs(c)
            if e == 0:
                body = format_rational(mag)
            else:
                mono = _format_power(e)
                body = mono if mag == 1 else f"{format_rational(mag)}*{mono}"
            if parts:
                parts.append(("- " if c < 0 else "+ ") + body)
            else:
                parts.append(("-" if c < 0 else "") + body)
        if self.truncation is not None:
            parts.append(("+ " if parts else "") + f"O({_format_power(self.truncation)})")
        return " ".join(parts) or "0"

    # arithmetic ------------------------------------------------------------

    @staticmethod
    def _coerce(other) -> SeriesNumber | None:
        if isinstance(other, SeriesNumber):
            return other
        if isinstance(other, (int, Fraction)):
            return SeriesNumber.constant(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return SeriesNumber(self.terms + other.terms, _min_trunc(self.truncation, other.truncation))

    __radd__ = __add__

    def __neg__(self):
        return SeriesNumber(((e, -c) for e, c in self.terms), self.truncation)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        vx, vy = self._valuation_bound(), other._valuation_bound()
        if (vx is None and self.exact) or (vy is None and other.exact):
            return SeriesNumber()
        bounds = []
        if self.truncation is not None:
            bounds.append(self.truncation + vy)
        if other.truncation is not None:
            bounds.append(other.truncation + vx)
        t = min(bounds) if bounds else None
        return SeriesNumber(_mul_terms(self.terms, other.terms, t), t)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        if not isinstance(other, SeriesNumber):
            return NotImplemented
        return self * inv(other)

    def __rtruediv__(self, other):
        return inv(self) * other

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return inv(self) ** (-k)
        out = SeriesNumber.constant(1)
        for _ in range(k):
            out = out * self
        return out

    # ordering --------------------------------------------------------------

    def sign(self) -> int:
        """Sign of the leading coefficient; the order of a non-Archimedean field."""
        if self.terms:
            return 1 if self.terms[0][1] > 0 else -1
        if self.exact:
            return 0
        raise Inconclusive(f"sign of {self} is hidden below the truncation")

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0


def _mul_terms(a, b, limit=None):
    out: dict[Fraction, Fraction] = {}
    for e1, c1 in a:
        for e2, c2 in b:
            e = e1 + e2
            if limit is None or e < limit:
                out[e] = out.get(e, Fraction(0)) + c1 * c2
    return out


def _format_power(e: Fraction) -> str:
    if e == 1:
        return "i"
    if e.denominator == 1 and e > 0:
        return f"i^{e.numerator}"
    return f"i^({format_rational(e)})"


def from_rational(q) -> SeriesNumber:
    return SeriesNumber.constant(q)


def base_i() -> SeriesNumber:
    return SeriesNumber(((1, 1),))


def _normalized_tail(x: SeriesNumber):
    """Split x = c * i**a * (1 + u); returns (a, c, u-terms, u-truncation)."""
    if not x.terms:
        raise ZeroDivisionError(f"{x} has no leading term")
    a, c = x.terms[0]
    u = tuple((e - a, v / c) for e, v in x.terms[1:])
    ut = None if x.truncation is None else x.truncation - a
    return a, c, u, ut


def _binomial_series(u, coefficients, limit):
    """Sum of coefficients[k] * u**k, dropping exponents >= limit."""
    total: dict[Fraction, Fraction] = {Fraction(0): Fraction(1)} if limit > 0 else {}
    power = ((Fraction(0), Fraction(1)),)
    k = 0
    while True:
        k += 1
        power = tuple(sorted(_mul_terms(power, u, limit).items()))
        power = tuple((e, c) for e, c in power if c != 0)
        if not power:
            return total
        ck = coefficients(k)
        for e, c in power:
            total[e] = total.get(e, Fraction(0)) + ck * c


def inv(x: SeriesNumber, want_T=None) -> SeriesNumber:
    """Reciprocal by leading-term division and a geometric series.

    ``want_T`` is the truncation of the result; it may be omitted when the
    reciprocal is a monomial or when ``x`` is itself truncated.
    """
    a, c, u, ut = _normalized_tail(x)
    bounds = [] if want_T is None else [Fraction(want_T)]
    if x.truncation is not None:
        bounds.append(x.truncation - 2 * a)
    t = min(bounds) if bounds else None
    if not u and x.exact:
        return SeriesNumber(((-a, 1 / c),))
    if t is None:
        raise ValueError(f"inverse of {x} is an infinite series; give want_T")
    limit = t + a
    tail = _binomial_series(u, lambda k: Fraction(-1) ** k, limit)
    return SeriesNumber(((e - a, v / c) for e, v in tail.items()), t)


def _rational_sqrt(q: Fraction) -> Fraction:
    rn, rd = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if rn * rn != q.numerator or rd * rd != q.denominator:
        raise NonRationalSquareRoot(f"{q} is not the square of a rational")
    return Fraction(rn, rd)


def _half_binomial(k: int) -> Fraction:
    """binomial(1/2, k)."""
    out = Fraction(1)
    for j in range(k):
        out *= (Fraction(1, 2) - j) / (j + 1)
    return out


def sqrt(x: SeriesNumber, want_T=None) -> SeriesNumber:
    """Square root with halved leading exponent, by binomial expansion.

    The result is marked exact when the expansion terminates, i.e. when its
    square reproduces an exact ``x``.
    """
    if not x.terms:
        if x.exact:
            return SeriesNumber()
        raise Inconclusive(f"leading term of {x} is unknown")
    a, c, u, ut = _normalized_tail(x)
    if c < 0:
        raise NegativeLeadingCoefficient(f"leading coefficient of {x} is negative")
    root_c = _rational_sqrt(c)
    bounds = [] if want_T is None else [Fraction(want_T)]
    if x.truncation is not None:
        bounds.append(x.truncation - a / 2)
    t = min(bounds) if bounds else None
    if not u and x.exact:
        return SeriesNumber(((a / 2, root_c),))
    if t is None:
        raise ValueError(f"square root of {x} may be an infinite series; give want_T")
    tail = _binomial_series(u, _half_binomial, t - a / 2)
    result = SeriesNumber(((e + a / 2, v * root_c) for e, v in tail.items()), t)
    if x.exact:
        candidate = SeriesNumber(result.terms)
        if candidate * candidate == x:
            return candidate
    return result


@dataclass(frozen=True)
class OrderValue:
    kind: str  # "FINITE", "ORDER_INFINITE" or "ORDER_UNDEFINED_ZERO"
    value: Fraction | None = None

    @classmethod
    def finite(cls, a) -> OrderValue:
        return cls("FINITE", Fraction(a))

    def __str__(self):
        if self.kind == "FINITE":
            return f"FINITE({format_rational(self.value)})"
        return self.kind


ORDER_INFINITE = OrderValue("ORDER_INFINITE")
ORDER_UNDEFINED_ZERO = OrderValue("ORDER_UNDEFINED_ZERO")


def order(x: SeriesNumber) -> OrderValue:
    """Leading exponent.  A series with no known terms gets no order."""
    if not x.terms:
        return ORDER_UNDEFINED_ZERO
    return OrderValue.finite(x.terms[0][0])


def st(x: SeriesNumber) -> Fraction:
    """Standard part: the exponent-0 coefficient of a finite series."""
    if x.terms and x.terms[0][0] < 0:
        raise Unlimited(f"{x} is infinitely large")
    if x.truncation is not None and x.truncation <= 0:
        raise Inconclusive(f"constant term of {x} is below the truncation")
    return x.coefficient(0)


def deriv_at(p, x0) -> Fraction:
    """st((p(x0 + i) - p(x0)) / i), computed exactly."""
    p = as_polynomial(p)
    x0 = Fraction(x0)
    dy = poly_eval(p, from_rational(x0) + base_i()) - p(x0)
    if isinstance(dy, Fraction):  # constant polynomial
        return Fraction(0)
    return st(dy / base_i())


# numeric order estimation ----------------------------------------------------


@dataclass(frozen=True)
class CatalogFunction:
    """Functions of ``i`` with no finite series: e^(-1/i), 1/log i, and i^a."""

    tag: str  # "EXP_NEG_INV", "INV_LOG" or "MONOMIAL"
    exponent: Fraction | None = None

    @classmethod
    def parse(cls, text: str) -> CatalogFunction:
        name, _, arg = text.strip().partition(":")
        name = name.upper().replace("-", "_")
        if name == "MONOMIAL":
            return cls("MONOMIAL", parse_rational(arg))
        if name in ("EXP_NEG_INV", "INV_LOG") and not arg:
            return cls(name)
        raise ValueError(f"unknown catalog function {text!r}")

    def log10_abs(self, i: mpmath.mpf) -> mpmath.mpf:
        if self.tag == "EXP_NEG_INV":
            return mpmath.log10(mpmath.exp(-1 / i))
        if self.tag == "INV_LOG":
            return mpmath.log10(abs(1 / mpmath.log(i)))
        if self.tag == "MONOMIAL":
            a = mpmath.mpf(self.exponent.numerator) / self.exponent.denominator
            return mpmath.log10(i**a)
        raise ValueError(self.tag)

    def __str__(self):
        if self.tag == "MONOMIAL":
            return f"MONOMIAL({format_rational(self.exponent)})"
        return self.tag


@dataclass(frozen=True)
class OrderEstimate:
    """Numeric order estimate with the probe bracket that supports it."""

    order: OrderValue
    lower: Fraction | None = None
    upper: Fraction | None = None
    trends: dict = field(default_factory=dict, compare=False)

    def __str__(self):
        lo = "-inf" if self.lower is None else format_rational(self.lower)
        hi = "inf" if self.upper is None else format_rational(self.upper)
        return f"{self.order} (bracket ({lo}, {hi}))"


def _log_table(f: CatalogFunction, depth: int, dps: int):
    with mpmath.workdps(dps):
        return [f.log10_abs(mpmath.mpf(10) ** -m) for m in range(1, depth + 1)]


def _trend(values, err, start):
    """'zero', 'infinite' or None from the tail differences of log10 values."""
    diffs = [values[j + 1] - values[j] for j in range(start, len(values) - 1)]
    if any(abs(d) < 10 * err for d in diffs):
        return "unresolved"
    if all(d < 0 for d in diffs):
        return "zero"
    if all(d > 0 for d in diffs):
        return "infinite"
    return None


def estimate_order_numeric(f: CatalogFunction, r_probes, depth: int = 8, dps: int = 30) -> OrderEstimate:
    """Classify f(i)/i^r -> 0 or -> infinity at i = 10^-m, m = 1..depth.

    Trends are read from the second half of the depth range.  Working
    precision is doubled until every step in that range exceeds ten times
    the disagreement between two precisions.
    """
    probes = sorted({Fraction(r) for r in r_probes})
    if not probes:
        raise ValueError("need at least one probe exponent")
    if depth < 4:
        raise ValueError("depth must be at least 4")
    start = depth // 2 - 1
    for _ in range(5):
        coarse = _log_table(f, depth, dps)
        fine = _log_table(f, depth, 2 * dps)
        err = max(abs(x - y) for x, y in zip(coarse, fine)) + mpmath.mpf(10) ** (-dps)
        values = fine
        ms = range(1, depth + 1)
        trends = {
            r: _trend([v + mpmath.mpf(r.numerator) / r.denominator * m for v, m in zip(values, ms)], err, start)
            for r in probes
        }
        self_trend = _trend(values, err, start)
        if "unresolved" not in trends.values() and self_trend != "unresolved":
            break
        dps *= 2
    else:
        raise Inconclusive("trend not resolvable at any tried precision")
    if any(t is None for t in trends.values()):
        raise Inconclusive(f"non-monotone trend within depth {depth}: {trends}")
    to_zero = [r for r in probes if trends[r] == "zero"]
    to_inf = [r for r in probes if trends[r] == "infinite"]
    if to_zero and to_inf and max(to_zero) > min(to_inf):
        raise Inconclusive(f"probe classifications are not monotone in r: {trends}")
    slopes = [values[j] - values[j + 1] for j in range(start, depth - 1)]
    lower = max(to_zero) if to_zero else None
    upper = min(to_inf) if to_inf else None
    shown = {format_rational(r): t for r, t in trends.items()}
    if upper is None:
        if all(s2 - s1 > 10 * err for s1, s2 in zip(slopes, slopes[1:])):
            return OrderEstimate(ORDER_INFINITE, lower, None, shown)
        return OrderEstimate(OrderValue.finite(_rationalize(slopes[-1])), lower, None, shown)
    if lower is None:
        if self_trend == "zero" and upper > 0:
            if all(s1 - s2 > 10 * err for s1, s2 in zip(slopes, slopes[1:])):
                return OrderEstimate(OrderValue.finite(0), Fraction(0), upper, shown)
            return OrderEstimate(OrderValue.finite(_rationalize(slopes[-1])), Fraction(0), upper, shown)
        raise Inconclusive(f"every probe diverges and f does not tend to 0: {trends}")
    guess = _rationalize(slopes[-1])
    if not lower < guess < upper:
        guess = (lower + upper) / 2
    return OrderEstimate(OrderValue.finite(guess), lower, upper, shown)


def _rationalize(x) -> Fraction:
    return Fraction(mpmath.nstr(x, 12)).limit_denominator(1000)


# parsing ---------------------------------------------------------------------


def parse_series(text: str) -> SeriesNumber:
    """Read ``"i^3 + 5*i^5"``, ``"1 + i"``, ``"3/2*i^(1/2)"`` or ``"i^(-2) + O(i^4)"``."""
    return _SeriesParser(text).parse()


class _SeriesParser:
    def __init__(self, text):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, message):
        raise ExpressionSyntaxError(message, self.text, self.peek()[2])

    def expect(self, kind):
        if self.peek()[0] != kind:
            self.fail(f"expected {kind!r}")
        return self.take()

    def parse(self) -> SeriesNumber:
        terms, trunc = [], None
        sign = 1
        if self.peek()[0] in ("+", "-"):
            sign = -1 if self.take()[0] == "-" else 1
        while True:
            if self.peek()[0] == "name" and self.peek()[1] == "O":
                self.take()
                self.expect("(")
                _, e = self.power()
                self.expect(")")
                trunc = e if trunc is None else min(trunc, e)
            else:
                c, e = self.term()
                terms.append((e, sign * c))
            kind = self.peek()[0]
            if kind == "end":
                return SeriesNumber(terms, trunc)
            if kind not in ("+", "-"):
                self.fail("expected '+' or '-'")
            sign = -1 if self.take()[0] == "-" else 1

    def term(self):
        coeff = None
        if self.peek()[0] == "num":
            coeff = self.rational()
            if self.peek()[0] == "*":
                self.take()
            elif self.peek()[0] != "name":
                return coeff, Fraction(0)
        _, e = self.power()
        return (Fraction(1) if coeff is None else coeff), e

    def rational(self) -> Fraction:
        tok = self.expect("num")
        value = parse_rational(tok[1])
        if self.peek()[0] == "/":
            self.take()
            den = self.expect("num")
            value = value / parse_rational(den[1])
        return value

    def power(self):
        tok = self.expect("name")
        if tok[1] != "i":
            raise ExpressionSyntaxError(f"unsupported variable {tok[1]!r}", self.text, tok[2])
        if self.peek()[0] != "^":
            return tok, Fraction(1)
        self.take()
        if self.peek()[0] == "(":
            self.take()
            neg = self.peek()[0] == "-"
            if neg:
                self.take()
            e = self.rational()
            self.expect(")")
            return tok, -e if neg else e
        neg = self.peek()[0] == "-"
        if neg:
            self.take()
        e = Fraction(int(self.expect("num")[1]))
        return tok, -e if neg else e


__all__ = [
    "SeriesNumber",
    "OrderValue",
    "OrderEstimate",
    "CatalogFunction",
    "ORDER_INFINITE",
    "ORDER_UNDEFINED_ZERO",
    "from_rational",
    "base_i",
    "inv",
    "sqrt",
    "order",
    "st",
    "deriv_at",
    "estimate_order_numeric",
    "parse_series",
]
