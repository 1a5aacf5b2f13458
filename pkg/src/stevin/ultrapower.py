"""Sequences of rationals modulo a filter: a computable slice of Q^N / F.

A :class:`HyperNumber` is generated by an expression in ``n`` built from
rational constants, ``n``, ``(-1)^n``, ``10^n`` and the field operations.
Splitting on the parity of ``n`` turns every such generator into a pair of
rational functions in ``n`` and ``T = 10^n``.  Each of those has an
eventually constant sign, so every comparison set ``{n : u_n < v_n}`` is a
union of parity classes up to a finite set, and the filter oracles below can
decide it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

from .decimals import StevinDigits, to_decimal
from .errors import (
    DivisorVanishesOnLargeSet,
    ExpressionSyntaxError,
    NotFinite,
    Undecided,
    UnsupportedGenerator,
)
from .exact import format_rational, parse_rational, tokenize

# Comparison sets whose finite exceptions reach past this index are refused.
MAX_EXPLICIT_INDEX = 200_000

LARGE, SMALL, UNDECIDED = "LARGE", "SMALL", "UNDECIDED"


# index sets ------------------------------------------------------------------


@dataclass(frozen=True)
class IndexSet:
    """``{n : n mod modulus in residues}`` plus ``added`` minus ``removed``.

    ``added`` lies outside the progression part and ``removed`` inside it.
    Instances are normalized to the smallest modulus, so equal sets compare
    equal.
    """

    modulus: int
    residues: frozenset
    added: frozenset = frozenset()
    removed: frozenset = frozenset()

    def __post_init__(self):
        m = self.modulus
        if m < 1:
            raise ValueError("modulus must be positive")
        res = frozenset(r % m for r in self.residues)
        for d in sorted(_divisors(m)):
            if all(((r + d) % m in res) == (r in res) for r in range(m)):
                m, res = d, frozenset(r for r in res if r < d)
                break
        add = frozenset(a for a in self.added if a >= 0 and a % m not in res)
        rem = frozenset(a for a in self.removed if a >= 0 and a % m in res) - add
        object.__setattr__(self, "modulus", m)
        object.__setattr__(self, "residues", res)
        object.__setattr__(self, "added", add)
        object.__setattr__(self, "removed", rem)

    @classmethod
    def progression(cls, modulus: int, residues: Iterable[int]) -> IndexSet:
        return cls(modulus, frozenset(residues))

    @classmethod
    def finite(cls, elements: Iterable[int]) -> IndexSet:
        return cls(1, frozenset(), frozenset(elements))

    @classmethod
    def cofinite(cls, missing: Iterable[int] = ()) -> IndexSet:
        return cls(1, frozenset({0}), frozenset(), frozenset(missing))

    def __contains__(self, n: int) -> bool:
        if n in self.added:
            return True
        return n % self.modulus in self.residues and n not in self.removed

    def lift(self, modulus: int) -> tuple[frozenset, int]:
        """Residues of the progression part at a multiple of the modulus."""
        if modulus % self.modulus:
            raise ValueError("can only lift to a multiple of the modulus")
        return frozenset(r for r in range(modulus) if r % self.modulus in self.residues), modulus

    def _combine(self, other: IndexSet, op: Callable[[bool, bool], bool]) -> IndexSet:
        m = math.lcm(self.modulus, other.modulus)
        res = frozenset(
            r for r in range(m) if op(r % self.modulus in self.residues, r % other.modulus in other.residues)
        )
        candidates = self.added | self.removed | other.added | other.removed
        add, rem = set(), set()
        for c in candidates:
            member = op(c in self, c in other)
            prog = c % m in res
            if member and not prog:
                add.add(c)
            elif prog and not member:
                rem.add(c)
        return IndexSet(m, res, frozenset(add), frozenset(rem))

    def __and__(self, other: IndexSet) -> IndexSet:
        return self._combine(other, lambda a, b: a and b)

    def __or__(self, other: IndexSet) -> IndexSet:
        return self._combine(other, lambda a, b: a or b)

    def __sub__(self, other: IndexSet) -> IndexSet:
        return self._combine(other, lambda a, b: a and not b)

    def __invert__(self) -> IndexSet:
        every = frozenset(range(self.modulus))
        return IndexSet(self.modulus, every - self.residues, self.removed, self.added)

    def issubset(self, other: IndexSet) -> bool:
        return (self - other).is_empty()

    def is_empty(self) -> bool:
        return not self.residues and not self.added

    def is_finite(self) -> bool:
        return not self.residues

    def is_cofinite(self) -> bool:
        return len(self.residues) == self.modulus

    def __str__(self):
        parts = []
        if self.residues:
            if self.is_cofinite():
                parts.append("N")
            else:
                parts.append("{n = " + ",".join(map(str, sorted(self.residues))) + f" mod {self.modulus}}}")
        if self.added:
            parts.append("+ " + str(sorted(self.added)))
        if self.removed:
            parts.append("- " + str(sorted(self.removed)))
        return " ".join(parts) or "{}"


def _divisors(m: int) -> list[int]:
    return [d for d in range(1, m + 1) if m % d == 0]


EVEN = IndexSet.progression(2, {0})
ODD = IndexSet.progression(2, {1})


@dataclass(frozen=True)
class FilterOracle:
    """Decides membership of index sets in a filter.

    ``FRECHET`` knows only finite (SMALL) and cofinite (LARGE) sets.
    ``POINT`` at an integer ``z`` is the ultrafilter on the progression
    algebra of sets whose residue class contains ``z`` at every modulus;
    finite parts never matter.
    """

    variant: str
    point: int | None = None

    @classmethod
    def frechet(cls) -> FilterOracle:
        return cls("FRECHET")

    @classmethod
    def profinite_point(cls, z: int) -> FilterOracle:
        return cls("POINT", int(z))

    @classmethod
    def parse(cls, text: str) -> FilterOracle:
        t = text.strip().lower()
        if t == "frechet":
            return cls.frechet()
        if t.startswith("point:"):
            try:
                return cls.profinite_point(int(t[6:]))
            except ValueError:
                pass
        raise ValueError(f"unknown filter {text!r}; use 'frechet' or 'point:<integer>'")

    def decide(self, s: IndexSet) -> str:
        if self.variant == "FRECHET":
            if s.is_cofinite():
                return LARGE
            if s.is_finite():
                return SMALL
            return UNDECIDED
        return LARGE if self.point % s.modulus in s.residues else SMALL

    def __str__(self):
        return "frechet" if self.variant == "FRECHET" else f"point:{self.point}"


# rational functions of n and T = 10^n ------------------------------------------

# A polynomial is a dict {(j, k): coeff} for the monomial T^j * n^k.


def _padd(p, q, scale=1):
    out = dict(p)
    for key, c in q.items():
        v = out.get(key, 0) + scale * c
        if v:
            out[key] = v
        else:
            out.pop(key, None)
    return out


def _pmul(p, q):
    out = {}
    for (j1, k1), c1 in p.items():
        for (j2, k2), c2 in q.items():
            key = (j1 + j2, k1 + k2)
            out[key] = out.get(key, 0) + c1 * c2
    return {key: c for key, c in out.items() if c}


def _peval(p, n: int) -> Fraction:
    t = Fraction(10) ** n
    return sum((c * t**j * n**k for (j, k), c in p.items()), Fraction(0))


def _lead(p):
    key = max(p)
    return key, p[key]


def sign_threshold(p) -> int:
    """N such that p(n) is nonzero with the sign of its leading term for n >= N.

    The leading term is the lexicographically largest (T-power, n-power):
    10^n outgrows every power of n.
    """
    if not p:
        raise ValueError("zero polynomial has no eventual sign")
    groups: dict[int, dict[int, Fraction]] = {}
    for (j, k), c in p.items():
        groups.setdefault(j, {})[k] = c
    top = max(groups)
    head = groups.pop(top)
    k = max(head)
    a = abs(head[k])
    lower = sum(abs(c) for kk, c in head.items() if kk < k)
    if not groups:
        if not lower:
            return 1 if k else 0
        bound = 1 + max(abs(c) for kk, c in head.items() if kk < k) / a
        return math.floor(bound) + 1
    rest = sum(abs(c) for g in groups.values() for c in g.values())
    d = max(kk for g in groups.values() for kk in g)
    n = max(1, math.ceil(2 * lower / a), math.ceil((d - k) / math.log(10)) + 1)
    while not a * n**k * 10**n > 2 * rest * n**d:
        n += 1
    return n


@dataclass(frozen=True)
class RatFn:
    """num/den in n and T = 10^n, with the common monomial factor removed."""

    num: tuple
    den: tuple

    @classmethod
    def make(cls, num: dict, den: dict) -> RatFn:
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            return cls((), (((0, 0), Fraction(1)),))
        keys = list(num) + list(den)
        jm = min(j for j, _ in keys)
        km = min(k for _, k in keys)
        _, lc = _lead(den)
        shift = lambda p: {(j - jm, k - km): Fraction(c) / lc for (j, k), c in p.items()}
        return cls(tuple(sorted(shift(num).items())), tuple(sorted(shift(den).items())))

    @classmethod
    def constant(cls, q) -> RatFn:
        return cls.make({(0, 0): Fraction(q)} if q else {}, {(0, 0): Fraction(1)})

    @property
    def p(self):
        return dict(self.num)

    @property
    def q(self):
        return dict(self.den)

    def is_zero(self) -> bool:
        return not self.num

    def constant_value(self) -> Fraction | None:
        if self.is_zero():
            return Fraction(0)
        if list(self.p) == [(0, 0)] and list(self.q) == [(0, 0)]:
            return self.p[(0, 0)] / self.q[(0, 0)]
        return None

    def __add__(self, other: RatFn) -> RatFn:
        return RatFn.make(_padd(_pmul(self.p, other.q), _pmul(other.p, self.q)), _pmul(self.q, other.q))

    def __neg__(self) -> RatFn:
        return RatFn(tuple((key, -c) for key, c in self.num), self.den)

    def __sub__(self, other: RatFn) -> RatFn:
        return self + (-other)

    def __mul__(self, other: RatFn) -> RatFn:
        return RatFn.make(_pmul(self.p, other.p), _pmul(self.q, other.q))

    def reciprocal(self) -> RatFn:
        return RatFn.make(self.q, self.p)

    def __call__(self, n: int) -> Fraction:
        return _peval(self.p, n) / _peval(self.q, n)

    def eventual_sign(self) -> int:
        if self.is_zero():
            return 0
        return (1 if _lead(self.p)[1] > 0 else -1) * (1 if _lead(self.q)[1] > 0 else -1)

    def limit(self) -> Fraction | float:
        """Limit as n -> infinity: a rational, or +/- math.inf."""
        if self.is_zero():
            return Fraction(0)
        (kp, cp), (kq, cq) = _lead(self.p), _lead(self.q)
        if kp > kq:
            return math.inf if cp / cq > 0 else -math.inf
        if kp < kq:
            return Fraction(0)
        return cp / cq

    def threshold(self) -> int:
        t = sign_threshold(self.q)
        return t if self.is_zero() else max(t, sign_threshold(self.p))

    def __str__(self):
        def fmt(p):
            terms = []
            for (j, k), c in sorted(p.items(), reverse=True):
                mono = "*".join(
                    x for x in ((f"10^({j}n)" if j != 1 else "10^n") if j else "", (f"n^{k}" if k != 1 else "n") if k else "") if x
                )
                terms.append(format_rational(c) if not mono else (mono if c == 1 else f"{format_rational(c)}*{mono}"))
            return " + ".join(terms) or "0"

        if self.den == (((0, 0), Fraction(1)),):
            return fmt(self.p)
        return f"({fmt(self.p)})/({fmt(self.q)})"


# hypernumbers ------------------------------------------------------------------


class HyperNumber:
    """Class of a rational sequence, given by its even and odd branches.

    ``start`` is the least index from which both branch denominators are
    nonzero; the representative is 0 below it.  A branch whose divisor was
    identically zero on a filter-small parity class is patched to 0.
    """

    __slots__ = ("even", "odd", "source", "start")

    def __init__(self, even: RatFn, odd: RatFn, source: str | None = None):
        self.even = even
        self.odd = odd
        self.source = source
        self.start = max(_first_safe_index(even, 0), _first_safe_index(odd, 1))

    @property
    def branches(self) -> tuple[RatFn, RatFn]:
        return (self.even, self.odd)

    def __call__(self, n: int) -> Fraction:
        if n < self.start:
            return Fraction(0)
        return self.branches[n % 2](n)

    def terms(self, count: int, first: int = 0) -> list[Fraction]:
        return [self(n) for n in range(first, first + count)]

    def constant_value(self) -> Fraction | None:
        e, o = self.even.constant_value(), self.odd.constant_value()
        return e if e is not None and e == o else None

    def __str__(self):
        if self.source is not None:
            return self.source
        if self.even == self.odd:
            return f"<{self.even}>"
        return f"<even: {self.even}; odd: {self.odd}>"

    def __repr__(self):
        return f"HyperNumber({str(self)!r})"

    @staticmethod
    def _coerce(other) -> HyperNumber | None:
        if isinstance(other, HyperNumber):
            return other
        if isinstance(other, (int, Fraction)):
            return embed(other)
        return None

    def _lift(self, other, op, symbol, swap=False):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = (other, self) if swap else (self, other)
        return HyperNumber(op(a.even, b.even), op(a.odd, b.odd), _join(a, symbol, b))

    def __add__(self, other):
        return self._lift(other, RatFn.__add__, "+")

    def __radd__(self, other):
        return self._lift(other, RatFn.__add__, "+", swap=True)

    def __sub__(self, other):
        return self._lift(other, RatFn.__sub__, "-")

    def __rsub__(self, other):
        return self._lift(other, RatFn.__sub__, "-", swap=True)

    def __mul__(self, other):
        return self._lift(other, RatFn.__mul__, "*")

    def __rmul__(self, other):
        return self._lift(other, RatFn.__mul__, "*", swap=True)

    def __neg__(self):
        return HyperNumber(-self.even, -self.odd, None if self.source is None else f"-({self.source})")

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return div(self, other)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return div(other, self)

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else div(embed(1), self)
        out = embed(1)
        for _ in range(abs(k)):
            out = out * base
        out.source = None if self.source is None else f"({self.source})^{k}"
        return out


def _join(a: HyperNumber, symbol: str, b: HyperNumber) -> str | None:
    if a.source is None or b.source is None:
        return None
    wrap = lambda s: s if s.replace(".", "").replace("/", "").isalnum() else f"({s})"
    return f"{wrap(a.source)} {symbol} {wrap(b.source)}"


def _first_safe_index(f: RatFn, parity: int) -> int:
    """1 + the largest index of this parity where the denominator vanishes."""
    q = f.q
    bound = sign_threshold(q)
    if bound > MAX_EXPLICIT_INDEX:
        raise UnsupportedGenerator(f"denominator zeros not bounded below {MAX_EXPLICIT_INDEX}")
    last = -1
    for n in range(parity, bound, 2):
        if _peval(q, n) == 0:
            last = n
    return last + 1


def div(u: HyperNumber, v: HyperNumber, oracle: FilterOracle | None = None) -> HyperNumber:
    """Quotient in Q^N / F.

    A parity branch where ``v`` is identically zero is patched to 0, which
    needs the active oracle to call that parity class SMALL.  Without an
    oracle only finitely many zeros are tolerated.
    """
    oracle = oracle or FilterOracle.frechet()
    out = []
    for parity, (a, b) in enumerate(zip(u.branches, v.branches)):
        if b.is_zero():
            if oracle.decide((EVEN, ODD)[parity]) != SMALL:
                raise DivisorVanishesOnLargeSet(f"divisor {v} vanishes on every {('even', 'odd')[parity]} index")
            out.append(RatFn.constant(0))
        else:
            out.append(a * b.reciprocal())
    return HyperNumber(out[0], out[1], _join(u, "/", v))


def embed(q) -> HyperNumber:
    q = parse_rational(q) if isinstance(q, str) else Fraction(q)
    c = RatFn.constant(q)
    return HyperNumber(c, c, format_rational(q))


def omega() -> HyperNumber:
    f = RatFn.make({(0, 1): Fraction(1)}, {(0, 0): Fraction(1)})
    return HyperNumber(f, f, "n")


def epsilon() -> HyperNumber:
    f = RatFn.make({(0, 0): Fraction(1)}, {(0, 1): Fraction(1)})
    return HyperNumber(f, f, "1/n")


def alternating() -> HyperNumber:
    """The sequence (-1)^n."""
    return HyperNumber(RatFn.constant(1), RatFn.constant(-1), "(-1)^n")


def ten_power(j: int = 1) -> HyperNumber:
    """The sequence 10^(j n)."""
    f = RatFn.make({(j, 0): Fraction(1)}, {(0, 0): Fraction(1)}) if j >= 0 else RatFn.make(
        {(0, 0): Fraction(1)}, {(-j, 0): Fraction(1)}
    )
    return HyperNumber(f, f, "10^n" if j == 1 else f"10^({j}n)")


# comparisons -----------------------------------------------------------------


def relation_sets(u: HyperNumber, v: HyperNumber) -> dict[str, IndexSet]:
    """Exact index sets where u < v, u = v and u > v."""
    d = HyperNumber(u.even - v.even, u.odd - v.odd)
    bound = max(u.start, v.start, d.start, d.even.threshold(), d.odd.threshold())
    if bound > MAX_EXPLICIT_INDEX:
        raise UnsupportedGenerator(f"sign of {u} - {v} only settles after index {bound}")
    names = {-1: "LT", 0: "EQ", 1: "GT"}
    eventual = [names[d.even.eventual_sign()], names[d.odd.eventual_sign()]]
    exceptions = {"LT": set(), "EQ": set(), "GT": set()}
    for n in range(bound):
        diff = u(n) - v(n)
        rel = names[(diff > 0) - (diff < 0)]
        exceptions[rel].add(n)
    out = {}
    for rel in names.values():
        residues = frozenset(p for p in (0, 1) if eventual[p] == rel)
        low = frozenset(range(bound))
        out[rel] = IndexSet(2, residues, frozenset(exceptions[rel]), low - exceptions[rel])
    return out


def eventual_relation_sets(u: HyperNumber, v: HyperNumber) -> dict[str, IndexSet]:
    """The relation sets of ``relation_sets`` up to finite sets.

    Neither oracle looks at finite parts, so these decide exactly like the
    exact sets while costing nothing when the sign settles late.
    """
    names = {-1: "LT", 0: "EQ", 1: "GT"}
    eventual = [names[(f - g).eventual_sign()] for f, g in zip(u.branches, v.branches)]
    return {rel: IndexSet.progression(2, {p for p in (0, 1) if eventual[p] == rel}) for rel in names.values()}


def compare(u, v, oracle: FilterOracle) -> str:
    """'LT', 'EQ', 'GT', or 'UNDECIDED' when the oracle calls no relation set LARGE."""
    u, v = _as_hyper(u), _as_hyper(v)
    for rel, s in eventual_relation_sets(u, v).items():
        if oracle.decide(s) == LARGE:
            return rel
    return UNDECIDED


def sign(u, oracle: FilterOracle) -> str:
    return {"GT": "POSITIVE", "LT": "NEGATIVE", "EQ": "ZERO", UNDECIDED: UNDECIDED}[compare(u, embed(0), oracle)]


def _as_hyper(x) -> HyperNumber:
    if isinstance(x, HyperNumber):
        return x
    if isinstance(x, str):
        return parse_generator(x)
    return embed(x)


@dataclass(frozen=True)
class Classification:
    kind: str  # INFINITESIMAL, APPRECIABLE, UNLIMITED or UNDECIDED
    st: Fraction | None = None

    def __str__(self):
        if self.kind == "APPRECIABLE":
            return f"APPRECIABLE(st={format_rational(self.st)})"
        return self.kind


def _branch_set(pred: Callable[[RatFn], bool], u: HyperNumber) -> IndexSet:
    """Parity classes whose branch eventually satisfies ``pred``."""
    return IndexSet.progression(2, {p for p, f in enumerate(u.branches) if pred(f)})


def classify(u, oracle: FilterOracle) -> Classification:
    """Infinitesimal, appreciable (with standard part) or unlimited.

    Each branch converges to a rational or diverges, so the set where
    |u_n| < q holds for every q > 0 is, up to finite sets, the union of the
    branches with limit 0; likewise for the other kinds.
    """
    u = _as_hyper(u)
    limits = [f.limit() for f in u.branches]
    if oracle.decide(_branch_set(lambda f: f.limit() == 0, u)) == LARGE:
        return Classification("INFINITESIMAL", Fraction(0))
    if oracle.decide(_branch_set(lambda f: math.isinf(f.limit()), u)) == LARGE:
        return Classification("UNLIMITED")
    for lim in limits:
        if lim != 0 and not math.isinf(lim):
            if oracle.decide(_branch_set(lambda f, lim=lim: f.limit() == lim, u)) == LARGE:
                return Classification("APPRECIABLE", lim)
    return Classification(UNDECIDED)


def standard_part(u, oracle: FilterOracle, digits: int | None = None) -> Fraction | StevinDigits:
    """The rational infinitely close to a finite u; as Stevin digits if asked."""
    c = classify(u, oracle)
    if c.kind == "UNLIMITED":
        raise NotFinite(f"{u} is unlimited")
    if c.kind == UNDECIDED:
        raise Undecided(f"standard part of {u} is not decided by {oracle}")
    return c.st if digits is None else to_decimal(c.st, digits)


def los_check(lhs, rhs, oracle: FilterOracle) -> str:
    """'HOLDS' if {n : lhs_n = rhs_n} is LARGE, 'FAILS' if SMALL, else UNDECIDED."""
    eq = eventual_relation_sets(_as_hyper(lhs), _as_hyper(rhs))["EQ"]
    return {LARGE: "HOLDS", SMALL: "FAILS", UNDECIDED: UNDECIDED}[oracle.decide(eq)]


def rational_trace_check(u, r, oracle: FilterOracle | None = None) -> bool:
    """Whether u equals the embedded rational r in the quotient."""
    return compare(_as_hyper(u), embed(Fraction(r)), oracle or FilterOracle.frechet()) == "EQ"


# parsing -----------------------------------------------------------------------


def parse_generator(text: str, oracle: FilterOracle | None = None) -> HyperNumber:
    """Parse an expression in ``n`` such as ``"(-1)^n/n"`` or ``"(10^n-1)/(3*10^n)"``.

    ``oracle`` governs divisions by sequences that vanish on a parity class.
    """
    h = _GeneratorParser(text, oracle).parse()
    h.source = text.strip()
    return h


class _GeneratorParser:
    def __init__(self, text: str, oracle: FilterOracle | None):
        self.text = text
        self.oracle = oracle
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

    def parse(self) -> HyperNumber:
        value = self.expr()
        if self.peek()[0] != "end":
            self.fail("unexpected input")
        return value

    def expr(self) -> HyperNumber:
        value = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> HyperNumber:
        value = self.unary()
        while self.peek()[0] in ("*", "/", "num", "name", "("):
            kind = self.peek()[0]
            if kind in ("*", "/"):
                self.take()
            rhs = self.unary()
            value = div(value, rhs, self.oracle) if kind == "/" else value * rhs
        return value

    def unary(self) -> HyperNumber:
        if self.peek()[0] == "-":
            self.take()
            return -self.unary()
        if self.peek()[0] == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> HyperNumber:
        base = self.atom()
        if self.peek()[0] != "^":
            return base
        self.take()
        if self.peek()[0] == "name":
            tok = self.take()
            if tok[1] != "n":
                raise ExpressionSyntaxError(f"unsupported variable {tok[1]!r}", self.text, tok[2])
            return self._geometric(base, tok)
        neg = False
        if self.peek()[0] == "(":
            self.take()
            neg = self.peek()[0] == "-"
            if neg:
                self.take()
            k = self.expect("num")
            self.expect(")")
        else:
            k = self.expect("num")
        if "." in k[1]:
            raise ExpressionSyntaxError("non-integer exponent", self.text, k[2])
        e = -int(k[1]) if neg else int(k[1])
        return base**e

    def _geometric(self, base: HyperNumber, tok) -> HyperNumber:
        c = base.constant_value()
        if c is None:
            raise UnsupportedGenerator(f"only constant bases can be raised to the power n (at {tok[2]})")
        mag = abs(c)
        j = 0
        while mag >= 10 and mag.denominator == 1 and mag.numerator % 10 == 0:
            mag /= 10
            j += 1
        while mag < 1 and mag.numerator == 1 and mag.denominator % 10 == 0:
            mag *= 10
            j -= 1
        if mag != 1:
            raise UnsupportedGenerator(f"base {c} is not a signed power of 10")
        out = ten_power(j) if j else embed(1)
        return out * alternating() if c < 0 else out

    def atom(self) -> HyperNumber:
        tok = self.peek()
        if tok[0] == "num":
            self.take()
            return embed(parse_rational(tok[1]))
        if tok[0] == "name":
            self.take()
            if tok[1] != "n":
                raise ExpressionSyntaxError(f"unsupported variable {tok[1]!r}", self.text, tok[2])
            return omega()
        if tok[0] == "(":
            self.take()
            value = self.expr()
            self.expect(")")
            return value
        self.fail("expected a number, 'n' or '('")
