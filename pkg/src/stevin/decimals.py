"""Decimal enclosures, Stevin's ten-way root algorithm and Cauchy bisection.

Both root finders are the same procedure with a different number of parts:
the bracket is cut into ``parts`` equal pieces, scanned left to right, and
the search descends into the first piece whose endpoints change sign (or
stops on an exact root).  ``parts=10`` gains one decimal digit per step,
``parts=2`` one bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

from .errors import BudgetExhausted, NoSignChange
from .exact import as_polynomial

DEFAULT_MAX_STEPS = 10000


def _sign(q: Fraction) -> int:
    return (q > 0) - (q < 0)


def _floor(q: Fraction) -> int:
    return q.numerator // q.denominator


def _ceil(q: Fraction) -> int:
    return -((-q.numerator) // q.denominator)


@dataclass(frozen=True)
class StevinDigits:
    """A finite Stevin decimal: sign, integer part and fractional digits.

    ``exact`` is set when the shown decimal equals the number itself; otherwise
    the digits are the truncation toward zero of a longer expansion.
    """

    negative: bool
    integer: int
    digits: tuple[int, ...]
    exact: bool

    @property
    def value(self) -> Fraction:
        scaled = self.integer * 10 ** len(self.digits) + int("".join(map(str, self.digits)) or 0)
        v = Fraction(scaled, 10 ** len(self.digits))
        return -v if self.negative else v

    def __str__(self) -> str:
        s = ("-" if self.negative else "") + str(self.integer)
        if self.digits:
            s += "." + "".join(map(str, self.digits))
        return s


def to_decimal(q: Fraction, n: int) -> StevinDigits:
    """Long division of ``q`` to ``n`` fractional digits, truncating toward zero."""
    if n < 0:
        raise ValueError("n must be non-negative")
    q = Fraction(q)
    mag = abs(q)
    scaled, rem = divmod(mag.numerator * 10**n, mag.denominator)
    integer, frac = divmod(scaled, 10**n)
    digits = tuple(int(c) for c in str(frac).zfill(n)) if n else ()
    return StevinDigits(q < 0, integer, digits, rem == 0)


def _trimmed(d: StevinDigits) -> StevinDigits:
    if not d.exact:
        return d
    digits = list(d.digits)
    while digits and digits[-1] == 0:
        digits.pop()
    return StevinDigits(d.negative, d.integer, tuple(digits), True)


def rank_digit(x: Fraction, k: int) -> int:
    """The k-th fractional digit of |x|."""
    return _floor(abs(x) * 10**k) % 10


@dataclass(frozen=True)
class Bracket:
    """Closed rational interval produced at ``step`` of a root search.

    A degenerate bracket (``lo == hi``) marks an exact root.
    """

    lo: Fraction
    hi: Fraction
    step: int = 0

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi


class EnclosureStream:
    """Pull-based iterator of nested brackets around a root of ``p``.

    Step 0 is the starting bracket itself.  Each later step divides the
    current bracket into ``parts`` equal pieces.  The stream ends after an
    exact root is hit and otherwise never ends.
    """

    def __init__(self, p, a, b, parts: int):
        self.p = as_polynomial(p)
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.parts = parts
        if parts < 2:
            raise ValueError("parts must be at least 2")
        if not self.a < self.b:
            raise ValueError("bracket needs a < b")
        fa, fb = self.p(self.a), self.p(self.b)
        if fa != 0 and fb != 0 and _sign(fa) == _sign(fb):
            raise NoSignChange(f"{self.p} has no sign change on [{self.a}, {self.b}]")

    def __iter__(self) -> Iterator[Bracket]:
        p, lo, hi = self.p, self.a, self.b
        flo = p(lo)
        if flo == 0:
            yield Bracket(lo, lo, 0)
            return
        if p(hi) == 0:
            yield Bracket(hi, hi, 0)
            return
        yield Bracket(lo, hi, 0)
        step = 0
        while True:
            step += 1
            h = (hi - lo) / self.parts
            prev, fprev = lo, flo
            for j in range(1, self.parts):
                x = lo + j * h
                fx = p(x)
                if fx == 0:
                    yield Bracket(x, x, step)
                    return
                if _sign(fx) != _sign(fprev):
                    lo, hi, flo = prev, x, fprev
                    break
                prev, fprev = x, fx
            else:
                lo, flo = prev, fprev
            yield Bracket(lo, hi, step)

    def _reachable(self, x: Fraction) -> bool:
        # Every bracket endpoint is a + j*(b-a)/parts**m.
        t = (x - self.a) / (self.b - self.a)
        den = t.denominator
        for prime in _prime_factors(self.parts):
            while den % prime == 0:
                den //= prime
        return den == 1

    def certify_grid_point(self, g: Fraction, bracket: Bracket) -> bool:
        """Prove that ``g`` stays strictly inside every later bracket.

        Holds when no bracket endpoint can ever equal ``g`` and ``g`` is the
        only root of ``p`` in ``bracket``: the search must then keep ``g``
        in the interior forever.
        """
        if not bracket.lo < g < bracket.hi or self._reachable(g):
            return False
        quotient, remainder = self.p.deflate(g)
        if remainder != 0:
            return False
        q_lo, q_hi = quotient.range_bound(bracket.lo, bracket.hi)
        return q_lo > 0 or q_hi < 0


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def stevin_enclosures(p, a, b) -> EnclosureStream:
    return EnclosureStream(p, a, b, 10)


def bisection_enclosures(p, a, b) -> EnclosureStream:
    return EnclosureStream(p, a, b, 2)


def _exact_root_digits(r: Fraction, n_digits: int) -> StevinDigits:
    return _trimmed(to_decimal(r, n_digits))


def stevin_root(p, a, b, n_digits: int, max_steps: int = DEFAULT_MAX_STEPS) -> StevinDigits:
    """First ``n_digits`` decimal digits of a root of ``p`` in [a, b].

    Runs ten-way subdivision until the bracket is at most one unit of the
    last digit wide.  If a decimal grid point of that rank is still inside,
    its sign decides the digit (or it is the root itself).
    """
    if n_digits < 1:
        raise ValueError("n_digits must be positive")
    p = as_polynomial(p)
    scale = 10**n_digits
    stream = stevin_enclosures(p, a, b)
    for br in stream:
        if br.exact:
            return _exact_root_digits(br.lo, n_digits)
        if br.width * scale <= 1:
            break
        if br.step >= max_steps:
            raise BudgetExhausted(f"no {n_digits}-digit bracket after {max_steps} steps")
    lo, hi = br.lo, br.hi
    for j in range(_floor(lo * scale) + 1, _ceil(hi * scale)):
        g = Fraction(j, scale)
        fg = p(g)
        if fg == 0:
            return _exact_root_digits(g, n_digits)
        if _sign(fg) == _sign(p(lo)):
            lo = g
        else:
            hi = g
            break
    # the root now lies in the open cell (cell, cell + 1) / scale
    cell = _floor(lo * scale)
    t = cell if cell >= 0 else cell + 1
    integer, frac = divmod(abs(t), scale)
    digits = tuple(int(c) for c in str(frac).zfill(n_digits))
    return StevinDigits(cell < 0, integer, digits, False)


def cauchy_bisect(p, a, b, tol, max_steps: int = DEFAULT_MAX_STEPS) -> Bracket:
    """Halve [a, b] until it is at most ``tol`` wide; ``step`` counts halvings."""
    tol = Fraction(tol)
    if tol <= 0:
        raise ValueError("tol must be positive")
    for br in bisection_enclosures(p, a, b):
        if br.exact or br.width <= tol:
            return br
        if br.step >= max_steps:
            raise BudgetExhausted(f"width {tol} not reached in {max_steps} steps")
    raise AssertionError("unreachable")


@dataclass(frozen=True)
class StabilityReport:
    """Fate of the digit at ``rank`` along an enclosure stream.

    ``status`` is ``"STABILIZED"`` (``digit`` fixed from ``iteration`` on) or
    ``"STRADDLES_GRID"`` (``grid_point`` proven to stay strictly inside).
    """

    rank: int
    status: str
    iteration: int
    digit: int | None = None
    grid_point: Fraction | None = None

    def __str__(self) -> str:
        if self.status == "STABILIZED":
            return f"STABILIZED(rank={self.rank}, digit={self.digit}, iteration={self.iteration})"
        return f"STRADDLES_GRID(rank={self.rank}, grid_point={self.grid_point}, iteration={self.iteration})"


def digit_stability(
    enclosures: Iterable[Bracket | tuple[Fraction, Fraction]],
    k: int,
    max_steps: int = DEFAULT_MAX_STEPS,
) -> StabilityReport:
    """Watch the k-th decimal digit along nested, shrinking enclosures.

    STRADDLES_GRID is only reported with a proof, which needs an
    :class:`EnclosureStream` (plain iterables can only stabilize or run out).
    """
    if k < 1:
        raise ValueError("rank must be positive")
    scale = 10**k
    certify = getattr(enclosures, "certify_grid_point", None)
    for index, item in enumerate(enclosures):
        if index > max_steps:
            break
        br = item if isinstance(item, Bracket) else Bracket(Fraction(item[0]), Fraction(item[1]), index)
        if br.exact:
            return StabilityReport(k, "STABILIZED", index, digit=rank_digit(br.lo, k))
        first, last = _ceil(br.lo * scale), _floor(br.hi * scale)
        if first > last:
            return StabilityReport(k, "STABILIZED", index, digit=rank_digit(br.lo, k))
        if certify is not None and first == last:
            g = Fraction(first, scale)
            if certify(g, br):
                return StabilityReport(k, "STRADDLES_GRID", index, grid_point=g)
    raise BudgetExhausted(f"rank {k} undetermined after {max_steps} steps")


@dataclass(frozen=True)
class StrategyComparison:
    stevin_iterations: int
    bisect_iterations: int
    stevin_exact: bool
    bisect_exact: bool

    @property
    def exact_hit(self) -> bool:
        return self.stevin_exact or self.bisect_exact


def bisection_steps_for_digits(d: int) -> int:
    """Least m with 2**-m <= 10**-d."""
    m = 0
    while 2**m < 10**d:
        m += 1
    return m


def compare_strategies(p, a, b, d: int) -> StrategyComparison:
    """Iterations each method needs to shrink [a, b] by a factor 10**d."""
    if d < 1:
        raise ValueError("d must be positive")
    a, b = Fraction(a), Fraction(b)
    target = (b - a) / 10**d
    results = []
    for stream in (stevin_enclosures(p, a, b), bisection_enclosures(p, a, b)):
        for br in stream:
            if br.exact or br.width <= target:
                results.append(br)
                break
    s, c = results
    return StrategyComparison(s.step, c.step, s.exact, c.exact)


@dataclass(frozen=True)
class DecimalEnclosure:
    """The interval [low * 10**-scale, high * 10**-scale]."""

    scale: int
    low: int
    high: int

    def __post_init__(self):
        if self.scale < 0:
            raise ValueError("scale must be non-negative")
        if self.low > self.high:
            raise ValueError("low exceeds high")

    @classmethod
    def point(cls, q: Fraction | str, scale: int | None = None) -> DecimalEnclosure:
        """Tightest enclosure of ``q`` at ``scale`` (exact when q is a short decimal)."""
        q = Fraction(q)
        if scale is None:
            scale = _decimal_places(q)
            if scale is None:
                raise ValueError(f"{q} is not a finite decimal; give a scale")
        s = 10**scale
        return cls(scale, _floor(q * s), _ceil(q * s))

    @classmethod
    def from_digits(cls, d: StevinDigits) -> DecimalEnclosure:
        """All numbers whose truncation to ``len(d.digits)`` places is ``d``."""
        n = len(d.digits)
        v = d.value * 10**n
        v = v.numerator
        if d.exact:
            return cls(n, v, v)
        return cls(n, v - 1, v) if d.negative else cls(n, v, v + 1)

    @property
    def lo(self) -> Fraction:
        return Fraction(self.low, 10**self.scale)

    @property
    def hi(self) -> Fraction:
        return Fraction(self.high, 10**self.scale)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi

    @property
    def guaranteed_digits(self) -> int:
        """Fractional digits shared by every member (0 if even those are unknown)."""
        best = 0
        for j in range(1, self.scale + 1):
            if _same_truncation(self.lo, self.hi, j):
                best = j
            else:
                break
        return best

    def __add__(self, other: DecimalEnclosure) -> DecimalEnclosure:
        return enclosure_add(self, other)

    def __mul__(self, other: DecimalEnclosure) -> DecimalEnclosure:
        return enclosure_mul(self, other)

    def __str__(self) -> str:
        return f"[{_fmt(self.low, self.scale)}, {_fmt(self.high, self.scale)}]"


def _same_truncation(x: Fraction, y: Fraction, j: int) -> bool:
    dx, dy = to_decimal(x, j), to_decimal(y, j)
    if (dx.integer, dx.digits) != (dy.integer, dy.digits):
        return False
    return dx.negative == dy.negative or (dx.integer == 0 and not any(dx.digits))


def _decimal_places(q: Fraction) -> int | None:
    den = q.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    return max(twos, fives) if den == 1 else None


def _fmt(v: int, scale: int) -> str:
    if scale == 0:
        return str(v)
    sign = "-" if v < 0 else ""
    whole, frac = divmod(abs(v), 10**scale)
    return f"{sign}{whole}.{str(frac).zfill(scale)}"


def enclosure_add(x: DecimalEnclosure, y: DecimalEnclosure) -> DecimalEnclosure:
    s = max(x.scale, y.scale)
    fx, fy = 10 ** (s - x.scale), 10 ** (s - y.scale)
    return DecimalEnclosure(s, x.low * fx + y.low * fy, x.high * fx + y.high * fy)


def enclosure_mul(x: DecimalEnclosure, y: DecimalEnclosure) -> DecimalEnclosure:
    """Product enclosure, rounded outward to the larger of the two scales.

    The exact product lives at scale ``x.scale + y.scale``; keeping fewer
    places is where guaranteed digits get lost.
    """
    s = max(x.scale, y.scale)
    corners = [a * b for a in (x.low, x.high) for b in (y.low, y.high)]
    drop = 10 ** (x.scale + y.scale - s)
    return DecimalEnclosure(s, min(corners) // drop, -((-max(corners)) // drop))
