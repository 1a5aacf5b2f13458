"""Extended decimal display of a finite hypernumber.

A rendering has two parts: the digits of the standard part at finite ranks,
and a description of the digits at unlimited ranks.  That description is
only given where a closed form proves it:

* ``CONSTANT(d)``: u is a rational whose expansion ends in repeating ``d``.
* ``UP_TO_H_THEN(d1, d2)``: u = r + c*10^-n.  Read at the hyperinteger
  H = [n], ranks up to H carry ``d1`` and ranks past H carry ``d2``.
* ``UNKNOWN`` otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .decimals import to_decimal
from .errors import NotFinite, UnsupportedForm
from .ultrapower import FilterOracle, HyperNumber, RatFn, classify, ten_power

CONSTANT, UP_TO_H_THEN, UNKNOWN = "CONSTANT", "UP_TO_H_THEN", "UNKNOWN"


@dataclass(frozen=True)
class LightstoneRendering:
    negative: bool
    integer: int
    finite_digits: tuple[int, ...]
    pattern: str
    pattern_digits: tuple[int, ...] = ()

    @property
    def pattern_label(self) -> str:
        if self.pattern == UNKNOWN:
            return UNKNOWN
        return f"{self.pattern}({', '.join(map(str, self.pattern_digits))})"

    def describe_pattern(self) -> str:
        if self.pattern == CONSTANT:
            return f"digit {self.pattern_digits[0]} at every unlimited rank"
        if self.pattern == UP_TO_H_THEN:
            d1, d2 = self.pattern_digits
            return f"digit {d1} at unlimited ranks up to H, digit {d2} beyond H"
        return "digits at unlimited ranks unknown"

    def __str__(self) -> str:
        head = ("-" if self.negative else "") + str(self.integer)
        if self.finite_digits:
            head += "." + "".join(map(str, self.finite_digits))
        return f"{head}…;… ({self.describe_pattern()})"


def repeating_digit(r: Fraction) -> int | None:
    """d when the decimal expansion of |r| ends in d repeated forever."""
    r = abs(r)
    den, twos, fives = r.denominator, 0, 0
    while den % 2 == 0:
        den, twos = den // 2, twos + 1
    while den % 5 == 0:
        den, fives = den // 5, fives + 1
    pre = max(twos, fives)
    if 9 % den:
        return None
    x = r * 10**pre
    frac = x - (x.numerator // x.denominator)
    return int(frac * 9)


def _representative(u: HyperNumber, oracle: FilterOracle) -> RatFn | None:
    if oracle.variant == "POINT":
        return u.branches[oracle.point % 2]
    if (u.even - u.odd).is_zero():
        return u.even
    return None


def lightstone_render(u: HyperNumber, K: int, oracle: FilterOracle) -> LightstoneRendering:
    if K < 1:
        raise ValueError("K must be positive")
    c = classify(u, oracle)
    if c.kind == "UNLIMITED":
        raise NotFinite(f"{u} is unlimited")
    if c.kind == "UNDECIDED":
        raise UnsupportedForm(f"standard part of {u} is not decided by {oracle}")
    r = c.st
    shown = to_decimal(r, K)
    render = lambda pattern, *digits: LightstoneRendering(
        shown.negative, shown.integer, shown.digits, pattern, tuple(digits)
    )
    f = _representative(u, oracle)
    d = repeating_digit(r)
    if f is None or d is None:
        return render(UNKNOWN)
    offset = f - RatFn.constant(r)
    if offset.is_zero():
        return render(CONSTANT, d)
    # u = r + c * 10^-n  <=>  (u - r) * 10^n is the constant c
    scaled = (offset * ten_power(1).even).constant_value()
    if scaled is None:
        return render(UNKNOWN)
    if r < 0:
        scaled = -scaled
    elif r == 0:
        scaled = abs(scaled)
    # |u| * 10^n = floor(|r| * 10^n) + d/9 + scaled; the tail below rank H is d/9 + scaled
    tail = Fraction(d, 9) + scaled
    if not 0 <= tail < 1 or (tail * 9).denominator != 1:
        return render(UNKNOWN)
    return render(UP_TO_H_THEN, d, int(tail * 9))
