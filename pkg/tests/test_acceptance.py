"""Acceptance criteria 1-12.

Each test carries a ``criterion`` mark; the terminal summary prints one
PASS/FAIL line per criterion.  Random inputs come from fixed seeds.
"""

import json
import math
import random
import subprocess
import sys
import time
from fractions import Fraction

import pytest

from stevin.decimals import (
    bisection_enclosures,
    compare_strategies,
    digit_stability,
    stevin_enclosures,
    stevin_root,
)
from stevin.exact import Polynomial, poly_parse
from stevin.lightstone import lightstone_render
from stevin.orders import (
    ORDER_INFINITE,
    OrderValue,
    CatalogFunction,
    SeriesNumber,
    base_i,
    deriv_at,
    estimate_order_numeric,
    order,
    sqrt,
)
from stevin.ultrapower import (
    LARGE,
    SMALL,
    UNDECIDED,
    FilterOracle,
    IndexSet,
    compare,
    embed,
    epsilon,
    los_check,
    omega,
    parse_generator,
    standard_part,
)

FRECHET = FilterOracle.frechet()
POINTS = [FilterOracle.profinite_point(z) for z in (0, -1, 1, 7, 12, -25)]


def criterion(number, title):
    return pytest.mark.criterion(number, title)


# independent oracles -----------------------------------------------------------


def horner(coeffs, x):
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def oracle_bisect(coeffs, a, b, width):
    """Plain bisection on exact rationals; returns (lo, hi) or (r, r) on a hit."""
    lo, hi = Fraction(a), Fraction(b)
    flo = horner(coeffs, lo)
    while hi - lo > width:
        mid = (lo + hi) / 2
        fm = horner(coeffs, mid)
        if fm == 0:
            return mid, mid
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return lo, hi


def truncate(q, n):
    """q truncated toward zero to n decimals, as the integer q * 10^n."""
    v = abs(q) * 10**n
    t = v.numerator // v.denominator
    return -t if q < 0 else t


def digits_as_int(d):
    v = d.integer * 10 ** len(d.digits) + int("".join(map(str, d.digits)) or 0)
    return -v if d.negative else v


def random_monic_cubic(rng):
    """Monic integer cubic with a sign change on an integer unit bracket.

    Rational roots of a monic integer polynomial are integers, so the root
    inside the open bracket is irrational.
    """
    while True:
        coeffs = [Fraction(rng.randint(-30, 30)), Fraction(rng.randint(-30, 30)), Fraction(rng.randint(-9, 9)), Fraction(1)]
        a = rng.randint(-8, 7)
        fa, fb = horner(coeffs, a), horner(coeffs, a + 1)
        if fa * fb < 0:
            return coeffs, a, a + 1


def random_grid_cubic(rng):
    """(x - g)(x^2 + c), c > 0, with g a short decimal and a bracket of width 3.

    g sits one third of the way into the bracket, so neither subdivision
    ever lands on it.
    """
    g = Fraction(rng.randint(-400, 400), rng.choice([2, 4, 5, 8, 20, 25, 1000]))
    c = Fraction(rng.randint(1, 20), rng.randint(1, 5))
    p = Polynomial.from_roots([g]) * Polynomial((c, Fraction(0), Fraction(1)))
    return list(p.coeffs), g - 1, g + 2, g


# criteria ----------------------------------------------------------------------


@criterion(1, "sqrt(2) to 50 digits matches the integer square root, under 1 s")
def test_criterion_01_sqrt2_digits():
    start = time.perf_counter()
    d = stevin_root(poly_parse("x^2-2"), 1, 2, 50)
    elapsed = time.perf_counter() - start
    assert not d.exact and len(d.digits) == 50
    assert digits_as_int(d) == math.isqrt(2 * 10**100)
    assert elapsed < 1


@criterion(2, "one digit per ten-way step, one bit per halving")
def test_criterion_02_digit_per_iteration():
    rng = random.Random(2)
    for _ in range(40):
        coeffs, a, b = random_monic_cubic(rng)
        p = Polynomial(tuple(coeffs))
        for parts, stream in ((10, stevin_enclosures(p, a, b)), (2, bisection_enclosures(p, a, b))):
            for m, br in zip(range(20), stream):
                assert br.step == m and br.width == Fraction(b - a, parts**m)
        for d in range(1, 16):
            c = compare_strategies(p, a, b, d)
            least = next(m for m in range(200) if 2**m >= 10**d)
            assert least == math.ceil(d * math.log2(10))
            assert (c.stevin_iterations, c.bisect_iterations, c.exact_hit) == (d, least, False)
    sqrt2 = poly_parse("x^2-2")
    for d in range(1, 16):
        c = compare_strategies(sqrt2, 1, 2, d)
        assert (c.stevin_iterations, c.bisect_iterations) == (d, math.ceil(d * math.log2(10)))


@criterion(3, "100 random cubics: 12 digits agree with independent bisection, under 30 s")
def test_criterion_03_oracle_equivalence():
    rng = random.Random(3)
    cases = [random_monic_cubic(rng) + (None,) for _ in range(80)] + [random_grid_cubic(rng) for _ in range(20)]
    rng.shuffle(cases)
    start = time.perf_counter()
    straddles = 0
    for coeffs, a, b, g in cases:
        p = Polynomial(tuple(coeffs))
        d = stevin_root(p, a, b, 12)
        lo, hi = oracle_bisect(coeffs, a, b, Fraction(1, 10**14))
        t_lo, t_hi = truncate(lo, 12), truncate(hi, 12)
        if t_lo == t_hi:
            assert digits_as_int(d) == t_lo
            assert g is None or truncate(g, 12) == t_lo
            continue
        # the oracle bracket straddles a rank-12 grid point
        straddles += 1
        grid = Fraction(max(abs(t_lo), abs(t_hi)) * (1 if hi > 0 else -1), 10**12)
        assert lo < grid < hi and horner(coeffs, grid) == 0
        assert d.exact and d.value == grid
        for stream in (stevin_enclosures(p, a, b), bisection_enclosures(p, a, b)):
            rep = digit_stability(stream, 12)
            assert rep.status == "STRADDLES_GRID" and rep.grid_point == grid
    assert straddles == 20
    assert time.perf_counter() - start < 30


@criterion(4, "x - 1/2 on [0, 9/10]: bisection straddles 0.5 forever")
def test_criterion_04_tail_of_nines():
    p = poly_parse("x - 1/2")
    rep = digit_stability(bisection_enclosures(p, 0, Fraction(9, 10)), 1, max_steps=10000)
    assert rep.status == "STRADDLES_GRID" and rep.grid_point == Fraction(1, 2)
    assert rep.iteration <= 10000
    for _, br in zip(range(10001), bisection_enclosures(p, 0, Fraction(9, 10))):
        assert br.lo < Fraction(1, 2) < br.hi


def random_series(rng, truncated):
    terms = [
        (Fraction(rng.randint(-12, 20), rng.choice([1, 2, 3, 4])), Fraction(rng.choice([-1, 1]) * rng.randint(1, 30), rng.randint(1, 9)))
        for _ in range(rng.randint(1, 5))
    ]
    x = SeriesNumber(terms)
    if not x.terms:
        return random_series(rng, truncated)
    if truncated:
        x = SeriesNumber(x.terms, x.terms[-1][0] + Fraction(rng.randint(1, 8), 2))
    return x


@criterion(5, "order is a valuation; sqrt squares back; sqrt(i) = i^(1/2)")
def test_criterion_05_order_calculus():
    rng = random.Random(5)
    for _ in range(500):
        x, y = random_series(rng, rng.random() < 0.5), random_series(rng, rng.random() < 0.5)
        assert order(x * y).value == order(x).value + order(y).value
    for _ in range(100):
        x = random_series(rng, True)
        a, c = x.terms[0]
        k = rng.randint(1, 9)
        y = x * SeriesNumber({Fraction(rng.randint(-4, 8), 2) - a: Fraction(k * k) / c})
        assert y.terms[0][1] > 0
        r = sqrt(y)
        square = r * r
        bound = min(square.truncation, y.truncation)
        assert [t for t in square.terms if t[0] < bound] == [t for t in y.terms if t[0] < bound]
    root = sqrt(base_i())
    assert root.exact and root.terms == ((Fraction(1, 2), Fraction(1)),)
    assert root * root == base_i()


@criterion(6, "orders infinity and 0: exp(-1/i) and 1/log(i)")
def test_criterion_06_orders_infinite_and_zero():
    probes = [Fraction(1, 10), 1, 10, 100]
    assert estimate_order_numeric(CatalogFunction.parse("exp_neg_inv"), probes, 8).order == ORDER_INFINITE
    assert estimate_order_numeric(CatalogFunction.parse("inv_log"), probes, 8).order == OrderValue.finite(0)


@criterion(7, "derivative as standard part of the difference quotient")
def test_criterion_07_derivative():
    rng = random.Random(7)
    for _ in range(200):
        coeffs = [Fraction(rng.randint(-50, 50), rng.randint(1, 12)) for _ in range(rng.randint(1, 9))]
        x0 = Fraction(rng.randint(-40, 40), rng.randint(1, 15))
        formal = sum((k * c * x0 ** (k - 1) for k, c in enumerate(coeffs) if k), Fraction(0))
        assert deriv_at(Polynomial(tuple(coeffs)), x0) == formal


@criterion(8, "sign of (-1)^n/n depends on the filter")
def test_criterion_08_sign_ambiguity():
    u = parse_generator("(-1)^n/n")
    assert compare(u, embed(0), FilterOracle.profinite_point(0)) == "GT"
    assert compare(u, embed(0), FilterOracle.profinite_point(-1)) == "LT"
    assert compare(u, embed(0), FRECHET) == UNDECIDED


def perturbed(rng, m, residues):
    added = {rng.randint(0, 80) for _ in range(rng.randint(0, 3))}
    removed = {rng.randint(0, 80) for _ in range(rng.randint(0, 3))}
    return IndexSet(m, frozenset(residues), frozenset(added), frozenset(removed))


@criterion(9, "filter laws on the progression algebra up to modulus 24")
def test_criterion_09_filter_laws():
    rng = random.Random(9)
    oracles = [FRECHET] + POINTS
    single = [perturbed(rng, m, {r}) for m in range(1, 25) for r in range(m)]
    mixed = [perturbed(rng, m, {r for r in range(m) if rng.random() < 0.5}) for m in range(1, 25) for _ in range(6)]
    mixed += [IndexSet.finite({1, 5}), IndexSet.cofinite({0, 3}), IndexSet.cofinite()]
    family = single + mixed
    window = range(120)
    for s in family:
        for o in POINTS:
            assert o.decide(s) != UNDECIDED
            assert (o.decide(s) == LARGE) != (o.decide(~s) == LARGE)
        assert FRECHET.decide(s) != LARGE or FRECHET.decide(~s) == SMALL
    pairs = [(s, t) for s in single for t in single if s.modulus * t.modulus <= 144] + [
        (rng.choice(family), rng.choice(family)) for _ in range(2000)
    ]
    for s, t in pairs:
        both = s & t
        assert {n for n in window if n in both} == {n for n in window if n in s and n in t}
        union = s | t
        assert s.issubset(union) and t.issubset(union)
        for o in oracles:
            ds, dt = o.decide(s), o.decide(t)
            if ds == LARGE and dt == LARGE:
                assert o.decide(both) == LARGE
            if ds == LARGE:
                assert o.decide(union) == LARGE
            if ds == SMALL and dt == SMALL:
                assert o.decide(union) == SMALL
    # refinement: writing a set at a multiple of its modulus changes nothing
    for s in family:
        for k in range(1, 25 // s.modulus + 1):
            residues, m = s.lift(s.modulus * k)
            lifted = IndexSet(m, residues, s.added, s.removed)
            assert lifted == s
            for o in oracles:
                assert o.decide(lifted) == o.decide(s)
        # a point only matters modulo every modulus in play
        period = math.lcm(*range(1, 25))
        for z in range(-30, 30):
            assert FilterOracle.profinite_point(z).decide(s) == FilterOracle.profinite_point(z + period).decide(s)


def random_finite_generator(rng):
    """A finite generator text with its standard part, known by construction."""
    q = Fraction(rng.randint(-40, 40), rng.randint(1, 9))
    c = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
    a, b = rng.randint(1, 6), rng.randint(-5, 5)
    forms = [
        (f"{q} + {c}/n", q),
        (f"{q} + ({c})*(-1)^n/n", q),
        (f"{q} + {c}/(n^2+1)", q),
        (f"{q} + {c}/10^n", q),
        (f"({a}*n + {b})/(n + 1) + {q}", q + a),
        (f"({q})*(n^2 - 3)/(n^2 + {a})", q),
    ]
    return rng.choice(forms)


@criterion(10, "standard part is a homomorphism; the embedding is exact")
def test_criterion_10_standard_part():
    rng = random.Random(10)
    for _ in range(100):
        q = Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 10**4))
        assert standard_part(embed(q), FRECHET) == q
    for _ in range(100):
        (tu, su), (tv, sv) = random_finite_generator(rng), random_finite_generator(rng)
        u, v = parse_generator(tu), parse_generator(tv)
        assert standard_part(u, FRECHET) == su and standard_part(v, FRECHET) == sv
        assert standard_part(u + v, FRECHET) == su + sv
        assert standard_part(u * v, FRECHET) == su * sv
    assert los_check(epsilon() * omega(), embed(1), FRECHET) == "HOLDS"


@criterion(11, "1/3 and the truncated thirds: same digits, different hypernumbers")
def test_criterion_11_lightstone():
    third = embed(Fraction(1, 3))
    thirds = parse_generator("(10^n-1)/(3*10^n)")
    for o in [FRECHET] + POINTS:
        assert compare(third, thirds, o) == "GT"
        for k in range(1, 11):
            a, b = lightstone_render(third, k, o), lightstone_render(thirds, k, o)
            assert a.finite_digits == b.finite_digits == (3,) * k
            assert a.pattern_label == "CONSTANT(3)"
            assert b.pattern_label == "UP_TO_H_THEN(3, 0)"


def cli(*argv):
    proc = subprocess.run([sys.executable, "-m", "stevin", *argv], capture_output=True)
    return proc.returncode, proc.stdout


@criterion(12, "CLI examples and byte-identical JSON")
def test_criterion_12_cli():
    assert cli("root", "x^2-2", "--bracket", "1", "2", "--digits", "6") == (0, b"1.414213\n")
    assert cli("hyper", "sign", "(-1)^n/n", "--filter", "point:0") == (0, b"POSITIVE\n")
    code, out = cli("compare", "x^2-2", "--bracket", "1", "2", "--digits", "10", "--json")
    report = json.loads(out)
    assert code == 0 and report["stevin_iterations"] == 10 and report["bisect_iterations"] == 34
    for argv in (
        ["compare", "x^2-2", "--bracket", "1", "2", "--digits", "10", "--json"],
        ["render", "(10^n-1)/(3*10^n)", "--digits", "5", "--json"],
        ["order", "--catalog", "inv_log", "--json"],
        ["root", "x^2+1", "--bracket", "1", "2", "--json"],
    ):
        first, second = cli(*argv), cli(*argv)
        assert first == second


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
