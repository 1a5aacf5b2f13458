from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from stevin.decimals import to_decimal
from stevin.errors import NotFinite, UnsupportedForm
from stevin.lightstone import lightstone_render, repeating_digit
from stevin.ultrapower import FilterOracle, compare, embed, omega, parse_generator, standard_part

FRECHET = FilterOracle.frechet()
ORACLES = [FRECHET, FilterOracle.profinite_point(0), FilterOracle.profinite_point(-1)]
THIRDS = "(10^n-1)/(3*10^n)"


def test_render_examples():
    r = lightstone_render(embed(Fraction(1, 3)), 5, FRECHET)
    assert r.finite_digits == (3, 3, 3, 3, 3) and r.pattern_label == "CONSTANT(3)"
    assert str(r) == "0.33333…;… (digit 3 at every unlimited rank)"
    r = lightstone_render(parse_generator(THIRDS), 5, FRECHET)
    assert r.finite_digits == (3, 3, 3, 3, 3) and r.pattern_label == "UP_TO_H_THEN(3, 0)"
    r = lightstone_render(embed(Fraction(1, 2)), 5, FRECHET)
    assert r.finite_digits == (5, 0, 0, 0, 0) and r.pattern_label == "CONSTANT(0)"


@pytest.mark.parametrize(
    "text, label",
    [
        ("1/3 + 1/(3*10^n)", "UP_TO_H_THEN(3, 6)"),
        ("2/(9*10^n)", "UP_TO_H_THEN(0, 2)"),
        ("1 - 1/10^n", "UNKNOWN"),  # its digits read 0.999..., not those of st = 1
        ("5/9 - 5/(9*10^n)", "UP_TO_H_THEN(5, 0)"),
        ("-1/3", "CONSTANT(3)"),
        ("1/7", "UNKNOWN"),
        ("1/3 + 1/n", "UNKNOWN"),
    ],
)
def test_render_patterns(text, label):
    assert lightstone_render(parse_generator(text), 4, FRECHET).pattern_label == label


@pytest.mark.parametrize("text", ["5/9 - 5/(9*10^n)", "1/3 + 1/(3*10^n)", "2/(9*10^n)"])
def test_pattern_matches_digits_at_large_index(text):
    # read u_H at a concrete H: digits at ranks H-3..H and H+1..H+4
    u = parse_generator(text)
    r = lightstone_render(u, 3, FRECHET)
    d1, d2 = r.pattern_digits
    h = 25
    digits = to_decimal(u(h), h + 4).digits
    assert digits[h - 4 : h] == (d1,) * 4
    assert digits[h : h + 4] == (d2,) * 4


def test_render_errors():
    with pytest.raises(NotFinite):
        lightstone_render(omega(), 3, FRECHET)
    with pytest.raises(UnsupportedForm):
        lightstone_render(parse_generator("(-1)^n"), 3, FRECHET)


@given(st.fractions(min_value=-50, max_value=50, max_denominator=400), st.integers(1, 12))
def test_finite_digits_are_standard_part_digits(q, k):
    u = embed(q) + parse_generator("1/n")
    r = lightstone_render(u, k, FRECHET)
    d = to_decimal(standard_part(u, FRECHET), k)
    assert (r.negative, r.integer, r.finite_digits) == (d.negative, d.integer, d.digits)


@given(st.fractions(min_value=0, max_value=10, max_denominator=400))
def test_repeating_digit_against_long_division(q):
    d = repeating_digit(q)
    tail = to_decimal(q, 40).digits[-12:]
    if d is None:
        assert len(set(tail)) > 1
    else:
        assert set(tail) == {d}


@pytest.mark.parametrize("oracle", ORACLES, ids=str)
def test_thirds_differ_by_an_infinitesimal(oracle):
    a, b = embed(Fraction(1, 3)), parse_generator(THIRDS)
    assert compare(a, b, oracle) == "GT"
    for k in range(1, 11):
        assert lightstone_render(a, k, oracle).finite_digits == lightstone_render(b, k, oracle).finite_digits
