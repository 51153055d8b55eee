from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from peis.errors import PreconditionError
from peis.exact import (
    _bernoulli_from_tangent,
    bernoulli_number,
    bernoulli_polynomial,
    divisors,
    eval_poly,
    format_rational,
    fractional_part,
    parse_rational,
    rational_valuation,
    sigma_power,
    stabilized_zeta,
    von_staudt_clausen_denominator,
    zeta_at_one_minus,
)

fractions_st = st.fractions(max_denominator=10**6).filter(lambda x: abs(x) < 10**9)


def sympy_bernoulli(n):
    # sympy >= 1.12 uses B_1 = +1/2; shift it to the B_n(0) convention
    b = sympy.bernoulli(n)
    val = Fraction(int(b.p), int(b.q))
    return Fraction(-1, 2) if n == 1 else val


@pytest.mark.parametrize("n, expected", [(0, "1/1"), (1, "-1/2"), (2, "1/6"), (3, "0/1"),
                                         (12, "-691/2730"), (4, "-1/30")])
def test_bernoulli_examples(n, expected):
    assert format_rational(bernoulli_number(n)) == expected


def test_bernoulli_against_sympy():
    for n in range(0, 121):
        assert bernoulli_number(n) == sympy_bernoulli(n), n


def test_tangent_route_matches_recurrence():
    for n in list(range(2, 80, 2)) + [200, 310]:
        assert _bernoulli_from_tangent(n) == bernoulli_number(n)


def test_large_index_against_sympy():
    assert bernoulli_number(700) == sympy_bernoulli(700)


def test_bernoulli_rejects_negative():
    with pytest.raises(PreconditionError):
        bernoulli_number(-2)


def test_bernoulli_polynomial_examples():
    assert bernoulli_polynomial(0).coeffs == (1,)
    assert bernoulli_polynomial(1).coeffs == (Fraction(-1, 2), 1)
    assert bernoulli_polynomial(2).coeffs == (Fraction(1, 6), -1, 1)


def test_bernoulli_polynomial_against_sympy():
    X = sympy.Symbol("X")
    for n in range(0, 16):
        ours = bernoulli_polynomial(n)
        theirs = sympy.Poly(sympy.bernoulli(n, X), X)
        got = [Fraction(int(c.p), int(c.q)) for c in reversed(theirs.all_coeffs())]
        assert list(ours.coeffs) == got


@pytest.mark.parametrize("x, expected", [(Fraction(1, 4), Fraction(-1, 4)), (1, Fraction(1, 2)), (0, Fraction(-1, 2))])
def test_eval_b1(x, expected):
    assert eval_poly(bernoulli_polynomial(1), x) == expected


def test_eval_at_zero_is_constant_term():
    for n in range(0, 61):
        assert eval_poly(bernoulli_polynomial(n), 0) == bernoulli_number(n)


def test_bn_at_one():
    for n in range(0, 30):
        want = bernoulli_number(n) + (1 if n == 1 else 0)
        assert eval_poly(bernoulli_polynomial(n), 1) == want


def test_reflection():
    points = [Fraction(0), Fraction(1, 4), Fraction(1, 3), Fraction(1, 2), Fraction(2, 3), Fraction(1)]
    for n in range(0, 61):
        B = bernoulli_polynomial(n)
        for x in points:
            assert eval_poly(B, 1 - x) == (-1) ** n * eval_poly(B, x)


def test_multiplication_theorem():
    for k in range(0, 11):
        B = bernoulli_polynomial(k)
        for m in range(1, 7):
            for x in (Fraction(0), Fraction(1, 2), Fraction(1, 3)):
                lhs = sum(eval_poly(B, (x + t) / m) for t in range(m))
                assert lhs == Fraction(m) ** (1 - k) * eval_poly(B, x)


def test_von_staudt_clausen():
    assert von_staudt_clausen_denominator(2) == 6
    assert von_staudt_clausen_denominator(12) == 2730
    assert von_staudt_clausen_denominator(4) == 30
    for n in range(2, 61, 2):
        assert bernoulli_number(n).denominator == von_staudt_clausen_denominator(n)


def test_von_staudt_clausen_rejects_odd():
    with pytest.raises(PreconditionError):
        von_staudt_clausen_denominator(3)


@pytest.mark.parametrize("x, expected", [(Fraction(7, 5), Fraction(2, 5)), (Fraction(-1, 5), Fraction(4, 5)), (3, 0)])
def test_fractional_part_examples(x, expected):
    assert fractional_part(x) == expected


@given(fractions_st)
def test_fractional_part_property(x):
    f = fractional_part(x)
    assert 0 <= f < 1
    assert (x - f).denominator == 1


@given(fractions_st)
def test_rational_roundtrip(x):
    text = format_rational(x)
    assert parse_rational(text) == x
    num, den = text.split("/")
    assert int(den) > 0


def test_zero_format():
    assert format_rational(0) == "0/1"


@pytest.mark.parametrize("n, k, expected", [(6, 1, 12), (1, 5, 1), (4, 3, 73)])
def test_sigma_examples(n, k, expected):
    assert sigma_power(n, k) == expected


@given(st.integers(1, 5000), st.integers(0, 7))
def test_sigma_against_sympy(n, k):
    assert sigma_power(n, k) == int(sympy.divisor_sigma(n, k))
    assert divisors(n) == [int(d) for d in sympy.divisors(n)]


@given(fractions_st.filter(lambda x: x != 0), st.sampled_from([3, 5, 7, 11]))
def test_rational_valuation_against_sympy(x, p):
    want = sympy.multiplicity(p, x.numerator) - sympy.multiplicity(p, x.denominator)
    assert rational_valuation(x, p) == want


def test_zeta_values():
    assert zeta_at_one_minus(1) == Fraction(-1, 2)
    assert zeta_at_one_minus(2) == Fraction(-1, 12)
    assert zeta_at_one_minus(4) == Fraction(1, 120)
    for k in range(2, 30, 2):
        z = sympy.zeta(1 - k)
        assert zeta_at_one_minus(k) == Fraction(int(z.p), int(z.q))


def test_stabilized_zeta():
    assert stabilized_zeta(2, 5) == Fraction(1, 3)
    assert stabilized_zeta(6, 5) == Fraction(781, 63)
