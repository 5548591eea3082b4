from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from liftperm.errors import NonExactDivision, ParseError
from liftperm.exactmath import (
    ONE_MINUS_Q,
    Q,
    Poly,
    coeff_checks,
    format_rational,
    is_log_concave,
    is_positive,
    is_unimodal,
    parse_rational,
)

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)
polys = st.lists(fractions, max_size=6).map(Poly)
nonzero_polys = polys.filter(lambda p: not p.is_zero())


def test_parse_and_format_round_trip():
    assert parse_rational("3/120") == Fraction(1, 40)
    assert parse_rational(" -7 ") == -7
    assert format_rational(Fraction(6, 4)) == "3/2"
    for bad in ("1/0", "abc", ""):
        with pytest.raises(ParseError):
            parse_rational(bad)


def test_zero_polynomial_and_trailing_zeros():
    assert Poly([1, 2, 0, 0]).coeffs == (1, 2)
    assert Poly().degree == -1
    assert Poly([0, 0]) == Poly.zero()
    assert Poly([5]) == 5


def test_str_is_readable():
    assert str(Poly([1, 0, -Fraction(1, 2)])) == "1 - 1/2*q^2"
    assert str(Poly()) == "0"


def test_known_division():
    g = Poly([Fraction(1, 6), 0, Fraction(-1, 2), Fraction(1, 3)])  # (1-q)^2 (1+2q)/6
    assert g.divide_exact(ONE_MINUS_Q ** 2) == Poly([Fraction(1, 6), Fraction(1, 3)])
    with pytest.raises(NonExactDivision):
        Q.divide_exact(ONE_MINUS_Q)


def test_immutable():
    p = Poly([1])
    with pytest.raises(AttributeError):
        p.coeffs = (2,)


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == Poly.zero()


@given(polys, nonzero_polys)
def test_division_algorithm(a, b):
    quot, rem = a.divmod(b)
    assert quot * b + rem == a
    assert rem.degree < b.degree
    assert (a * b).divide_exact(b) == a


@given(polys, polys, fractions)
def test_evaluation_is_a_homomorphism(a, b, x):
    assert (a * b)(x) == a(x) * b(x)
    assert (a + b)(x) == a(x) + b(x)


@given(polys, polys)
def test_product_rule(a, b):
    assert (a * b).derivative() == a.derivative() * b + a * b.derivative()


@given(polys, fractions, fractions)
def test_integration_matches_antiderivative(p, lo, hi):
    assert p.antiderivative().derivative() == p
    assert p.integrate(lo, hi) == -p.integrate(hi, lo)


@given(polys, st.integers(1, 3), st.integers(1, 3))
def test_substitute_power_composes(p, m, r):
    assert p.substitute_power(m).substitute_power(r) == p.substitute_power(m * r)


@given(polys, fractions, st.integers(1, 3))
def test_substitute_power_evaluates(p, x, m):
    assert p.substitute_power(m)(x) == p(x ** m)


@given(polys, st.integers(0, 3))
def test_reversal_is_an_involution(p, extra):
    n = max(p.degree, 0) + 1 + extra
    r = p.reversed_coeffs(n)
    assert r.reversed_coeffs(n) == p
    if not p.is_zero():
        x = Fraction(3, 7)
        assert r(x) == x ** (n - 1) * p(1 / x)


def test_sequence_predicates():
    assert is_unimodal([1, 3, 3, 2, 1])
    assert not is_unimodal([1, 3, 1, 3])
    assert is_log_concave([1, 4, 6, 4, 1])
    assert not is_log_concave([1, 1, 4])
    assert not is_positive([1, 0, 2])
    assert not is_positive([])
    report = coeff_checks(Poly([1, 2, 1]))
    assert report.all_ok


@given(st.lists(st.fractions(min_value=Fraction(1, 10), max_value=10), min_size=1, max_size=8))
def test_positive_log_concave_implies_unimodal(seq):
    assume(is_log_concave(seq))
    assert is_unimodal(seq)


@given(st.integers(0, 12))
def test_binomial_rows_are_log_concave(n):
    row = Poly([1, 1]) ** n
    assert coeff_checks(row).all_ok
