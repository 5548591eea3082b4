import math
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from liftperm.compositions import (
    Composition,
    compositions_of,
    compositions_up_to,
    f_coefficient_formula,
    f_reduced,
    g,
    g_closed_form,
    g_integral,
    g_recursive,
    identity_checks,
    merged_recursion_check,
    multiset_coefficient,
    report,
)
from liftperm.errors import ParseError, TooShort
from liftperm.exactmath import ONE_MINUS_Q, Poly, coeff_checks

comps = st.lists(st.integers(1, 5), min_size=1, max_size=5).map(lambda p: Composition(tuple(p)))


def factored(scale, k, poly):
    return (ONE_MINUS_Q ** k) * Poly(poly) / scale


# reference values
TABLE = {
    (1, 1, 1, 1): factored(24, 4, [1]),
    (2, 2, 2, 2): factored(384, 4, (Poly([1, 1]) ** 4).coeffs),
    (1, 2, 2): factored(120, 3, [8, 9, 3]),
    (2, 2, 1): factored(120, 3, [3, 9, 8]),
    (3, 5): factored(120, 2, [5, 10, 15, 12, 9, 6, 3]),
}


@pytest.mark.parametrize("parts", sorted(TABLE))
def test_example_table(parts):
    for method in ("closed", "recursive", "integral"):
        assert g(parts, method) == TABLE[parts]


def test_two_part_formula():
    for a in range(1, 9):
        for b in range(1, 9):
            expected = (Poly.one() - Poly.monomial(a + b)) / (a * (a + b)) - (
                Poly.monomial(a) - Poly.monomial(a + b)
            ) / (a * b)
            assert g_closed_form((a, b)) == expected


# f_c computed once through the iterated-integral route and frozen
FROZEN_F = {
    (2, 1, 3): ["1/36", "1/12", "1/24", "1/72"],
    (3, 1, 1, 2): ["1/420", "1/105", "1/42", "1/168"],
    (1, 3, 2, 1): ["1/168", "4/315", "19/1260", "1/126"],
}


@pytest.mark.parametrize("parts", sorted(FROZEN_F))
def test_frozen_reduced_polynomials(parts):
    assert f_reduced(parts).to_json_list() == FROZEN_F[parts]


def test_composition_basics():
    c = Composition.parse("1,2,2")
    assert (c.n, c.k) == (5, 3)
    assert c.partial_sums == (0, 1, 3, 5)
    assert c.reverse().parts == (2, 2, 1)
    assert c.scaled(2).parts == (2, 4, 4)
    assert str(c) == "1,2,2"
    for bad in ("", "1,0", "a", "1,-2"):
        with pytest.raises(ParseError):
            Composition.parse(bad)


def test_enumeration_counts():
    assert [sum(1 for _ in compositions_of(n)) for n in range(1, 8)] == [2 ** (n - 1) for n in range(1, 8)]
    assert sum(1 for _ in compositions_up_to(10)) == 1023
    assert sum(1 for c in compositions_up_to(10) if c.k >= 2) == 1013


def test_methods_agree_small():
    for c in compositions_up_to(8):
        gc = g_closed_form(c)
        assert g_recursive(c) == gc
        assert g_integral(c) == gc


@given(comps)
def test_identities_hold(c):
    rep = identity_checks(c)
    assert rep.all_ok, rep.as_dict()


@given(comps)
def test_reduced_polynomial_is_positive(c):
    fc = f_reduced(c)
    assert fc.degree == c.n - c.k
    assert all(x > 0 for x in fc.coeffs)
    assert fc(1) == F(1, math.factorial(c.k))
    assert fc * ONE_MINUS_Q ** c.k == g_closed_form(c)


@given(comps)
def test_reversal_of_reduced_polynomial(c):
    fc = f_reduced(c)
    assert f_reduced(c.reverse()) == fc.reversed_coeffs(c.n - c.k + 1)


@given(comps)
def test_reversal_carries_sign(c):
    # reversing c multiplies the reflected polynomial by (-1)^k
    rev = g_closed_form(c.reverse())
    reflected = g_closed_form(c).reversed_coeffs(c.n + 1)
    assert rev == reflected * (-1) ** c.k
    assert (rev == reflected) == (c.k % 2 == 0)


def test_single_part_is_odd_under_reflection():
    for n in range(1, 6):
        gc = g_closed_form((n,))
        assert gc == (Poly.one() - Poly.monomial(n)) / n
        assert gc.reversed_coeffs(n + 1) == -gc


@given(comps, st.integers(1, 3))
def test_scaling(c, m):
    assert g_closed_form(c.scaled(m)) == g_closed_form(c).substitute_power(m) / m ** c.k


@given(comps.filter(lambda c: c.k >= 2), st.data())
def test_merged_recursion(c, data):
    m = data.draw(st.integers(1, c.k - 1))
    assert merged_recursion_check(c, m)


def test_merged_recursion_needs_two_parts():
    with pytest.raises(TooShort):
        merged_recursion_check((3,), 1)


@given(comps)
def test_coefficient_formula_counting_convention(c):
    assert f_coefficient_formula(c, "count") == f_reduced(c)


def test_printed_multiset_convention_disagrees():
    assert multiset_coefficient(3, 2) == 6
    assert multiset_coefficient(3, 2, "printed") == 4
    assert f_coefficient_formula((1, 2, 2), "count")[0] == F(1, 15)
    assert f_coefficient_formula((1, 2, 2), "printed") != f_reduced((1, 2, 2))


def test_log_concavity_small():
    for c in compositions_up_to(9):
        assert coeff_checks(f_reduced(c)).all_ok


def test_report_serialises_exact_strings():
    rep = report((1, 2, 2))
    assert rep["f"] == ["1/15", "3/40", "1/40"]
    assert all(rep["checks"].values())
    with pytest.raises(ValueError):
        g((1, 2), "bogus")
