import random
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from liftperm.compositions import Composition, compositions_up_to, f_reduced, g_closed_form
from liftperm.errors import SingularMatrix
from liftperm.exactmath import Poly
from liftperm.interp import (
    cramer_solve,
    interpolation_coefficients,
    interpolation_identity_holds,
    interpolation_leading_coeff,
    interpolation_residuals,
    poly_det,
    replaced_column_det,
    shifted_coefficient_interp,
    truncated_multiset,
    vandermonde_matrix,
)

comps = st.lists(st.integers(1, 4), min_size=1, max_size=5).map(lambda p: Composition(tuple(p)))
small = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def divided_difference(xs, ys):
    """Newton's top divided difference, the leading coefficient of the interpolant."""
    table = list(ys)
    for level in range(1, len(xs)):
        table = [
            (table[i + 1] - table[i]) / (xs[i + level] - xs[i]) for i in range(len(table) - 1)
        ]
    return table[0]


@given(comps)
def test_leading_coefficient_against_divided_differences(c):
    ys = [Poly.monomial(b) for b in c.partial_sums]
    assert interpolation_leading_coeff(c) == divided_difference(c.partial_sums, ys)


def test_identity_small_range():
    assert all(interpolation_identity_holds(c) for c in compositions_up_to(7))


def test_leading_coefficient_example():
    assert interpolation_leading_coeff((2, 1, 3)) == -g_closed_form((2, 1, 3))


@given(comps)
def test_full_solution_interpolates(c):
    coeffs = interpolation_coefficients(c)
    assert all(r.is_zero() for r in interpolation_residuals(c, coeffs))


@given(st.lists(st.lists(small, min_size=4, max_size=4), min_size=4, max_size=4))
def test_determinant_methods_agree(rows):
    assert poly_det(rows, "cofactor") == poly_det(rows, "bareiss")


def test_determinant_of_polynomial_matrix():
    q = Poly([0, 1])
    m = [[q, Poly.one()], [Poly.one(), q]]
    assert poly_det(m) == q * q - 1
    assert poly_det(m, "bareiss") == q * q - 1


def test_large_matrix_uses_elimination():
    rng = random.Random(5)
    rows = [[F(rng.randint(-3, 3)) for _ in range(8)] for _ in range(8)]
    assert poly_det(rows) == poly_det(rows, "bareiss")


def test_vandermonde_determinant():
    c = Composition((1, 2, 2))
    expected = 1
    b = c.partial_sums
    for i in range(len(b)):
        for j in range(i + 1, len(b)):
            expected *= b[j] - b[i]
    assert poly_det(vandermonde_matrix(c)) == expected


def test_singular_system():
    with pytest.raises(SingularMatrix):
        cramer_solve([[1, 2], [2, 4]], [1, 1])


@given(comps, st.data())
def test_low_degree_column_gives_zero(c, data):
    coeffs = data.draw(st.lists(small, max_size=c.k))
    assert replaced_column_det(c, Poly(coeffs)) == 0


@given(comps, st.data())
def test_shifted_coefficients(c, data):
    i = data.draw(st.integers(0, c.n - c.k))
    assert shifted_coefficient_interp(c, i) == (-1) ** c.k * f_reduced(c)[i]


def test_truncated_multiset_vanishes_beyond():
    d = truncated_multiset(3, 2)
    assert [d(x) for x in range(5)] == [6, 3, 1, 0, 0]
    with pytest.raises(ValueError):
        shifted_coefficient_interp((1, 2), 5)
