"""Interpolating ``x -> q**x`` at the partial sums of a composition.

The leading coefficient of the interpolant through ``(beta_i, q**beta_i)``
is ``(-1)^k g_c(q)``. Everything here is solved by Cramer's rule over
polynomials in ``q``.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Callable, Sequence

from .compositions import _comp, g_closed_form, multiset_coefficient
from .errors import SingularMatrix
from .exactmath import Poly

PolyMatrix = list[list[Poly]]

COFACTOR_LIMIT = 6


def _as_poly_matrix(rows) -> PolyMatrix:
    out = [[x if isinstance(x, Poly) else Poly.const(x) for x in row] for row in rows]
    size = len(out)
    if any(len(row) != size for row in out):
        raise ValueError("matrix must be square")
    return out


def vandermonde_det(c) -> int:
    """``prod_{i<j} (beta_j - beta_i)``."""
    return _comp(c).vandermonde()


def vandermonde_matrix(c) -> PolyMatrix:
    b = _comp(c).partial_sums
    k = len(b) - 1
    return [[Poly.const(beta ** j) for j in range(k + 1)] for beta in b]


def _det_cofactor(m: PolyMatrix) -> Poly:
    size = len(m)
    memo: dict[tuple[int, int], Poly] = {}

    # expand along rows; the state is (row, bitmask of columns already used)
    def minor(row: int, used: int) -> Poly:
        if row == size:
            return Poly.one()
        key = (row, used)
        if key in memo:
            return memo[key]
        total = Poly()
        sign_pos = 0
        for col in range(size):
            if used >> col & 1:
                continue
            entry = m[row][col]
            if not entry.is_zero():
                term = entry * minor(row + 1, used | 1 << col)
                total = total + term if sign_pos % 2 == 0 else total - term
            sign_pos += 1
        memo[key] = total
        return total

    return minor(0, 0)


def _det_bareiss(m: PolyMatrix) -> Poly:
    a = [row[:] for row in m]
    size = len(a)
    sign = 1
    prev = Poly.one()
    for k in range(size - 1):
        if a[k][k].is_zero():
            swap = next((i for i in range(k + 1, size) if not a[i][k].is_zero()), None)
            if swap is None:
                return Poly()
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        pivot = a[k][k]
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]).divide_exact(prev)
        prev = pivot
    det = a[-1][-1]
    return det if sign == 1 else -det


def poly_det(m, method: str = "auto") -> Poly:
    """Exact determinant of a square matrix of polynomials (or rationals).

    Cofactor expansion up to size 6, fraction-free elimination beyond.
    """
    mat = _as_poly_matrix(m)
    if not mat:
        return Poly.one()
    if method == "auto":
        method = "cofactor" if len(mat) <= COFACTOR_LIMIT else "bareiss"
    if method == "cofactor":
        return _det_cofactor(mat)
    if method == "bareiss":
        return _det_bareiss(mat)
    raise ValueError(f"unknown determinant method {method!r}")


def _replace_column(m: PolyMatrix, col: int, values: Sequence[Poly]) -> PolyMatrix:
    return [row[:col] + [values[i]] + row[col + 1:] for i, row in enumerate(m)]


def cramer_solve(m, rhs) -> list[Poly]:
    """Solve ``m a = rhs`` exactly when det(m) is a nonzero constant."""
    mat = _as_poly_matrix(m)
    rhs = [x if isinstance(x, Poly) else Poly.const(x) for x in rhs]
    det = poly_det(mat)
    if det.is_zero():
        raise SingularMatrix("coefficient matrix is singular")
    return [poly_det(_replace_column(mat, j, rhs)) / det for j in range(len(mat))]


def exponential_rhs(c) -> list[Poly]:
    return [Poly.monomial(beta) for beta in _comp(c).partial_sums]


def interpolation_coefficients(c) -> list[Poly]:
    """All coefficients a_0..a_k of the interpolant of q**x at the partial sums."""
    return cramer_solve(vandermonde_matrix(c), exponential_rhs(c))


def interpolation_leading_coeff(c) -> Poly:
    """a_k from Cramer's rule; equals ``(-1)^k g_c(q)``."""
    mat = vandermonde_matrix(c)
    det = poly_det(mat)
    if det.is_zero():
        raise SingularMatrix("partial sums are not distinct")
    k = len(mat) - 1
    return poly_det(_replace_column(mat, k, exponential_rhs(c))) / det


def interpolation_residuals(c, coeffs: Sequence[Poly]) -> list[Poly]:
    """``sum_j a_j beta_i^j - q^beta_i`` for each row; all zero for a true solution."""
    out = []
    for beta in _comp(c).partial_sums:
        lhs = Poly()
        for j, a in enumerate(coeffs):
            lhs = lhs + a * (beta ** j)
        out.append(lhs - Poly.monomial(beta))
    return out


def replaced_column_det(c, p: Poly) -> Fraction:
    """det of the Vandermonde matrix with last column replaced by p(beta_i)."""
    mat = vandermonde_matrix(c)
    col = [Poly.const(p(beta)) for beta in _comp(c).partial_sums]
    return poly_det(_replace_column(mat, len(mat) - 1, col))[0]


def truncated_multiset(k: int, i: int) -> Callable[[int], int]:
    """``d(x) = ((k, i - x))`` for x <= i and 0 beyond."""
    def d(x: int) -> int:
        return multiset_coefficient(k, i - x) if x <= i else 0
    return d


def shifted_coefficient_interp(c, i: int) -> Fraction:
    """Leading coefficient of the interpolant of ``d`` at the partial sums.

    Equals ``(-1)^k f_i`` where f_i is the i-th coefficient of f_c.
    """
    c = _comp(c)
    if not 0 <= i <= c.n - c.k:
        raise ValueError(f"coefficient index {i} outside 0..{c.n - c.k}")
    d = truncated_multiset(c.k, i)
    mat = vandermonde_matrix(c)
    rhs = [Poly.const(d(beta)) for beta in c.partial_sums]
    return (poly_det(_replace_column(mat, c.k, rhs)) / c.vandermonde())[0]


def interpolation_identity_holds(c) -> bool:
    c = _comp(c)
    return interpolation_leading_coeff(c) == g_closed_form(c) * (-1) ** c.k

