"""Compositions and their composition polynomials.

For a composition ``c = (c_1, ..., c_k)`` of ``n`` the composition
polynomial is the iterated integral

    g_c(q) = int_{q <= t_1 <= ... <= t_k <= 1} t_1^(c_1-1) ... t_k^(c_k-1) dt

and the reduced polynomial is ``f_c = g_c / (1-q)^k``.  Three independent
routes to ``g_c`` are provided (closed form over the partial sums, the
first-part recursion, and symbolic integration) so they can be checked
against one another.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import accumulate

from .errors import IndexOutOfRange, ParseError, TooShort
from .exactmath import ONE_MINUS_Q, Poly, coeff_checks


@dataclass(frozen=True)
class Composition:
    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(self.parts)
        if not parts:
            raise ValueError("a composition needs at least one part")
        for p in parts:
            if isinstance(p, bool) or not isinstance(p, int) or p < 1:
                raise ValueError(f"composition parts must be positive integers, got {p!r}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def parse(cls, text: str) -> "Composition":
        """Parse ``"1,2,2"``."""
        try:
            parts = tuple(int(tok) for tok in text.replace(" ", "").split(","))
            return cls(parts)
        except ValueError as exc:
            raise ParseError(f"invalid composition {text!r}: {exc}") from exc

    def __str__(self):
        return ",".join(map(str, self.parts))

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def k(self) -> int:
        return len(self.parts)

    @cached_property
    def partial_sums(self) -> tuple[int, ...]:
        """``beta_0 = 0 < beta_1 < ... < beta_k = n``."""
        return (0, *accumulate(self.parts))

    @cached_property
    def denominators(self) -> tuple[int, ...]:
        """``prod_{j != i} (beta_j - beta_i)`` for each i (signed)."""
        b = self.partial_sums
        return tuple(
            math.prod(b[j] - b[i] for j in range(len(b)) if j != i) for i in range(len(b))
        )

    @cached_property
    def signed_products(self) -> tuple[int, ...]:
        """``[beta_i] = (-1)^i prod_{j != i}(beta_j - beta_i)``; always positive."""
        return tuple((-1) ** i * d for i, d in enumerate(self.denominators))

    def vandermonde(self) -> int:
        b = self.partial_sums
        return math.prod(b[j] - b[i] for i in range(len(b)) for j in range(i + 1, len(b)))

    def hat_products(self) -> tuple[int, ...]:
        """``[hat beta_i] = det(beta) / [beta_i]``."""
        det = self.vandermonde()
        return tuple(det // s for s in self.signed_products)

    def reverse(self) -> "Composition":
        return Composition(self.parts[::-1])

    def merge(self, m: int) -> "Composition":
        """Combine parts ``m`` and ``m+1`` (1-based)."""
        if not 1 <= m <= self.k - 1:
            raise IndexOutOfRange(f"merge index {m} outside 1..{self.k - 1}")
        p = self.parts
        return Composition(p[: m - 1] + (p[m - 1] + p[m],) + p[m + 1:])

    def truncate_left(self) -> "Composition":
        if self.k < 2:
            raise TooShort("cannot truncate a one-part composition")
        return Composition(self.parts[1:])

    def truncate_right(self) -> "Composition":
        if self.k < 2:
            raise TooShort("cannot truncate a one-part composition")
        return Composition(self.parts[:-1])

    def scaled(self, m: int) -> "Composition":
        return Composition(tuple(m * p for p in self.parts))


def _comp(c) -> Composition:
    return c if isinstance(c, Composition) else Composition(tuple(c))


def compositions_of(n: int):
    """All compositions of n, in lexicographic order of parts."""
    if n == 0:
        return
    for first in range(1, n + 1):
        if first == n:
            yield Composition((n,))
        else:
            for rest in compositions_of(n - first):
                yield Composition((first, *rest.parts))


def compositions_up_to(n_max: int):
    for n in range(1, n_max + 1):
        yield from compositions_of(n)


def g_closed_form(c) -> Poly:
    """Sum over i of q^beta_i / prod_{j != i}(beta_j - beta_i)."""
    c = _comp(c)
    coeffs = [Fraction(0)] * (c.n + 1)
    for beta, d in zip(c.partial_sums, c.denominators):
        coeffs[beta] = Fraction(1, d)
    return Poly(coeffs)


@lru_cache(maxsize=None)
def _g_recursive(parts: tuple[int, ...]) -> Poly:
    c1 = parts[0]
    if len(parts) == 1:
        return (Poly.one() - Poly.monomial(c1)) / c1
    merged = _g_recursive((c1 + parts[1],) + parts[2:])
    left = _g_recursive(parts[1:])
    return merged / c1 - Poly.monomial(c1, Fraction(1, c1)) * left


def g_recursive(c) -> Poly:
    """First-part recursion ``g_c = g_{c^1}/c_1 - q^{c_1} g_{c^L}/c_1`` (memoized)."""
    return _g_recursive(_comp(c).parts)


def g_integral(c) -> Poly:
    """Iterated integral evaluated symbolically, innermost variable first.

    The running integrand is homogeneous in ``(t, q)``; it is stored as a
    list indexed by the exponent of ``t``, the exponent of ``q`` being the
    total degree minus that.
    """
    c = _comp(c)
    # after integrating t_1..t_{i-1}: sum_a table[a] * t^a * q^(deg - a), with t = t_i
    table = [Fraction(1)]
    deg = 0
    for part in c.parts:
        # multiply by t^(part - 1)
        table = [Fraction(0)] * (part - 1) + table
        deg += part - 1
        # integrate dt from q to t: t^a q^b -> (t^(a+1) q^b - q^(a+b+1)) / (a+1)
        new = [Fraction(0)] * (len(table) + 1)
        for a, coef in enumerate(table):
            if coef:
                share = coef / (a + 1)
                new[a + 1] += share
                new[0] -= share
        table = new
        deg += 1
    # outermost upper limit is 1: t^a q^(deg-a) -> q^(deg-a)
    out = [Fraction(0)] * (deg + 1)
    for a, coef in enumerate(table):
        out[deg - a] += coef
    return Poly(out)


def g(c, method: str = "closed") -> Poly:
    if method == "closed":
        return g_closed_form(c)
    if method == "recursive":
        return g_recursive(c)
    if method == "integral":
        return g_integral(c)
    raise ValueError(f"unknown method {method!r}")


def merged_recursion_check(c, m: int) -> bool:
    """``g_{c^m} = (beta_m/n) g_{c^R} + (1 - beta_m/n) q^{c_1} g_{c^L}``."""
    c = _comp(c)
    if c.k < 2:
        raise TooShort("merged recursion needs at least two parts")
    ratio = Fraction(c.partial_sums[m], c.n)
    lhs = g_closed_form(c.merge(m))
    rhs = g_closed_form(c.truncate_right()) * ratio + (
        Poly.monomial(c.parts[0], 1 - ratio) * g_closed_form(c.truncate_left())
    )
    return lhs == rhs


def f_reduced(c) -> Poly:
    """``g_c / (1-q)^k`` by exact division."""
    c = _comp(c)
    return g_closed_form(c).divide_exact(ONE_MINUS_Q ** c.k)


def multiset_coefficient(n: int, k: int, convention: str = "count") -> int:
    """Multiset coefficient ``((n k))``.

    ``convention="count"`` is the number of size-k multisets from an n-set,
    ``C(n+k-1, k)``. ``convention="printed"`` is ``C(n+k-1, k-1)``, which
    differs; it is kept only so the two can be compared.
    """
    if k < 0 or n < 0:
        return 0
    if convention == "count":
        return math.comb(n + k - 1, k)
    if convention == "printed":
        return math.comb(n + k - 1, k - 1) if k >= 1 else 0
    raise ValueError(f"unknown convention {convention!r}")


def f_coefficient_formula(c, convention: str = "count") -> Poly:
    """f_i = sum_{beta_j <= i} (-1)^j / [beta_j] * ((k, i - beta_j))."""
    c = _comp(c)
    k = c.k
    coeffs = []
    for i in range(c.n - k + 1):
        total = Fraction(0)
        for j, (beta, sp) in enumerate(zip(c.partial_sums, c.signed_products)):
            if beta <= i:
                total += Fraction((-1) ** j, sp) * multiset_coefficient(k, i - beta, convention)
        coeffs.append(total)
    return Poly(coeffs)


def nth_derivative_at(p: Poly, order: int, x=1) -> Fraction:
    for _ in range(order):
        p = p.derivative()
    return p(x)


@dataclass(frozen=True)
class IdentityReport:
    reversal: bool
    scaling: bool
    divisibility: bool
    vanishing_derivatives: bool
    top_derivative: bool
    f_at_one: bool
    f_reversal: bool

    @property
    def all_ok(self) -> bool:
        return all(self.as_dict().values())

    def as_dict(self) -> dict[str, bool]:
        return {
            "reversal": self.reversal,
            "scaling": self.scaling,
            "divisibility": self.divisibility,
            "vanishing_derivatives": self.vanishing_derivatives,
            "top_derivative": self.top_derivative,
            "f_at_one": self.f_at_one,
            "f_reversal": self.f_reversal,
        }


def identity_checks(c, m: int = 2) -> IdentityReport:
    c = _comp(c)
    n, k = c.n, c.k
    gc = g_closed_form(c)

    # the reversed composition picks up a sign (-1)^k: g_(n) = (1 - q^n)/n
    g_rev = g_closed_form(c.reverse())
    reversal = g_rev == gc.reversed_coeffs(n + 1) * (-1) ** k
    scaling = g_closed_form(c.scaled(m)) == gc.substitute_power(m) / (m ** k)

    quot, rem = gc.divmod(ONE_MINUS_Q ** k)
    divisibility = rem.is_zero() and quot.degree == n - k

    derivs = []
    p = gc
    for _ in range(k + 1):
        derivs.append(p(1))
        p = p.derivative()
    vanishing = all(d == 0 for d in derivs[:k])
    top = (-1) ** k * derivs[k] == 1  # = k! f_c(1)
    f_one = divisibility and quot(1) == Fraction(1, math.factorial(k))
    f_rev = divisibility and g_rev.divide_exact(ONE_MINUS_Q ** k) == quot.reversed_coeffs(n - k + 1)
    return IdentityReport(reversal, scaling, divisibility, vanishing, top, f_one, f_rev)


def report(c, method: str = "closed") -> dict:
    """JSON-ready summary of one composition."""
    c = _comp(c)
    gc = g(c, method)
    fc = gc.divide_exact(ONE_MINUS_Q ** c.k)
    checks = identity_checks(c).as_dict()
    checks.update(vars(coeff_checks(fc)))
    return {
        "composition": list(c.parts),
        "n": c.n,
        "k": c.k,
        "g": gc.to_json_list(),
        "f": fc.to_json_list(),
        "checks": checks,
    }
