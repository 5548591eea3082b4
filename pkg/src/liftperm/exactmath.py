"""Exact rationals and dense univariate polynomials over them.

Rationals are :class:`fractions.Fraction`; this module adds the
polynomial type used for every composition polynomial, determinant entry
and volume in the package, plus the coefficient-sequence tests
(positivity, unimodality, log-concavity).
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import NonExactDivision, ParseError

Rational = Fraction
Number = Union[int, Fraction]


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` into a Fraction."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"not a rational number: {text!r}") from exc


def format_rational(x: Number) -> str:
    return str(Fraction(x))


class Poly:
    """Immutable dense polynomial in one variable ``q`` with rational coefficients.

    ``coeffs[i]`` is the coefficient of ``q**i``. Trailing zeros are
    stripped on construction, so the zero polynomial has ``coeffs == ()``
    and equality is a tuple comparison.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Number] = ()):
        cs = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # construction helpers
    @classmethod
    def const(cls, c: Number) -> "Poly":
        return cls([c])

    @classmethod
    def monomial(cls, degree: int, c: Number = 1) -> "Poly":
        if degree < 0:
            raise ValueError("negative degree")
        return cls([0] * degree + [c])

    @classmethod
    def zero(cls) -> "Poly":
        return cls()

    @classmethod
    def one(cls) -> "Poly":
        return cls([1])

    @classmethod
    def from_json(cls, text: str | list) -> "Poly":
        data = json.loads(text) if isinstance(text, str) else text
        return cls(parse_rational(str(c)) for c in data)

    def to_json_list(self) -> list[str]:
        return [format_rational(c) for c in self.coeffs]

    def to_json(self) -> str:
        return json.dumps(self.to_json_list())

    # basic protocol
    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def __len__(self):
        return len(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly.const(other).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly({[format_rational(c) for c in self.coeffs]})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                mono = ""
            elif i == 1:
                mono = "q"
            else:
                mono = f"q^{i}"
            if mono and abs(c) == 1:
                body = mono
            elif mono:
                body = f"{format_rational(abs(c))}*{mono}"
            else:
                body = format_rational(abs(c))
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    # arithmetic
    def __add__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Poly([x + y for x, y in zip(a, b)] + list(a[len(b):]))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly(c * other for c in self.coeffs)
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        return Poly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("polynomial divided by zero scalar")
            return Poly(c / other for c in self.coeffs)
        if isinstance(other, Poly):
            return self.divide_exact(other)
        return NotImplemented

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result, base = Poly.one(), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        """Long division; returns (quotient, remainder)."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        db = other.degree
        lead = other.coeffs[-1]
        if len(rem) - 1 < db:
            return Poly(), Poly(rem)
        quot = [Fraction(0)] * (len(rem) - db)
        for i in range(len(rem) - 1 - db, -1, -1):
            c = rem[i + db] / lead
            quot[i] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[i + j] -= c * b
        return Poly(quot), Poly(rem[:db])

    def divide_exact(self, other: "Poly") -> "Poly":
        quot, rem = self.divmod(other)
        if not rem.is_zero():
            raise NonExactDivision(f"({self}) is not divisible by ({other})")
        return quot

    def __call__(self, x: Number) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def substitute_power(self, m: int) -> "Poly":
        """Return p(q**m)."""
        if m < 1:
            raise ValueError("substitution exponent must be >= 1")
        if not self.coeffs:
            return Poly()
        out = [Fraction(0)] * (m * self.degree + 1)
        for i, c in enumerate(self.coeffs):
            out[m * i] = c
        return Poly(out)

    def derivative(self) -> "Poly":
        return Poly(i * c for i, c in enumerate(self.coeffs) if i)

    def antiderivative(self) -> "Poly":
        """Antiderivative with zero constant term."""
        return Poly([0] + [c / (i + 1) for i, c in enumerate(self.coeffs)])

    def integrate(self, lo: Number, hi: Number) -> Fraction:
        anti = self.antiderivative()
        return anti(hi) - anti(lo)

    def reversed_coeffs(self, length: int) -> "Poly":
        """``q**(length-1) * p(1/q)``; requires ``degree < length``."""
        if self.degree >= length:
            raise ValueError("degree too large for requested reversal")
        padded = list(self.coeffs) + [Fraction(0)] * (length - len(self.coeffs))
        return Poly(reversed(padded))


def _as_poly(x) -> Poly | None:
    if isinstance(x, Poly):
        return x
    if isinstance(x, (int, Fraction)):
        return Poly.const(x)
    return None


Q = Poly([0, 1])
ONE_MINUS_Q = Poly([1, -1])


def poly_add(a: Poly, b: Poly) -> Poly:
    return a + b


def poly_mul(a: Poly, b: Poly) -> Poly:
    return a * b


def poly_divide_exact(a: Poly, b: Poly) -> Poly:
    return a.divide_exact(b)


def poly_eval(p: Poly, x: Number) -> Fraction:
    return p(x)


def poly_substitute_power(p: Poly, m: int) -> Poly:
    return p.substitute_power(m)


@dataclass(frozen=True)
class CoeffReport:
    positive: bool
    unimodal: bool
    log_concave: bool

    @property
    def all_ok(self) -> bool:
        return self.positive and self.unimodal and self.log_concave


def is_positive(seq: Sequence[Number]) -> bool:
    return len(seq) > 0 and all(x > 0 for x in seq)


def is_unimodal(seq: Sequence[Number]) -> bool:
    """Weakly rises then weakly falls."""
    i, m = 0, len(seq)
    while i + 1 < m and seq[i] <= seq[i + 1]:
        i += 1
    while i + 1 < m and seq[i] >= seq[i + 1]:
        i += 1
    return i >= m - 1


def is_log_concave(seq: Sequence[Number]) -> bool:
    return all(seq[j] * seq[j] >= seq[j - 1] * seq[j + 1] for j in range(1, len(seq) - 1))


def sequence_checks(seq: Sequence[Number]) -> CoeffReport:
    return CoeffReport(is_positive(seq), is_unimodal(seq), is_log_concave(seq))


def coeff_checks(p: Poly) -> CoeffReport:
    """Positivity, unimodality and log-concavity of the coefficients 0..deg."""
    return sequence_checks(p.coeffs)
