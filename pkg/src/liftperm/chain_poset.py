"""The poset P_c and its linear extensions.

P_c is a chain ``p_0 < p_1 < ... < p_k`` with an extra chain of ``c_i - 1``
elements hanging below each ``p_i``. Counting linear extensions by the
position of ``p_0`` gives the Bernstein coefficients of ``g_c``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .compositions import _comp, g_closed_form
from .errors import OutOfRange, SizeLimitExceeded
from .exactmath import ONE_MINUS_Q, Poly, is_log_concave

DEFAULT_LIMIT = 16
ENUMERATION_LIMIT = 10


@dataclass(frozen=True)
class ChainPoset:
    """Elements are ``0..size-1``; element 0 is ``p_0``."""

    size: int
    spine: tuple[int, ...]
    tails: tuple[tuple[int, ...], ...]
    covers: tuple[tuple[int, int], ...]

    @property
    def bottom(self) -> int:
        return self.spine[0]

    def below_masks(self) -> list[int]:
        """``below[x]``: bitmask of elements strictly below x."""
        below = [0] * self.size
        children: dict[int, list[int]] = {x: [] for x in range(self.size)}
        for a, b in self.covers:
            children[b].append(a)
        done: dict[int, int] = {}

        def down(x: int) -> int:
            if x not in done:
                m = 0
                for a in children[x]:
                    m |= 1 << a | down(a)
                done[x] = m
            return done[x]

        for x in range(self.size):
            below[x] = down(x)
        return below

    def leq(self, a: int, b: int) -> bool:
        return a == b or bool(self.below_masks()[b] >> a & 1)


def build_poset(c) -> ChainPoset:
    c = _comp(c)
    covers = []
    spine = [0]
    tails = []
    nxt = 1
    for part in c.parts:
        tail = tuple(range(nxt, nxt + part - 1))
        nxt += part - 1
        p = nxt
        nxt += 1
        for a, b in zip(tail, tail[1:]):
            covers.append((a, b))
        if tail:
            covers.append((tail[-1], p))
        covers.append((spine[-1], p))
        spine.append(p)
        tails.append(tail)
    return ChainPoset(nxt, tuple(spine), tuple(tails), tuple(covers))


@dataclass(frozen=True)
class ExtensionProfile:
    """``N[j-1]`` counts extensions in which p_0 is the j-th smallest element."""

    N: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.N)


def _enumerate_heights(P: ChainPoset) -> list[int]:
    below = P.below_masks()
    full = (1 << P.size) - 1
    counts = [0] * P.size
    target = P.bottom

    def rec(placed: int, pos: int, bottom_pos: int) -> None:
        if placed == full:
            counts[bottom_pos] += 1
            return
        for x in range(P.size):
            if not placed >> x & 1 and below[x] & ~placed == 0:
                rec(placed | 1 << x, pos + 1, pos if x == target else bottom_pos)

    rec(0, 0, -1)
    return counts


def _dp_heights(P: ChainPoset) -> list[int]:
    """Forward/backward counts over down-sets (order ideals)."""
    below = P.below_masks()
    size = P.size
    full = (1 << size) - 1
    forward = {0: 1}
    layers = [[0]]
    for _ in range(size):
        nxt: dict[int, int] = {}
        for ideal in layers[-1]:
            ways = forward[ideal]
            for x in range(size):
                if not ideal >> x & 1 and below[x] & ~ideal == 0:
                    new = ideal | 1 << x
                    nxt[new] = nxt.get(new, 0) + ways
        forward.update(nxt)
        layers.append(list(nxt))
    backward = {full: 1}
    for layer in reversed(layers[:-1]):
        for ideal in layer:
            total = 0
            for x in range(size):
                if not ideal >> x & 1 and below[x] & ~ideal == 0:
                    total += backward[ideal | 1 << x]
            backward[ideal] = total
    bit = 1 << P.bottom
    counts = [0] * size
    for ideal, ways in forward.items():
        if ideal & bit or below[P.bottom] & ~ideal:
            continue
        counts[bin(ideal).count("1")] += ways * backward[ideal | bit]
    return counts


def count_extensions_by_height(P: ChainPoset, limit: int = DEFAULT_LIMIT,
                               method: str = "auto") -> ExtensionProfile:
    if P.size > limit:
        raise SizeLimitExceeded(f"poset has {P.size} elements, limit is {limit}")
    if method == "auto":
        method = "enumerate" if P.size <= ENUMERATION_LIMIT else "dp"
    if method == "enumerate":
        counts = _enumerate_heights(P)
    elif method == "dp":
        counts = _dp_heights(P)
    else:
        raise ValueError(f"unknown method {method!r}")
    return ExtensionProfile(tuple(counts))


def _factorial_weight(c) -> int:
    return math.prod(math.factorial(p - 1) for p in _comp(c).parts)


def bernstein_polynomial(c, profile: ExtensionProfile | None = None,
                         limit: int = DEFAULT_LIMIT) -> Poly:
    """``prod (c_i-1)! / n! * sum_i N_{i+1} C(n,i) q^i (1-q)^(n-i)``."""
    c = _comp(c)
    n = c.n
    if profile is None:
        profile = count_extensions_by_height(build_poset(c), limit)
    total = Poly()
    for i in range(n + 1):
        coef = profile.N[i] * math.comb(n, i)
        if coef:
            total = total + Poly.monomial(i, coef) * ONE_MINUS_Q ** (n - i)
    return total * Fraction(_factorial_weight(c), math.factorial(n))


def bernstein_identity_check(c, limit: int = DEFAULT_LIMIT) -> bool:
    return bernstein_polynomial(c, limit=limit) == g_closed_form(c)


def slice_volume(c, q) -> Fraction:
    """Volume of the slice ``x_{p_0} = q`` of the order polytope of P_c."""
    q = Fraction(q)
    if not 0 <= q <= 1:
        raise OutOfRange(f"q must lie in [0, 1], got {q}")
    return g_closed_form(c)(q) / _factorial_weight(c)


def order_polytope_volume(c) -> Fraction:
    """Integral of the slice volume over q in [0, 1]."""
    return g_closed_form(c).integrate(0, 1) / _factorial_weight(c)


def logconcavity_N_check(P: ChainPoset, limit: int = DEFAULT_LIMIT) -> bool:
    N = count_extensions_by_height(P, limit).N
    return is_log_concave(N)


def report(c, limit: int = DEFAULT_LIMIT) -> dict:
    c = _comp(c)
    P = build_poset(c)
    profile = count_extensions_by_height(P, limit)
    return {
        "composition": list(c.parts),
        "N": list(profile.N),
        "extensions_total": profile.total,
        "bernstein_ok": bernstein_polynomial(c, profile) == g_closed_form(c),
        "logconcave_ok": is_log_concave(profile.N),
    }
