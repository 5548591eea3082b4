import math
from fractions import Fraction as F
from itertools import permutations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from liftperm.chain_poset import (
    bernstein_identity_check,
    bernstein_polynomial,
    build_poset,
    count_extensions_by_height,
    logconcavity_N_check,
    order_polytope_volume,
    report,
    slice_volume,
)
from liftperm.compositions import Composition, compositions_up_to, g_closed_form
from liftperm.errors import OutOfRange, SizeLimitExceeded
from liftperm.hull import hrep_vertices, hull_volume

comps = st.lists(st.integers(1, 3), min_size=1, max_size=3).map(lambda p: Composition(tuple(p)))


def filter_oracle(P):
    """Count extensions by trying every ordering of the elements."""
    counts = [0] * P.size
    pairs = [(a, b) for a in range(P.size) for b in range(P.size) if a != b and P.leq(a, b)]
    for order in permutations(range(P.size)):
        pos = {x: i for i, x in enumerate(order)}
        if all(pos[a] < pos[b] for a, b in pairs):
            counts[pos[P.bottom]] += 1
    return tuple(counts)


def test_structure_of_example():
    P = build_poset((1, 2, 2))
    assert P.size == 6
    assert P.bottom == 0
    assert len(P.spine) == 4
    assert [len(t) for t in P.tails] == [0, 1, 1]
    assert all(P.leq(P.spine[0], x) for x in P.spine)


def test_example_profile():
    rep = report((1, 2, 2))
    assert rep["N"] == [8, 5, 2, 0, 0, 0]
    assert rep["extensions_total"] == 15
    assert rep["bernstein_ok"] and rep["logconcave_ok"]


@given(comps)
def test_counts_match_permutation_filter(c):
    P = build_poset(c)
    expected = filter_oracle(P)
    assert count_extensions_by_height(P, method="enumerate").N == expected
    assert count_extensions_by_height(P, method="dp").N == expected


def test_enumeration_and_dp_agree_to_eight():
    for c in compositions_up_to(7):
        P = build_poset(c)
        assert count_extensions_by_height(P, method="enumerate") == count_extensions_by_height(P, method="dp")


@pytest.mark.parametrize("parts", [(1, 1), (2, 3), (1, 2, 2), (3, 1, 2, 1)])
def test_bernstein_identity(parts):
    assert bernstein_identity_check(parts)
    assert bernstein_polynomial(parts) == g_closed_form(parts)
    assert logconcavity_N_check(build_poset(parts))


def test_size_limit():
    with pytest.raises(SizeLimitExceeded):
        count_extensions_by_height(build_poset((6, 6, 6)), limit=16)


def test_dp_handles_larger_posets():
    assert bernstein_identity_check((4, 4, 4), limit=16)


def slice_by_hull(c, q):
    """Volume of the order-polytope slice from its inequalities."""
    P = build_poset(c)
    free = [x for x in range(P.size) if x != P.bottom]
    idx = {x: i for i, x in enumerate(free)}
    dim = len(free)
    ineqs = []
    for x in free:
        e = [0] * dim
        e[idx[x]] = 1
        ineqs.append((e, 0))
        ineqs.append(([-v for v in e], -1))
    for a, b in P.covers:
        row = [F(0)] * dim
        rhs = F(0)
        if b in idx:
            row[idx[b]] += 1
        else:
            rhs -= q
        if a in idx:
            row[idx[a]] -= 1
        else:
            rhs += q
        ineqs.append((row, rhs))
    if dim == 0:
        return F(1)
    return hull_volume(hrep_vertices(ineqs, dim))


@pytest.mark.parametrize("parts", [(1,), (2,), (1, 1), (3,), (1, 2), (2, 1), (1, 1, 1)])
@pytest.mark.parametrize("q", [F(0), F(1, 3), F(1, 2), F(4, 5)])
def test_slice_volume_against_hull(parts, q):
    assert slice_volume(parts, q) == slice_by_hull(parts, q)


def test_slice_range():
    with pytest.raises(OutOfRange):
        slice_volume((1, 2), F(3, 2))


@given(comps)
def test_order_polytope_volume_counts_extensions(c):
    total = count_extensions_by_height(build_poset(c)).total
    assert math.factorial(c.n + 1) * order_polytope_volume(c) == total
