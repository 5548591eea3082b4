"""Exact convex hulls, volumes and face lattices in dimension at most 3.

These are brute-force routines meant as oracles: every facet candidate is
tested against every point, all in rational arithmetic. Inputs are
sequences of points whose coordinates are ints or Fractions.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .errors import DimensionTooHigh

Point = tuple[Fraction, ...]

MAX_DIM = 3


def _as_points(points) -> list[Point]:
    seen = {}
    for p in points:
        t = tuple(Fraction(x) for x in p)
        seen.setdefault(t, None)
    return list(seen)


def solve_linear(a: list[list[Fraction]], b: list[Fraction]) -> list[Fraction] | None:
    """Solve a square system exactly; None if singular."""
    size = len(a)
    m = [list(row) + [rhs] for row, rhs in zip(a, b)]
    for col in range(size):
        piv = next((r for r in range(col, size) if m[r][col] != 0), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(size):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [row[-1] for row in m]


def affine_frame(points: Sequence[Point]) -> tuple[int, list[int]]:
    """Affine dimension of the points and coordinate indices that embed it.

    Projecting onto the returned pivot coordinates is injective on the
    affine hull, so it preserves the combinatorics of the hull.
    """
    if not points:
        return -1, []
    base = points[0]
    rows = [[x - y for x, y in zip(p, base)] for p in points[1:]]
    pivots = []
    r = 0
    ncols = len(base)
    for col in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col] / rows[r][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    return len(pivots), pivots


def _project(points: Sequence[Point], cols: Sequence[int]) -> list[Point]:
    return [tuple(p[c] for c in cols) for p in points]


def _cross(o, a, b) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def hull_2d_order(points: Sequence[Point]) -> list[int]:
    """Indices of the strict hull vertices in counter-clockwise order."""
    idx = sorted(range(len(points)), key=lambda i: points[i])
    if len(idx) <= 2:
        return idx

    def chain(order):
        out: list[int] = []
        for i in order:
            while len(out) >= 2 and _cross(points[out[-2]], points[out[-1]], points[i]) <= 0:
                out.pop()
            out.append(i)
        return out

    lower = chain(idx)
    upper = chain(reversed(idx))
    return lower[:-1] + upper[:-1]


def shoelace(poly: Sequence[Point]) -> Fraction:
    total = Fraction(0)
    for i in range(len(poly)):
        x1, y1 = poly[i]
        x2, y2 = poly[(i + 1) % len(poly)]
        total += x1 * y2 - x2 * y1
    return abs(total) / 2


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _cross3(a, b):
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def _facets_3d(pts: list[Point]) -> list[tuple[tuple, Fraction, frozenset[int]]]:
    """Facet planes ``normal . x >= offset`` with the points lying on each."""
    found = {}
    for i, j, k in combinations(range(len(pts)), 3):
        a = pts[i]
        normal = _cross3(_sub(pts[j], a), _sub(pts[k], a))
        if not any(normal):
            continue
        lead = next(x for x in normal if x != 0)
        normal = tuple(x / abs(lead) for x in normal)
        offset = _dot(normal, a)
        sides = [_dot(normal, p) - offset for p in pts]
        if all(s >= 0 for s in sides):
            pass
        elif all(s <= 0 for s in sides):
            normal = tuple(-x for x in normal)
            offset = -offset
        else:
            continue
        key = (normal, offset)
        if key not in found:
            found[key] = frozenset(t for t, s in enumerate(sides) if s == 0)
    return [(n, o, on) for (n, o), on in found.items()]


def _facet_cycle(pts: list[Point], normal, members: frozenset[int]) -> list[int]:
    drop = max(range(3), key=lambda c: abs(normal[c]))
    keep = [c for c in range(3) if c != drop]
    members = sorted(members)
    sub = [tuple(pts[m][c] for c in keep) for m in members]
    return [members[t] for t in hull_2d_order(sub)]


def hull_vertices(points) -> list[Point]:
    """Extreme points of the convex hull (affine dimension at most 3)."""
    pts = _as_points(points)
    d, cols = affine_frame(pts)
    if d > MAX_DIM:
        raise DimensionTooHigh(f"affine dimension {d} exceeds {MAX_DIM}")
    if d <= 0:
        return pts
    proj = _project(pts, cols)
    if d == 1:
        order = sorted(range(len(pts)), key=lambda i: proj[i])
        return sorted({pts[order[0]], pts[order[-1]]})
    if d == 2:
        return sorted(pts[i] for i in hull_2d_order(proj))
    keep = set()
    for normal, _, members in _facets_3d(proj):
        keep.update(_facet_cycle(proj, normal, members))
    return sorted(pts[i] for i in keep)


def hull_volume(points) -> Fraction:
    """Euclidean volume in the ambient space of the points (ambient dim <= 3).

    Returns 0 when the hull is not full-dimensional.
    """
    pts = _as_points(points)
    if not pts:
        return Fraction(0)
    dim = len(pts[0])
    if dim > MAX_DIM:
        raise DimensionTooHigh(f"ambient dimension {dim} exceeds {MAX_DIM}")
    d, _ = affine_frame(pts)
    if d < dim:
        return Fraction(0)
    if dim == 1:
        xs = [p[0] for p in pts]
        return max(xs) - min(xs)
    if dim == 2:
        return shoelace([pts[i] for i in hull_2d_order(pts)])
    centre = tuple(sum(p[c] for p in pts) / len(pts) for c in range(3))
    vol = Fraction(0)
    for normal, _, members in _facets_3d(pts):
        cyc = _facet_cycle(pts, normal, members)
        a = _sub(pts[cyc[0]], centre)
        for s, t in zip(cyc[1:], cyc[2:]):
            b = _sub(pts[s], centre)
            c = _sub(pts[t], centre)
            vol += abs(_dot(a, _cross3(b, c)))
    return vol / 6


def hrep_vertices(ineqs: Sequence[tuple[Sequence, object]], dim: int) -> list[Point]:
    """Vertices of ``{x : a . x >= b}`` by solving every dim-subset of constraints."""
    rows = [([Fraction(x) for x in a], Fraction(b)) for a, b in ineqs]
    out = set()
    for combo in combinations(rows, dim):
        sol = solve_linear([a for a, _ in combo], [b for _, b in combo])
        if sol is None:
            continue
        if all(_dot(a, sol) >= b for a, b in rows):
            out.add(tuple(sol))
    return sorted(out)


def facets(points) -> tuple[list[Point], list[frozenset[int]]]:
    """Hull vertices and, for each facet, the set of vertex indices on it."""
    verts = hull_vertices(points)
    d, cols = affine_frame(verts)
    proj = _project(verts, cols)
    if d <= 0:
        return verts, []
    if d == 1:
        return verts, [frozenset({0}), frozenset({1})]
    if d == 2:
        cyc = hull_2d_order(proj)
        return verts, [frozenset({cyc[i], cyc[(i + 1) % len(cyc)]}) for i in range(len(cyc))]
    return verts, [members for _, _, members in _facets_3d(proj)]


def face_lattice_from_points(points) -> tuple[list[Point], dict[frozenset[int], int]]:
    """All nonempty faces as vertex-index sets, mapped to their dimension."""
    verts, fac = facets(points)
    full = frozenset(range(len(verts)))
    faces = {full}
    frontier = set(fac)
    while frontier:
        faces |= frontier
        nxt = set()
        for f in frontier:
            for g in fac:
                h = f & g
                if h and h not in faces:
                    nxt.add(h)
        frontier = nxt
    dims = {f: affine_frame([verts[i] for i in sorted(f)])[0] for f in faces}
    return verts, dims
