"""Generalized permutahedra given by subset parameters.

A generalized permutahedron on ``[n]`` is

    P_n({z_I}) = {x : x_[n] = z_[n], x_I >= z_I for all I}

with ``z`` supermodular. Subsets are bitmasks (bit ``i`` is element
``i+1``); ``z`` is stored as a tuple indexed by mask. The y-parameters are
the Moebius transform of ``z`` and give ``P = sum_I y_I Delta_I``.

The q-lifting lives on ``[n+1]``. The pi-liftings, their inequality
systems, the subdivision of the projected lift and the volume formula are
below; volumes of faces are lattice-normalized so that everything stays
rational.
"""
from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from typing import Iterator, Mapping, Sequence

import networkx as nx

from .compositions import Composition, g_closed_form
from .errors import (
    AmbiguousCell,
    DegenerateBlock,
    NotInPolytope,
    NotNormalized,
    OutOfRange,
    ParseError,
    SizeLimitExceeded,
)
from .exactmath import Poly, parse_rational
from .hull import hull_vertices, hull_volume
from .posets import hasse_from_relation

MAX_PARAM_N = 16
MAX_VERTEX_N = 8
MAX_LATTICE_N = 5


def bits(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def mask_to_key(mask: int, n: int) -> str:
    elems = [i + 1 for i in bits(mask)]
    if n <= 9:
        return "".join(map(str, elems))
    return ",".join(map(str, elems))


def key_to_mask(key: str, n: int) -> int:
    key = key.strip()
    if not key:
        return 0
    toks = key.split(",") if (n > 9 or "," in key) else list(key)
    mask = 0
    for tok in toks:
        e = int(tok)
        if not 1 <= e <= n:
            raise ParseError(f"element {e} outside 1..{n} in subset {key!r}")
        mask |= 1 << (e - 1)
    return mask


def zeta(vals: Sequence[Fraction], n: int) -> list[Fraction]:
    """``out[I] = sum_{J subset I} vals[J]``."""
    a = [Fraction(v) for v in vals]
    for i in range(n):
        b = 1 << i
        for m in range(1 << n):
            if m & b:
                a[m] += a[m ^ b]
    return a


def moebius(vals: Sequence[Fraction], n: int) -> list[Fraction]:
    """Inverse of :func:`zeta`."""
    a = [Fraction(v) for v in vals]
    for i in range(n):
        b = 1 << i
        for m in range(1 << n):
            if m & b:
                a[m] -= a[m ^ b]
    return a


@dataclass(frozen=True)
class SubsetParams:
    n: int
    z: tuple[Fraction, ...]

    def __post_init__(self):
        if not 0 <= self.n <= MAX_PARAM_N:
            raise SizeLimitExceeded(f"ground set size {self.n} outside 0..{MAX_PARAM_N}")
        z = tuple(Fraction(v) for v in self.z)
        if len(z) != 1 << self.n:
            raise ValueError(f"expected {1 << self.n} z-values, got {len(z)}")
        if z[0] != 0:
            raise ValueError("z of the empty set must be 0")
        object.__setattr__(self, "z", z)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    @classmethod
    def from_y(cls, n: int, y) -> "SubsetParams":
        """From a sequence indexed by mask or a ``{mask: value}`` mapping."""
        if isinstance(y, Mapping):
            vals = [Fraction(0)] * (1 << n)
            for m, v in y.items():
                vals[m] = Fraction(v)
        else:
            vals = list(y)
        vals[0] = Fraction(0)
        return cls(n, tuple(zeta(vals, n)))

    @classmethod
    def from_function(cls, n: int, f) -> "SubsetParams":
        return cls(n, tuple(Fraction(f(m)) if m else Fraction(0) for m in range(1 << n)))

    def y(self) -> tuple[Fraction, ...]:
        return tuple(moebius(self.z, self.n))

    def __getitem__(self, mask: int) -> Fraction:
        return self.z[mask]

    def shifted(self, s) -> "SubsetParams":
        """Translate the polytope by ``s * (1, ..., 1)``."""
        s = Fraction(s)
        return SubsetParams(self.n, tuple(v + s * popcount(m) for m, v in enumerate(self.z)))

    # JSON: {"n": 3, "z": {"1": "1", ..., "123": "6"}}; "y" may replace "z"
    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "z": {mask_to_key(m, self.n): str(self.z[m]) for m in range(1, 1 << self.n)},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: Mapping) -> "SubsetParams":
        try:
            n = int(data["n"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError("subset parameters need an integer 'n'") from exc
        if "z" in data:
            vals: list[Fraction | None] = [None] * (1 << n)
            vals[0] = Fraction(0)
            for key, v in data["z"].items():
                vals[key_to_mask(key, n)] = parse_rational(str(v))
            missing = [mask_to_key(m, n) for m, v in enumerate(vals) if v is None]
            if missing:
                raise ParseError(f"missing z-values for subsets {missing[:5]}")
            return cls(n, tuple(vals))
        if "y" in data:
            y = {key_to_mask(k, n): parse_rational(str(v)) for k, v in data["y"].items()}
            return cls.from_y(n, y)
        raise ParseError("subset parameters need 'z' or 'y'")

    @classmethod
    def from_json(cls, text: str) -> "SubsetParams":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from exc
        return cls.from_dict(data)


def check_supermodular(zp: SubsetParams, method: str = "pairs") -> bool:
    """``z_I + z_J <= z_{I|J} + z_{I&J}`` for every pair (or the local form)."""
    z = zp.z
    size = 1 << zp.n
    if method == "pairs":
        return all(
            z[a] + z[b] <= z[a | b] + z[a & b] for a in range(size) for b in range(a + 1, size)
        )
    if method == "local":
        # z_{I+i} + z_{I+j} <= z_{I+i+j} + z_I for i, j outside I
        for m in range(size):
            free = [i for i in range(zp.n) if not m >> i & 1]
            for s, i in enumerate(free):
                for j in free[s + 1:]:
                    if z[m | 1 << i] + z[m | 1 << j] > z[m | 1 << i | 1 << j] + z[m]:
                        return False
        return True
    raise ValueError(f"unknown method {method!r}")


def is_monotone(zp: SubsetParams) -> bool:
    return all(zp.z[m ^ 1 << i] <= zp.z[m] for m in range(1, 1 << zp.n) for i in bits(m))


def is_strictly_positive(zp: SubsetParams) -> bool:
    """P lies in the open positive orthant iff every singleton z is positive."""
    return all(zp.z[1 << i] > 0 for i in range(zp.n))


def normalize(zp: SubsetParams, margin=1) -> tuple[SubsetParams, Fraction]:
    """Shift P so that every coordinate is at least ``margin``; returns the shift."""
    low = min((zp.z[1 << i] for i in range(zp.n)), default=Fraction(0))
    s = max(Fraction(0), Fraction(margin) - low)
    return zp.shifted(s), s


# standard bodies

def permutahedron(n: int) -> SubsetParams:
    """Vertices are the permutations of (1, ..., n)."""
    return SubsetParams.from_function(n, lambda m: sum(range(1, popcount(m) + 1)))


def simplex(n: int, mask: int | None = None) -> SubsetParams:
    """The simplex Delta_I as a generalized permutahedron on [n]."""
    mask = (1 << n) - 1 if mask is None else mask
    return SubsetParams.from_y(n, {mask: 1})


def associahedron(n: int) -> SubsetParams:
    """Sum of Delta_I over the intervals I of [n]."""
    y = {}
    for i in range(n):
        for j in range(i, n):
            y[((1 << (j + 1)) - 1) ^ ((1 << i) - 1)] = 1
    return SubsetParams.from_y(n, y)


# ordered partitions

@dataclass(frozen=True, order=True)
class OrderedPartition:
    blocks: tuple[int, ...]

    def __post_init__(self):
        seen = 0
        for b in self.blocks:
            if b <= 0 or b & seen:
                raise ValueError("blocks must be nonempty and disjoint")
            seen |= b
        if seen & (seen + 1):
            raise ValueError("blocks must cover 1..n")

    @property
    def n(self) -> int:
        return sum(popcount(b) for b in self.blocks)

    @property
    def k(self) -> int:
        return len(self.blocks)

    def prefixes(self) -> list[int]:
        """``A_0 = 0, A_1, ..., A_k``."""
        out = [0]
        for b in self.blocks:
            out.append(out[-1] | b)
        return out

    def composition(self) -> Composition:
        return Composition(tuple(popcount(b) for b in self.blocks))

    def block_of(self, element: int) -> int:
        for j, b in enumerate(self.blocks):
            if b >> element & 1:
                return j
        raise ValueError(f"element {element} not covered")

    def merges(self) -> Iterator["OrderedPartition"]:
        """Minimal coarsenings: join two adjacent blocks."""
        b = self.blocks
        for i in range(len(b) - 1):
            yield OrderedPartition(b[:i] + (b[i] | b[i + 1],) + b[i + 2:])

    def format(self) -> str:
        n = self.n
        return "|".join(mask_to_key(b, n) for b in self.blocks)

    __str__ = format

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> "OrderedPartition":
        parts = text.strip().split("|")
        if n is None:
            n = 10 if "," in text else 9
        try:
            blocks = tuple(key_to_mask(p, n) for p in parts)
            if any(b == 0 for b in blocks):
                raise ParseError(f"empty block in {text!r}")
            return cls(blocks)
        except ValueError as exc:
            raise ParseError(f"invalid ordered partition {text!r}: {exc}") from exc


def ordered_partitions(n: int) -> list[OrderedPartition]:
    """All ordered set partitions of [n] (deterministic order)."""
    out = []

    def rec(rest: int, acc: tuple[int, ...]):
        if rest == 0:
            out.append(OrderedPartition(acc))
            return
        sub = rest
        while sub:
            rec(rest ^ sub, acc + (sub,))
            sub = (sub - 1) & rest

    if n == 0:
        return [OrderedPartition(())]
    rec((1 << n) - 1, ())
    return out


# q-lifting

def _check_q(q) -> Fraction:
    q = Fraction(q)
    if not 0 <= q <= 1:
        raise OutOfRange(f"q must lie in [0, 1], got {q}")
    return q


def q_lift(zp: SubsetParams, q) -> SubsetParams:
    """``z'_J = q z_J`` and ``z'_{J + (n+1)} = z_J`` on [n+1]."""
    q = _check_q(q)
    if not is_monotone(zp):
        raise NotNormalized("q-lifting needs monotone z (shift P into the positive orthant)")
    top = 1 << zp.n
    z = [Fraction(0)] * (2 * top)
    for m in range(top):
        z[m] = q * zp.z[m]
        z[m | top] = zp.z[m]
    return SubsetParams(zp.n + 1, tuple(z))


# faces

@dataclass(frozen=True)
class Block:
    elements: tuple[int, ...]
    params: SubsetParams

    def to_global(self, local: int) -> int:
        return sum(1 << e for i, e in enumerate(self.elements) if local >> i & 1)


def _local_params(zp: SubsetParams, base: int, elements: Sequence[int]) -> SubsetParams:
    """``z^B_I = z_{base | I} - z_base`` for I inside ``elements``."""
    m = len(elements)
    z = []
    for local in range(1 << m):
        g = sum(1 << e for i, e in enumerate(elements) if local >> i & 1)
        z.append(zp.z[base | g] - zp.z[base])
    return SubsetParams(m, tuple(z))


def restriction(zp: SubsetParams, mask: int) -> SubsetParams:
    return _local_params(zp, 0, bits(mask))


def contraction(zp: SubsetParams, mask: int) -> SubsetParams:
    """Parameters on the complement of ``mask`` after contracting it."""
    return _local_params(zp, mask, bits(zp.full ^ mask))


@dataclass(frozen=True)
class Face:
    n: int
    partition: OrderedPartition
    blocks: tuple[Block, ...]
    offsets: tuple[Fraction, ...]

    def vertices(self) -> list[tuple[Fraction, ...]]:
        pts = [[Fraction(0)] * self.n]
        for blk in self.blocks:
            local = vertices(blk.params)
            nxt = []
            for p in pts:
                for v in local:
                    q = list(p)
                    for i, e in enumerate(blk.elements):
                        q[e] = v[i]
                    nxt.append(q)
            pts = nxt
        return sorted({tuple(p) for p in pts})

    @property
    def dim(self) -> int:
        return sum(params_dim(b.params) for b in self.blocks)

    def nvol(self) -> Fraction:
        out = Fraction(1)
        for b in self.blocks:
            out *= nvol(b.params)
        return out


def face_of_partition(zp: SubsetParams, pi: OrderedPartition) -> Face:
    """The face maximizing a functional of type pi, as a product of blocks."""
    if pi.n != zp.n:
        raise ValueError("partition and parameters have different ground sets")
    prefixes = pi.prefixes()
    blocks = tuple(
        Block(tuple(bits(b)), _local_params(zp, prefixes[j], bits(b)))
        for j, b in enumerate(pi.blocks)
    )
    return Face(zp.n, pi, blocks, tuple(zp.z[a] for a in prefixes[:-1]))


def block_values(zp: SubsetParams, pi: OrderedPartition) -> tuple[Fraction, ...]:
    """``z_pi^{pi_i} = z_{A_i} - z_{A_{i-1}}``."""
    a = pi.prefixes()
    return tuple(zp.z[a[i + 1]] - zp.z[a[i]] for i in range(pi.k))


def greedy_vertex(zp: SubsetParams, order: Sequence[int]) -> tuple[Fraction, ...]:
    """Point whose prefix sums along ``order`` equal the z-values of the prefixes."""
    x = [Fraction(0)] * zp.n
    prefix = 0
    for e in order:
        x[e] = zp.z[prefix | 1 << e] - zp.z[prefix]
        prefix |= 1 << e
    return tuple(x)


def vertices(zp: SubsetParams) -> list[tuple[Fraction, ...]]:
    if zp.n > MAX_VERTEX_N:
        raise SizeLimitExceeded(f"vertex enumeration limited to n <= {MAX_VERTEX_N}")
    return sorted({greedy_vertex(zp, w) for w in permutations(range(zp.n))})


def separators(zp: SubsetParams) -> list[int]:
    """Subsets S with P inside the hyperplane ``x_S = z_S``."""
    full = zp.full
    return [s for s in range(1 << zp.n) if zp.z[s] + zp.z[full ^ s] == zp.z[full]]


def params_dim(zp: SubsetParams) -> int:
    """``n`` minus the number of atoms of the separator algebra."""
    if zp.n == 0:
        return 0
    seps = [s for s in separators(zp) if s]
    atoms = [s for s in seps if not any(t != s and t & s == t for t in seps)]
    return zp.n - len(atoms)


@lru_cache(maxsize=None)
def _nvol(z: tuple[Fraction, ...]) -> Fraction:
    size = len(z)
    m = size.bit_length() - 1
    if m <= 1:
        return Fraction(1)
    full = size - 1
    p = [z[(1 << (i + 1)) - 1] - z[(1 << i) - 1] for i in range(m)]
    zp = SubsetParams(m, z)
    total = Fraction(0)
    for s in range(1, full):
        h = sum(p[i] for i in bits(s)) - z[s]
        if h == 0:
            continue
        a = _nvol(restriction(zp, s).z)
        if a == 0:
            continue
        total += h * a * _nvol(contraction(zp, s).z)
    return total / (m - 1)


def nvol(zp: SubsetParams) -> Fraction:
    """Lattice-normalized (n-1)-volume of P.

    Equal to the Euclidean volume of the projection that forgets one
    coordinate. Computed by coning from a vertex over the facets
    ``x_S = z_S``, each of which is the product of a restriction and a
    contraction.
    """
    return _nvol(zp.z)


# face lattice via Minkowski signatures

def face_signature(zp: SubsetParams, pi: OrderedPartition, y=None) -> tuple:
    """Aggregated summands ``sum_I y_I Delta_{I & pi_{j(I)}}`` of the pi-maximal face."""
    y = zp.y() if y is None else y
    owner = [0] * zp.n
    for j, b in enumerate(pi.blocks):
        for e in bits(b):
            owner[e] = j
    sig: dict[int, Fraction] = {}
    for m in range(1, 1 << zp.n):
        if y[m] == 0:
            continue
        j = max(owner[e] for e in bits(m))
        key = m & pi.blocks[j]
        sig[key] = sig.get(key, Fraction(0)) + y[m]
    return tuple(sorted((k, v) for k, v in sig.items() if v != 0))


def _signature_dim(n: int, sig: tuple) -> int:
    y = [Fraction(0)] * (1 << n)
    for k, v in sig:
        y[k] = v
    return params_dim(SubsetParams(n, tuple(zeta(y, n))))


@dataclass
class FaceLattice:
    n: int
    classes: list[tuple[OrderedPartition, ...]]
    dims: list[int]
    graph: nx.DiGraph

    @property
    def f_vector(self) -> tuple[int, ...]:
        top = max(self.dims)
        return tuple(self.dims.count(d) for d in range(top + 1))

    def class_sets(self) -> set[frozenset[OrderedPartition]]:
        return {frozenset(c) for c in self.classes}

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "f_vector": list(self.f_vector),
            "classes": [
                {"dim": d, "partitions": [p.format() for p in c]}
                for c, d in zip(self.classes, self.dims)
            ],
        }


def _lattice_from_classes(n: int, groups: dict, dims_of) -> FaceLattice:
    keys = sorted(groups, key=lambda k: (dims_of(k), min(groups[k])))
    index = {k: i for i, k in enumerate(keys)}
    member = {p: index[k] for k, ps in groups.items() for p in ps}
    classes = [tuple(sorted(groups[k])) for k in keys]
    dims = [dims_of(k) for k in keys]
    less = set()
    for p, ci in member.items():
        for up in p.merges():
            cj = member[up]
            if ci != cj:
                less.add((ci, cj))
    graph = hasse_from_relation(range(len(keys)), less, dict(enumerate(dims)))
    return FaceLattice(n, classes, dims, graph)


def face_lattice(zp: SubsetParams) -> FaceLattice:
    """Faces as classes of ordered partitions with equal maximal faces."""
    if zp.n > MAX_LATTICE_N:
        raise SizeLimitExceeded(f"face lattice enumeration limited to n <= {MAX_LATTICE_N}")
    y = zp.y()
    groups: dict[tuple, list[OrderedPartition]] = {}
    for pi in ordered_partitions(zp.n):
        groups.setdefault(face_signature(zp, pi, y), []).append(pi)
    return _lattice_from_classes(zp.n, groups, lambda sig: _signature_dim(zp.n, sig))


def lifted_classes_by_criterion(zp: SubsetParams) -> set[frozenset[OrderedPartition]]:
    """Classes of ordered partitions of [n+1] for the lift, from P's classes alone.

    Two partitions are identified when their restrictions to [n] give the
    same face of P, the block holding n+1 has the same other elements,
    and the same elements come after it.
    """
    if not is_strictly_positive(zp):
        raise NotNormalized("the lifting criterion needs P in the open positive orthant")
    if zp.n + 1 > MAX_LATTICE_N:
        raise SizeLimitExceeded(f"face lattice enumeration limited to n <= {MAX_LATTICE_N}")
    n = zp.n
    y = zp.y()
    base: dict[OrderedPartition, tuple] = {}
    for pi in ordered_partitions(n):
        base[pi] = face_signature(zp, pi, y)
    top = 1 << n
    groups: dict[tuple, set] = {}
    for lifted in ordered_partitions(n + 1):
        a = lifted.block_of(n)
        blocks = [b & ~top for b in lifted.blocks]
        with_set = blocks[a]
        after = 0
        for b in blocks[a + 1:]:
            after |= b
        reduced = OrderedPartition(tuple(b for b in blocks if b))
        key = (base[reduced], with_set, after)
        groups.setdefault(key, set()).add(lifted)
    return {frozenset(g) for g in groups.values()}


# pi-liftings

def _scale_prefix(v: Sequence[Fraction], mask: int, q: Fraction) -> tuple[Fraction, ...]:
    return tuple(x * q if mask >> i & 1 else x for i, x in enumerate(v))


def pi_lifting_vertices(zp: SubsetParams, pi: OrderedPartition, q) -> list[tuple[Fraction, ...]]:
    """Copies of the pi-maximal face with the first i blocks scaled by q, i = 0..k."""
    q = _check_q(q)
    if q == 1:
        warnings.warn("q = 1: the pi-lifting collapses to the face itself", stacklevel=2)
    face = face_of_partition(zp, pi).vertices()
    out = set()
    for a in pi.prefixes():
        for v in face:
            out.add(_scale_prefix(v, a, q))
    return sorted(out)


@dataclass(frozen=True)
class Inequality:
    """``coeffs . x >= rhs``."""

    coeffs: tuple[Fraction, ...]
    rhs: Fraction
    kind: str
    label: str

    def slack(self, x: Sequence) -> Fraction:
        return sum(c * Fraction(v) for c, v in zip(self.coeffs, x)) - self.rhs

    def holds(self, x: Sequence) -> bool:
        return self.slack(x) >= 0


def _indicator(n: int, mask: int, scale=1) -> list[Fraction]:
    return [Fraction(scale) if mask >> i & 1 else Fraction(0) for i in range(n)]


def _combine(n: int, a: int, sa, b: int, sb) -> tuple[Fraction, ...]:
    """Coefficients of ``sa * x_a - sb * x_b``."""
    out = [Fraction(0)] * n
    for i in bits(a):
        out[i] += sa
    for i in bits(b):
        out[i] -= sb
    return tuple(out)


def pi_lifting_hrep(zp: SubsetParams, pi: OrderedPartition, q) -> list[Inequality]:
    """Simplicial chain ``q <= x_{pi_1}/z^{pi_1} <= ... <= 1`` plus facial inequalities.

    Quotients are cleared: ``x_C / z^C >= x_D / z^D`` is stored as
    ``z^D x_C - z^C x_D >= 0``.
    """
    q = _check_q(q)
    n = zp.n
    zb = block_values(zp, pi)
    for i, v in enumerate(zb):
        if v <= 0:
            raise DegenerateBlock(f"block {i + 1} of {pi} has z-value {v}")
    out = []
    b = pi.blocks
    out.append(Inequality(tuple(_indicator(n, b[0])), q * zb[0], "simplicial", "S0"))
    for i in range(pi.k - 1):
        out.append(Inequality(_combine(n, b[i + 1], zb[i], b[i], zb[i + 1]), Fraction(0),
                              "simplicial", f"S{i + 1}"))
    out.append(Inequality(tuple(_indicator(n, b[-1], -1)), -zb[-1], "simplicial", f"S{pi.k}"))
    prefixes = pi.prefixes()
    for i, blk in enumerate(b):
        base = prefixes[i]
        c = (blk - 1) & blk
        while c:
            d = blk ^ c
            zc = zp.z[base | c] - zp.z[base]
            zd = zp.z[base | blk] - zp.z[base | c]
            label = f"F{i + 1}:{mask_to_key(c, n)}>{mask_to_key(d, n)}"
            out.append(Inequality(_combine(n, c, zd, d, zc), Fraction(0), "facial", label))
            c = (c - 1) & blk
    return out


def satisfies(ineqs: Sequence[Inequality], x: Sequence) -> bool:
    return all(h.holds(x) for h in ineqs)


def lifted_hrep(zp: SubsetParams, q) -> list[Inequality]:
    """The projected lift in R^n: ``q z_I <= x_I <= z_[n] - z_{[n] - I}``."""
    q = _check_q(q)
    n = zp.n
    full = zp.full
    out = []
    for m in range(1, 1 << n):
        key = mask_to_key(m, n)
        out.append(Inequality(tuple(_indicator(n, m)), q * zp.z[m], "lower", f"L{key}"))
        out.append(Inequality(tuple(_indicator(n, m, -1)), zp.z[full ^ m] - zp.z[full],
                              "upper", f"U{key}"))
    return out


def lifted_polytope_vertices(zp: SubsetParams, q) -> list[tuple[Fraction, ...]]:
    """Vertices of the q-lift with the last coordinate dropped."""
    return sorted({v[:-1] for v in vertices(q_lift(zp, q))})


def _lower_hull(points: list[tuple[Fraction, Fraction]]) -> list[int]:
    order = sorted(range(len(points)), key=lambda i: points[i])
    hull: list[int] = []
    for i in order:
        if hull and points[hull[-1]][0] == points[i][0]:
            continue
        while len(hull) >= 2:
            o, a, b = points[hull[-2]], points[hull[-1]], points[i]
            if (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]) <= 0:
                hull.pop()
            else:
                break
        hull.append(i)
    return hull


def subdivision_assign(zp: SubsetParams, q, x: Sequence) -> OrderedPartition:
    """The pi whose pi-lifting contains x, read off the lower hull of ``(z_I, x_I)``."""
    q = _check_q(q)
    if not is_strictly_positive(zp):
        raise NotNormalized("subdivision needs P in the open positive orthant")
    x = tuple(Fraction(v) for v in x)
    if len(x) != zp.n:
        raise ValueError(f"point has {len(x)} coordinates, expected {zp.n}")
    if not satisfies(lifted_hrep(zp, q), x):
        raise NotInPolytope(f"{x} is not in the lifted polytope")
    if any(v <= 0 for v in x):
        raise NotInPolytope("subdivision needs a strictly positive point")
    n = zp.n
    pts = []
    for m in range(1 << n):
        pts.append((zp.z[m], sum(x[i] for i in bits(m))))
    hull = _lower_hull(pts)
    # every subset whose point lies on the lower boundary, vertices or not
    on_hull = set()
    for a, b in zip(hull, hull[1:]):
        (x0, y0), (x1, y1) = pts[a], pts[b]
        for m, (px, py) in enumerate(pts):
            if x0 <= px <= x1 and (x1 - x0) * (py - y0) == (y1 - y0) * (px - x0):
                on_hull.add(m)
    full = zp.full
    chains: list[OrderedPartition] = []

    def rec(cur: int, acc: tuple[int, ...]):
        if cur == full:
            chains.append(OrderedPartition(acc))
            return
        for m in on_hull:
            if m != cur and m & cur == cur:
                rec(m, acc + (m ^ cur,))

    rec(0, ())
    found = sorted(pi for pi in chains if satisfies(pi_lifting_hrep(zp, pi, q), x))
    if not found:
        raise NotInPolytope(f"no cell contains {x}")
    if len(found) > 1:
        raise AmbiguousCell(found)
    return found[0]


def pi_lifting_volume_poly(zp: SubsetParams, pi: OrderedPartition,
                           allow_degenerate: bool = False) -> Poly:
    """``z_pi * NVol(P_pi) * g_{c(pi)}(q)`` as a polynomial in q."""
    zb = block_values(zp, pi)
    zpi = Fraction(1)
    for i, v in enumerate(zb):
        if v < 0 or (v == 0 and not allow_degenerate):
            raise DegenerateBlock(f"block {i + 1} of {pi} has z-value {v}")
        zpi *= v
    if zpi == 0:
        return Poly()
    return g_closed_form(pi.composition()) * (zpi * face_of_partition(zp, pi).nvol())


def pi_lifting_volume(zp: SubsetParams, pi: OrderedPartition, q,
                      allow_degenerate: bool = False) -> Fraction:
    q = _check_q(q)
    return pi_lifting_volume_poly(zp, pi, allow_degenerate)(q)


def lifted_volume_poly(zp: SubsetParams) -> Poly:
    """Volume of the projected lift as a polynomial in q, summed over all cells."""
    total = Poly()
    for pi in ordered_partitions(zp.n):
        total = total + pi_lifting_volume_poly(zp, pi, allow_degenerate=True)
    return total


def subdivision_report(zp: SubsetParams, q) -> dict:
    """Per-cell volumes, their sum and (n <= 3) the hull volume of the lift."""
    q = _check_q(q)
    cells = {}
    total = Fraction(0)
    for pi in ordered_partitions(zp.n):
        v = pi_lifting_volume(zp, pi, q, allow_degenerate=True)
        cells[pi.format()] = str(v)
        total += v
    out = {"n": zp.n, "q": str(q), "cells": cells, "sum": str(total)}
    if zp.n <= 3:
        hv = hull_volume(lifted_polytope_vertices(zp, q))
        out["hull_volume"] = str(hv)
        out["ok"] = hv == total
    else:
        out["hull_volume"] = None
        out["ok"] = None
    return out


def minkowski_sum(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[tuple[Fraction, ...]]:
    pts = {tuple(Fraction(x) + Fraction(y) for x, y in zip(u, v)) for u in a for v in b}
    return hull_vertices(pts)


def scale_points(points, s) -> list[tuple[Fraction, ...]]:
    s = Fraction(s)
    return [tuple(s * Fraction(x) for x in p) for p in points]
