"""Building sets, nested sets, B-forests and painted B-forests.

A B-forest is stored as its nested set: a frozenset of member masks. The
forest structure (parent = smallest member strictly containing a node,
node label = the node minus its children) is derived on demand. A painted
forest adds a white/grey/black colouring of the members.

Ranks are codimensions of the corresponding faces: ``|N| - |B_max|`` for
forests of the nestohedron and ``|N| - #grey`` for painted forests of the
nestomultiplihedron.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

import networkx as nx

from .errors import InvalidBuildingSet, ParseError, SizeLimitExceeded
from .genperm import (
    OrderedPartition,
    SubsetParams,
    bits,
    face_lattice,
    key_to_mask,
    mask_to_key,
    ordered_partitions,
    popcount,
    q_lift,
)
from .posets import graded_isomorphic, opposite

MAX_FOREST_N = 5
MAX_PAINTED_N = 4

WHITE, GREY, BLACK = "white", "grey", "black"
COLORS = (WHITE, GREY, BLACK)


def _is_subset(a: int, b: int) -> bool:
    return a & b == a


@dataclass(frozen=True)
class BuildingSet:
    n: int
    members: frozenset[int]

    def __post_init__(self):
        members = frozenset(self.members)
        object.__setattr__(self, "members", members)
        full = (1 << self.n) - 1
        for m in members:
            if m <= 0 or m & ~full:
                raise InvalidBuildingSet(f"member {m:b} is not a nonempty subset of [{self.n}]")
        for i in range(self.n):
            if 1 << i not in members:
                raise InvalidBuildingSet(f"singleton {{{i + 1}}} is missing")
        for a, b in combinations(members, 2):
            if a & b and a | b not in members:
                raise InvalidBuildingSet(
                    f"{mask_to_key(a, self.n)} and {mask_to_key(b, self.n)} intersect "
                    "but their union is missing"
                )

    @classmethod
    def closure(cls, n: int, family: Iterable[int]) -> tuple["BuildingSet", frozenset[int]]:
        """Smallest building set containing ``family``; also returns what was added."""
        start = {m for m in family if m}
        members = set(start) | {1 << i for i in range(n)}
        changed = True
        while changed:
            changed = False
            for a, b in combinations(list(members), 2):
                if a & b and a | b not in members:
                    members.add(a | b)
                    changed = True
        return cls(n, frozenset(members)), frozenset(members - start)

    def maximal(self) -> frozenset[int]:
        return frozenset(
            m for m in self.members if not any(o != m and _is_subset(m, o) for o in self.members)
        )

    def sorted_members(self) -> list[int]:
        return sorted(self.members, key=lambda m: (popcount(m), bits(m)))

    def to_dict(self) -> dict:
        return {"n": self.n, "members": [mask_to_key(m, self.n) for m in self.sorted_members()]}

    @classmethod
    def from_dict(cls, data: dict, close: bool = False) -> "BuildingSet":
        try:
            n = int(data["n"])
            family = [key_to_mask(k, n) for k in data["members"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"invalid building set: {exc}") from exc
        if close:
            return cls.closure(n, family)[0]
        return cls(n, frozenset(family))

    @classmethod
    def from_json(cls, text: str, close: bool = False) -> "BuildingSet":
        try:
            return cls.from_dict(json.loads(text), close)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from exc


def parse_edges(text: str) -> list[tuple[int, int]]:
    """``"1-2,2-3"`` -> ``[(1, 2), (2, 3)]``."""
    edges = []
    text = text.strip()
    if not text:
        return edges
    for tok in text.split(","):
        try:
            a, b = tok.split("-")
            edges.append((int(a), int(b)))
        except ValueError as exc:
            raise ParseError(f"invalid edge {tok!r}") from exc
    return edges


def graph_building_set(edges: Sequence[tuple[int, int]], n: int) -> BuildingSet:
    """Tubes: vertex sets inducing connected subgraphs (vertices 1..n)."""
    g = nx.Graph()
    g.add_nodes_from(range(1, n + 1))
    for a, b in edges:
        if not (1 <= a <= n and 1 <= b <= n) or a == b:
            raise ParseError(f"edge {a}-{b} is not an edge of a simple graph on [{n}]")
        g.add_edge(a, b)
    members = set()
    for m in range(1, 1 << n):
        verts = [i + 1 for i in bits(m)]
        if nx.is_connected(g.subgraph(verts)):
            members.add(m)
    return BuildingSet(n, frozenset(members))


def singleton_building_set(n: int) -> BuildingSet:
    return BuildingSet(n, frozenset(1 << i for i in range(n)))


# nested sets and forests

def is_nested(bset: BuildingSet, nested: Iterable[int]) -> bool:
    """(N1) laminar, (N2) no union of >= 2 disjoint members is in B, (N3) B_max inside."""
    nested = list(nested)
    if not set(nested) <= bset.members or not bset.maximal() <= set(nested):
        return False
    for a, b in combinations(nested, 2):
        if a & b and not (_is_subset(a, b) or _is_subset(b, a)):
            return False
    for r in range(2, len(nested) + 1):
        for group in combinations(nested, r):
            if any(a & b for a, b in combinations(group, 2)):
                continue
            union = 0
            for g in group:
                union |= g
            if union in bset.members:
                return False
    return True


def enumerate_nested_sets(bset: BuildingSet) -> list[frozenset[int]]:
    if bset.n > MAX_FOREST_N:
        raise SizeLimitExceeded(f"nested set enumeration limited to n <= {MAX_FOREST_N}")
    roots = bset.maximal()
    rest = [m for m in bset.sorted_members() if m not in roots]
    out = []

    def rec(i: int, chosen: list[int]):
        if i == len(rest):
            if is_nested(bset, chosen):
                out.append(frozenset(chosen))
            return
        rec(i + 1, chosen)
        m = rest[i]
        if all(not (m & c) or _is_subset(m, c) or _is_subset(c, m) for c in chosen):
            rec(i + 1, chosen + [m])

    rec(0, list(roots))
    return sorted(out, key=lambda s: (len(s), sorted(s)))


@dataclass(frozen=True)
class BForest:
    n: int
    nested: frozenset[int]

    def parent(self, node: int) -> int | None:
        ups = [m for m in self.nested if m != node and _is_subset(node, m)]
        return min(ups, key=popcount) if ups else None

    def children(self, node: int) -> list[int]:
        return sorted(m for m in self.nested if self.parent(m) == node)

    def roots(self) -> list[int]:
        return sorted(m for m in self.nested if self.parent(m) is None)

    def label(self, node: int) -> int:
        """The node minus everything strictly below it."""
        below = 0
        for c in self.children(node):
            below |= c
        return node & ~below

    def below(self, node: int) -> list[int]:
        return [m for m in self.nested if m != node and _is_subset(m, node)]

    @property
    def rank(self) -> int:
        return len(self.nested) - len(self.roots())

    @property
    def dim(self) -> int:
        return self.n - len(self.nested)

    def covers(self) -> list["BForest"]:
        """Forests one contraction below: drop a non-root member."""
        roots = set(self.roots())
        return [BForest(self.n, self.nested - {m}) for m in sorted(self.nested) if m not in roots]

    def _tree(self, node: int, colors=None) -> dict:
        d = {"label": mask_to_key(self.label(node), self.n)}
        if colors is not None:
            d["color"] = colors[node]
        d["children"] = [self._tree(c, colors) for c in self.children(node)]
        return d

    def to_dict(self) -> list[dict]:
        return [self._tree(r) for r in self.roots()]


def enumerate_bforests(bset: BuildingSet) -> list[BForest]:
    return [BForest(bset.n, s) for s in enumerate_nested_sets(bset)]


def forest_poset(bset: BuildingSet) -> nx.DiGraph:
    """Cover graph: an edge ``low -> f`` when ``low`` is one contraction of ``f``."""
    g = nx.DiGraph()
    forests = enumerate_bforests(bset)
    for f in forests:
        g.add_node(f, rank=f.rank)
    for f in forests:
        for low in f.covers():
            g.add_edge(low, f)
    return g


# painted forests

@dataclass(frozen=True)
class PaintedForest:
    forest: BForest
    colors: tuple[tuple[int, str], ...]

    @classmethod
    def make(cls, forest: BForest, colors: dict[int, str]) -> "PaintedForest":
        return cls(forest, tuple(sorted(colors.items())))

    @property
    def color_map(self) -> dict[int, str]:
        return dict(self.colors)

    def nodes(self, color: str) -> list[int]:
        return [m for m, c in self.colors if c == color]

    @property
    def rank(self) -> int:
        return len(self.forest.nested) - len(self.nodes(GREY))

    @property
    def dim(self) -> int:
        return self.forest.n - self.rank

    def is_valid(self) -> bool:
        f = self.forest
        cm = self.color_map
        if set(cm) != set(f.nested) or any(c not in COLORS for c in cm.values()):
            return False
        for m in f.nested:
            p = f.parent(m)
            if p is None:
                continue
            # below white or grey only white; above black only black
            if cm[p] in (WHITE, GREY) and cm[m] != WHITE:
                return False
            if cm[m] == BLACK and cm[p] != BLACK:
                return False
        return True

    def to_dict(self) -> list[dict]:
        return [self.forest._tree(r, self.color_map) for r in self.forest.roots()]


def colorings(forest: BForest) -> list[dict[int, str]]:
    """All valid paintings, assigned top-down: children of white or grey are white."""
    out = []

    def rec(stack: list[int], cm: dict[int, str]):
        if not stack:
            out.append(dict(cm))
            return
        node, rest = stack[0], stack[1:]
        p = forest.parent(node)
        options = COLORS if p is None or cm[p] == BLACK else (WHITE,)
        for c in options:
            cm[node] = c
            rec(rest + forest.children(node), cm)
            del cm[node]

    rec(forest.roots(), {})
    return out


def enumerate_painted(bset: BuildingSet) -> list[PaintedForest]:
    if bset.n > MAX_PAINTED_N:
        raise SizeLimitExceeded(f"painted forest enumeration limited to n <= {MAX_PAINTED_N}")
    out = []
    for f in enumerate_bforests(bset):
        for cm in colorings(f):
            out.append(PaintedForest.make(f, cm))
    return out


def painted_covers(pf: PaintedForest) -> list[PaintedForest]:
    """Painted forests one move below ``pf``.

    Moves: contract a BB, WW or GW edge; contract the whole BG bunch under
    a black node (the node turns grey); turn a black node whose children
    are all white grey; turn a white node whose parent is black, or which
    is a root, grey.
    """
    f = pf.forest
    cm = pf.color_map
    out = []

    def emit(nested, colors):
        cand = PaintedForest.make(BForest(f.n, frozenset(nested)), colors)
        if cand.is_valid() and cand not in out:
            out.append(cand)

    for s in sorted(f.nested):
        t = f.parent(s)
        if t is None:
            continue
        pair = (cm[s], cm[t])
        if pair in ((BLACK, BLACK), (WHITE, WHITE), (WHITE, GREY)):
            colors = {m: c for m, c in cm.items() if m != s}
            emit(f.nested - {s}, colors)
    for s in sorted(f.nested):
        if cm[s] != BLACK:
            continue
        kids = f.children(s)
        grey_kids = [c for c in kids if cm[c] == GREY]
        if grey_kids:
            colors = {m: c for m, c in cm.items() if m not in grey_kids}
            colors[s] = GREY
            emit(f.nested - set(grey_kids), colors)
        if all(cm[c] == WHITE for c in kids):
            colors = dict(cm)
            colors[s] = GREY
            emit(f.nested, colors)
    for s in sorted(f.nested):
        if cm[s] != WHITE:
            continue
        p = f.parent(s)
        if p is None or cm[p] == BLACK:
            colors = dict(cm)
            colors[s] = GREY
            emit(f.nested, colors)
    return out


def painted_poset(bset: BuildingSet) -> nx.DiGraph:
    g = nx.DiGraph()
    painted = enumerate_painted(bset)
    for p in painted:
        g.add_node(p, rank=p.rank)
    for p in painted:
        for low in painted_covers(p):
            g.add_edge(low, p)
    return g


# polytopes

def nestohedron_params(bset: BuildingSet) -> SubsetParams:
    """Sum of Delta_B over B in the building set."""
    return SubsetParams.from_y(bset.n, {m: 1 for m in bset.members})


def nestomultiplihedron_params(bset: BuildingSet) -> SubsetParams:
    """Sum of Delta_B and Delta_{B + (n+1)} over B, on [n+1]."""
    top = 1 << bset.n
    y = {}
    for m in bset.members:
        y[m] = 1
        y[m | top] = 1
    return SubsetParams.from_y(bset.n + 1, y)


# labelling maps between ordered partitions and (painted) forests

def _j_index(pi: OrderedPartition, mask: int) -> int:
    return max(pi.block_of(e) for e in bits(mask))


def forest_from_partition(bset: BuildingSet, pi: OrderedPartition) -> BForest:
    """Members N with ``j(N) < j(M)`` for every member M strictly containing N."""
    nested = set()
    for nmask in bset.members:
        jn = _j_index(pi, nmask)
        if all(jn < _j_index(pi, m) for m in bset.members if m != nmask and _is_subset(nmask, m)):
            nested.add(nmask)
    return BForest(bset.n, frozenset(nested))


def painted_from_partition(bset: BuildingSet, lifted: OrderedPartition) -> PaintedForest:
    """Painted forest of the face of the nestomultiplihedron maximized by ``lifted``."""
    n = bset.n
    top = 1 << n
    a = lifted.block_of(n)
    blocks = [b & ~top for b in lifted.blocks]
    # positions doubled so that n+1 alone between blocks sits at an odd index
    pos = []
    k2 = None
    idx = 0
    for i, b in enumerate(blocks):
        if b:
            idx += 1
            pos.append(b)
            if i == a:
                k2 = 2 * idx
        elif i == a:
            k2 = 2 * idx + 1
    reduced = OrderedPartition(tuple(pos))
    forest = forest_from_partition(bset, reduced)
    colors = {}
    for m in forest.nested:
        j2 = 2 * (_j_index(reduced, m) + 1)
        colors[m] = BLACK if j2 > k2 else GREY if j2 == k2 else WHITE
    return PaintedForest.make(forest, colors)


def partition_from_forest(forest: BForest) -> OrderedPartition:
    """Label nodes by height (leaves 1) and group labels into blocks."""
    labels: dict[int, int] = {}

    def height(m: int) -> int:
        if m not in labels:
            labels[m] = 1 + max((height(c) for c in forest.children(m)), default=0)
        return labels[m]

    for m in forest.nested:
        height(m)
    top = max(labels.values())
    blocks = [0] * top
    for m, lab in labels.items():
        blocks[lab - 1] |= forest.label(m)
    return OrderedPartition(tuple(blocks))


def partition_from_painted(pf: PaintedForest) -> OrderedPartition:
    """A labelling strictly increasing up the forest; n+1 shares the grey label."""
    f = pf.forest
    labels: dict[int, int] = {}

    def white_height(m: int) -> int:
        if m not in labels:
            labels[m] = 1 + max((white_height(c) for c in f.children(m)), default=0)
        return labels[m]

    for m in pf.nodes(WHITE):
        white_height(m)
    k = 1 + max((labels[m] for m in pf.nodes(WHITE)), default=0)
    for m in pf.nodes(GREY):
        labels[m] = k

    def black_label(m: int) -> int:
        if m not in labels:
            labels[m] = 1 + max([k] + [black_label(c) for c in f.children(m)])
        return labels[m]

    for m in pf.nodes(BLACK):
        black_label(m)
    top = max([k] + list(labels.values()))
    blocks = [0] * top
    for m, lab in labels.items():
        blocks[lab - 1] |= f.label(m)
    blocks[k - 1] |= 1 << f.n
    return OrderedPartition(tuple(blocks))


# cross-checks against the genperm face lattice

def _lattice_graph(params: SubsetParams) -> nx.DiGraph:
    return opposite(face_lattice(params).graph)


def _induced_order(g: nx.DiGraph, nodes: Iterable, rank) -> nx.DiGraph:
    nodes = list(nodes)
    closure = nx.transitive_closure_dag(g)
    sub = closure.subgraph(nodes).copy()
    red = nx.transitive_reduction(sub)
    for x in nodes:
        red.add_node(x, rank=rank(x))
    return red


@dataclass
class CrosscheckReport:
    forests: int
    painted: int
    forests_by_rank: list[int]
    painted_by_rank: list[int]
    forests_ok: bool
    painted_ok: bool
    white_ok: bool
    black_ok: bool
    labelling_ok: bool

    @property
    def ok(self) -> bool:
        return self.forests_ok and self.painted_ok and self.white_ok and self.black_ok and self.labelling_ok

    def to_dict(self) -> dict:
        d = dict(vars(self))
        d["ok"] = self.ok
        return d


def _by_rank(g: nx.DiGraph) -> list[int]:
    ranks = [d["rank"] for _, d in g.nodes(data=True)]
    return [ranks.count(r) for r in range(max(ranks) + 1)]


def face_poset_crosscheck(bset: BuildingSet) -> CrosscheckReport:
    """Forest and painted-forest posets against the face lattices of the polytopes."""
    if bset.n > MAX_PAINTED_N:
        raise SizeLimitExceeded(f"cross-check limited to n <= {MAX_PAINTED_N}")
    fp = forest_poset(bset)
    pp = painted_poset(bset)
    forests_ok = graded_isomorphic(fp, _lattice_graph(nestohedron_params(bset)))
    painted_ok = graded_isomorphic(pp, _lattice_graph(nestomultiplihedron_params(bset)))

    roots = len(bset.maximal())
    whites = [p for p in pp if not p.nodes(GREY) and not p.nodes(BLACK)]
    blacks = [p for p in pp if not p.nodes(GREY) and not p.nodes(WHITE)]
    rank = lambda p: len(p.forest.nested) - roots  # noqa: E731
    white_ok = graded_isomorphic(_induced_order(pp, whites, rank), fp)
    black_ok = graded_isomorphic(_induced_order(pp, blacks, rank), fp)

    labelling_ok = all(
        painted_from_partition(bset, partition_from_painted(p)) == p for p in pp
    ) and all(forest_from_partition(bset, partition_from_forest(f)) == f for f in fp)
    return CrosscheckReport(
        forests=fp.number_of_nodes(),
        painted=pp.number_of_nodes(),
        forests_by_rank=_by_rank(fp),
        painted_by_rank=_by_rank(pp),
        forests_ok=forests_ok,
        painted_ok=painted_ok,
        white_ok=white_ok,
        black_ok=black_ok,
        labelling_ok=labelling_ok,
    )


def painted_classes_match_lift(bset: BuildingSet, q) -> bool:
    """Face classes of the nestomultiplihedron equal those of the lifted nestohedron."""
    a = face_lattice(nestomultiplihedron_params(bset)).class_sets()
    b = face_lattice(q_lift(nestohedron_params(bset), q)).class_sets()
    return a == b


def partitions_by_painted(bset: BuildingSet) -> dict[PaintedForest, list[OrderedPartition]]:
    out: dict[PaintedForest, list[OrderedPartition]] = {}
    for p in ordered_partitions(bset.n + 1):
        out.setdefault(painted_from_partition(bset, p), []).append(p)
    return out

