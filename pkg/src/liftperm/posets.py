"""Small finite posets as networkx DiGraphs of cover relations.

An edge ``a -> b`` means ``a`` is covered by ``b``; every node carries an
integer ``rank`` attribute.
"""
from __future__ import annotations

from typing import Hashable, Iterable, Mapping

import networkx as nx
from networkx.algorithms.isomorphism import DiGraphMatcher


def hasse_from_relation(nodes: Iterable[Hashable], less: Iterable[tuple], rank: Mapping) -> nx.DiGraph:
    """Cover graph of the order generated by the pairs ``(a, b)`` with a < b."""
    g = nx.DiGraph()
    for x in nodes:
        g.add_node(x, rank=rank[x])
    g.add_edges_from(less)
    closure = nx.transitive_closure_dag(g)
    red = nx.transitive_reduction(closure)
    red.add_nodes_from(g.nodes(data=True))
    return red


def opposite(g: nx.DiGraph) -> nx.DiGraph:
    """Reverse every cover; ranks become ``max_rank - rank``."""
    top = max((d["rank"] for _, d in g.nodes(data=True)), default=0)
    out = g.reverse(copy=True)
    for x in out.nodes:
        out.nodes[x]["rank"] = top - g.nodes[x]["rank"]
    return out


def rank_counts(g: nx.DiGraph) -> tuple[int, ...]:
    ranks = [d["rank"] for _, d in g.nodes(data=True)]
    if not ranks:
        return ()
    lo, hi = min(ranks), max(ranks)
    return tuple(ranks.count(r) for r in range(lo, hi + 1))


def covers_are_graded(g: nx.DiGraph) -> bool:
    """Every cover raises rank by exactly one."""
    return all(g.nodes[b]["rank"] == g.nodes[a]["rank"] + 1 for a, b in g.edges)


def graded_isomorphic(g1: nx.DiGraph, g2: nx.DiGraph) -> bool:
    """Isomorphism of cover graphs that also preserves ranks."""
    if g1.number_of_nodes() != g2.number_of_nodes() or g1.number_of_edges() != g2.number_of_edges():
        return False
    if sorted(rank_counts(g1)) != sorted(rank_counts(g2)):
        return False
    matcher = DiGraphMatcher(g1, g2, node_match=lambda a, b: a["rank"] == b["rank"])
    return matcher.is_isomorphic()


def product(g1: nx.DiGraph, g2: nx.DiGraph) -> nx.DiGraph:
    """Cartesian product of posets; ranks add."""
    g = nx.DiGraph()
    for a, da in g1.nodes(data=True):
        for b, db in g2.nodes(data=True):
            g.add_node((a, b), rank=da["rank"] + db["rank"])
    for a, a2 in g1.edges:
        for b in g2.nodes:
            g.add_edge((a, b), (a2, b))
    for b, b2 in g2.edges:
        for a in g1.nodes:
            g.add_edge((a, b), (a, b2))
    return g


def simplex_face_poset(k: int) -> nx.DiGraph:
    """Nonempty faces of the k-simplex: nonempty subsets of k+1 vertices."""
    g = nx.DiGraph()
    full = (1 << (k + 1)) - 1
    for m in range(1, full + 1):
        g.add_node(m, rank=bin(m).count("1") - 1)
    for m in range(1, full + 1):
        for i in range(k + 1):
            if not m >> i & 1:
                g.add_edge(m, m | 1 << i)
    return g


def face_poset_from_sets(dims: Mapping[frozenset, int]) -> nx.DiGraph:
    """Cover graph of faces given as vertex sets with dimensions."""
    g = nx.DiGraph()
    for f, d in dims.items():
        g.add_node(f, rank=d)
    by_dim: dict[int, list] = {}
    for f, d in dims.items():
        by_dim.setdefault(d, []).append(f)
    for f, d in dims.items():
        for h in by_dim.get(d + 1, []):
            if f < h:
                g.add_edge(f, h)
    return g
