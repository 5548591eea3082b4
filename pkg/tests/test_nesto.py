import json
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from liftperm import nesto
from liftperm.errors import InvalidBuildingSet, ParseError, SizeLimitExceeded
from liftperm.genperm import face_lattice, vertices
from liftperm.hull import face_lattice_from_points
from liftperm.posets import face_poset_from_sets, graded_isomorphic, opposite, rank_counts


def path(n):
    return nesto.graph_building_set([(i, i + 1) for i in range(1, n)], n)


def complete(n):
    return nesto.graph_building_set([(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)], n)


def hull_face_poset(params):
    """Face poset from the convex hull of the vertices, codimension ranks."""
    _, dims = face_lattice_from_points(vertices(params))
    return opposite(face_poset_from_sets(dims))


@st.composite
def small_graphs(draw, n_max=3):
    n = draw(st.integers(1, n_max))
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return nesto.graph_building_set(edges, n)


@st.composite
def small_families(draw, n_max=3):
    n = draw(st.integers(1, n_max))
    family = draw(st.lists(st.integers(1, (1 << n) - 1), max_size=4))
    return nesto.BuildingSet.closure(n, family)[0]


def test_building_set_validation():
    with pytest.raises(InvalidBuildingSet):
        nesto.BuildingSet(2, frozenset({1}))
    with pytest.raises(InvalidBuildingSet):
        nesto.BuildingSet(3, frozenset({1, 2, 4, 3, 6}))
    bset, added = nesto.BuildingSet.closure(3, [0b011, 0b110])
    assert 0b111 in bset.members and 0b111 in added


def test_graph_building_sets():
    assert path(3).to_dict() == {"n": 3, "members": ["1", "2", "3", "12", "23", "123"]}
    assert nesto.parse_edges(" 1-2, 2-3 ") == [(1, 2), (2, 3)]
    assert len(complete(3).members) == 7
    with pytest.raises(ParseError):
        nesto.parse_edges("1-")


def test_json_round_trip():
    b = path(4)
    assert nesto.BuildingSet.from_json(json.dumps(b.to_dict())) == b
    assert nesto.BuildingSet.from_json('{"n": 3, "members": ["12", "23"]}', close=True) == path(3)
    with pytest.raises(ParseError):
        nesto.BuildingSet.from_json("[1, 2")


def test_pentagon():
    forests = nesto.enumerate_bforests(path(3))
    assert len(forests) == 11
    assert rank_counts(nesto.forest_poset(path(3))) == (1, 5, 5)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_path_vertices_are_catalan(n):
    top = [f for f in nesto.enumerate_bforests(path(n)) if f.dim == 0]
    assert len(top) == comb(2 * n, n) // (n + 1)


def test_complete_graph_gives_permutahedron():
    fp = nesto.forest_poset(complete(3))
    assert rank_counts(fp) == (1, 6, 6)


def test_forest_structure():
    f = nesto.BForest(3, frozenset({0b001, 0b011, 0b111}))
    assert f.roots() == [0b111]
    assert f.children(0b111) == [0b011]
    assert f.label(0b111) == 0b100
    assert f.rank == 2 and f.dim == 0
    tree = f.to_dict()
    assert tree[0]["label"] == "3" and tree[0]["children"][0]["label"] == "2"


@given(small_families())
def test_nested_sets_are_nested(bset):
    for ns in nesto.enumerate_nested_sets(bset):
        assert nesto.is_nested(bset, ns)
        assert bset.maximal() <= ns


@given(small_families())
def test_forest_poset_against_hull(bset):
    fp = nesto.forest_poset(bset)
    assert graded_isomorphic(fp, hull_face_poset(nesto.nestohedron_params(bset)))


@given(small_families(n_max=3))
def test_painted_poset_against_hull(bset):
    pp = nesto.painted_poset(bset)
    assert graded_isomorphic(pp, hull_face_poset(nesto.nestomultiplihedron_params(bset)))


def test_painted_counts():
    assert nesto.painted_poset(path(3)).number_of_nodes() == 67
    assert rank_counts(nesto.painted_poset(path(3))) == (1, 13, 32, 21)
    assert [nesto.painted_poset(nesto.singleton_building_set(n)).number_of_nodes() for n in (1, 2, 3)] == [3, 9, 27]


@given(small_families())
def test_colourings_are_valid(bset):
    for pf in nesto.enumerate_painted(bset):
        assert pf.is_valid()
        cm = pf.color_map
        f = pf.forest
        # grey nodes form an antichain
        greys = pf.nodes(nesto.GREY)
        assert not any(a != b and a & b == a for a in greys for b in greys)
        for m in f.nested:
            if cm[m] == nesto.BLACK and f.parent(m) is not None:
                assert cm[f.parent(m)] == nesto.BLACK


def test_invalid_colouring():
    f = nesto.BForest(2, frozenset({0b01, 0b11}))
    bad = nesto.PaintedForest.make(f, {0b01: nesto.BLACK, 0b11: nesto.WHITE})
    assert not bad.is_valid()


@given(small_graphs())
def test_crosscheck_random_graphs(bset):
    rep = nesto.face_poset_crosscheck(bset)
    assert rep.ok, rep.to_dict()


@given(small_families())
def test_painted_classes_and_lift(bset):
    assert nesto.painted_classes_match_lift(bset, "1/2")
    lat = face_lattice(nesto.nestomultiplihedron_params(bset))
    groups = nesto.partitions_by_painted(bset)
    assert {frozenset(v) for v in groups.values()} == lat.class_sets()
    for pf, parts in groups.items():
        assert pf.is_valid()


@given(small_families())
def test_labelling_round_trips(bset):
    for f in nesto.enumerate_bforests(bset):
        assert nesto.forest_from_partition(bset, nesto.partition_from_forest(f)) == f
    for pf in nesto.enumerate_painted(bset):
        assert nesto.painted_from_partition(bset, nesto.partition_from_painted(pf)) == pf


def test_crosscheck_size_limit():
    with pytest.raises(SizeLimitExceeded):
        nesto.face_poset_crosscheck(path(5))


def test_report_dict():
    d = nesto.face_poset_crosscheck(path(2)).to_dict()
    assert d["forests"] == 3 and d["painted"] == 13 and d["ok"]
