from liftperm.posets import (
    covers_are_graded,
    face_poset_from_sets,
    graded_isomorphic,
    hasse_from_relation,
    opposite,
    product,
    rank_counts,
    simplex_face_poset,
)


def boolean_lattice(n):
    rank = {m: bin(m).count("1") for m in range(1 << n)}
    less = [(a, b) for a in range(1 << n) for b in range(1 << n) if a != b and a & b == a]
    return hasse_from_relation(range(1 << n), less, rank)


def test_hasse_of_boolean_lattice():
    g = boolean_lattice(3)
    assert g.number_of_edges() == 12
    assert rank_counts(g) == (1, 3, 3, 1)
    assert covers_are_graded(g)


def test_boolean_lattice_is_self_dual():
    g = boolean_lattice(3)
    assert graded_isomorphic(g, opposite(g))


def test_simplex_faces():
    g = simplex_face_poset(2)
    assert rank_counts(g) == (3, 3, 1)
    assert covers_are_graded(g)


def test_product_ranks_add():
    g = product(simplex_face_poset(1), simplex_face_poset(1))
    assert rank_counts(g) == (4, 4, 1)
    square = {
        frozenset({0}): 0, frozenset({1}): 0, frozenset({2}): 0, frozenset({3}): 0,
        frozenset({0, 1}): 1, frozenset({1, 2}): 1, frozenset({2, 3}): 1, frozenset({0, 3}): 1,
        frozenset({0, 1, 2, 3}): 2,
    }
    assert graded_isomorphic(g, face_poset_from_sets(square))


def test_non_isomorphic():
    assert not graded_isomorphic(simplex_face_poset(2), product(simplex_face_poset(1), simplex_face_poset(1)))
