import pytest
from hypothesis import given, settings

from conftest import class_graphs, small_graphs
from oracles import complete, count_cycles, path

from f2fpart.corpus import complete4, cycle, dodecahedron, double_subdivision
from f2fpart.graph import (
    Disconnected,
    DuplicateEdge,
    Embedding,
    InvalidFaceId,
    NotAPermutation,
    NotPlanarEmbedding,
    SelfLoop,
    VertexOutOfRange,
    adjacent_faces,
    build_embedding,
    build_graph,
    check_face_structure,
    cycles_of_length,
    delete_vertices,
    faces_adjacent,
    in_class,
    short_cycles,
)


def face_degrees(e):
    return sorted(f.degree for f in e.faces)


# --- construction -------------------------------------------------------------


def test_triangle_degrees():
    g = build_graph(3, [(0, 1), (1, 2), (2, 0)])
    assert [g.degree(v) for v in g.vertices] == [2, 2, 2]
    assert g.m == 3


def test_single_vertex():
    g = build_graph(1, [])
    assert g.n == 1 and g.m == 0 and g.degree(0) == 0


def test_k5_degrees():
    g = complete(5)
    assert {g.degree(v) for v in g.vertices} == {4}


@pytest.mark.parametrize("n,edges,exc", [
    (3, [(0, 0)], SelfLoop),
    (3, [(0, 1), (1, 0)], DuplicateEdge),
    (3, [(0, 3)], VertexOutOfRange),
])
def test_bad_edges(n, edges, exc):
    with pytest.raises(exc):
        build_graph(n, edges)


# --- embeddings ---------------------------------------------------------------


def test_c5_faces():
    _, e = cycle(5)
    assert face_degrees(e) == [5, 5]


def test_k4_faces():
    _, e = complete4()
    assert face_degrees(e) == [3, 3, 3, 3]


def test_k5_fixed_rotation_not_planar():
    g = complete(5)
    rot = {v: [u for u in range(5) if u != v] for v in range(5)}
    with pytest.raises(NotPlanarEmbedding):
        build_embedding(g, rot)


def test_rotation_must_be_permutation():
    g, _ = cycle(5)
    with pytest.raises(NotAPermutation):
        build_embedding(g, {0: [1], 1: [0, 2], 2: [1, 3], 3: [2, 4], 4: [3, 0]})


def test_disconnected_rejected():
    g = build_graph(4, [(0, 1), (2, 3)])
    with pytest.raises(Disconnected):
        build_embedding(g, {0: [1], 1: [0], 2: [3], 3: [2]})


def test_tree_has_one_face():
    g = path(4)
    e = build_embedding(g, {0: [1], 1: [0, 2], 2: [1, 3], 3: [2]})
    assert face_degrees(e) == [6]


def test_isolated_vertex_face():
    g = build_graph(1, [])
    e = build_embedding(g, {0: []})
    assert len(e.faces) == 1
    assert e.faces[0].degree == 0 and e.faces[0].vertices == (0,)


@settings(max_examples=40, deadline=None)
@given(class_graphs())
def test_handshake_and_euler(ge):
    g, e = ge
    assert sum(f.degree for f in e.faces) == 2 * g.m
    assert g.n - g.m + len(e.faces) == 2


def test_face_walk_multiplicity_at_cut_vertex():
    # bowtie: two triangles sharing vertex 0
    g = build_graph(5, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)])
    e = build_embedding(g, {0: [1, 2, 3, 4], 1: [2, 0], 2: [0, 1], 3: [4, 0], 4: [0, 3]})
    assert face_degrees(e) == [3, 3, 6]
    outer = next(f for f in e.faces if f.degree == 6)
    assert outer.multiplicity(0) == 2 and not outer.is_simple()
    assert len(e.faces_at(0)) == 4


# --- vertex deletion --------------------------------------------------------------


def test_c5_minus_vertex_is_path():
    g, e = cycle(5)
    h, he = delete_vertices(g, e, [2])
    assert sorted(h.vertices) == [0, 1, 3, 4]
    assert h.m == 3
    assert face_degrees(he) == [6]


def test_k4_minus_vertex_is_triangle():
    g, e = complete4()
    h, he = delete_vertices(g, e, [3])
    assert h.m == 3 and face_degrees(he) == [3, 3]


def test_delete_nothing_is_identity():
    g, e = dodecahedron()
    h, he = delete_vertices(g, e, [])
    assert h == g
    assert [f.walk for f in he.faces] == [f.walk for f in e.faces]


def test_delete_unknown_vertex():
    g, e = cycle(5)
    with pytest.raises(VertexOutOfRange):
        delete_vertices(g, e, [9])


@settings(max_examples=30, deadline=None)
@given(class_graphs(max_n=12))
def test_delete_matches_fresh_build(ge):
    g, e = ge
    removed = [v for v in g.vertices if v % 3 == 0]
    h, he = delete_vertices(g, e, removed)
    fresh = Embedding(g.induced(h.vertices), {v: [u for u in e.rotation[v] if u in h.adj] for v in h.vertices})
    key = lambda emb: sorted(tuple(sorted(f.walk)) for f in emb.faces)  # noqa: E731
    assert key(he) == key(fresh)
    for comp in he.split():
        cg = comp.graph
        assert cg.n - cg.m + len(comp.faces) == 2


# --- short cycles ---------------------------------------------------------------------


def test_short_cycles_c6():
    g = build_graph(6, [(i, (i + 1) % 6) for i in range(6)])
    assert short_cycles(g, 6) == {3: False, 4: False, 5: False, 6: True}


def test_short_cycles_k4():
    g, _ = complete4()
    assert short_cycles(g, 6) == {3: True, 4: True, 5: False, 6: False}
    assert len(cycles_of_length(g, 3)) == 4
    assert len(cycles_of_length(g, 4)) == 3


def test_short_cycles_dodecahedron():
    g, _ = dodecahedron()
    assert short_cycles(g, 6) == {3: False, 4: False, 5: True, 6: False}
    assert len(cycles_of_length(g, 5)) == 12


@settings(max_examples=80, deadline=None)
@given(small_graphs(max_n=7))
def test_cycles_against_naive(g):
    for length in range(3, min(g.n, 7) + 1):
        assert len(cycles_of_length(g, length)) == count_cycles(g, length)
        assert short_cycles(g, 7)[length] == (count_cycles(g, length) > 0)


def test_in_class_examples():
    assert in_class(cycle(5)[0])
    assert not in_class(build_graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)]))
    assert in_class(dodecahedron()[0])


# --- face adjacency ------------------------------------------------------------------


def test_c5_faces_adjacent():
    _, e = cycle(5)
    assert faces_adjacent(e, 0, 1)


def test_k4_faces_pairwise_adjacent():
    _, e = complete4()
    assert all(faces_adjacent(e, a, b) for a in range(4) for b in range(4) if a != b)


def test_double_subdivided_k4_faces_all_adjacent():
    # every pair of K4 faces shares an edge, and subdividing keeps that
    g, e = double_subdivision(*complete4())
    assert face_degrees(e) == [9, 9, 9, 9]
    pairs = [(a, b) for a in range(4) for b in range(a + 1, 4)]
    assert all(faces_adjacent(e, a, b) for a, b in pairs)


def test_faces_adjacent_rejects_same_face():
    _, e = cycle(5)
    with pytest.raises(InvalidFaceId):
        faces_adjacent(e, 0, 0)
    with pytest.raises(InvalidFaceId):
        faces_adjacent(e, 0, 7)


def test_adjacent_faces_dodecahedron():
    _, e = dodecahedron()
    assert all(len(adjacent_faces(e, f.id)) == 5 for f in e.faces)


# --- face structure check ---------------------------------------------------------------


def test_face_structure_dodecahedron_and_c5_clean():
    assert check_face_structure(*dodecahedron()) == []
    assert check_face_structure(*cycle(5)) == []


def test_face_structure_triangle_flagged():
    viol = check_face_structure(*cycle(3))
    assert viol and all(v.kind == "3-face next to face of degree <= 6" for v in viol)
    assert not any(v.convention_dependent for v in viol)


def test_face_structure_bowtie_is_convention_dependent():
    g = build_graph(5, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)])
    e = build_embedding(g, {0: [1, 2, 3, 4], 1: [2, 0], 2: [0, 1], 3: [4, 0], 4: [0, 3]})
    assert in_class(g)
    viol = check_face_structure(g, e)
    assert len(viol) == 2 and all(v.convention_dependent for v in viol)
