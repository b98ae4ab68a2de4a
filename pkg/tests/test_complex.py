import pytest

from topsub.complex import (
    ComplexError,
    Hypergraph,
    SurfaceComplex,
    cohomology_basis,
    complexes_isomorphic,
    delete_colored_vertices,
    dual,
    homology_class,
    homology_cycle_basis,
    is_hypercycle,
    medial,
    shortest_nontrivial_cycle_length,
    simplify_parallel_edges,
    vertex_degrees_in,
)
from topsub.families import build_family, honeycomb12, lattice_hnf, square_torus


def brute_shortest_nontrivial(c: SurfaceComplex) -> int:
    """Enumerate every edge subset; keep even-degree ones with a nontrivial class."""
    basis = cohomology_basis(c)
    best = None
    for mask in range(1, 1 << c.n_edges):
        w = mask.bit_count()
        if best is not None and w >= best:
            continue
        if any(d % 2 for d in vertex_degrees_in(c, mask).values()):
            continue
        if homology_class(c, mask, basis):
            best = w
    return best


def test_honeycomb12_counts():
    c = honeycomb12()
    assert (c.n_vertices, c.n_edges, c.n_faces) == (12, 18, 6)
    assert c.genus == 1
    assert c.is_two_colex()
    assert sorted(c.face_coloring) == ["b", "b", "g", "g", "r", "r"]


def test_honeycomb12_dual_and_deletion():
    c = honeycomb12()
    d = dual(c)
    assert d.n_vertices == 6 and d.n_faces == 12
    assert all(len(f) == 3 for f in d.face_vertices)
    reduced = delete_colored_vertices(d, "b")
    assert (reduced.n_vertices, reduced.n_edges, reduced.n_faces) == (4, 6, 2)


@pytest.mark.parametrize("hexagons, n, ell", [(6, 12, 4), (12, 24, 6), (24, 48, 8)])
def test_honeycomb_family(hexagons, n, ell):
    c = build_family("honeycomb_torus", hexagons=hexagons)
    assert c.n_vertices == n
    assert c.is_two_colex()
    assert shortest_nontrivial_cycle_length(c) == ell


@pytest.mark.parametrize("family, L", [("square_torus", 3), ("square_torus", 2), ("triangular_torus", 3)])
def test_shortest_cycle_matches_enumeration(family, L):
    c = build_family(family, L=L)
    assert shortest_nontrivial_cycle_length(c) == brute_shortest_nontrivial(c)


def test_rotated_tiling_has_shortest_cycle_d():
    c = build_family("rotated_surface_dsq", d=3)
    assert (c.n_vertices, c.n_edges, c.n_faces) == (5, 10, 5)
    assert shortest_nontrivial_cycle_length(c) == 3
    assert shortest_nontrivial_cycle_length(dual(c)) == 3


def test_medial_counts_and_face_kinds():
    c = square_torus((3, 0), (0, 3))
    m = medial(c)
    assert m.n_vertices == c.n_edges
    assert m.n_edges == sum(len(f) for f in c.face_edges)
    assert m.n_faces == c.n_faces + c.n_vertices
    assert [o[0] for o in m.face_origin] == ["f"] * c.n_faces + ["v"] * c.n_vertices
    assert all(m.degree(v) == 4 for v in range(m.n_vertices))


def test_dual_twice_is_isomorphic():
    c = build_family("triangular_torus", L=3)
    assert complexes_isomorphic(dual(dual(c)), c)


def test_homology_bases_have_rank_2g():
    c = build_family("square_torus", L=4)
    cycles = homology_cycle_basis(c)
    assert len(cycles) == 2
    classes = {homology_class(c, cyc.mask) for cyc in cycles}
    assert 0 not in classes and len(classes) == 2


def test_json_round_trip():
    c = honeycomb12()
    back = SurfaceComplex.from_json(c.to_json())
    assert back.face_vertices == c.face_vertices
    assert back.face_coloring == c.face_coloring
    assert "graph" in c.to_dot()


def test_validation_rejects_open_surfaces():
    with pytest.raises(ComplexError):
        SurfaceComplex.from_faces(3, [[0, 1, 2]])


def test_parallel_edges_are_merged():
    # a torus square lattice with L=2 has digon-free faces; build a digon by hand
    edges = [(0, 1), (0, 1), (1, 2), (2, 0), (1, 2), (2, 0)]
    faces_v = [[0, 1], [0, 1, 2], [0, 2, 1], [1, 2], [2, 0]]
    faces_e = [[0, 1], [1, 2, 3], [5, 4, 0], [2, 4], [3, 5]]
    c = SurfaceComplex.from_faces(3, faces_v, edges=edges, face_edges=faces_e)
    s = simplify_parallel_edges(c)
    assert all(len(f) > 2 for f in s.face_edges)
    assert s.euler_characteristic == c.euler_characteristic


def test_lattice_normal_form():
    assert lattice_hnf((3, 0), (1, 2)) == (3, 1, 2)
    with pytest.raises(ComplexError):
        lattice_hnf((1, 1), (2, 2))


def test_hypercycle_predicate():
    h = Hypergraph(4, ((0, 1), (2, 3)), ((0, 1, 2),), ("r", "g", "b"))
    assert is_hypercycle(h, [0, 1]) is False
    assert is_hypercycle(h, [])
    h2 = Hypergraph(3, ((0, 1), (1, 2), (0, 2)), (), ("r", "g", "b"))
    assert is_hypercycle(h2, [0, 1, 2])
