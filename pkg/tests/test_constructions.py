import pytest

from topsub.complex import ComplexError, hypergraph_isomorphic
from topsub.constructions import (
    colex_from_graph,
    contract_rank3_edges,
    corner_alternation,
    five_squares_bad_variant,
    five_squares_construction,
    hypergraph_code_construction,
    subsystem_surface_construction,
    three_color_faces,
    uniform_rank3_construction,
    vertex_expand,
)
from topsub.families import build_family, honeycomb12, square_torus


def test_flag_colex_of_square_torus():
    g = square_torus((4, 0), (2, 2))
    colex = colex_from_graph(g)
    assert colex.n_vertices == 4 * g.n_edges
    assert colex.is_two_colex()
    kinds = [o[0] for o in colex.face_origin]
    assert kinds == ["f"] * g.n_faces + ["e"] * g.n_edges + ["v"] * g.n_vertices
    assert sorted({len(f) for f in colex.face_vertices}) == [4, 8]


def test_three_coloring_is_unique_up_to_permutation():
    c = honeycomb12()
    colors = three_color_faces(c)
    mapping = {}
    for a, b in zip(colors, c.face_coloring):
        assert mapping.setdefault(a, b) == b


@pytest.mark.parametrize("size", [1, 2])
def test_vertex_expansion_triples_vertices(size):
    colex = build_family("square_octagon_torus", size=size)
    dh = vertex_expand(colex)
    h = dh.hypergraph
    assert h.n_vertices == 3 * colex.n_vertices
    assert len(h.rank3_edges) == colex.n_vertices
    assert len(h.rank2_edges) == 2 * colex.n_edges
    assert dh.derived.genus == colex.genus


def test_vertex_expansion_rejects_non_colex():
    with pytest.raises(ComplexError):
        vertex_expand(square_torus((3, 0), (0, 3)))


@pytest.mark.parametrize("L", [2, 4])
def test_uniform_rank3_is_a_vertex_expansion(L):
    gamma = build_family("square_torus", L=L)
    dh = uniform_rank3_construction(gamma)
    contracted = contract_rank3_edges(dh)
    assert contracted.is_two_colex()
    again = vertex_expand(contracted)
    assert hypergraph_isomorphic(again.hypergraph, dh.hypergraph)


def test_uniform_rank3_needs_bicolorable_faces():
    # the 3x3 square torus has an odd number of faces around a cycle
    with pytest.raises(ComplexError):
        contract_rank3_edges(uniform_rank3_construction(build_family("square_torus", L=3)))


def test_hypergraph_construction_face_checks():
    colex = build_family("square_octagon_torus", size=1)
    reds = [f for f, col in enumerate(colex.face_coloring) if col == "r"]
    green = [f for f, col in enumerate(colex.face_coloring) if col == "g"]
    with pytest.raises(ComplexError):
        hypergraph_code_construction(colex, green[:1])
    dh = hypergraph_code_construction(colex, reds[:1])
    assert len(dh.hypergraph.rank3_edges) == len(colex.face_edges[reds[0]]) // 2
    assert dh.derived.genus == 1


@pytest.mark.parametrize("L", [3, 6])
def test_five_squares_cells_partition_qubits(L):
    dh = five_squares_construction(build_family("triangular_torus", L=L))
    seen = [q for cell in dh.cells for q in cell]
    assert sorted(seen) == list(range(dh.n_qubits))
    assert len(dh.cells) == len(dh.extras["fv_faces"])
    assert len(set(dh.extras["highlight"].values())) == len(dh.extras["highlight"])


def test_bad_variant_keeps_qubits_but_changes_hyperedges():
    gamma = build_family("triangular_torus", L=3)
    good = five_squares_construction(gamma)
    bad = five_squares_bad_variant(gamma)
    assert bad.extras["variant"] == "e_face_hyperedges"
    assert bad.n_qubits == good.n_qubits
    assert len(bad.hypergraph.rank3_edges) != len(good.hypergraph.rank3_edges) or (
        set(bad.hypergraph.rank3_edges) != set(good.hypergraph.rank3_edges)
    )


@pytest.mark.parametrize("L", [2, 3])
def test_subsystem_surface_sizes(L):
    gamma = build_family("square_torus", L=L)
    dh = subsystem_surface_construction(gamma)
    assert dh.n_qubits == 3 * gamma.n_vertices
    per_vertex = {}
    for (center, _, _), _, _ in dh.extras["triangles"]:
        per_vertex[center] = per_vertex.get(center, 0) + 1
    assert set(per_vertex.values()) == {4}


def test_corner_types_alternate_around_vertices_and_faces():
    gamma = build_family("rotated_surface_dsq", d=3)
    kind = corner_alternation(gamma)
    for v, orbit in gamma.rotation.items():
        kinds = [kind[c] for c in orbit]
        assert all(a != b for a, b in zip(kinds, kinds[1:] + kinds[:1]))
    for f, fe in enumerate(gamma.face_edges):
        kinds = [kind[(f, i)] for i in range(len(fe))]
        assert all(a != b for a, b in zip(kinds, kinds[1:] + kinds[:1]))


def test_subsystem_surface_rejects_odd_faces():
    with pytest.raises(ComplexError):
        subsystem_surface_construction(build_family("triangular_torus", L=3))
