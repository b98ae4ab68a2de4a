import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from topsub.matching import (
    DecodingGraph,
    DefectGraph,
    ParityError,
    brute_force_matching,
    build_defect_graph,
    decode_defects,
    min_weight_perfect_matching,
)


def torus_graph(L):
    """Vertices of an L x L torus; edge ids are the carriers."""
    arcs = []
    for x in range(L):
        for y in range(L):
            v = x * L + y
            arcs.append((v, ((x + 1) % L) * L + y, len(arcs)))
            arcs.append((v, x * L + (y + 1) % L, len(arcs)))
    return DecodingGraph(L * L, arcs)


def boundary(graph_arcs, carriers):
    out = set()
    for u, v, c in graph_arcs:
        if c in carriers:
            out ^= {u, v}
    return out


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 4), st.data())
def test_blossom_matches_brute_force(pairs, data):
    nodes = list(range(2 * pairs))
    weights = {}
    for a in nodes:
        for b in nodes[a + 1:]:
            weights[(a, b)] = data.draw(st.integers(0, 20))
    dg = DefectGraph(nodes, weights)
    assert min_weight_perfect_matching(dg).total_weight == brute_force_matching(dg).total_weight


@pytest.mark.parametrize("seed", range(20))
def test_sparse_weights_match_brute_force(seed):
    rng = random.Random(seed)
    g = torus_graph(5)
    defects = rng.sample(range(25), 2 * rng.randint(1, 4))
    dg = build_defect_graph(g, defects)
    assert min_weight_perfect_matching(dg).total_weight == brute_force_matching(dg).total_weight


def test_correction_has_the_defect_boundary():
    g = torus_graph(6)
    arcs = [(a.u, a.v, a.carrier) for a in g.arcs]
    rng = random.Random(3)
    for _ in range(30):
        error = set(rng.sample(range(len(arcs)), 4))
        defects = boundary(arcs, error)
        carriers, m = decode_defects(g, defects)
        assert boundary(arcs, carriers) == defects
        assert len(carriers) <= m.total_weight


def test_square_example():
    # four corners of a square on a 6x6 torus: two sides of length 2
    g = torus_graph(6)
    defects = [0, 2, 12, 14]
    carriers, m = decode_defects(g, defects)
    assert m.total_weight == 4
    assert len(carriers) == 4


def test_closed_loop_has_no_defects():
    g = torus_graph(4)
    carriers, m = decode_defects(g, [])
    assert carriers == set() and len(m) == 0


def test_odd_defects_raise():
    with pytest.raises(ParityError):
        decode_defects(torus_graph(4), [0, 1, 2])


def test_paths_are_deterministic():
    g1, g2 = torus_graph(6), torus_graph(6)
    assert g1.path(0, 21) == g2.path(0, 21)
    assert len(g1.path(0, 21)) == g1.distance(0, 21) == 6
