import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from topsub.pauli import (
    BudgetExceeded,
    DimensionError,
    Eliminator,
    PauliOperator,
    SymplecticBasis,
    centralizer_basis,
    commutes,
    connected_subsets,
    gf2_nullspace,
    gf2_rank,
    minimum_weight_in_coset,
    product,
    symplectic_product,
)


def paulis(n):
    return st.builds(lambda x, z: PauliOperator(n, x, z), st.integers(0, (1 << n) - 1), st.integers(0, (1 << n) - 1))


def all_paulis(n):
    for x in range(1 << n):
        for z in range(1 << n):
            yield PauliOperator(n, x, z)


def test_string_round_trip_is_one_based():
    p = PauliOperator.from_string("Z4 X8", 12)
    assert p.letter(3) == "Z" and p.letter(7) == "X"
    assert str(p) == "Z4 X8"
    assert PauliOperator.from_string(str(p), 12) == p
    assert PauliOperator.from_string("X1 Z1", 3) == PauliOperator.from_string("Y1", 3)
    assert str(PauliOperator.identity(5)) == "I"


def test_bad_inputs_raise():
    with pytest.raises(DimensionError):
        PauliOperator.from_string("X13", 12)
    with pytest.raises(ValueError):
        PauliOperator.from_string("Q1", 4)
    with pytest.raises(DimensionError):
        PauliOperator(2, 0b100, 0)
    with pytest.raises(DimensionError):
        commutes(PauliOperator.identity(2), PauliOperator.identity(3))


def test_single_qubit_commutation_table():
    n = 1
    x, y, z = (PauliOperator.single(n, 0, k) for k in "XYZ")
    assert not commutes(x, z) and not commutes(x, y) and not commutes(y, z)
    assert commutes(x, x) and commutes(y, y)
    assert x * z == y


@given(paulis(5), paulis(5), paulis(5))
def test_symplectic_product_is_bilinear(a, b, c):
    assert symplectic_product(a * b, c) == symplectic_product(a, c) ^ symplectic_product(b, c)
    assert symplectic_product(a, b) == symplectic_product(b, a)
    assert symplectic_product(a, a) == 0


def test_product_and_weight():
    ops = [PauliOperator.from_string(s, 4) for s in ("X1 X2", "Z2 Z3", "Y4")]
    p = product(ops, 4)
    assert str(p) == "X1 Y2 Z3 Y4"
    assert p.weight == 4
    assert p.support() == [0, 1, 2, 3]


@settings(max_examples=60)
@given(st.lists(st.integers(0, 255), max_size=10))
def test_rank_and_nullspace_agree_with_enumeration(rows):
    ncols = 8
    r = gf2_rank(rows)
    span = {0}
    for v in rows:
        span |= {s ^ v for s in span}
    assert len(span) == 1 << r
    null = gf2_nullspace(rows, ncols)
    assert len(null) == ncols - r
    for v in null:
        assert all((v & row).bit_count() % 2 == 0 for row in rows)


def test_eliminator_membership():
    e = Eliminator()
    assert e.add(0b101) and e.add(0b011)
    assert not e.add(0b110)
    assert e.contains(0b110) and not e.contains(0b001)
    assert e.rank == 2


@settings(max_examples=40, deadline=None)
@given(st.lists(paulis(4), min_size=1, max_size=5))
def test_centralizer_matches_brute_force(gens):
    cent = centralizer_basis(gens, 4)
    brute = [p for p in all_paulis(4) if all(commutes(p, g) for g in gens)]
    assert 1 << cent.rank == len(brute)
    for p in cent:
        assert all(commutes(p, g) for g in gens)


def test_connected_subsets_on_path():
    adj = {0: [1], 1: [0, 2], 2: [1, 3], 3: [2]}
    assert sorted(connected_subsets(adj, 2)) == [(0, 1), (1, 2), (2, 3)]
    assert sorted(connected_subsets(adj, 4)) == [(0, 1, 2, 3)]


def _brute_min(space_ops, exclude_ops, n):
    span = {PauliOperator.identity(n)}
    for g in space_ops:
        span |= {s * g for s in span}
    ex = SymplecticBasis.from_paulis(exclude_ops, n).eliminator()
    weights = [p.weight for p in span if not ex.contains(p.vector)]
    return min(weights) if weights else None


@pytest.mark.parametrize("seed", range(15))
def test_minimum_weight_in_coset_matches_enumeration(seed):
    rng = random.Random(seed)
    n = 6
    gens = [PauliOperator(n, rng.getrandbits(n), rng.getrandbits(n)) for _ in range(3)]
    space = centralizer_basis(gens, n)
    # exclude a random sub-span of the space
    exclude = [p for p in itertools.islice(space, 2)]
    want = _brute_min(list(space), exclude, n)
    got = minimum_weight_in_coset(space, SymplecticBasis.from_paulis(exclude, n), n)
    assert (got[0] if got else None) == want
    if got:
        assert all(commutes(got[1], g) for g in gens)


def test_search_budget():
    space = centralizer_basis([], 10)
    with pytest.raises(BudgetExceeded):
        minimum_weight_in_coset(space, SymplecticBasis.from_paulis(list(space), 10), 3, budget=50)
