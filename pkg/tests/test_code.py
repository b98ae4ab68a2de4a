import random

import pytest

from topsub.code import (
    ConstructionBug,
    SyndromeMismatch,
    assemble_code,
    bare_logical_weight,
    dressed_distance,
    honeycomb12_code,
    is_equivalent_modulo_gauge,
    logical_failure,
    measure_syndrome,
    verify_parameters,
)
from topsub.pauli import PauliOperator, commutes
from topsub.simulation import build_instance


def _span(ops, n):
    span = {PauliOperator.identity(n)}
    for g in ops:
        span |= {s * g for s in span}
    return span


def _all(n):
    return [PauliOperator(n, x, z) for x in range(1 << n) for z in range(1 << n)]


@pytest.mark.parametrize("seed", range(12))
def test_counting_matches_enumeration(seed):
    rng = random.Random(seed)
    n = rng.choice([3, 4, 5])
    gauge = [(("g", i), PauliOperator(n, rng.getrandbits(n), rng.getrandbits(n))) for i in range(rng.randint(1, 5))]
    code = assemble_code("random", n, gauge, [])
    group = _span([op for _, op in gauge], n)
    center = [p for p in group if all(commutes(p, q) for _, q in gauge)]
    cent_s = [p for p in _all(n) if all(commutes(p, s) for s in center)]
    log = lambda m: m.bit_length() - 1  # noqa: E731
    assert 1 << code.n_stabilizers == len(center)
    assert 1 << (2 * code.r + code.n_stabilizers) == len(group)
    assert log(len(cent_s)) - log(len(group)) == 2 * code.k
    for a, b in code.bare_logicals:
        assert not commutes(a, b)
        assert all(commutes(a, g) and commutes(b, g) for _, g in gauge)


def test_non_central_check_is_rejected():
    gauge = [(("g", 0), PauliOperator.from_string("X1 X2", 2))]
    with pytest.raises(ConstructionBug):
        assemble_code("bad", 2, gauge, [(("c", 0), PauliOperator.from_string("Z1", 2))])


def test_honeycomb12_worked_example():
    code = honeycomb12_code()
    assert (code.n_qubits, code.k, code.r, code.n_stabilizers) == (12, 0, 5, 7)
    e = PauliOperator.from_string("Z4 X8", 12)
    assert measure_syndrome(code, e).bits == (1, 0, 0, 1, 1, 0, 1)
    # with no logical qubits any operator with the same syndrome differs by gauge
    est = PauliOperator.from_string("X1 Z7", 12)
    assert measure_syndrome(code, est) == measure_syndrome(code, e)
    assert is_equivalent_modulo_gauge(code, est, e)
    assert not is_equivalent_modulo_gauge(code, est, PauliOperator.identity(12))
    hit = dressed_distance(code, 4)
    assert hit is not None and hit[0] == 2


def test_logical_failure_requires_matching_syndromes():
    code = honeycomb12_code()
    with pytest.raises(SyndromeMismatch):
        logical_failure(code, PauliOperator.from_string("X1", 12), PauliOperator.identity(12))


def test_logical_failure_detects_bare_logicals():
    code = build_instance("tscc-sqoct", 1)
    a, b = code.bare_logicals[0]
    ident = PauliOperator.identity(code.n_qubits)
    assert logical_failure(code, a, ident)
    assert not logical_failure(code, code.gauge_ops[0], ident)


@pytest.mark.parametrize(
    "family, size, expected",
    [
        ("tscc-sqoct", 1, {"n": 48, "k": 2, "r": 32, "s": 14}),
        ("cubic-honeycomb", 24, {"n": 48, "k": 0, "r": 23, "s": 25}),
        ("ssc-square", 3, {"n": 27, "k": 2, "r": 9, "s": 16}),
        ("five-squares-tri", 3, {"n": 270, "k": 2, "r": 162, "s": 106}),
    ],
)
def test_parameters(family, size, expected):
    report = verify_parameters(build_instance(family, size), expected)
    assert report.passed, report.render()


def test_five_squares_s3_checks_are_present():
    code = build_instance("five-squares-tri", 3)
    kinds = {lab[0] for lab in code.checks}
    assert {"S1", "S2", "S3", "S4", "S5"} <= kinds


def test_bare_logicals_are_heavier_than_dressed():
    code = build_instance("ssc-square", 2)
    dressed = dressed_distance(code, 4)
    bare = bare_logical_weight(code, 4, connected=False)
    assert dressed is not None and bare is not None
    assert bare[0] >= dressed[0]
