import random

import numpy as np
import pytest

from topsub.code import SyndromeMismatch, honeycomb12_code, logical_failure, measure_syndrome
from topsub.decoders import (
    DECODERS,
    DecoderError,
    decode_color_code_single_type,
    decode_cubic_colored_matching,
    decode_cubic_projection,
    decode_five_squares,
    decode_subsystem_surface,
    decode_surface_code,
    decode_tscc,
    project_tscc_syndrome,
    project_z_error,
    surface_code_logical_masks,
)
from topsub.families import build_family
from topsub.pauli import PauliOperator
from topsub.simulation import NoiseModel, build_instance, sample_error

CASES = [
    ("cubic-honeycomb", 24, decode_cubic_projection),
    ("cubic-honeycomb", 24, decode_cubic_colored_matching),
    ("tscc-sqoct", 1, decode_tscc),
    ("five-squares-tri", 3, decode_five_squares),
    ("ssc-square", 4, decode_subsystem_surface),
]


def _ident(code):
    return PauliOperator.identity(code.n_qubits)


@pytest.mark.parametrize("family, size, decoder", CASES)
def test_trivial_syndrome_gives_identity(family, size, decoder):
    code = build_instance(family, size)
    out = decoder(code, measure_syndrome(code, _ident(code)))
    assert out.estimate == _ident(code)


@pytest.mark.parametrize("family, size, decoder", CASES)
def test_estimates_reproduce_the_syndrome(family, size, decoder):
    code = build_instance(family, size)
    rng = np.random.default_rng(11)
    for _ in range(60):
        e = sample_error(NoiseModel(0.05), code.n_qubits, rng)
        est = decoder(code, measure_syndrome(code, e)).estimate
        assert code.syndrome_mask(est) == code.syndrome_mask(e)


@pytest.mark.parametrize(
    "family, size, decoder",
    [
        ("tscc-sqoct", 2, decode_tscc),
        ("five-squares-tri", 3, decode_five_squares),
        ("ssc-square", 4, decode_subsystem_surface),
    ],
)
def test_every_single_qubit_error_is_corrected(family, size, decoder):
    code = build_instance(family, size)
    n = code.n_qubits
    failures = []
    for q in range(n):
        for kind in "XYZ":
            e = PauliOperator.single(n, q, kind)
            if logical_failure(code, e, decoder(code, measure_syndrome(code, e)).estimate):
                failures.append(f"{kind}{q + 1}")
    assert failures == []


@pytest.mark.parametrize("decoder", [decode_cubic_projection, decode_cubic_colored_matching])
def test_honeycomb12_every_single_qubit_error(decoder):
    # k = 0, so every syndrome-respecting estimate is gauge-equivalent to the error
    code = honeycomb12_code()
    for q in range(12):
        for kind in "XYZ":
            e = PauliOperator.single(12, q, kind)
            est = decoder(code, measure_syndrome(code, e)).estimate
            assert code.syndrome_mask(est) == code.syndrome_mask(e)
            assert not logical_failure(code, e, est)


def test_honeycomb12_worked_example_decodes():
    code = honeycomb12_code()
    e = PauliOperator.from_string("Z4 X8", 12)
    syn = measure_syndrome(code, e)
    proj = decode_cubic_projection(code, syn)
    assert proj.trace[0]["flips"] == [0]
    assert str(proj.estimate) == "X1 Z7"
    assert str(decode_cubic_colored_matching(code, syn).estimate) == "X1 Z7"


def test_tscc_cleanup_clears_rank2_checks():
    code = build_instance("tscc-sqoct", 1)
    rng = np.random.default_rng(5)
    r2 = code.labels_of_kind("rank2")
    for _ in range(30):
        e = sample_error(NoiseModel(0.08), code.n_qubits, rng)
        out = decode_tscc(code, measure_syndrome(code, e))
        flips = out.trace[0]["flips"]
        after = code.syndrome_mask(e)
        for q in flips:
            after ^= code.syndrome_mask(PauliOperator.single(code.n_qubits, q, "X"))
        assert all(code.check_bit(lab, after) == 0 for lab in r2)


def test_tscc_projection_commutes_with_syndrome():
    code = build_instance("tscc-sqoct", 1)
    colex = code.construction.source
    rng = random.Random(2)
    for _ in range(40):
        e = PauliOperator(code.n_qubits, 0, rng.getrandbits(code.n_qubits))
        verts = project_z_error(code, e)
        faces = {f for f, fv in enumerate(colex.face_vertices) if len(verts & set(fv)) % 2}
        assert project_tscc_syndrome(code, measure_syndrome(code, e)) == faces


def test_tscc_lowest_corner_rule_is_available():
    code = build_instance("tscc-sqoct", 1)
    e = PauliOperator.single(code.n_qubits, 5, "X")
    out = decode_tscc(code, measure_syndrome(code, e), cleanup="lowest")
    assert code.syndrome_mask(out.estimate) == code.syndrome_mask(e)
    with pytest.raises(ValueError):
        decode_tscc(code, measure_syndrome(code, e), cleanup="nearest")


def test_color_decoder_corrects_single_vertices():
    colex = build_family("square_octagon_torus", size=2)
    for v in range(colex.n_vertices):
        faces = {f for f, fv in enumerate(colex.face_vertices) if v in fv}
        verts, record = decode_color_code_single_type(colex, faces)
        assert verts == {v}
        assert not record.get("failed", False)


def test_decoders_reject_the_wrong_family():
    with pytest.raises(DecoderError):
        decode_tscc(honeycomb12_code(), 0)
    with pytest.raises(DecoderError):
        decode_five_squares(build_instance("ssc-square", 2), 0)


def test_surface_code_below_ten_percent():
    surface = build_family("square_torus", L=8)
    logicals = surface_code_logical_masks(surface)
    rng = random.Random(0)
    trials, fails = 1000, 0
    for _ in range(trials):
        err = sum(1 << e for e in range(surface.n_edges) if rng.random() < 0.05)
        defects = set()
        for e in range(surface.n_edges):
            if err >> e & 1:
                defects ^= set(surface.edges[e])
        corr = sum(1 << e for e in decode_surface_code(surface, defects))
        residual = err ^ corr
        fails += any((residual & m).bit_count() % 2 for m in logicals)
    assert fails / trials < 0.10


def test_registry_names():
    assert set(DECODERS) == {"projection", "colored_matching", "tscc", "five_squares", "subsystem_surface"}


def test_audit_catches_broken_decoders():
    from topsub.simulation import run_trial

    code = honeycomb12_code()

    def lazy(code, syndrome):
        from topsub.decoders import DecodeOutcome

        return DecodeOutcome(_ident(code))

    rng = np.random.default_rng(0)
    with pytest.raises(SyndromeMismatch):
        for _ in range(50):
            run_trial(code, lazy, NoiseModel(0.5), rng, audit=True)
