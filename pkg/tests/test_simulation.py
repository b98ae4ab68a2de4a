import numpy as np
import pytest

from topsub.simulation import (
    CSV_COLUMNS,
    NoiseModel,
    SweepConfig,
    build_instance,
    estimate_threshold,
    p_range,
    read_sweep_csv,
    resolve_workers,
    sample_error,
    sweep,
    trial_rng,
    wilson_interval,
    write_sweep,
)


def test_noise_extremes():
    rng = np.random.default_rng(0)
    assert sample_error(NoiseModel(0.0), 50, rng).weight == 0
    assert sample_error(NoiseModel(1.0), 50, rng).weight == 50
    with pytest.raises(ValueError):
        NoiseModel(1.5)
    with pytest.raises(ValueError):
        NoiseModel(0.1, kind="erasure")


def test_depolarizing_marginals():
    rng = np.random.default_rng(1)
    n, reps, p = 200, 200, 0.3
    counts = {"X": 0, "Y": 0, "Z": 0}
    for _ in range(reps):
        e = sample_error(NoiseModel(p), n, rng)
        for q in range(n):
            letter = e.letter(q)
            if letter != "I":
                counts[letter] += 1
    total = n * reps
    for c in counts.values():
        assert abs(c / total - p / 3) < 0.01


def test_trial_streams_are_keyed():
    a = trial_rng(7, 2, 0, 5).random(4)
    assert np.array_equal(a, trial_rng(7, 2, 0, 5).random(4))
    assert not np.array_equal(a, trial_rng(7, 2, 0, 6).random(4))
    assert not np.array_equal(a, trial_rng(7, 4, 0, 5).random(4))


def test_wilson_interval():
    lo, hi = wilson_interval(10, 100)
    assert lo < 0.1 < hi
    assert lo == pytest.approx(0.05523, abs=1e-4)
    assert hi == pytest.approx(0.17437, abs=1e-4)
    assert wilson_interval(0, 0) == (0.0, 1.0)


def test_p_range():
    assert p_range(0.01, 0.02, 0.005) == [0.01, 0.015, 0.02]


def test_sweep_is_reproducible_and_worker_independent(tmp_path):
    cfg = dict(family="ssc-square", sizes=[2, 3], p_values=[0.02, 0.08], trials=300, seed=3, chunk=100)
    one = sweep(SweepConfig(workers=1, **cfg))
    two = sweep(SweepConfig(workers=2, **cfg))
    assert one.to_csv() == two.to_csv()
    path = tmp_path / "out.csv"
    write_sweep(one, str(path))
    assert (tmp_path / "out.manifest.json").exists()
    rows = read_sweep_csv(str(path))
    assert [r["failures"] for r in rows] == [r["failures"] for r in one.rows]
    assert tuple(rows[0]) == tuple(CSV_COLUMNS)


def test_workers_from_environment(monkeypatch):
    monkeypatch.setenv("TOPSUB_WORKERS", "3")
    assert resolve_workers(None) == 3
    assert resolve_workers(1) == 1


def _synthetic_rows(threshold, sizes=(16, 32, 64)):
    rows = []
    ps = [0.010 + 0.002 * i for i in range(11)]
    for n in sizes:
        for p in ps:
            rate = 0.3 * (p / threshold) ** (n ** 0.5)
            rows.append({"n_qubits": n, "p": p, "failure_rate": min(rate, 0.9)})
    return rows


def test_threshold_of_synthetic_curves():
    est = estimate_threshold(_synthetic_rows(0.02))
    assert est.found
    assert est.p_cross == pytest.approx(0.02, abs=5e-4)


def test_no_crossing_is_reported():
    rows = []
    for n, scale in ((16, 1.0), (32, 0.5)):
        for p in (0.01, 0.02, 0.03):
            rows.append({"n_qubits": n, "p": p, "failure_rate": scale * p})
    assert not estimate_threshold(rows).found
    with pytest.raises(ValueError):
        estimate_threshold(rows[:3])


def test_instances_are_cached():
    assert build_instance("ssc-square", 2) is build_instance("ssc-square", 2)
    with pytest.raises(ValueError):
        build_instance("unknown", 1)
