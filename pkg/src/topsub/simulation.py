"""Depolarizing Monte Carlo: error sampling, failure counting, sweeps and thresholds."""

from __future__ import annotations

import csv
import io
import json
import math
import os
import platform
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from statistics import NormalDist
from typing import Any, Callable, Sequence

import numpy as np

from . import __version__
from .code import SubsystemCode, SyndromeMismatch, logical_failure, measure_syndrome
from .decoders import DECODERS, DEFAULT_DECODER
from .pauli import PauliOperator

WORKERS_ENV = "TOPSUB_WORKERS"
CSV_COLUMNS = (
    "family",
    "lattice_size",
    "n_qubits",
    "p",
    "trials",
    "failures",
    "failure_rate",
    "wilson_95_low",
    "wilson_95_high",
    "seed",
)


@dataclass(frozen=True)
class NoiseModel:
    p: float
    kind: str = "depolarizing"

    def __post_init__(self):
        if not 0 <= self.p <= 1:
            raise ValueError("p must lie in [0, 1]")
        if self.kind != "depolarizing":
            raise ValueError("only depolarizing noise is modelled")


def trial_rng(seed: int, size: int, p_index: int, trial: int) -> np.random.Generator:
    """Philox stream keyed by (seed, size, p index, trial index)."""
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(size, p_index, trial))
    return np.random.Generator(np.random.Philox(ss))


def _to_int(bits: np.ndarray) -> int:
    return int.from_bytes(np.packbits(bits, bitorder="little").tobytes(), "little")


def sample_error(model: NoiseModel, n: int, rng: np.random.Generator) -> PauliOperator:
    """Each qubit: identity with probability 1-p, else X, Y or Z uniformly."""
    hit = rng.random(n) < model.p
    kind = rng.integers(1, 4, n)  # 1=X 2=Y 3=Z
    x = hit & (kind <= 2)
    z = hit & (kind >= 2)
    return PauliOperator(n, _to_int(x), _to_int(z))


def run_trial(code: SubsystemCode, decoder: Callable, model: NoiseModel, rng: np.random.Generator, *, audit: bool = False) -> bool:
    e = sample_error(model, code.n_qubits, rng)
    syndrome = measure_syndrome(code, e)
    estimate = decoder(code, syndrome).estimate
    if audit and code.syndrome_mask(estimate) != syndrome.mask:
        raise SyndromeMismatch(f"decoder {decoder.__name__} broke the syndrome at p={model.p}")
    return logical_failure(code, e, estimate)


def wilson_interval(failures: int, trials: int, confidence: float = 0.95) -> tuple[float, float]:
    if trials == 0:
        return 0.0, 1.0
    zq = NormalDist().inv_cdf(0.5 + confidence / 2)
    phat = failures / trials
    denom = 1 + zq * zq / trials
    mid = (phat + zq * zq / (2 * trials)) / denom
    half = zq * math.sqrt(phat * (1 - phat) / trials + zq * zq / (4 * trials * trials)) / denom
    return max(0.0, mid - half), min(1.0, mid + half)


# ---------------------------------------------------------------------------
# named instances


INSTANCE_FAMILIES = {
    "tscc-sqoct": "square-octagon TSCC; size s gives 48 s^2 qubits",
    "cubic-honeycomb": "cubic code on a honeycomb torus; size = number of hexagons (6, 12, 24) or L",
    "five-squares-tri": "five-squares code on an L x L triangular torus",
    "five-squares-bad-tri": "degraded five-squares variant on an L x L triangular torus",
    "ssc-square": "subsystem surface code on an L x L square torus",
    "ssc-dsq": "subsystem surface code on the d^2+1 square tiling",
    "uniform-square": "uniform rank-3 code from an L x L square torus",
    "honeycomb12": "the 12-qubit worked example",
}


@lru_cache(maxsize=16)
def build_instance(family: str, size: int) -> SubsystemCode:
    from .code import cubic_code, extract_code, honeycomb12_code
    from .constructions import (
        five_squares_bad_variant,
        five_squares_construction,
        subsystem_surface_construction,
        uniform_rank3_construction,
        vertex_expand,
    )
    from .families import build_family

    if family == "tscc-sqoct":
        return extract_code(vertex_expand(build_family("square_octagon_torus", size=size)), "tscc")
    if family == "cubic-honeycomb":
        key = "hexagons" if size in (6, 12, 24) else "L"
        return cubic_code(build_family("honeycomb_torus", **{key: size}))
    if family == "five-squares-tri":
        return extract_code(five_squares_construction(build_family("triangular_torus", L=size)), "five_squares")
    if family == "five-squares-bad-tri":
        return extract_code(five_squares_bad_variant(build_family("triangular_torus", L=size)), "five_squares_bad")
    if family == "ssc-square":
        return extract_code(subsystem_surface_construction(build_family("square_torus", L=size)), "subsystem_surface")
    if family == "ssc-dsq":
        return extract_code(subsystem_surface_construction(build_family("rotated_surface_dsq", d=size)), "subsystem_surface")
    if family == "uniform-square":
        return extract_code(uniform_rank3_construction(build_family("square_torus", L=size)), "hypergraph")
    if family == "honeycomb12":
        return honeycomb12_code()
    raise ValueError(f"unknown instance family {family!r}; choose from {sorted(INSTANCE_FAMILIES)}")


def default_decoder(code: SubsystemCode) -> Callable:
    try:
        return DECODERS[DEFAULT_DECODER[code.family]]
    except KeyError:
        raise ValueError(f"no decoder for {code.family} codes") from None


# ---------------------------------------------------------------------------
# sweeps


@dataclass
class SweepConfig:
    family: str
    sizes: Sequence[int]
    p_values: Sequence[float]
    trials: int
    seed: int = 0
    workers: int | None = None
    decoder: str | None = None
    chunk: int = 250

    def p_grid(self) -> list[float]:
        return [float(p) for p in self.p_values]


@dataclass
class SweepResult:
    rows: list[dict[str, Any]]
    config: dict[str, Any]
    timings: dict[str, float] = field(default_factory=dict)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
        w.writeheader()
        for row in self.rows:
            w.writerow({k: _fmt(row[k]) for k in CSV_COLUMNS})
        return buf.getvalue()

    def manifest(self) -> dict[str, Any]:
        return {
            "config": self.config,
            "versions": {"topsub": __version__, "python": platform.python_version(), "numpy": np.__version__},
            "timings": self.timings,
        }


def _fmt(v: Any) -> str:
    if isinstance(v, float):
        return repr(round(v, 12))
    return str(v)


def p_range(p_min: float, p_max: float, p_step: float) -> list[float]:
    count = int(round((p_max - p_min) / p_step)) + 1
    return [round(p_min + i * p_step, 10) for i in range(count)]


def _chunk_job(args) -> tuple[int, int, int]:
    family, size, decoder_name, p, p_index, seed, start, stop = args
    code = build_instance(family, size)
    decoder = DECODERS[decoder_name] if decoder_name else default_decoder(code)
    model = NoiseModel(p)
    failures = 0
    for trial in range(start, stop):
        rng = trial_rng(seed, size, p_index, trial)
        failures += run_trial(code, decoder, model, rng, audit=trial % 1000 == 0)
    return failures, start, stop


def resolve_workers(workers: int | None) -> int:
    if workers is None:
        workers = int(os.environ.get(WORKERS_ENV, "0")) or (os.cpu_count() or 1)
    return max(1, workers)


def sweep(config: SweepConfig, progress: Callable[[str], None] | None = None) -> SweepResult:
    """Failure rates on a size x p grid; results do not depend on the worker count."""
    grid = config.p_grid()
    jobs = []
    for size in config.sizes:
        for pi, p in enumerate(grid):
            for start in range(0, config.trials, config.chunk):
                stop = min(config.trials, start + config.chunk)
                jobs.append((config.family, size, config.decoder, p, pi, config.seed, start, stop))
    workers = resolve_workers(config.workers)
    t0 = time.perf_counter()
    if workers == 1:
        outputs = [_chunk_job(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outputs = list(pool.map(_chunk_job, jobs, chunksize=1))
    wall = time.perf_counter() - t0
    totals: dict[tuple[int, int], int] = {}
    for job, (fails, _, _) in zip(jobs, outputs):
        key = (job[1], job[4])
        totals[key] = totals.get(key, 0) + fails
    rows = []
    for size in config.sizes:
        n = build_instance(config.family, size).n_qubits
        for pi, p in enumerate(grid):
            f = totals[(size, pi)]
            lo, hi = wilson_interval(f, config.trials)
            rows.append({
                "family": config.family,
                "lattice_size": size,
                "n_qubits": n,
                "p": p,
                "trials": config.trials,
                "failures": f,
                "failure_rate": f / config.trials if config.trials else 0.0,
                "wilson_95_low": lo,
                "wilson_95_high": hi,
                "seed": config.seed,
            })
        if progress:
            progress(f"size {size} done")
    cfg = asdict(config)
    cfg["sizes"] = list(config.sizes)
    cfg["p_values"] = grid
    cfg["workers"] = workers
    return SweepResult(rows, cfg, {"wall_time": wall})


def write_sweep(result: SweepResult, csv_path: str, manifest_path: str | None = None) -> None:
    with open(csv_path, "w", newline="") as fh:
        fh.write(result.to_csv())
    if manifest_path is None:
        manifest_path = os.path.splitext(csv_path)[0] + ".manifest.json"
    with open(manifest_path, "w") as fh:
        json.dump(result.manifest(), fh, indent=2, sort_keys=True)


def read_sweep_csv(path: str) -> list[dict[str, Any]]:
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    for r in rows:
        for k in ("lattice_size", "n_qubits", "trials", "failures", "seed"):
            r[k] = int(r[k])
        for k in ("p", "failure_rate", "wilson_95_low", "wilson_95_high"):
            r[k] = float(r[k])
    return rows


# ---------------------------------------------------------------------------
# threshold


@dataclass(frozen=True)
class ThresholdEstimate:
    p_cross: float | None
    bracket: tuple[float, float] | None
    crossings: tuple[tuple[int, int, float], ...] = ()

    @property
    def found(self) -> bool:
        return self.p_cross is not None


def _crossing(ps: list[float], small: list[float], large: list[float]) -> float | None:
    """First p where the larger code stops beating the smaller one."""
    eps = 1e-9
    diff = [math.log(max(b, eps)) - math.log(max(a, eps)) for a, b in zip(small, large)]
    for i in range(len(ps) - 1):
        d0, d1 = diff[i], diff[i + 1]
        if d0 < 0 <= d1 or d0 <= 0 < d1:
            if d1 == d0:
                return ps[i]
            return ps[i] + (ps[i + 1] - ps[i]) * (-d0) / (d1 - d0)
    return None


def estimate_threshold(rows: Sequence[dict[str, Any]]) -> ThresholdEstimate:
    """Pairwise crossing of failure curves (log scale, linear interpolation in p)."""
    by_size: dict[int, dict[float, float]] = {}
    for r in rows:
        by_size.setdefault(int(r["n_qubits"]), {})[float(r["p"])] = float(r["failure_rate"])
    sizes = sorted(by_size)
    if len(sizes) < 2:
        raise ValueError("need at least two sizes")
    crossings = []
    for a, b in zip(sizes, sizes[1:]):
        ps = sorted(set(by_size[a]) & set(by_size[b]))
        if len(ps) < 3:
            raise ValueError("need at least three shared p values")
        # points where both curves are zero carry no information
        ps = [p for p in ps if by_size[a][p] > 0 or by_size[b][p] > 0]
        x = _crossing(ps, [by_size[a][p] for p in ps], [by_size[b][p] for p in ps])
        if x is not None:
            crossings.append((a, b, x))
    if not crossings:
        return ThresholdEstimate(None, None, ())
    xs = [c[2] for c in crossings]
    return ThresholdEstimate((min(xs) + max(xs)) / 2, (min(xs), max(xs)), tuple(crossings))
