"""Command-line entry point: build, verify, decode, sweep, threshold, export."""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from typing import Any, Sequence

from . import __version__
from .code import ConstructionBug, SubsystemCode, measure_syndrome, verify_parameters
from .complex import ComplexError, shortest_nontrivial_cycle_length
from .decoders import DECODERS, DEFAULT_DECODER, DecoderError
from .matching import ParityError
from .pauli import DimensionError, PauliOperator
from .simulation import (
    INSTANCE_FAMILIES,
    WORKERS_ENV,
    SweepConfig,
    build_instance,
    estimate_threshold,
    p_range,
    read_sweep_csv,
    sweep,
    write_sweep,
)

DOMAIN_ERRORS = (ComplexError, ConstructionBug, ParityError, DecoderError, DimensionError, ValueError)

ALGORITHMS = {
    "cubic-projection": "projection",
    "cubic-colored-matching": "colored_matching",
    "tscc": "tscc",
    "five-squares": "five_squares",
    "subsystem-surface": "subsystem_surface",
}


class DomainError(Exception):
    pass


def _digest(path: str) -> str:
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()


def _emit_manifest(args: argparse.Namespace, outputs: list[str], inputs: list[str] = ()) -> None:
    config = {k: v for k, v in vars(args).items() if k not in ("func", "config", "manifest")}
    manifest = {
        "subcommand": args.command,
        "config": config,
        "seed": getattr(args, "seed", None),
        "version": __version__,
        "inputs": {p: _digest(p) for p in inputs},
        "outputs": {p: _digest(p) for p in outputs},
    }
    path = args.manifest
    if path is None and outputs:
        path = os.path.splitext(outputs[0])[0] + ".run.json"
    text = json.dumps(manifest, indent=2, sort_keys=True, default=str)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(f"manifest: {json.dumps(manifest, sort_keys=True, default=str)}", file=sys.stderr)


def _code(args) -> SubsystemCode:
    name = args.code if getattr(args, "code", None) else args.family
    if name is None:
        raise DomainError("give --family (or --code)")
    if name == "honeycomb12":
        return build_instance("honeycomb12", 0)
    if ":" in name:
        name, size = name.split(":", 1)
        return build_instance(name, int(size))
    if args.size is None:
        raise DomainError(f"--size is required for {name}")
    return build_instance(name, args.size)


def _write_or_print(text: str, out: str | None) -> list[str]:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
        return [out]
    sys.stdout.write(text)
    return []


# ---------------------------------------------------------------------------
# subcommands


def cmd_build(args) -> int:
    code = _code(args)
    con = code.construction
    data: dict[str, Any] = {"family": code.family, "n_qubits": code.n_qubits}
    if con is not None:
        data["construction"] = con.to_dict()
    outputs = _write_or_print(json.dumps(data, indent=1, default=str) + "\n", args.out)
    _emit_manifest(args, outputs)
    return 0


def _expected(family: str, code: SubsystemCode) -> tuple[dict[str, int], list[str]]:
    """Parameters predicted by the counting formulas of each family."""
    notes = []
    n = code.n_qubits
    if family in ("cubic-honeycomb", "honeycomb12"):
        return {"n": n, "k": 0, "r": n // 2 - 1, "d": 2}, notes
    if family == "tscc-sqoct":
        colex = code.construction.source
        v = colex.n_vertices
        ell = shortest_nontrivial_cycle_length(colex)
        notes.append(f"formula bound d >= {ell} (shortest nontrivial cycle of the 2-colex), not searched")
        return {"n": 3 * v, "k": 2, "r": 2 * v}, notes
    if family in ("ssc-square", "ssc-dsq"):
        gamma = code.construction.source
        v, g = gamma.n_vertices, gamma.genus
        exp = {"n": 3 * v, "k": 2 * g, "s": 2 * (v - 2 * g + 1), "r": v + 2 * g - 2}
        if family == "ssc-dsq":
            exp["d"] = int(round((2 * v - 1) ** 0.5))
        return exp, notes
    return {"n": n}, notes


def cmd_verify(args) -> int:
    code = _code(args)
    family = args.code or args.family
    family = family.split(":")[0]
    expected, notes = _expected(family, code)
    if args.no_distance:
        expected.pop("d", None)
    report = verify_parameters(code, expected, distance_budget=args.d_budget)
    print(report.render())
    for note in notes:
        print(f"  {note}")
    _emit_manifest(args, [])
    return 0 if report.passed else 1


def _parse_syndrome(text: str, length: int) -> int:
    bits = [c for c in text if c in "01"]
    if len(bits) != length:
        raise DomainError(f"syndrome needs {length} bits, got {len(bits)}")
    return sum(int(b) << i for i, b in enumerate(bits))


def cmd_decode(args) -> int:
    code = _code(args)
    alg = args.alg
    if alg is None:
        name = DEFAULT_DECODER.get(code.family)
        if name is None:
            raise DomainError(f"no decoder for {code.family} codes")
    else:
        name = ALGORITHMS[alg]
    decoder = DECODERS[name]
    if args.error is not None:
        error = PauliOperator.from_string(args.error, code.n_qubits)
        syndrome = measure_syndrome(code, error).mask
    elif args.syndrome is not None:
        error = None
        syndrome = _parse_syndrome(args.syndrome, code.n_stabilizers)
    else:
        raise DomainError("give --error or --syndrome")
    outcome = decoder(code, syndrome)
    result: dict[str, Any] = {
        "estimate": str(outcome.estimate),
        "syndrome": [(syndrome >> i) & 1 for i in range(code.n_stabilizers)],
        "trace": outcome.trace,
    }
    if error is not None:
        from .code import is_equivalent_modulo_gauge, logical_failure

        result["equivalent_to_error"] = is_equivalent_modulo_gauge(code, error, outcome.estimate)
        result["logical_failure"] = logical_failure(code, error, outcome.estimate)
    text = json.dumps(result, indent=1, default=str) + "\n"
    outputs = _write_or_print(text, args.out)
    _emit_manifest(args, outputs)
    return 0


def cmd_sweep(args) -> int:
    if args.family is None or not args.sizes:
        raise DomainError("sweep needs --family and --sizes")
    sizes = [int(s) for s in str(args.sizes).replace(",", " ").split()] if not isinstance(args.sizes, list) else args.sizes
    config = SweepConfig(
        family=args.family,
        sizes=sizes,
        p_values=p_range(args.p_min, args.p_max, args.p_step),
        trials=args.trials,
        seed=args.seed,
        workers=args.workers,
        decoder=ALGORITHMS[args.alg] if args.alg else None,
    )
    result = sweep(config, progress=lambda msg: print(msg, file=sys.stderr))
    out = args.out or "sweep.csv"
    write_sweep(result, out)
    print(f"wrote {out} ({len(result.rows)} rows, {result.timings['wall_time']:.1f} s)", file=sys.stderr)
    _emit_manifest(args, [out, os.path.splitext(out)[0] + ".manifest.json"])
    return 0


def cmd_threshold(args) -> int:
    rows = read_sweep_csv(args.csv)
    est = estimate_threshold(rows)
    if not est.found:
        print("no crossing")
        _emit_manifest(args, [], [args.csv])
        return 1
    lo, hi = est.bracket
    print(f"p_cross={est.p_cross:.5f} bracket=[{lo:.5f}, {hi:.5f}]")
    for a, b, x in est.crossings:
        print(f"  n={a} vs n={b}: {x:.5f}")
    _emit_manifest(args, [], [args.csv])
    return 0


def cmd_export(args) -> int:
    code = _code(args)
    if args.format == "listing":
        text = code.to_listing()
    elif args.format == "dot":
        con = code.construction
        complex_ = con if hasattr(con, "to_dot") else con.derived
        text = complex_.to_dot()
    else:
        con = code.construction
        text = json.dumps(con.to_dict(), indent=1, default=str) + "\n"
    outputs = _write_or_print(text, args.out)
    _emit_manifest(args, outputs)
    return 0


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    families = ", ".join(f"{k} ({v})" for k, v in INSTANCE_FAMILIES.items())
    parser = argparse.ArgumentParser(
        prog="topsub",
        description="Construct, verify, decode and simulate topological subsystem codes.",
        epilog=f"Instance families: {families}.",
    )
    parser.add_argument("--version", action="version", version=f"topsub {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    def common(p, code_option=False):
        p.add_argument("--family", help="instance family")
        p.add_argument("--size", type=int, help="lattice size parameter")
        if code_option:
            p.add_argument("--code", help="honeycomb12 or FAMILY:SIZE")
        p.add_argument("--config", help="JSON file of option defaults")
        p.add_argument("--manifest", help="where to write the run manifest")

    p = sub.add_parser("build", help="build an instance and dump its construction as JSON")
    common(p, code_option=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("verify", help="print an [[n,k,r,d]] report against the counting formulas")
    common(p, code_option=True)
    p.add_argument("--d-budget", type=int, default=6, help="exhaustive distance search limit")
    p.add_argument("--no-distance", action="store_true", help="skip the distance search")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("decode", help="decode one error or syndrome")
    common(p, code_option=True)
    p.add_argument("--error", help='Pauli string such as "Z4 X8" (1-based qubits)')
    p.add_argument("--syndrome", help="bit string over the stabilizer generators")
    p.add_argument("--alg", choices=sorted(ALGORITHMS))
    p.add_argument("--out")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("sweep", help="Monte Carlo failure rates over sizes and p")
    common(p)
    p.add_argument("--sizes", help="comma-separated size parameters")
    p.add_argument("--p-min", type=float, default=0.005)
    p.add_argument("--p-max", type=float, default=0.0275)
    p.add_argument("--p-step", type=float, default=0.0025)
    p.add_argument("--trials", type=int, default=2000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=None, help=f"worker processes (default ${WORKERS_ENV} or CPU count)")
    p.add_argument("--alg", choices=sorted(ALGORITHMS))
    p.add_argument("--out", help="CSV path (default sweep.csv)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("threshold", help="estimate the crossing point from a sweep CSV")
    p.add_argument("csv")
    p.add_argument("--config", help="JSON file of option defaults")
    p.add_argument("--manifest")
    p.set_defaults(func=cmd_threshold)

    p = sub.add_parser("export", help="export generators, construction JSON or Graphviz")
    common(p, code_option=True)
    p.add_argument("--format", choices=("listing", "json", "dot"), default="listing")
    p.add_argument("--out")
    p.set_defaults(func=cmd_export)
    return parser


def _apply_config(parser: argparse.ArgumentParser, argv: Sequence[str]) -> argparse.Namespace:
    args = parser.parse_args(argv)
    path = getattr(args, "config", None)
    if not path:
        return args
    with open(path) as fh:
        data = json.load(fh)
    data = data.get("config", data)
    sub = parser._subparsers._group_actions[0].choices[args.command]
    known = {a.dest for a in sub._actions}
    sub.set_defaults(**{k.replace("-", "_"): v for k, v in data.items() if k.replace("-", "_") in known})
    return parser.parse_args(argv)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    if not argv:
        parser.print_usage(sys.stderr)
        return 2
    args = _apply_config(parser, argv)
    if args.command is None:
        parser.print_usage(sys.stderr)
        return 2
    try:
        return args.func(args)
    except (DomainError, *DOMAIN_ERRORS) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
