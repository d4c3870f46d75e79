"""Command-line front end: ``quditdicke {synth,verify,simulate,count,reference,sweep}``."""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from .circuit import Circuit, count_by_tag, count_v_operators
from .core import (
    FIDELITY_TOL,
    CompositionVector,
    DickeError,
    compositions,
    identity_permutation_state,
)
from .reference import reference_dicke_state
from .simulator import build_circuit, run, verify
from .synthesis import build_u, predicted_v_count, predicted_w_count

EXIT_FAIL = 1
EXIT_USAGE = 2

PRUNED_NOTE = (
    "pruned: circuit specialized to --k (d=2 or d=3 only). The d=3 bounds are an "
    "unproven conjecture; use 'verify' or 'sweep' to check a given case."
)
SWEEP_COLUMNS = ["d", "n", "k", "mode", "fidelity", "max_amp_error", "size", "depth", "pass"]


class UsageError(Exception):
    pass


def _composition(text: str | None, d: int, n: int | None = None) -> CompositionVector | None:
    if text is None:
        return None
    k = CompositionVector.parse(text, d)
    if n is not None and k.n() != n:
        raise UsageError(f"--k sums to {k.n()} but --n is {n}")
    return k


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def cmd_synth(args) -> int:
    k = _composition(args.k, args.d, args.n)
    if args.mode == "pruned":
        if k is None:
            raise UsageError("--mode pruned needs --k")
        if args.d not in (2, 3):
            raise UsageError("--mode pruned supports d=2 and d=3 only")
    circuit = build_circuit(args.d, args.n, k, args.mode)
    text = circuit.to_json()
    summary = sys.stdout if args.out else sys.stderr
    _emit(text, args.out)
    print(f"size {circuit.size()}", file=summary)
    print(f"depth {circuit.depth()}", file=summary)
    print(f"v_operators {count_v_operators(circuit)}", file=summary)
    print(f"macro_counts {json.dumps(count_by_tag(circuit), sort_keys=True)}", file=summary)
    return 0


def cmd_verify(args) -> int:
    k = _composition(args.k, args.d, args.n)
    if args.mode == "pruned" and args.d not in (2, 3):
        raise UsageError("--mode pruned supports d=2 and d=3 only")
    report = verify(args.d, args.n, k, args.mode, tol=args.tol)
    print(f"d {report.d}")
    print(f"n {report.n}")
    print(f"k {report.k}")
    print(f"mode {report.mode}")
    print(f"fidelity {_fmt(report.fidelity)}")
    print(f"max_amp_error {_fmt(report.max_amp_error)}")
    print(f"size {report.size}")
    print(f"depth {report.depth}")
    print(f"counts {json.dumps(report.counts, sort_keys=True)}")
    print(f"pass {str(report.passed).lower()}")
    return 0 if report.passed else EXIT_FAIL


def cmd_simulate(args) -> int:
    circuit = Circuit.from_json(Path(args.circuit).read_text())
    k = _composition(args.input, circuit.d, circuit.n)
    state = run(circuit, identity_permutation_state(k))
    _emit(state.to_json(), args.out)
    return 0


def cmd_count(args) -> int:
    print(f"d {args.d}")
    print(f"n {args.n}")
    print(f"predicted_v_count {predicted_v_count(args.n, args.d)}")
    built = count_v_operators(build_u(args.n, args.d)) if args.built else None
    if built is not None:
        print(f"built_v_count {built}")
    print("m,predicted_w_count")
    for m in range(2, args.n + 1):
        print(f"{m},{predicted_w_count(m, args.d)}")
    return 0


def cmd_reference(args) -> int:
    k = _composition(args.k, args.d)
    _emit(reference_dicke_state(k).to_json(), args.out)
    return 0


def cmd_sweep(args) -> int:
    if args.mode == "pruned" and args.d not in (2, 3):
        raise UsageError("--mode pruned supports d=2 and d=3 only")
    handle = open(args.out, "w", newline="") if args.out else sys.stdout
    failures = []
    try:
        writer = csv.DictWriter(handle, fieldnames=SWEEP_COLUMNS)
        writer.writeheader()
        for n in range(1, args.max_n + 1):
            full = build_u(n, args.d) if args.mode == "full" else None
            for k in compositions(n, args.d):
                report = verify(args.d, n, k, args.mode, tol=args.tol, circuit=full)
                writer.writerow(report.as_row())
                if not report.passed:
                    failures.append(report)
    finally:
        if args.out:
            handle.close()
    for report in failures:
        label = "conjecture counterexample" if args.mode == "pruned" else "failure"
        print(f"{label}: d={report.d} k=({report.k}) fidelity={_fmt(report.fidelity)}", file=sys.stderr)
    return EXIT_FAIL if failures else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quditdicke",
        description="Synthesize, simulate and verify qudit Dicke-state preparation circuits.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    mode_help = f"full: k-independent circuit (default). {PRUNED_NOTE}"

    p = sub.add_parser("synth", help="write a circuit as JSON")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", help="composition k0,k1,...; required for --mode pruned")
    p.add_argument("--mode", choices=["full", "pruned"], default="full", help=mode_help)
    p.add_argument("--out", help="output file (default: stdout)")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("verify", help="check a circuit against the reference Dicke state")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", required=True)
    p.add_argument("--mode", choices=["full", "pruned"], default="full", help=mode_help)
    p.add_argument("--tol", type=float, default=FIDELITY_TOL, help="allowed 1 - fidelity")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("simulate", help="run a circuit JSON on the sorted input |e(k)>")
    p.add_argument("--circuit", required=True)
    p.add_argument("--input", required=True, help="composition k0,k1,...")
    p.add_argument("--out")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("count", help="closed-form V-operator counts")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--built", action="store_true", help="also build U_n and count its V operators")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("reference", help="brute-force Dicke state as JSON")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--k", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_reference)

    p = sub.add_parser("sweep", help="verify every composition up to --max-n, CSV output")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--mode", choices=["full", "pruned"], default="full", help=mode_help)
    p.add_argument("--tol", type=float, default=FIDELITY_TOL)
    p.add_argument("--out")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, DickeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
