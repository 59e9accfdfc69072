"""Command-line entry point ``doublephase``.

Verification commands print a JSON report to stdout (and to ``--report``
when given) and exit with status 0 iff every check passed, 1 otherwise.
Invalid input exits with status 2 and a message on stderr.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import warnings

import numpy as np

from . import airy
from .evolutions import NonPhysicalWarning, center_center_kernel, propagate_wigner
from .io import SCHEMA, SchemaError, encode_complex_array, load_channel, load_state
from .linalg import check_dim
from .superop import choi_matrix, choi_reshuffle
from .suites import EmptySuite, airy_suite, algebra_suite, pure_suite, superop_suite
from .weyl import grid_points, weyl_symbol

__all__ = ["main", "build_parser"]


def _odd_dim(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"dimension must be an integer, got {text!r}") from None
    try:
        return check_dim(value)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _point(text: str) -> tuple[float, float]:
    try:
        q, p = (float(s) for s in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'q,p', got {text!r}") from None
    return q, p


def _nonneg(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text!r}")
    return value


def _emit(report, path) -> int:
    text = report.to_json()
    print(text)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    return 0 if report.passed else 1


def cmd_verify_algebra(args) -> int:
    return _emit(algebra_suite(args.dim, tol=args.tol, seed=args.seed, samples=args.samples), args.report)


def cmd_verify_superop(args) -> int:
    channel = None
    if args.input:
        spec = load_channel(args.input)
        if spec.dim != args.dim:
            raise SchemaError(f"channel dimension {spec.dim} does not match --dim {args.dim}")
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", NonPhysicalWarning)
            channel = spec.superop()
    report = superop_suite(args.dim, seed=args.seed, channels=args.channels, tol=args.tol, channel=channel)
    return _emit(report, args.report)


def cmd_verify_pure(args) -> int:
    state = None
    if args.state:
        spec = load_state(args.state)
        if spec.dim != args.dim:
            raise SchemaError(f"state dimension {spec.dim} does not match --dim {args.dim}")
        state = spec.data
    report = pure_suite(args.dim, seed=args.seed, states=args.states, tol=args.tol, state=state)
    return _emit(report, args.report)


def _labels(d):
    return [[int(q), int(p)] for q, p in grid_points(d)]


def cmd_choi(args) -> int:
    spec = load_channel(args.input)
    S = spec.superop()
    d = spec.dim
    if args.basis == "transition":
        table = choi_reshuffle(S)
        index = "row i + d*k, column j + d*l for <<|i><j| S |k><l|>>"
        labels = None
    else:
        table = choi_matrix(S, args.basis).values
        index = "row x+ and column x- as flat labels q*d + p"
        labels = _labels(d)
    doc = {
        "schema": SCHEMA,
        "dim": d,
        "basis": args.basis,
        "index": index,
        "labels": labels,
        "table": encode_complex_array(table),
    }
    with open(args.out, "w") as fh:
        json.dump(doc, fh)
    return 0


def cmd_propagate(args) -> int:
    spec = load_channel(args.input)
    state = load_state(args.state)
    if spec.dim != state.dim:
        raise SchemaError(f"channel dimension {spec.dim} does not match state dimension {state.dim}")
    d = spec.dim
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", NonPhysicalWarning)
        S = spec.superop()
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    # trace preservation: <<I| S = <<I|
    vec_id = np.eye(d).reshape(-1, order="F")
    if spec.kind == "superop" and np.max(np.abs(vec_id @ S - vec_id)) > 1e-10:
        print("warning: channel is not trace preserving", file=sys.stderr)
    K = center_center_kernel(S)
    W = weyl_symbol(state.density()) / d
    pts = grid_points(d)
    with open(args.out, "w", newline="") as fh:
        out = csv.writer(fh)
        out.writerow(["step", "q", "p", "re", "im"])
        for step in range(1, args.steps + 1):
            W = propagate_wigner(K, W)
            for (q, p), v in zip(pts, W.reshape(-1)):
                out.writerow([step, int(q), int(p), f"{v.real:.17g}", f"{v.imag:.17g}"])
    return 0


def cmd_airy(args) -> int:
    report, field = airy_suite(args.x1, N=args.grid, L=args.window, tol=args.tol, edge_floor=args.edge_floor)
    if args.out:
        airy.emit_field_csv(field, args.out)
    return _emit(report, args.report)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="doublephase", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-algebra", help="translation and reflection algebra")
    p.add_argument("--dim", type=_odd_dim, required=True)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=200, help="random tuples when not exhaustive")
    p.add_argument("--report")
    p.set_defaults(func=cmd_verify_algebra)

    p = sub.add_parser("verify-superop", help="double phase space identities on random channels")
    p.add_argument("--dim", type=_odd_dim, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--channels", type=_nonneg, default=20)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--in", dest="input", help="also check this channel, including complete positivity")
    p.add_argument("--report")
    p.set_defaults(func=cmd_verify_superop)

    p = sub.add_parser("choi", help="write the Choi table of a channel")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--basis", choices=("reflection", "translation", "transition"), default="reflection")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_choi)

    p = sub.add_parser("propagate", help="propagate a Wigner function through a channel")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--state", required=True)
    p.add_argument("--steps", type=_nonneg, default=1)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_propagate)

    p = sub.add_parser("verify-pure", help="pure-state Fourier identities")
    p.add_argument("--dim", type=_odd_dim, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--states", type=_nonneg, default=10)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--state", help="also check this state (vector or density)")
    p.add_argument("--report")
    p.set_defaults(func=cmd_verify_pure)

    p = sub.add_parser("airy", help="Fourier invariance of the symmetrised Airy product")
    p.add_argument("--x1", type=_point, default=(-3.0, 0.0), help="base point 'q,p'")
    p.add_argument("--grid", type=int, default=1024, help="samples per axis (power of two)")
    p.add_argument("--window", type=float, default=24.0, help="window side length")
    p.add_argument("--tol", type=float, default=1e-5)
    p.add_argument("--edge-floor", type=float, default=airy.DEFAULT_EDGE_FLOOR)
    p.add_argument("--out", help="CSV file for the sampled field")
    p.add_argument("--report")
    p.set_defaults(func=cmd_airy)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SchemaError, EmptySuite, airy.WindowTooSmall, ValueError, OSError) as exc:
        print(f"doublephase {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
