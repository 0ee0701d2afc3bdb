"""Command-line front end: ``topocircuit <command> FILE [options]``.

Exit codes: 0 success, 1 parse/usage error, 2 degenerate circuit (``check``),
3 oracle mismatch (``verify``).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from typing import Sequence

from .dtm import determinant, is_degenerate, non_excited_graph, numerator, transfer_function
from .multigraph import GraphError, build_graph
from .netlist import NetlistError, parse
from .oracle import log_frequencies, verify
from .pathfinder import enumerate_paths, transfer_cycles
from .symbolic import poly_render, poly_substitute

EXIT_OK, EXIT_USAGE, EXIT_DEGENERATE, EXIT_MISMATCH = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _freq_list(text: str) -> list[float]:
    try:
        out = [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}") from None
    if not out or any(not (w > 0) or w == float("inf") for w in out):
        raise argparse.ArgumentTypeError("frequencies must be positive and finite")
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="topocircuit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("paths", help="list all simple paths between two nodes")
    p.add_argument("netlist")
    p.add_argument("--from", dest="bgn", type=int, required=True)
    p.add_argument("--to", dest="end", type=int, required=True)
    p.add_argument("--with-sources", action="store_true", help="include VIN and OUT branches")

    sub.add_parser("cycles", help="list signed transfer cycles").add_argument("netlist")
    sub.add_parser("det", help="topological determinant D(s)").add_argument("netlist")
    sub.add_parser("num", help="topological transfer numerator N(s)").add_argument("netlist")

    p = sub.add_parser("tf", help="transfer function N(s)/D(s)")
    p.add_argument("netlist")
    p.add_argument("--json", action="store_true")
    p.add_argument("--numeric", action="store_true", help="substitute component values")

    sub.add_parser("check", help="connected (exit 0) or degenerate (exit 2)").add_argument("netlist")

    p = sub.add_parser("verify", help="compare against modified nodal analysis")
    p.add_argument("netlist")
    p.add_argument("--freqs", type=_freq_list, help="comma-separated angular frequencies (rad/s)")
    return parser


def _load(path: str):
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from None
    try:
        return parse(data)
    except NetlistError as exc:
        raise UsageError(f"{path}:{exc.line}:{exc.column}: {exc.message}") from None


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return _dispatch(args, out, err)
    except UsageError as exc:
        print(str(exc).rstrip("\n"), file=err)
        return EXIT_USAGE


def _dispatch(args: argparse.Namespace, out, err) -> int:
    circuit = _load(args.netlist)

    if args.command == "paths":
        branches = circuit.component_branches
        if args.with_sources:
            branches += (circuit.transmitter, circuit.receptor)
        graph = build_graph(branches)
        try:
            paths = enumerate_paths(graph, args.bgn, args.end)
        except GraphError as exc:
            raise UsageError(f"paths: {exc}") from None
        for p in paths:
            print(p.render(), file=out)
        print(f"total: {len(paths)}", file=out)
        return EXIT_OK

    if args.command == "cycles":
        tg = circuit.transfer_graph()
        for c in transfer_cycles(tg, circuit.transmitter, circuit.receptor):
            print(c.render(), file=out)
        return EXIT_OK

    if args.command == "det":
        print(poly_render(determinant(non_excited_graph(circuit))), file=out)
        return EXIT_OK

    if args.command == "num":
        print(poly_render(numerator(circuit)), file=out)
        return EXIT_OK

    if args.command == "tf":
        tf = transfer_function(circuit)
        if args.numeric:
            values = circuit.values
            tf = replace(
                tf,
                numerator=poly_substitute(tf.numerator, values),
                denominator=poly_substitute(tf.denominator, values),
            )
        if args.json:
            print(json.dumps(tf.to_json()), file=out)
        else:
            print(f"N(s) = {poly_render(tf.numerator)}", file=out)
            print(f"D(s) = {poly_render(tf.denominator)}", file=out)
            if tf.degenerate:
                print("degenerate: the non-excited graph is not connected", file=out)
        return EXIT_OK

    if args.command == "check":
        if is_degenerate(non_excited_graph(circuit)):
            print("degenerate", file=out)
            return EXIT_DEGENERATE
        print("connected", file=out)
        return EXIT_OK

    if args.command == "verify":
        result = verify(circuit, args.freqs or log_frequencies())
        for c in result.checks:
            if c.error is None:
                print(f"w={c.omega:.6g} skipped ({c.skipped})", file=out)
            else:
                print(f"w={c.omega:.6g} rel_err={c.error:.3e}", file=out)
        if not result.compared:
            print("no comparable frequencies", file=out)
            return EXIT_MISMATCH
        print(f"max relative error: {result.max_error:.3e}", file=out)
        if result.passed:
            print("PASS", file=out)
            return EXIT_OK
        print(f"FAIL (tolerance {result.tolerance:.0e})", file=out)
        return EXIT_MISMATCH

    raise UsageError(f"unknown command {args.command!r}")  # pragma: no cover


def main() -> None:
    sys.exit(run())
