"""``qsearch`` command line entry point.

Exit codes: 0 success, 1 usage error, 2 marked-spec or argument error,
3 internal invariant violation.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import experiments as ex
from .hybrid import PolicyError
from .oracle import MarkedSpecError, parse_marked_spec
from .state import CapacityError, InvariantError

EXIT_OK, EXIT_USAGE, EXIT_SPEC, EXIT_INTERNAL = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _u64(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qsearch", description="Simulate and predict multi-match quantum search.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("table1", help="max/min/avg single-pass success for n = 2..n_max")
    p.add_argument("--n-max", type=int, default=6)
    p.add_argument("--simulate", action="store_true", help="add statevector-simulated columns")
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("sweep", help="success curves against M/N as CSV")
    p.add_argument("--figure", type=int, choices=ex.FIGURES, required=True)
    p.add_argument("--points", type=int, default=100)
    p.add_argument("--out", required=True)

    p = sub.add_parser("simulate", help="seeded prepare-measure-verify shots")
    p.add_argument("--algorithm", choices=ex.ALGORITHMS, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--marked", required=True)
    p.add_argument("--q", type=int)
    p.add_argument("--seed", type=_u64, required=True)
    p.add_argument("--shots", type=int, required=True)
    p.add_argument("--json", dest="json_path")

    p = sub.add_parser("hybrid", help="benchmark the hybrid search engine")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--marked", required=True)
    p.add_argument("--known-m", action="store_true")
    p.add_argument("--seed", type=_u64, required=True)
    p.add_argument("--shots", type=int, required=True)

    p = sub.add_parser("predict", help="closed-form success probability")
    p.add_argument("--model", choices=ex.MODELS, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int)
    p.add_argument("--q", type=int)
    return parser


def _dump(obj, path: str | None = None) -> None:
    text = json.dumps(obj, indent=2)
    if path:
        with open(path, "w") as handle:
            handle.write(text + "\n")
    print(text)


def _run(args) -> int:
    if args.command == "table1":
        rows = ex.table1(args.n_max, simulate=args.simulate)
        if args.format == "json":
            _dump(rows)
        else:
            ex.write_csv(None, list(rows[0]), [list(r.values()) for r in rows], stream=sys.stdout)
        return EXIT_OK

    if args.command == "sweep":
        columns, rows = ex.sweep(args.figure, args.points)
        ex.write_csv(args.out, columns, rows)
        return EXIT_OK

    if args.command == "simulate":
        spec = parse_marked_spec(args.marked, args.n)
        _dump(ex.simulate(args.algorithm, spec, args.seed, args.shots, q=args.q), args.json_path)
        return EXIT_OK

    if args.command == "hybrid":
        spec = parse_marked_spec(args.marked, args.n)
        _dump(ex.hybrid_bench(spec, args.seed, args.shots, known_m=args.known_m))
        return EXIT_OK

    _dump(ex.predict(args.model, args.n, args.m, args.q))
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _run(args)
    except InvariantError as exc:
        print(f"qsearch: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except OSError as exc:
        print(f"qsearch: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (MarkedSpecError, PolicyError, CapacityError, ValueError, IndexError) as exc:
        print(f"qsearch: {exc}", file=sys.stderr)
        return EXIT_SPEC


if __name__ == "__main__":
    sys.exit(main())
