"""Command-line front end: generate, solve, classify, estimate, reduce, bench.

All outputs are machine-readable (JSON on stdout, CSV for bench) and
deterministic given the flags. Exit codes: 2 usage, 3 missing file,
4 parse error, 5 precondition failure, 6 empty corpus.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import dominate
from .classify import classify
from .errors import FormatError, PreconditionError
from .instance import (
    Instance01,
    gen_bernoulli,
    gen_planted_clique,
    gen_hardness_reduction,
    parse_instance,
    parse_tour,
    serialize_instance,
)

EXIT_USAGE = 2
EXIT_MISSING_FILE = 3
EXIT_PARSE = 4
EXIT_PRECONDITION = 5
EXIT_EMPTY_CORPUS = 6

DEFAULT_MAX_N = 100_000

BENCH_HEADER = [
    "schema",
    "instance",
    "n",
    "d_num",
    "d_den",
    "kind",
    "tour_weight",
    "dn",
    "certified_ratio",
    "certified_source",
    "empirical_estimate",
    "empirical_halfwidth",
    "samples",
    "ms_classify",
    "ms_solve",
    "ms_estimate",
]


def _parse_eps(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"cannot parse eps {text!r} as a fraction")
    if not 0 < value < 1:
        raise argparse.ArgumentTypeError(f"eps must lie in (0, 1), got {text}")
    return value


def _load_instance(path: str, max_n: int) -> Instance01:
    text = Path(path).read_text()
    inst = parse_instance(text)
    if inst.n > max_n:
        raise PreconditionError(
            "size-cap", f"instance has n={inst.n} above the cap {max_n}"
        )
    return inst


def _emit(payload: dict) -> None:
    sys.stdout.write(json.dumps(payload) + "\n")


def _cmd_gen(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    if args.n < 3:
        parser.error(f"--n must be at least 3, got {args.n}")
    if args.model == "bernoulli":
        if args.p is None:
            parser.error("--model bernoulli requires --p")
        if args.r is not None:
            parser.error("--model bernoulli conflicts with --r")
        inst = gen_bernoulli(args.n, args.p, args.seed)
    else:
        if args.r is None:
            parser.error("--model clique requires --r")
        if args.p is not None:
            parser.error("--model clique conflicts with --p")
        inst = gen_planted_clique(args.n, args.r)
    Path(args.output).write_text(serialize_instance(inst))
    return 0


def _cmd_solve(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    inst = _load_instance(args.input, args.max_n)
    report = dominate.solve(inst, float(args.eps))
    payload = report.to_json_dict()
    payload["eps"] = str(args.eps)
    _emit(payload)
    return 0


def _cmd_classify(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    inst = _load_instance(args.input, args.max_n)
    cls = classify(inst, float(args.eps))
    _emit(
        {
            "schema": 1,
            "n": inst.n,
            "d_num": cls.d.numerator,
            "d_den": cls.d.denominator,
            "kind": cls.kind,
            "eps": str(args.eps),
            "r": cls.r,
            "min_matching_weight": cls.min_matching_weight,
            "witness": cls.witness,
        }
    )
    return 0


def _cmd_estimate(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    if args.exact and args.samples is not None:
        parser.error("--exact conflicts with --samples")
    if not args.exact and args.samples is None:
        parser.error("pass either --exact or --samples K")
    inst = _load_instance(args.input, args.max_n)
    tour = parse_tour(Path(args.tour).read_text())
    if tour.n != inst.n:
        raise PreconditionError(
            "tour-size", f"tour on {tour.n} vertices, instance on {inst.n}"
        )
    payload: dict = {
        "schema": 1,
        "n": inst.n,
        "tour_weight": inst.cycle_weight(tour),
    }
    if args.exact:
        if inst.n > dominate.ENUMERATION_LIMIT:
            raise PreconditionError(
                "enumeration-cap",
                f"n={inst.n} above the exact enumeration cap "
                f"{dominate.ENUMERATION_LIMIT}",
            )
        frac = dominate.domination_exact(inst, tour)
        payload.update(
            {
                "method": "exact",
                "estimate": float(frac),
                "estimate_num": frac.numerator,
                "estimate_den": frac.denominator,
                "halfwidth": 0.0,
                "samples": None,
                "seed": None,
            }
        )
    else:
        # worker count deliberately not echoed: output must not depend on it
        estimate, half = dominate.domination_mc(
            inst, tour, args.samples, args.seed, args.workers
        )
        payload.update(
            {
                "method": "mc",
                "estimate": estimate,
                "halfwidth": half,
                "samples": args.samples,
                "seed": args.seed,
            }
        )
    _emit(payload)
    return 0


def _cmd_reduce(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    graph = parse_instance(Path(args.graph).read_text())
    inst, embedded = gen_hardness_reduction(
        graph.n, graph.one_edges, float(args.eps), cap=args.cap
    )
    Path(args.output).write_text(serialize_instance(inst))
    _emit(
        {
            "schema": 1,
            "graph_n": graph.n,
            "n_prime": inst.n,
            "eps": str(args.eps),
            "embedded_vertices": [v + 1 for v in embedded],
            "output": args.output,
        }
    )
    return 0


def _cmd_bench(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    corpus = sorted(Path(args.corpus).glob("*.tsp01"))
    if not corpus:
        sys.stderr.write(json.dumps({"error": "empty-corpus", "dir": args.corpus}) + "\n")
        return EXIT_EMPTY_CORPUS
    rows = []
    for path in corpus:
        inst = _load_instance(str(path), args.max_n)
        t0 = time.perf_counter()
        cls = classify(inst, float(args.eps))
        t1 = time.perf_counter()
        report = dominate.solve(inst, float(args.eps))
        t2 = time.perf_counter()
        if inst.n <= args.exact_max:
            frac = dominate.domination_exact(inst, report.tour)
            estimate, half, samples = float(frac), 0.0, None
        else:
            estimate, half = dominate.domination_mc(
                inst, report.tour, args.samples, args.seed, args.workers
            )
            samples = args.samples
        t3 = time.perf_counter()
        ms = (
            (0, 0, 0)
            if args.no_timings
            else (
                round(1000 * (t1 - t0), 3),
                round(1000 * (t2 - t1), 3),
                round(1000 * (t3 - t2), 3),
            )
        )
        rows.append(
            [
                1,
                path.name,
                inst.n,
                cls.d.numerator,
                cls.d.denominator,
                cls.kind,
                report.tour_weight,
                repr(float(cls.d * inst.n)),
                "" if report.certified_ratio is None else repr(report.certified_ratio),
                report.certified_source,
                repr(estimate),
                repr(half),
                "" if samples is None else samples,
                ms[0],
                ms[1],
                ms[2],
            ]
        )
    with open(args.out, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(BENCH_HEADER)
        writer.writerows(rows)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tspdom",
        description="Tours with certified domination ratios for {0,1}-instances",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="generate an instance file")
    p_gen.add_argument("--model", choices=["bernoulli", "clique"], required=True)
    p_gen.add_argument("--n", type=int, required=True)
    p_gen.add_argument("--p", type=float, default=None, help="edge probability")
    p_gen.add_argument("--r", type=int, default=None, help="planted clique size")
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("-o", "--output", required=True)
    p_gen.set_defaults(func=_cmd_gen)

    p_solve = sub.add_parser("solve", help="classify, build a tour, certify")
    p_solve.add_argument("-i", "--input", required=True)
    p_solve.add_argument("--eps", type=_parse_eps, default=Fraction(1, 28))
    p_solve.add_argument("--json", action="store_true", help="accepted; output is JSON")
    p_solve.add_argument("--max-n", type=int, default=DEFAULT_MAX_N)
    p_solve.set_defaults(func=_cmd_solve)

    p_classify = sub.add_parser("classify", help="report the instance class")
    p_classify.add_argument("-i", "--input", required=True)
    p_classify.add_argument("--eps", type=_parse_eps, default=Fraction(1, 28))
    p_classify.add_argument("--max-n", type=int, default=DEFAULT_MAX_N)
    p_classify.set_defaults(func=_cmd_classify)

    p_est = sub.add_parser("estimate", help="empirical domination of a tour")
    p_est.add_argument("-i", "--input", required=True)
    p_est.add_argument("-t", "--tour", required=True)
    p_est.add_argument("--exact", action="store_true")
    p_est.add_argument("--samples", type=int, default=None)
    p_est.add_argument("--seed", type=int, default=0)
    p_est.add_argument("--workers", type=int, default=1)
    p_est.add_argument("--max-n", type=int, default=DEFAULT_MAX_N)
    p_est.set_defaults(func=_cmd_estimate)

    p_red = sub.add_parser("reduce", help="embed a Hamilton-path question")
    p_red.add_argument("-g", "--graph", required=True, help="graph in tsp01 format")
    p_red.add_argument("--eps", type=_parse_eps, default=Fraction(1, 4))
    p_red.add_argument("-o", "--output", required=True)
    p_red.add_argument("--cap", type=int, default=10**6)
    p_red.set_defaults(func=_cmd_reduce)

    p_bench = sub.add_parser("bench", help="solve and estimate over a corpus")
    p_bench.add_argument("--corpus", required=True)
    p_bench.add_argument("--out", required=True)
    p_bench.add_argument("--eps", type=_parse_eps, default=Fraction(1, 28))
    p_bench.add_argument("--exact-max", type=int, default=11)
    p_bench.add_argument("--samples", type=int, default=10_000)
    p_bench.add_argument("--seed", type=int, default=0)
    p_bench.add_argument("--workers", type=int, default=1)
    p_bench.add_argument("--max-n", type=int, default=DEFAULT_MAX_N)
    p_bench.add_argument("--no-timings", action="store_true",
                         help="write zero wall times for reproducible output")
    p_bench.set_defaults(func=_cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, parser)
    except FileNotFoundError as exc:
        sys.stderr.write(json.dumps({"error": "missing-file", "detail": str(exc)}) + "\n")
        return EXIT_MISSING_FILE
    except FormatError as exc:
        sys.stderr.write(json.dumps({"error": "parse", "detail": str(exc)}) + "\n")
        return EXIT_PARSE
    except PreconditionError as exc:
        sys.stderr.write(
            json.dumps({"error": "precondition", "check": exc.check, "detail": exc.detail})
            + "\n"
        )
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
