"""Command-line interface: ``cubeforcing <command> ...``.

Exit codes: 0 success, 1 verification failure, 2 usage or input error,
3 cap exceeded.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import gf
from .certificate import build_A, build_B, build_ones, verify_certificate
from .fileformats import parse_graph, parse_matching
from .forcing import (
    DEFAULT_MATCHING_CAP,
    EXHAUSTIVE_MAX_N,
    find_max_unique_pm,
    forcing_number,
    forcing_spectrum,
    hypercube_bound,
    max_unique_pm_order,
    seed_bound,
)
from .hypercube import support_matrix
from .matching import (
    DEFAULT_ENUM_CAP,
    DEFAULT_PERMANENT_CAP,
    CapExceededError,
    enumerate_pms,
    hypercube_graph,
    is_perfect_matching,
    pm_count_by_permanent,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3
KINDS = ("A", "Ainv", "B", "ones", "support")
FIELD_P = {"gf2": 2, "gf3": 3}


class UsageError(Exception):
    pass


def _construct(n: int, kind: str, field: str | None) -> gf.GFMatrix:
    if n < 1:
        raise UsageError(f"--n must be >= 1, got {n}")
    if kind in ("A", "Ainv", "B"):
        if field not in (None, "gf3"):
            raise UsageError(f"kind {kind} is defined over gf3 only")
        if kind == "B":
            if n < 2:
                raise UsageError("kind B needs --n >= 2")
            return build_B(n)
        a, a_inv = build_A(n)
        return a if kind == "A" else a_inv
    if kind == "ones":
        if field not in (None, "gf2"):
            raise UsageError("kind ones is defined over gf2 only")
        return build_ones(n)
    return support_matrix(n).as_matrix(FIELD_P[field or "gf2"])


def _load_graph(args):
    if args.graph is not None:
        try:
            return parse_graph(Path(args.graph).read_text())
        except (OSError, ValueError) as exc:
            raise UsageError(f"cannot read graph {args.graph}: {exc}") from None
    if args.hypercube is None:
        raise UsageError("give --hypercube N or --graph FILE")
    if args.hypercube < 1:
        raise UsageError(f"--hypercube must be >= 1, got {args.hypercube}")
    return hypercube_graph(args.hypercube)


def cmd_construct(args) -> int:
    sys.stdout.write(gf.dumps(_construct(args.n, args.kind, args.field)))
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.n < 2:
        raise UsageError(f"verify needs --n >= 2, got {args.n}")
    report = verify_certificate(args.n)
    sys.stdout.write(report.to_text(timings=not args.no_timings))
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_rank(args) -> int:
    if args.matrix is not None:
        try:
            m = gf.loads(Path(args.matrix).read_text())
        except (OSError, ValueError) as exc:
            raise UsageError(f"cannot read matrix {args.matrix}: {exc}") from None
    elif args.n is not None and args.kind is not None:
        m = _construct(args.n, args.kind, args.field)
    else:
        raise UsageError("give --matrix FILE or both --n and --kind")
    print(gf.rank(m))
    return EXIT_OK


def cmd_forcing(args) -> int:
    g = _load_graph(args)
    if args.matching is None:
        raise UsageError("--matching FILE is required")
    try:
        m = parse_matching(Path(args.matching).read_text(), g)
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot read matching {args.matching}: {exc}") from None
    if not is_perfect_matching(g, m):
        raise UsageError(f"{args.matching} is not a perfect matching of the graph")
    lower, source = seed_bound(g)
    cap = args.cap if args.cap is not None else DEFAULT_MATCHING_CAP
    print(forcing_number(g, m, lower, source=source, cap=cap).line())
    return EXIT_OK


def cmd_spectrum(args) -> int:
    if args.hypercube is not None:
        max_n = args.cap if args.cap is not None else EXHAUSTIVE_MAX_N
        if args.hypercube > max_n:
            raise CapExceededError(f"spectrum of Q_{args.hypercube} exceeds the dimension cap {max_n} (raise --cap)")
        enum_cap = DEFAULT_ENUM_CAP
    else:
        enum_cap = args.cap if args.cap is not None else DEFAULT_ENUM_CAP
    g = _load_graph(args)
    spectrum = forcing_spectrum(g, jobs=args.jobs, enum_cap=enum_cap)
    print(" ".join(str(f) for f in sorted(spectrum)))
    return EXIT_OK


def cmd_maxunique(args) -> int:
    n = args.hypercube
    if n is None or n < 1:
        raise UsageError("give --hypercube N with N >= 1")
    if args.mode == "bounded":
        if n < 2:
            raise UsageError("bounded mode needs --hypercube >= 2")
        print(max_unique_pm_order(n, "bounded"))
        return EXIT_OK
    max_n = args.cap if args.cap is not None else EXHAUSTIVE_MAX_N
    if n > max_n:
        raise CapExceededError(f"exhaustive sweep of Q_{n} exceeds the dimension cap {max_n} (raise --cap)")
    order, witness = find_max_unique_pm(n, max_n=max_n)
    print(order)
    print(" ".join(witness))
    return EXIT_OK


def cmd_bound(args) -> int:
    n = args.hypercube
    if n is None or n < 2:
        raise UsageError("bound needs --hypercube N with N >= 2")
    print(hypercube_bound(n))
    return EXIT_OK


def cmd_count_pms(args) -> int:
    g = _load_graph(args)
    if args.method == "permanent":
        print(pm_count_by_permanent(g, args.cap if args.cap is not None else DEFAULT_PERMANENT_CAP))
    else:
        print(enumerate_pms(g, cap=args.cap if args.cap is not None else DEFAULT_ENUM_CAP))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cubeforcing",
        description="Forcing numbers of hypercube perfect matchings: certificates and exhaustive checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def graph_args(p):
        src = p.add_mutually_exclusive_group()
        src.add_argument("--hypercube", type=int, metavar="N", help="use Q_N")
        src.add_argument("--graph", metavar="FILE", help="graph file ('graph' or 'hypercube' format)")

    p = sub.add_parser("construct", help="print A, Ainv, B, ones or support for dimension N")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--kind", choices=KINDS, required=True)
    p.add_argument("--field", choices=sorted(FIELD_P), help="field for kind=support (default gf2)")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="run the four certificate checks for Q_N")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--no-timings", action="store_true", help="print 0 in the millis column")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("rank", help="rank of a matrix file or a constructed matrix")
    p.add_argument("--matrix", metavar="FILE")
    p.add_argument("--n", type=int)
    p.add_argument("--kind", choices=KINDS)
    p.add_argument("--field", choices=sorted(FIELD_P))
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("forcing", help="minimum forcing set of a perfect matching")
    graph_args(p)
    p.add_argument("--matching", metavar="FILE")
    p.add_argument("--cap", type=int, help=f"max matching size (default {DEFAULT_MATCHING_CAP})")
    p.set_defaults(func=cmd_forcing)

    p = sub.add_parser("spectrum", help="sorted set of forcing numbers over all perfect matchings")
    graph_args(p)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument(
        "--cap", type=int,
        help=f"max hypercube dimension (default {EXHAUSTIVE_MAX_N}) or, with --graph, max vertices (default {DEFAULT_ENUM_CAP})",
    )
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("maxunique", help="largest induced subgraph of Q_N with a unique perfect matching")
    p.add_argument("--hypercube", type=int, metavar="N")
    p.add_argument("--mode", choices=("exhaustive", "bounded"), default="exhaustive")
    p.add_argument("--cap", type=int, help=f"max dimension for the exhaustive sweep (default {EXHAUSTIVE_MAX_N})")
    p.set_defaults(func=cmd_maxunique)

    p = sub.add_parser("bound", help="rank lower bound N - rank(B_N) on forcing numbers of Q_N")
    p.add_argument("--hypercube", type=int, metavar="N")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("count-pms", help="number of perfect matchings")
    graph_args(p)
    p.add_argument("--method", choices=("enumerate", "permanent"), default="enumerate")
    p.add_argument("--cap", type=int, help="vertex cap (enumerate) or part-size cap (permanent)")
    p.set_defaults(func=cmd_count_pms)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
