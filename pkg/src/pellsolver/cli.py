"""
Command-line interface: solve, family, scan and bench.

Exit codes: 0 success, 1 mathematical failure or mismatch, 2 usage error.
Data records go to stdout; logs go to stderr.
"""
import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence

from .config import SolverConfig, load_config
from .errors import ConditionViolated, NotRepresentable, PellError, SquareTarget, Unclassifiable, UsageError
from .form_reduction import reduce_to_distinctive, solve_from_representation
from .models import FamilyMember, FormClass, Parity, PellSolution
from .negpell3 import shift_minus3, solve_minus3, vertical_minus3
from .relations import (
    generate,
    identity_family,
    make_composite,
    make_family,
    vertical_4n1,
    vertical_8n3,
    vertical_8n7,
    vertical_composite,
)
from .scan_bench import (
    METHODS,
    bench,
    build_table,
    default_table_path,
    export_tsv,
    find_maxima,
    hits_table,
    maxima_summary,
    plot_maxima,
    save_report,
    solve_by_method,
    summary_table,
    write_table_jsonl,
)

logger = logging.getLogger(__name__)

FAMILY_KINDS = ("h4n1", "h8n3", "h8n7", "v4n1", "v8n3", "v8n7", "identity",
                "composite", "vcomposite", "minus3")
HORIZONTAL = {"h4n1": FormClass.I_EQUAL_SQUARES, "h8n3": FormClass.II_DOUBLE_SQUARES,
              "h8n7": FormClass.III_SUM_EQUALS_CROSS}
VERTICAL = {"v4n1": (FormClass.I_EQUAL_SQUARES, vertical_4n1, "g"),
            "v8n3": (FormClass.II_DOUBLE_SQUARES, vertical_8n3, "g1"),
            "v8n7": (FormClass.III_SUM_EQUALS_CROSS, vertical_8n7, "g1")}
IDENTITY_PARAMS = ("m", "g", "g1", "d", "r", "s", "T", "J", "n1", "K")


def parse_interval(text: str) -> range:
    """'LO..HI' as an inclusive range."""
    try:
        lo, hi = (int(part) for part in text.split(".."))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO..HI, got '{text}'")
    if hi < lo:
        raise argparse.ArgumentTypeError(f"empty interval '{text}'")
    return range(lo, hi + 1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pellsolver",
                                     description="Minimal solutions of y^2 - Ax^2 = 1 and y^2 - Ax^2 = -3")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    parser.add_argument("--config", type=Path, default=None, help="JSON configuration file")
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="solve for one A")
    solve.add_argument("A", type=int)
    solve.add_argument("--method", choices=METHODS, default="fast")
    solve.add_argument("--rhs", type=int, choices=(1, -3), default=1)
    solve.add_argument("--format", choices=("json", "tsv"), default="json")
    solve.add_argument("--transcript", action="store_true",
                       help="print the substitution transcript (seqdiff and repr)")

    family = sub.add_parser("family", help="generate a solution family")
    family.add_argument("kind", choices=FAMILY_KINDS)
    for name in ("a", "b", "l", "m", "g", "g1", "d", "p1", "p2", "S", "Q", "r", "s", "T", "J", "n1", "K"):
        family.add_argument(f"--{name}", type=int, default=None)
    family.add_argument("--id", dest="family_id", default=None, help="identity family, e.g. 4n1b")
    family.add_argument("--parity", choices=[p.value for p in Parity], default=Parity.EVEN.value)
    shifts = family.add_mutually_exclusive_group()
    shifts.add_argument("--i", dest="interval", type=parse_interval, default=None,
                        help="shift interval LO..HI (write --i=-3..3 for negative bounds)")
    shifts.add_argument("--shift", type=int, default=None)

    scan = sub.add_parser("scan", help="solution table over a range")
    scan.add_argument("lo", type=int)
    scan.add_argument("hi", type=int)
    scan.add_argument("--method", choices=METHODS, default="fast")
    scan.add_argument("--maxima", action="store_true", help="report local and absolute maxima")
    scan.add_argument("--prior-max", type=int, default=None,
                      help="largest x below LO; enables absolute maxima for LO > 2")
    scan.add_argument("--plot", type=Path, default=None, help="write a maxima plot to this file")
    scan.add_argument("--workers", type=int, default=None)
    scan.add_argument("--output", type=Path, default=None, help="JSON-lines table path")
    scan.add_argument("--tsv", type=Path, default=None, help="also export a TSV table")

    bench_parser = sub.add_parser("bench", help="standard versus fast benchmark")
    bench_parser.add_argument("lo", type=int)
    bench_parser.add_argument("hi", type=int)
    bench_parser.add_argument("--maxima", action="store_true")
    bench_parser.add_argument("--seqdiff", action="store_true", help="also count unclassifiable A")
    bench_parser.add_argument("--output", type=Path, default=None, help="JSON report path")
    return parser


def _emit(record: Dict[str, Any]) -> None:
    print(json.dumps(record, separators=(',', ':')))


def _print_solution(solution: PellSolution, fmt: str) -> None:
    if not solution.verify():
        raise ConditionViolated(f"refusing to print unverified solution for A={solution.A}")
    record = solution.to_record()
    if fmt == "tsv":
        print("\t".join(str(value) for value in record.values()))
    else:
        _emit(record)


def cmd_solve(args: argparse.Namespace, config: SolverConfig) -> int:
    if args.A < 2:
        raise UsageError(f"A must be at least 2, got {args.A}")
    if args.rhs == -3:
        solution = solve_minus3(args.A, config)
        if solution is None:
            print(f"error: y^2 - {args.A}x^2 = -3 has no solution", file=sys.stderr)
            return 1
        _print_solution(solution, args.format)
        return 0

    if args.transcript and args.method in ("seqdiff", "repr"):
        try:
            if args.method == "seqdiff":
                result = reduce_to_distinctive(args.A, config)
            else:
                result = solve_from_representation(args.A, config=config)
        except (Unclassifiable, NotRepresentable) as e:
            logger.info(f"{e}; using the fast path")
        else:
            for line in result.transcript():
                print(line)
            _print_solution(result.solution, args.format)
            return 0

    _print_solution(solve_by_method(args.A, args.method, config), args.format)
    return 0


def _require(args: argparse.Namespace, *names: str) -> List[int]:
    missing = [name for name in names if getattr(args, name) is None]
    if missing:
        raise UsageError(f"family {args.kind} needs --{', --'.join(missing)}")
    return [getattr(args, name) for name in names]


def _emit_members(members: Iterable[FamilyMember]) -> int:
    count = 0
    for member in members:
        if not member.verified:
            raise ConditionViolated(f"member i={member.i} of {member.family_id} failed verification")
        _emit(member.to_dict())
        count += 1
    return count


def cmd_family(args: argparse.Namespace, config: SolverConfig) -> int:
    if args.interval is not None:
        shifts: Sequence[int] = args.interval
    else:
        shifts = [args.shift if args.shift is not None else 0]
    kind = args.kind

    if kind in HORIZONTAL:
        a, b, l, m = _require(args, "a", "b", "l", "m")
        family = make_family(HORIZONTAL[kind], a, b, l, m, family_id=kind)
    elif kind in VERTICAL:
        cls, vertical, g_name = VERTICAL[kind]
        g, d, l, m = _require(args, g_name, "d", "l", "m")
        a0, b0 = vertical(g, d, l, m)
        family = make_family(cls, a0, b0, l, m, family_id=kind)
    elif kind == "identity":
        if not args.family_id:
            raise UsageError("family identity needs --id")
        params = {name: getattr(args, name) for name in IDENTITY_PARAMS if getattr(args, name) is not None}
        family = identity_family(args.family_id, **params)
    elif kind == "composite":
        p1, p2, S, Q = _require(args, "p1", "p2", "S", "Q")
        family = make_composite(Parity(args.parity), p1, p2, S, Q, family_id=kind)
    elif kind == "vcomposite":
        l, m, Q, S = _require(args, "l", "m", "Q", "S")
        parity = Parity(args.parity)
        p01, p02 = vertical_composite(l, m, Q, S, parity)
        family = make_composite(parity, p01, p02, S, Q, family_id=kind)
    else:
        g, d, l, m = _require(args, "g", "d", "l", "m")
        a0, b0 = vertical_minus3(g, d, l, m)
        members = []
        for i in shifts:
            try:
                members.append(shift_minus3(a0, b0, l, m, i, family_id=kind))
            except SquareTarget as e:
                logger.warning(f"minus3 family: skipped: {e}")
        _emit_members(members)
        return 0

    _emit_members(generate(family, shifts))
    return 0


def cmd_scan(args: argparse.Namespace, config: SolverConfig) -> int:
    if args.workers is not None:
        config.workers = args.workers
    records = list(build_table(args.lo, args.hi, args.method, config))
    output = args.output or default_table_path(config, args.lo, args.hi)
    write_table_jsonl(records, output)
    if args.tsv:
        export_tsv(records, args.tsv)

    if args.maxima or args.plot:
        maxima = find_maxima(records, strict=False, prior_max=args.prior_max)
        if args.maxima:
            for record in maxima:
                _emit(record.to_dict())
            _emit({'summary': maxima_summary(maxima)})
        if args.plot:
            plot_maxima(records, maxima, args.plot)
    print(f"{len(records)} records written to {output}", file=sys.stderr)
    return 0


def cmd_bench(args: argparse.Namespace, config: SolverConfig) -> int:
    report = bench(args.lo, args.hi, config, track_maxima=args.maxima, with_seqdiff=args.seqdiff)
    output = args.output or config.output_dir / "reports" / f"bench_{args.lo}_{args.hi}.json"
    save_report(report, output)
    print(summary_table(report).to_string())
    print()
    print(hits_table(report).to_string())
    print(f"\nspeedup {report.speedup:.3f}  step ratio {report.step_ratio:.3f}  mismatches {report.mismatches}")
    if report.prime_4n1_step_ratio is not None:
        print(f"step ratio over EQUAL_R primes 4N+1: {report.prime_4n1_step_ratio:.3f}")
    if report.unclassifiable is not None:
        print(f"unclassifiable by sequential differences: {report.unclassifiable}")
    if report.over_budget:
        print(f"reductions over budget: {report.over_budget}")
    return 0


COMMANDS = {
    "solve": cmd_solve,
    "family": cmd_family,
    "scan": cmd_scan,
    "bench": cmd_bench,
}


def dispatch(args: argparse.Namespace, config: SolverConfig) -> int:
    """Run the chosen command and map errors to exit codes."""
    try:
        return COMMANDS[args.command](args, config)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except PellError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


def run(argv: Optional[Sequence[str]] = None,
        configure: Optional[Callable[[bool, Optional[Path]], Any]] = None) -> int:
    """Parse argv, load the config and dispatch.

    configure(verbose, log_dir) installs logging handlers; without it the
    handlers are left alone.
    """
    args = build_parser().parse_args(argv)
    try:
        config = load_config(args.config)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    if configure is not None:
        configure(args.verbose, config.log_dir if config.log_to_file else None)
    logger.info(f"Starting pellsolver {args.command}")
    return dispatch(args, config)
