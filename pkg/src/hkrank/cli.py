"""Command-line entry point.

Exit codes: 0 success, 1 usage error, 2 refusal (a safety bound was exceeded),
3 internal error. Results go to stdout (or ``--out``); diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Sequence

from . import __version__
from .characterization import Bounds, enumerate_problem_i, enumerate_problem_ii
from .gf2 import Gf2Matrix, Gf2Vector, RefusalError, brute_force_solve, parse_dump, ranks, solve
from .parity import audit_structure_facts, even_run_profile, odd_positions, parity_row, pascal_mod2
from .systems import ProblemIIInstance, ProblemIInstance, build_table1, build_table2, system_dump
from .validation import (
    DEFAULT_CAP,
    audit_all,
    cross_validate_i,
    cross_validate_ii,
    default_threads,
    sweep_i,
    sweep_ii,
    validate_all_i,
    validate_all_ii,
)

log = logging.getLogger("hkrank")

EXIT_USAGE = 1
EXIT_REFUSAL = 2
EXIT_INTERNAL = 3

ROW_LIMIT = 1 << 16
ODD_INDEX_LIMIT = 1 << 14
PASCAL_ROWS_LIMIT = 4096
AUDIT_LIMIT = 1 << 14
SWEEP_AXIS_LIMIT = 256

DEFAULT_KMAX = 16
DEFAULT_LMAX = 16
DEFAULT_QMAX = 8
DEFAULT_MMAX = 256


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(f"{self.prog}: {message}")


def _nonneg(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0: {value}")
    return value


def _pos(text: str) -> int:
    value = _nonneg(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: {value}")
    return value


def _limit(name: str, value: int, limit: int) -> None:
    if value > limit:
        raise RefusalError(f"{name}={value} exceeds limit {limit}")


def _json(obj: Any) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _csv(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


# ---------------------------------------------------------------------------
# verbs; each returns the full output text


def cmd_parity(args: argparse.Namespace) -> str:
    _limit("M", args.M, ROW_LIMIT)
    row = "".join(map(str, parity_row(args.M)))
    if args.format == "json":
        return _json({"M": args.M, "row": row})
    return row + "\n"


def cmd_odd_positions(args: argparse.Namespace) -> str:
    _limit("M", args.M, ODD_INDEX_LIMIT)
    return _json(odd_positions(args.M).to_dict())


def cmd_runs(args: argparse.Namespace) -> str:
    _limit("M", args.M, ROW_LIMIT)
    return _json(even_run_profile(args.M).to_dict())


def cmd_audit(args: argparse.Namespace) -> str:
    if args.M is not None:
        _limit("M", args.M, ROW_LIMIT)
        return _json(audit_structure_facts(args.M).to_dict())
    _limit("mmax", args.mmax, AUDIT_LIMIT)
    return _json(audit_all(args.mmax, cap=args.cap).to_dict())


def cmd_pascal(args: argparse.Namespace) -> str:
    _limit("rows", args.rows, PASCAL_ROWS_LIMIT)
    return pascal_mod2(args.rows, args.format)


def _system_i(args: argparse.Namespace) -> tuple[Gf2Matrix, Gf2Vector]:
    _limit("k", args.k, SWEEP_AXIS_LIMIT)
    _limit("l", args.l, SWEEP_AXIS_LIMIT)
    return build_table1(ProblemIInstance(args.M, args.j, args.k, args.l))


def _system_ii(args: argparse.Namespace) -> tuple[Gf2Matrix, Gf2Vector]:
    for name in ("k", "l", "q"):
        _limit(name, getattr(args, name), SWEEP_AXIS_LIMIT)
    return build_table2(ProblemIIInstance(args.alpha, args.delta, args.j, args.k, args.l, args.q))


def _render_system(a: Gf2Matrix, b: Gf2Vector, dump: bool) -> str:
    if dump:
        return system_dump(a, b)
    return _json({"rows": a.nrows, "cols": a.ncols, "A": a.dump().splitlines()[1:], "b": b.to_string()})


def cmd_build_i(args: argparse.Namespace) -> str:
    return _render_system(*_system_i(args), args.dump)


def cmd_build_ii(args: argparse.Namespace) -> str:
    return _render_system(*_system_ii(args), args.dump)


def _read_dump(path: str) -> tuple[Gf2Matrix, Gf2Vector]:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read dump: {exc}") from None
    try:
        a, b = parse_dump(text)
    except ValueError as exc:
        raise UsageError(f"bad dump: {exc}") from None
    if b is None:
        raise UsageError("dump has no right-hand-side line")
    return a, b


def _solve_output(a: Gf2Matrix, b: Gf2Vector, args: argparse.Namespace) -> str:
    x = brute_force_solve(a, b) if args.brute_force else solve(a, b)
    rank_a, rank_aug = ranks(a, b)
    result = {
        "solvable": x is not None,
        "x": x.to_list() if x is not None else None,
        "rank": rank_a,
        "rank_aug": rank_aug,
    }
    if args.format == "text":
        xs = x.to_string() if x is not None else "-"
        return f"solvable={str(result['solvable']).lower()} x={xs} rank={rank_a} rank_aug={rank_aug}\n"
    return _json(result)


def _solve_cmd(positional: Sequence[str], builder: Callable[[argparse.Namespace], tuple[Gf2Matrix, Gf2Vector]]):
    def run(args: argparse.Namespace) -> str:
        if args.from_dump is not None:
            if args.params:
                raise UsageError("give either instance parameters or --from-dump, not both")
            a, b = _read_dump(args.from_dump)
        else:
            if len(args.params) != len(positional):
                raise UsageError(f"expected parameters {' '.join(positional)}")
            try:
                values = [_nonneg(p) for p in args.params]
            except argparse.ArgumentTypeError as exc:
                raise UsageError(str(exc)) from None
            ns = argparse.Namespace(**dict(zip(positional, values)))
            try:
                a, b = builder(ns)
            except ValueError as exc:
                raise UsageError(str(exc)) from None
        return _solve_output(a, b, args)

    return run


def cmd_characterize_i(args: argparse.Namespace) -> str:
    _limit("kmax", args.kmax, SWEEP_AXIS_LIMIT)
    _limit("lmax", args.lmax, SWEEP_AXIS_LIMIT)
    cands = enumerate_problem_i(args.M, args.j, Bounds(args.kmax, args.lmax))
    return _json([c.to_dict() for c in cands])


def cmd_characterize_ii(args: argparse.Namespace) -> str:
    for name in ("kmax", "lmax", "qmax"):
        _limit(name, getattr(args, name), SWEEP_AXIS_LIMIT)
    cands = enumerate_problem_ii(args.alpha, args.delta, args.j, Bounds(args.kmax, args.lmax, args.qmax))
    return _json([c.to_dict() for c in cands])


GRID_HEADER = ("problem", "M", "alpha", "delta", "j", "k", "l", "q", "oracle", "restated", "enumerated", "rank", "rank_aug", "subcases")


def _grid_rows(grid) -> list[list[Any]]:
    inst = grid.instance
    return [
        [
            grid.problem, inst["M"], inst.get("alpha", ""), inst.get("delta", ""), inst["j"],
            p.k, p.l, "" if p.q is None else p.q,
            int(p.oracle), int(p.restated), int(p.enumerated), p.rank, p.rank_aug, ";".join(p.subcases),
        ]
        for p in grid.points
    ]


def cmd_sweep_i(args: argparse.Namespace) -> str:
    _limit("kmax", args.kmax, SWEEP_AXIS_LIMIT)
    _limit("lmax", args.lmax, SWEEP_AXIS_LIMIT)
    grid = sweep_i(args.M, args.j, args.kmax, args.lmax)
    if args.format == "csv":
        return _csv(GRID_HEADER, _grid_rows(grid))
    return _json(
        {
            "problem": grid.problem,
            "instance": grid.instance,
            "bounds": grid.axes,
            "points": [p.to_dict() for p in grid.points],
        }
    )


def cmd_validate_i(args: argparse.Namespace) -> str:
    _limit("kmax", args.kmax, SWEEP_AXIS_LIMIT)
    _limit("lmax", args.lmax, SWEEP_AXIS_LIMIT)
    if args.mmax is not None:
        if args.params:
            raise UsageError("give either M j or --mmax, not both")
        _limit("mmax", args.mmax, 1024)
        if args.format == "csv":
            rows = []
            for m in range(1, args.mmax + 1):
                for j in range(m + 1):
                    rows.extend(_grid_rows(sweep_i(m, j, args.kmax, args.lmax)))
            return _csv(GRID_HEADER, rows)
        return _json(validate_all_i(args.mmax, args.kmax, args.lmax, threads=args.threads, cap=args.cap))
    m, j = _params(args.params, ("M", "j"), positive=(True, False))
    if args.format == "csv":
        return _csv(GRID_HEADER, _grid_rows(sweep_i(m, j, args.kmax, args.lmax)))
    return _json(cross_validate_i(m, j, args.kmax, args.lmax, cap=args.cap))


def cmd_validate_ii(args: argparse.Namespace) -> str:
    for name in ("kmax", "lmax", "qmax"):
        _limit(name, getattr(args, name), SWEEP_AXIS_LIMIT)
    grid_mode = any(v is not None for v in (args.amax, args.dmax, args.jmax))
    if grid_mode:
        if args.params:
            raise UsageError("give either alpha delta j or --amax/--dmax/--jmax, not both")
        if args.amax is None or args.dmax is None or args.jmax is None:
            raise UsageError("--amax, --dmax and --jmax go together")
        for name in ("amax", "dmax", "jmax"):
            _limit(name, getattr(args, name), 256)
        if args.format == "csv":
            rows = []
            for a in range(1, args.amax + 1):
                for d in range(1, args.dmax + 1):
                    for j in range(args.jmax + 1):
                        rows.extend(_grid_rows(sweep_ii(a, d, j, args.kmax, args.lmax, args.qmax)))
            return _csv(GRID_HEADER, rows)
        return _json(
            validate_all_ii(
                args.amax, args.dmax, args.jmax, args.kmax, args.lmax, args.qmax,
                threads=args.threads, cap=args.cap,
            )
        )
    alpha, delta, j = _params(args.params, ("alpha", "delta", "j"), positive=(True, True, False))
    if args.format == "csv":
        return _csv(GRID_HEADER, _grid_rows(sweep_ii(alpha, delta, j, args.kmax, args.lmax, args.qmax)))
    return _json(cross_validate_ii(alpha, delta, j, args.kmax, args.lmax, args.qmax, cap=args.cap))


def _params(raw: Sequence[str], names: Sequence[str], positive: Sequence[bool]) -> list[int]:
    if len(raw) != len(names):
        raise UsageError(f"expected parameters {' '.join(names)}")
    try:
        return [(_pos if pos else _nonneg)(text) for text, pos in zip(raw, positive)]
    except argparse.ArgumentTypeError as exc:
        raise UsageError(str(exc)) from None


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hkrank", description="Binomial linear systems over GF(2).")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log diagnostics to stderr")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def verb(name: str, func: Callable[[argparse.Namespace], str], formats: Sequence[str], help: str):
        p = sub.add_parser(name, help=help)
        p.set_defaults(func=func)
        p.add_argument("--format", choices=formats, default=formats[0])
        p.add_argument("--out", metavar="FILE", help="write output here instead of stdout")
        return p

    def bounds(p: argparse.ArgumentParser, q: bool = False) -> None:
        p.add_argument("--kmax", type=_pos, default=DEFAULT_KMAX)
        p.add_argument("--lmax", type=_pos, default=DEFAULT_LMAX)
        if q:
            p.add_argument("--qmax", type=_pos, default=DEFAULT_QMAX)

    def sweep_opts(p: argparse.ArgumentParser) -> None:
        p.add_argument("--threads", type=_pos, default=None, help="worker processes (default: $HKRANK_THREADS or CPU count)")
        p.add_argument("--cap", type=_pos, default=DEFAULT_CAP, help="max listed discrepancies per kind")

    p = verb("parity", cmd_parity, ("text", "json"), "parity row of M as a 0/1 string")
    p.add_argument("M", type=_pos)
    p = verb("odd-positions", cmd_odd_positions, ("json",), "odd-entry positions and their index tuples")
    p.add_argument("M", type=_pos)
    p = verb("runs", cmd_runs, ("json",), "maximal parity runs of row M")
    p.add_argument("M", type=_pos)
    p = verb("audit", cmd_audit, ("json",), "audit the even-run structure facts")
    p.add_argument("M", type=_pos, nargs="?", default=None)
    p.add_argument("--mmax", type=_pos, default=DEFAULT_MMAX)
    p.add_argument("--cap", type=_pos, default=DEFAULT_CAP)
    p = verb("pascal-mod2", cmd_pascal, ("ascii", "pbm"), "Pascal's triangle mod 2")
    p.add_argument("--rows", type=_pos, required=True)

    p = verb("build-i", cmd_build_i, ("json",), "Problem I matrix and right-hand side")
    for name, kind in (("M", _pos), ("j", _nonneg), ("k", _pos), ("l", _pos)):
        p.add_argument(name, type=kind)
    p.add_argument("--dump", action="store_true", help="matrix dump format plus RHS line")
    p = verb("build-ii", cmd_build_ii, ("json",), "Problem II matrix and right-hand side")
    for name, kind in (("alpha", _pos), ("delta", _pos), ("j", _nonneg), ("k", _pos), ("l", _pos), ("q", _pos)):
        p.add_argument(name, type=kind)
    p.add_argument("--dump", action="store_true")

    for name, names, builder in (
        ("solve-i", ("M", "j", "k", "l"), _system_i),
        ("solve-ii", ("alpha", "delta", "j", "k", "l", "q"), _system_ii),
    ):
        p = verb(name, _solve_cmd(names, builder), ("json", "text"), f"solve one {name[6:].upper()} system")
        p.add_argument("params", nargs="*", metavar=" ".join(names))
        p.add_argument("--from-dump", metavar="FILE", help="read the system from a dump ('-' for stdin)")
        p.add_argument("--brute-force", action="store_true", help="use exhaustive search instead of elimination")

    p = verb("characterize-i", cmd_characterize_i, ("json",), "candidate (k, l) from the case analysis")
    p.add_argument("M", type=_pos)
    p.add_argument("j", type=_nonneg)
    bounds(p)
    p = verb("characterize-ii", cmd_characterize_ii, ("json",), "candidate (k, l, q) for Problem II")
    p.add_argument("alpha", type=_pos)
    p.add_argument("delta", type=_pos)
    p.add_argument("j", type=_nonneg)
    bounds(p, q=True)

    p = verb("sweep-i", cmd_sweep_i, ("json", "csv"), "verdict grid for one Problem I instance")
    p.add_argument("M", type=_pos)
    p.add_argument("j", type=_nonneg)
    bounds(p)

    p = verb("validate-i", cmd_validate_i, ("json", "csv"), "oracle vs characterization report, Problem I")
    p.add_argument("params", nargs="*", metavar="M j")
    p.add_argument("--mmax", type=_pos, default=None, help="validate every M <= mmax and j <= M")
    bounds(p)
    sweep_opts(p)
    p = verb("validate-ii", cmd_validate_ii, ("json", "csv"), "oracle vs characterization report, Problem II")
    p.add_argument("params", nargs="*", metavar="alpha delta j")
    p.add_argument("--amax", type=_pos, default=None)
    p.add_argument("--dmax", type=_pos, default=None)
    p.add_argument("--jmax", type=_nonneg, default=None)
    bounds(p, q=True)
    sweep_opts(p)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    if getattr(args, "threads", None) is None and hasattr(args, "threads"):
        args.threads = default_threads()
    try:
        text = args.func(args)
    except UsageError as exc:
        print(f"hkrank {args.verb}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RefusalError as exc:
        print(f"hkrank {args.verb}: refused: {exc}", file=sys.stderr)
        return EXIT_REFUSAL
    except Exception:
        log.exception("internal error")
        return EXIT_INTERNAL
    try:
        if args.out:
            Path(args.out).write_text(text, encoding="utf-8")
        else:
            sys.stdout.write(text)
    except OSError as exc:
        print(f"hkrank: cannot write output: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
