"""Oracle verdicts, parameter sweeps and agreement reports.

The oracle decides solvability by elimination (``rank(A) == rank([A|b])``).
The combinatorial predicates from :mod:`hkrank.characterization` are treated as
claims under test; disagreements are recorded, never raised.
"""

from __future__ import annotations

import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Sequence

from . import __version__
from .characterization import (
    Bounds,
    condition_double_star,
    condition_star,
    condition_star_closed_form,
    enumerate_problem_i,
    enumerate_problem_ii,
    restated_conditions_i,
)
from .gf2 import is_consistent, ranks
from .parity import audit_structure_facts, odd_positions, parity_row
from .systems import ProblemIInstance, ProblemIIInstance, build_table1, build_table2, table2_family

log = logging.getLogger(__name__)

DEFAULT_CAP = 100
THREADS_ENV = "HKRANK_THREADS"
CLASS_NAMES = ("both_yes", "both_no", "oracle_only", "paper_only")


def default_threads() -> int:
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            log.warning("ignoring non-integer %s=%r", THREADS_ENV, env)
    return os.cpu_count() or 1


def oracle_solvable_i(m: int, j: int, k: int, l: int) -> bool:  # noqa: E741
    return is_consistent(*build_table1(ProblemIInstance(m, j, k, l)))


def oracle_solvable_ii(alpha: int, delta: int, j: int, k: int, l: int, q: int) -> bool:  # noqa: E741
    return is_consistent(*build_table2(ProblemIIInstance(alpha, delta, j, k, l, q)))


@dataclass(frozen=True)
class GridPoint:
    k: int
    l: int  # noqa: E741
    q: int | None
    oracle: bool
    restated: bool
    enumerated: bool
    rank: int
    rank_aug: int
    rows: int
    cols: int
    subcases: tuple[str, ...] = ()

    def to_dict(self) -> dict[str, Any]:
        return {
            "k": self.k,
            "l": self.l,
            "q": self.q,
            "oracle": self.oracle,
            "restated": self.restated,
            "enumerated": self.enumerated,
            "subcases": list(self.subcases),
            "rank": self.rank,
            "rank_aug": self.rank_aug,
        }


@dataclass(frozen=True)
class VerdictGrid:
    problem: str
    instance: dict[str, int]
    axes: dict[str, int]
    points: tuple[GridPoint, ...]

    def __len__(self) -> int:
        return len(self.points)


def sweep_i(m: int, j: int, kmax: int, lmax: int) -> VerdictGrid:
    """Dense ``k <= kmax, l <= lmax`` grid of oracle, restated and enumerated verdicts."""
    bounds = Bounds(kmax, lmax)
    enumerated: dict[tuple[int, int], set[str]] = {}
    for cand in enumerate_problem_i(m, j, bounds):
        enumerated.setdefault((cand.k, cand.l), set()).add(cand.subcase)
    points = []
    for k in range(1, kmax + 1):
        for l in range(1, lmax + 1):  # noqa: E741
            a, b = build_table1(ProblemIInstance(m, j, k, l))
            rank_a, rank_aug = ranks(a, b)
            tags = enumerated.get((k, l), set())
            points.append(
                GridPoint(
                    k, l, None,
                    oracle=rank_a == rank_aug,
                    restated=restated_conditions_i(m, j, k, l),
                    enumerated=bool(tags),
                    rank=rank_a, rank_aug=rank_aug, rows=a.nrows, cols=a.ncols,
                    subcases=tuple(sorted(tags)),
                )
            )
    return VerdictGrid("I", {"M": m, "j": j}, {"kmax": kmax, "lmax": lmax}, tuple(points))


def sweep_ii(alpha: int, delta: int, j: int, kmax: int, lmax: int, qmax: int) -> VerdictGrid:
    m = alpha + delta
    bounds = Bounds(kmax, lmax, qmax)
    enumerated: dict[tuple[int, int, int], set[str]] = {}
    for cand in enumerate_problem_ii(alpha, delta, j, bounds):
        enumerated.setdefault((cand.k, cand.l, cand.q), set()).add(cand.subcase)
    points = []
    for k in range(1, kmax + 1):
        for l in range(1, lmax + 1):  # noqa: E741
            base = restated_conditions_i(m, j, k, l) and condition_star(alpha, delta, j, k, l)
            for q, (a, b) in enumerate(table2_family(alpha, delta, j, k, l, qmax), start=1):
                rank_a, rank_aug = ranks(a, b)
                tags = enumerated.get((k, l, q), set())
                points.append(
                    GridPoint(
                        k, l, q,
                        oracle=rank_a == rank_aug,
                        restated=base and condition_double_star(alpha, delta, j, k, l, q),
                        enumerated=bool(tags),
                        rank=rank_a, rank_aug=rank_aug, rows=a.nrows, cols=a.ncols,
                        subcases=tuple(sorted(tags)),
                    )
                )
    return VerdictGrid(
        "II",
        {"alpha": alpha, "delta": delta, "M": m, "j": j},
        {"kmax": kmax, "lmax": lmax, "qmax": qmax},
        tuple(points),
    )


def classify(oracle: bool, claim: bool) -> str:
    if oracle and claim:
        return "both_yes"
    if not oracle and not claim:
        return "both_no"
    return "oracle_only" if oracle else "paper_only"


def _class_counts(points: Iterable[GridPoint], attr: str) -> dict[str, int]:
    counts = dict.fromkeys(CLASS_NAMES, 0)
    for p in points:
        counts[classify(p.oracle, getattr(p, attr))] += 1
    return counts


def _kinds(p: GridPoint) -> list[str]:
    kinds = []
    if p.oracle != p.restated:
        kinds.append("restated:" + classify(p.oracle, p.restated))
    if p.oracle != p.enumerated:
        kinds.append("enumerated:" + classify(p.oracle, p.enumerated))
    return kinds


def _coords(p: GridPoint) -> tuple[int, int, int]:
    return (p.k, p.l, p.q or 0)


def _listing(tagged: list[tuple[GridPoint, list[str]]], cap: int) -> list[dict[str, Any]]:
    used: dict[str, int] = {}
    out = []
    for p, kinds in sorted(tagged, key=lambda item: _coords(item[0])):
        if not kinds or all(used.get(kind, 0) >= cap for kind in kinds):
            continue
        for kind in kinds:
            used[kind] = used.get(kind, 0) + 1
        entry = p.to_dict()
        entry["kinds"] = kinds
        out.append(entry)
    return out


def _discrepancies(points: Sequence[GridPoint], cap: int) -> list[dict[str, Any]]:
    """Every disagreeing point in (k, l, q) order; at most ``cap`` listed per kind."""
    return _listing([(p, _kinds(p)) for p in points], cap)


def _minimal_discrepancies(points: Sequence[GridPoint], cap: int) -> list[dict[str, Any]]:
    """Disagreeing points with no componentwise-smaller point of the same kind.

    ``kinds`` on each entry names only the kinds for which that point is minimal.
    """
    by_kind: dict[str, list[tuple[int, int, int]]] = {}
    for p in points:
        for kind in _kinds(p):
            by_kind.setdefault(kind, []).append(_coords(p))

    def dominated(c: tuple[int, int, int], kind: str) -> bool:
        return any(o != c and all(a <= b for a, b in zip(o, c)) for o in by_kind[kind])

    tagged = [(p, [kind for kind in _kinds(p) if not dominated(_coords(p), kind)]) for p in points]
    return _listing(tagged, cap)


def _discrepancy_counts(points: Iterable[GridPoint]) -> dict[str, int]:
    counts: dict[str, int] = {}
    for p in points:
        for kind in _kinds(p):
            counts[kind] = counts.get(kind, 0) + 1
    return dict(sorted(counts.items()))


def _readings(points: Iterable[GridPoint]) -> dict[str, int]:
    """Counts under three readings of "solves": consistent, unique solution, full row rank."""
    consistent = unique = full_row = 0
    for p in points:
        consistent += p.rank == p.rank_aug
        unique += p.rank == p.rank_aug == p.cols
        full_row += p.rank == p.rows
    return {"consistent": consistent, "unique_solution": unique, "full_row_rank": full_row}


def _report(grid: VerdictGrid, cap: int, extra: dict[str, Any] | None = None) -> dict[str, Any]:
    report: dict[str, Any] = {
        "instance": {"problem": grid.problem, **grid.instance, "version": __version__},
        "bounds": dict(grid.axes),
        "grid_size": len(grid),
        "classes": _class_counts(grid.points, "restated"),
        "enumerated_classes": _class_counts(grid.points, "enumerated"),
        "discrepancies": _minimal_discrepancies(grid.points, cap),
        "discrepancy_counts": _discrepancy_counts(grid.points),
        "all_discrepancies": _discrepancies(grid.points, cap),
        "readings": _readings(grid.points),
    }
    if extra:
        report.update(extra)
    report["audit"] = audit_structure_facts(grid.instance["M"]).to_dict()
    return report


def cross_validate_i(m: int, j: int, kmax: int, lmax: int, cap: int = DEFAULT_CAP) -> dict[str, Any]:
    return _report(sweep_i(m, j, kmax, lmax), cap)


def cross_validate_ii(
    alpha: int, delta: int, j: int, kmax: int, lmax: int, qmax: int, cap: int = DEFAULT_CAP
) -> dict[str, Any]:
    grid = sweep_ii(alpha, delta, j, kmax, lmax, qmax)
    agree = disagree = 0
    examples = []
    for k in range(1, kmax + 1):
        for l in range(1, lmax + 1):  # noqa: E741
            direct = condition_star(alpha, delta, j, k, l)
            closed = condition_star_closed_form(alpha, delta, j, k, l)
            if direct == closed:
                agree += 1
            else:
                disagree += 1
                if len(examples) < cap:
                    examples.append({"k": k, "l": l, "direct": direct, "closed_form": closed})
    extra = {"closed_form_star": {"agree": agree, "disagree": disagree, "disagreements": examples}}
    return _report(grid, cap, extra)


def _run_parallel(fn: Callable[..., Any], jobs: list[tuple], threads: int) -> list[Any]:
    if threads <= 1 or len(jobs) <= 1:
        return [fn(*job) for job in jobs]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        chunk = max(1, len(jobs) // (threads * 8))
        return list(pool.map(_star_call, [(fn, job) for job in jobs], chunksize=chunk))


def _star_call(item: tuple[Callable[..., Any], tuple]) -> Any:
    fn, job = item
    return fn(*job)


def _totals(reports: list[dict[str, Any]]) -> dict[str, Any]:
    classes = dict.fromkeys(CLASS_NAMES, 0)
    enum_classes = dict.fromkeys(CLASS_NAMES, 0)
    points = 0
    for rep in reports:
        points += rep["grid_size"]
        for name in CLASS_NAMES:
            classes[name] += rep["classes"][name]
            enum_classes[name] += rep["enumerated_classes"][name]
    totals: dict[str, Any] = {
        "instances": len(reports),
        "grid_points": points,
        "classes": classes,
        "enumerated_classes": enum_classes,
    }
    if reports and "closed_form_star" in reports[0]:
        totals["closed_form_star_disagree"] = sum(r["closed_form_star"]["disagree"] for r in reports)
    return totals


def validate_all_i(
    mmax: int, kmax: int, lmax: int, threads: int | None = None, cap: int = DEFAULT_CAP
) -> dict[str, Any]:
    """Cross-validate every ``1 <= M <= mmax``, ``0 <= j <= M``."""
    jobs = [(m, j, kmax, lmax, cap) for m in range(1, mmax + 1) for j in range(m + 1)]
    reports = _run_parallel(cross_validate_i, jobs, threads or default_threads())
    return {
        "problem": "I",
        "version": __version__,
        "bounds": {"mmax": mmax, "kmax": kmax, "lmax": lmax},
        "totals": _totals(reports),
        "reports": reports,
    }


def validate_all_ii(
    amax: int, dmax: int, jmax: int, kmax: int, lmax: int, qmax: int,
    threads: int | None = None, cap: int = DEFAULT_CAP,
) -> dict[str, Any]:
    """Cross-validate every ``alpha <= amax``, ``delta <= dmax``, ``0 <= j <= jmax``."""
    jobs = [
        (a, d, j, kmax, lmax, qmax, cap)
        for a in range(1, amax + 1)
        for d in range(1, dmax + 1)
        for j in range(jmax + 1)
    ]
    reports = _run_parallel(cross_validate_ii, jobs, threads or default_threads())
    return {
        "problem": "II",
        "version": __version__,
        "bounds": {"amax": amax, "dmax": dmax, "jmax": jmax, "kmax": kmax, "lmax": lmax, "qmax": qmax},
        "totals": _totals(reports),
        "reports": reports,
    }


@dataclass
class AuditSummary:
    mmax: int
    passes: dict[str, int] = field(default_factory=lambda: dict.fromkeys(("fact1", "fact2", "fact3", "odd_index"), 0))
    violations: dict[str, list[dict[str, Any]]] = field(
        default_factory=lambda: {"fact1": [], "fact2": [], "fact3": [], "odd_index": []}
    )
    violation_counts: dict[str, int] = field(default_factory=lambda: dict.fromkeys(("fact1", "fact2", "fact3", "odd_index"), 0))
    total_odd_positions: int = 0

    def to_dict(self) -> dict[str, Any]:
        return {
            "Mmax": self.mmax,
            "version": __version__,
            "passes": self.passes,
            "violation_counts": self.violation_counts,
            "violations": self.violations,
            "total_odd_positions": self.total_odd_positions,
        }


def audit_all(mmax: int, cap: int = DEFAULT_CAP) -> AuditSummary:
    """Structure-fact audit plus odd-index vs direct-scan check for every ``M <= mmax``."""
    if mmax < 1:
        raise ValueError("Mmax must be >= 1")
    summary = AuditSummary(mmax)

    def record(name: str, ok: bool, detail: dict[str, Any]) -> None:
        if ok:
            summary.passes[name] += 1
            return
        summary.violation_counts[name] += 1
        if len(summary.violations[name]) < cap:
            summary.violations[name].append(detail)

    for m in range(1, mmax + 1):
        audit = audit_structure_facts(m)
        for name in ("fact1", "fact2", "fact3"):
            record(name, getattr(audit, name), {"M": m, **audit.counterexamples.get(name, {})})
        index = odd_positions(m)
        scanned = [n + 1 for n, bit in enumerate(parity_row(m)) if bit]
        ok = list(index.positions) == scanned and len(index) == 1 << m.bit_count()
        record("odd_index", ok, {"M": m})
        summary.total_odd_positions += len(index)
    return summary
