"""Acceptance criteria, one test (or small group) per criterion.

Each criterion prints a PASS/FAIL line in the terminal summary (see conftest.py).
"""

import itertools
import json
import random
import time

import jsonschema
import pytest

from hkrank import schemas
from hkrank.characterization import (
    Bounds,
    enumerate_problem_i,
    enumerate_problem_ii,
    restated_conditions_i,
    restated_conditions_ii,
    string_sum_parity,
    string_sum_parity_by_prefix,
)
from hkrank.cli import EXIT_REFUSAL, EXIT_USAGE, main
from hkrank.gf2 import Gf2Matrix, Gf2Vector, brute_force_solve, is_consistent
from hkrank.parity import binom_parity, exact_binomial, odd_positions, prefix_sum_parity
from hkrank.systems import ProblemIIInstance, ProblemIInstance, build_table1, build_table2, vandermonde
from hkrank.validation import (
    CLASS_NAMES,
    audit_all,
    default_threads,
    oracle_solvable_i,
    oracle_solvable_ii,
    validate_all_i,
    validate_all_ii,
)


def pascal_bits(mmax):
    """Row m of Pascal's triangle mod 2 as an int (bit n = C(m, n) mod 2), by the additive recurrence."""
    rows = [1]
    for _ in range(mmax):
        rows.append(rows[-1] ^ (rows[-1] << 1))
    return rows


# 1 -----------------------------------------------------------------------------


@pytest.mark.criterion(1, "binom_parity == exact_binomial mod 2, M <= 256, n <= M+8, < 1 s")
def test_criterion_1_parity_engine():
    start = time.perf_counter()
    mismatches = [
        (m, n) for m in range(257) for n in range(m + 9) if binom_parity(m, n) != exact_binomial(m, n) % 2
    ]
    elapsed = time.perf_counter() - start
    assert mismatches == []
    assert elapsed < 1.0, f"{elapsed:.2f} s"


# 2 -----------------------------------------------------------------------------


@pytest.mark.criterion(2, "odd_positions == direct scan and |index| == 2^popcount(M), M <= 4096, < 10 s")
def test_criterion_2_odd_index():
    rows = pascal_bits(4096)
    start = time.perf_counter()
    bad = []
    for m in range(1, 4097):
        index = odd_positions(m)
        row = rows[m]
        scanned = [n + 1 for n in range(m + 1) if row >> n & 1]
        if list(index.positions) != scanned or len(index.positions) != 2 ** bin(m).count("1"):
            bad.append(m)
    elapsed = time.perf_counter() - start
    assert bad == []
    assert elapsed < 10.0, f"{elapsed:.2f} s"


# 3 -----------------------------------------------------------------------------


@pytest.mark.criterion(3, "audit_all(4096): zero fact-1 violations; fact-2/3 reports emitted")
def test_criterion_3_structure_audit():
    summary = audit_all(4096).to_dict()
    jsonschema.validate(summary, schemas.AUDIT_SUMMARY)
    assert summary["violation_counts"]["fact1"] == 0
    assert summary["passes"]["fact1"] == 4096
    assert summary["violation_counts"]["odd_index"] == 0
    for fact in ("fact2", "fact3"):
        total = summary["passes"][fact] + summary["violation_counts"][fact]
        assert total == 4096
        listed = summary["violations"][fact]
        assert len(listed) == min(summary["violation_counts"][fact], 100)
        for entry in listed:
            assert "M" in entry and len(entry) > 1  # counterexample detail present
    print("fact2 violations:", summary["violation_counts"]["fact2"])
    print("fact3 violations:", summary["violation_counts"]["fact3"])


# 4 -----------------------------------------------------------------------------


@pytest.mark.criterion(4, "vandermonde(m,n,j) == exact_binomial(m+n,j), m,n <= 64")
def test_criterion_4_vandermonde():
    bad = [
        (m, n, j)
        for m in range(65)
        for n in range(65)
        for j in range(m + n + 1)
        if vandermonde(m, n, j) != exact_binomial(m + n, j)
    ]
    assert bad == []


# 5 -----------------------------------------------------------------------------


@pytest.mark.criterion(5, "prefix_sum_parity exact for Z <= 2048; string sums match prefix decomposition")
def test_criterion_5a_prefix_sums():
    rows = pascal_bits(2048)
    bad = []
    for z in range(1, 2049):
        row = rows[z]
        acc = 0
        for y in range(1, z + 2):
            acc ^= row >> (y - 1) & 1
            if prefix_sum_parity(z, y) != acc:
                bad.append((z, y))
    assert bad == []


@pytest.mark.criterion(5, "prefix_sum_parity exact for Z <= 2048; string sums match prefix decomposition")
def test_criterion_5b_string_sum_decomposition():
    bad = []
    for z in range(1, 513):
        for j, k, l, a in itertools.product(range(17), range(1, 17), range(1, 17), range(1, 17)):
            if string_sum_parity(z, j, k, l, a) != string_sum_parity_by_prefix(z, j, k, l, a):
                bad.append((z, j, k, l, a))
    assert bad == []


# 6 -----------------------------------------------------------------------------


@pytest.mark.criterion(6, "is_consistent agrees with brute force (random systems and all small Problem I)")
def test_criterion_6a_random_systems():
    rng = random.Random(6)
    for _ in range(10_000):
        nrows, ncols = rng.randint(1, 10), rng.randint(1, 10)
        a = Gf2Matrix(nrows, ncols, tuple(rng.getrandbits(ncols) for _ in range(nrows)))
        b = Gf2Vector(nrows, rng.getrandbits(nrows))
        assert is_consistent(a, b) == (brute_force_solve(a, b) is not None)


@pytest.mark.criterion(6, "is_consistent agrees with brute force (random systems and all small Problem I)")
def test_criterion_6b_problem_i_instances():
    bad = []
    for m, j, k, l in itertools.product(range(1, 17), range(17), range(1, 12), range(1, 9)):
        a, b = build_table1(ProblemIInstance(m, j, k, l))
        if is_consistent(a, b) != (brute_force_solve(a, b) is not None):
            bad.append((m, j, k, l))
    assert bad == []


# 7 -----------------------------------------------------------------------------


def _exhaustive(a, b):
    rows = a.to_lists()
    rhs = b.to_list()
    return [
        x
        for x in itertools.product((0, 1), repeat=a.ncols)
        if all(sum(r[c] & x[c] for c in range(a.ncols)) % 2 == v for r, v in zip(rows, rhs))
    ]


@pytest.mark.criterion(7, "golden: Table 1 (2,0,1,1) solvable, (2,0,1,2) not")
def test_criterion_7_golden_values():
    solvable = build_table1(ProblemIInstance(2, 0, 1, 1))
    unsolvable = build_table1(ProblemIInstance(2, 0, 1, 2))
    assert _exhaustive(*solvable) == [(0, 1)]
    assert _exhaustive(*unsolvable) == []
    assert oracle_solvable_i(2, 0, 1, 1) is True
    assert oracle_solvable_i(2, 0, 1, 2) is False


# 8 -----------------------------------------------------------------------------


def _check_report_set(data, problem):
    jsonschema.validate(data, schemas.REPORT_SET)
    assert data["problem"] == problem
    for report in data["reports"]:
        for field in ("classes", "enumerated_classes"):
            assert sum(report[field][c] for c in CLASS_NAMES) == report["grid_size"]
        assert report["readings"]["consistent"] == report["classes"]["both_yes"] + report["classes"]["oracle_only"]
    totals = data["totals"]
    assert sum(totals["classes"][c] for c in CLASS_NAMES) == totals["grid_points"]


@pytest.fixture(scope="module")
def problem_i_runs():
    start = time.perf_counter()
    first = validate_all_i(64, 16, 16)
    elapsed = time.perf_counter() - start
    second = validate_all_i(64, 16, 16)
    other = 2 if default_threads() == 1 else 1
    third = validate_all_i(64, 16, 16, threads=other)
    return elapsed, [json.dumps(r) for r in (first, second, third)], first


@pytest.mark.criterion(8, "Problem I referee: M <= 64, k,l <= 16, < 60 s, deterministic, re-verified")
def test_criterion_8_timing_and_determinism(problem_i_runs):
    elapsed, texts, _ = problem_i_runs
    print(f"Problem I sweep: {elapsed:.1f} s with {default_threads()} worker(s)")
    assert elapsed < 60.0
    assert texts[0] == texts[1] == texts[2]


@pytest.mark.criterion(8, "Problem I referee: M <= 64, k,l <= 16, < 60 s, deterministic, re-verified")
def test_criterion_8_counts_and_reverification(problem_i_runs):
    _, _, data = problem_i_runs
    _check_report_set(data, "I")
    expected_points = sum((m + 1) * 16 * 16 for m in range(1, 65))
    assert data["totals"]["grid_points"] == expected_points
    enumerated = {}
    for report in data["reports"]:
        m, j = report["instance"]["M"], report["instance"]["j"]
        if (m, j) not in enumerated:
            enumerated[(m, j)] = {(c.k, c.l) for c in enumerate_problem_i(m, j, Bounds(16, 16))}
        for listing in ("discrepancies", "all_discrepancies"):
            for d in report[listing]:
                k, l = d["k"], d["l"]
                assert oracle_solvable_i(m, j, k, l) == d["oracle"]
                assert restated_conditions_i(m, j, k, l) == d["restated"]
                assert ((k, l) in enumerated[(m, j)]) == d["enumerated"]
                assert d["oracle"] != d["restated"] or d["oracle"] != d["enumerated"]
        for d in report["discrepancies"]:
            if d["k"] <= 11:
                found = brute_force_solve(*build_table1(ProblemIInstance(m, j, d["k"], d["l"])))
                assert (found is not None) == d["oracle"]


@pytest.mark.criterion(8, "Problem I referee: M <= 64, k,l <= 16, < 60 s, deterministic, re-verified")
def test_criterion_8_known_candidate(problem_i_runs):
    _, _, data = problem_i_runs
    (report,) = [r for r in data["reports"] if r["instance"]["M"] == 2 and r["instance"]["j"] == 0]
    found = brute_force_solve(*build_table1(ProblemIInstance(2, 0, 1, 1)))
    confirmed = (found is not None) != restated_conditions_i(2, 0, 1, 1)
    listed = any((d["k"], d["l"]) == (1, 1) for d in report["discrepancies"])
    assert listed == confirmed
    assert confirmed  # the oracle solves it; the restated conditions reject it


# 9 -----------------------------------------------------------------------------


@pytest.fixture(scope="module")
def problem_ii_runs():
    start = time.perf_counter()
    first = validate_all_ii(16, 16, 8, 8, 8, 4)
    elapsed = time.perf_counter() - start
    second = validate_all_ii(16, 16, 8, 8, 8, 4)
    other = 2 if default_threads() == 1 else 1
    third = validate_all_ii(16, 16, 8, 8, 8, 4, threads=other)
    return elapsed, [json.dumps(r) for r in (first, second, third)], first


@pytest.mark.criterion(9, "Problem II referee: alpha,delta <= 16, j <= 8, < 120 s, closed form audited")
def test_criterion_9_timing_and_determinism(problem_ii_runs):
    elapsed, texts, _ = problem_ii_runs
    print(f"Problem II sweep: {elapsed:.1f} s with {default_threads()} worker(s)")
    assert elapsed < 120.0
    assert texts[0] == texts[1] == texts[2]


@pytest.mark.criterion(9, "Problem II referee: alpha,delta <= 16, j <= 8, < 120 s, closed form audited")
def test_criterion_9_counts_reverification_and_closed_form(problem_ii_runs):
    _, _, data = problem_ii_runs
    _check_report_set(data, "II")
    assert data["totals"]["grid_points"] == 16 * 16 * 9 * 8 * 8 * 4
    disagree = 0
    enumerated = {}
    for report in data["reports"]:
        inst = report["instance"]
        alpha, delta, j = inst["alpha"], inst["delta"], inst["j"]
        star = report["closed_form_star"]
        assert star["agree"] + star["disagree"] == 64
        disagree += star["disagree"]
        key = (alpha, delta, j)
        if key not in enumerated:
            enumerated[key] = {(c.k, c.l, c.q) for c in enumerate_problem_ii(alpha, delta, j, Bounds(8, 8, 4))}
        for listing in ("discrepancies", "all_discrepancies"):
            for d in report[listing]:
                k, l, q = d["k"], d["l"], d["q"]
                assert oracle_solvable_ii(alpha, delta, j, k, l, q) == d["oracle"]
                assert restated_conditions_ii(alpha, delta, j, k, l, q) == d["restated"]
                assert ((k, l, q) in enumerated[key]) == d["enumerated"]
        for d in report["discrepancies"]:
            found = brute_force_solve(*build_table2(ProblemIIInstance(alpha, delta, j, d["k"], d["l"], d["q"])))
            assert (found is not None) == d["oracle"]
    assert data["totals"]["closed_form_star_disagree"] == disagree
    print("closed-form (*) disagreements:", disagree)


# 10 ----------------------------------------------------------------------------


def _cli(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.criterion(10, "CLI examples reproduce; JSON validates; exit codes follow the contract")
def test_criterion_10_parity_example(capsys):
    assert _cli(capsys, "parity", "5")[:2] == (0, "110011\n")


@pytest.mark.criterion(10, "CLI examples reproduce; JSON validates; exit codes follow the contract")
def test_criterion_10_solve_example(capsys):
    code, out, _ = _cli(capsys, "solve-i", "2", "0", "1", "1", "--format", "json")
    assert code == 0
    data = json.loads(out)
    jsonschema.validate(data, schemas.SOLVE)
    assert data == {"solvable": True, "x": [0, 1], "rank": 2, "rank_aug": 2}


@pytest.mark.criterion(10, "CLI examples reproduce; JSON validates; exit codes follow the contract")
def test_criterion_10_validate_example(capsys):
    code, out, _ = _cli(capsys, "validate-i", "2", "0", "--kmax", "2", "--lmax", "2")
    assert code == 0
    data = json.loads(out)
    jsonschema.validate(data, schemas.REPORT)
    assert len(data["discrepancies"]) == 1
    (only,) = data["discrepancies"]
    assert (only["k"], only["l"]) == (1, 1)
    assert only["oracle"] is True and only["restated"] is False
    assert "restated:oracle_only" in only["kinds"]


@pytest.mark.criterion(10, "CLI examples reproduce; JSON validates; exit codes follow the contract")
def test_criterion_10_exit_codes(capsys):
    assert _cli(capsys, "frobnicate")[0] == EXIT_USAGE
    assert _cli(capsys, "parity", "0")[0] == EXIT_USAGE
    code, out, _ = _cli(capsys, "solve-i", "2", "0", "16", "1", "--brute-force")
    assert code == EXIT_REFUSAL and out == ""
    assert len({EXIT_USAGE, EXIT_REFUSAL, 3}) == 3
