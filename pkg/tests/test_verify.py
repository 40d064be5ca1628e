from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ehp_bounds.core import DomainError, EvalContext, t_value
from ehp_bounds.verify import (Violation, VerificationReport, check_dominance,
                               check_fibonacci_lower, check_h_floor, check_monotonicity,
                               check_star, check_star_grid, check_theorem, check_vanishing,
                               evaluate, merged_exponents, merged_rhs, recheck, run_suites,
                               star_exponents, star_rhs)

from oracles import fib_list, t_table


def test_theorem_examples():
    ctx = EvalContext(2)
    rep = check_theorem(ctx, stem_max=6, n_max=8)
    assert rep.passed and rep.checks_run == 7 * 8
    assert evaluate("theorem", ctx, 2, 8)[:3] == (9, "<=", 32)
    rep = check_theorem(EvalContext(5), stem_max=6, n_max=10)
    assert rep.passed
    assert check_theorem(EvalContext(2), stem_max=0, n_max=5).passed


def test_theorem_checks_split_cells_at_odd_primes():
    ctx = EvalContext(3)
    rep = check_theorem(ctx, stem_max=10, n_max=10)
    assert rep.passed
    lhs, op, rhs, ok = evaluate("theorem-split", ctx, 2, 6)
    # strong(3, 1, 5) + strong(3, 3, 6) = 1 + 1
    assert (lhs, rhs, ok) == (1, 2, True)


def test_star_p2_n3_q6():
    assert merged_exponents(2, 3, 6) == [0, 1]
    assert merged_rhs(2, 3, 6) == 4
    assert star_rhs(2, 3, 6) == 4
    rep = check_star(2, 3, 6)
    assert rep.passed and rep.checks_run == 6
    assert evaluate("star-4", EvalContext(2), 3, 6)[:3] == (1, "==", 1)


def test_star_p3_special_case_entry():
    ctx = EvalContext(3)
    assert t_value(ctx, 3, 6) == 1
    assert star_rhs(3, 3, 6) >= 1
    assert check_star(3, 3, 6, ctx).passed


def test_star_p2_n3_q4():
    assert merged_exponents(2, 3, 4) == [-2, -1]
    assert merged_rhs(2, 3, 4) == 1
    assert t_value(EvalContext(2), 3, 4) == 1
    assert check_star(2, 3, 4).passed


def test_star_rejects_bad_entries():
    for n, q in [(4, 9), (1, 5), (5, 5)]:
        with pytest.raises(DomainError):
            check_star(3, n, q)


def test_star_pairs_interleave_into_merged_sum():
    # pair i covers merged indices 2i and 2i+1 after the exponent shift
    for p in (2, 3, 5, 7):
        for n in range(3, 16, 2):
            for q in range(n + 1, n + 30):
                merged = merged_exponents(p, n, q)
                for i, (a, b) in enumerate(star_exponents(p, n, q)):
                    assert a == merged[2 * i]
                    assert b <= merged[2 * i + 1]


def test_star_grid_small():
    rep = check_star_grid(primes=(2, 3), n_max=11, stem_max=15)
    assert rep.passed
    assert rep.checks_run == 2 * 5 * 15 * 6


def test_fibonacci_lower_examples():
    assert evaluate("fibonacci", EvalContext(2), 3, 4, period=13)[:3] == (1, ">=", 1)
    assert evaluate("fibonacci", EvalContext(7), 3, 14, period=33)[:3] == (1, ">=", 1)
    # t_2(3, 17) from the independent bottom-up table
    expected = t_table(2, 20)(3, 17)
    lhs, _, rhs, ok = evaluate("fibonacci", EvalContext(2), 3, 17, period=13)
    assert lhs == expected and rhs == 2 and ok
    for p in (2, 3):
        assert check_fibonacci_lower(p, 6).passed


def test_fibonacci_lower_fails_at_p5_and_p7_with_period_4p_plus_5():
    rep = check_fibonacci_lower(5, 6)
    assert [(v.n, v.q, v.lhs, v.rhs) for v in rep.violations] == [
        (3, 35, 0, 2), (5, 37, 0, 2), (7, 39, 0, 2)]
    rep = check_fibonacci_lower(7, 6, n_values=(3,))
    assert [(v.q, v.lhs, v.rhs) for v in rep.violations] == [(47, 1, 2), (80, 1, 5), (113, 1, 13)]


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11])
def test_fibonacci_lower_holds_with_period_4p_minus_5(p):
    assert check_fibonacci_lower(p, 6, period=4 * p - 5).passed


def test_h_floor():
    rep = check_h_floor(80)
    assert rep.passed and rep.checks_run == 85
    assert not check_h_floor(8, equal_up_to=6).passed  # H_6 = 9 > F_6 = 8


def test_monotonicity_examples():
    ctx = EvalContext(2)
    assert evaluate("monotone", ctx, 5, 8)[:3] == (3, "<=", 4)
    rep = check_monotonicity(EvalContext(7), stem_max=0, n_max=20, stem_min=-5)
    assert rep.passed
    ctx3 = EvalContext(3)
    lhs, _, rhs, ok = evaluate("monotone", ctx3, 5, 8)
    assert lhs == 1 and rhs == t_table(3, 10)(5, 8) and ok
    assert check_monotonicity(ctx3, 30, 40).passed


def test_vanishing_examples():
    ctx = EvalContext(5)
    assert [t_value(ctx, 3, 3 + k) for k in range(1, 8)] == [0] * 6 + [1]
    assert check_vanishing(ctx, 3).checks_run == 7
    rep = check_vanishing(EvalContext(2), 20)
    assert rep.passed and rep.checks_run == 19
    assert evaluate("first-torsion", EvalContext(3), 9, 12)[:3] == (1, "==", 1)


def test_dominance_examples():
    ctx = EvalContext(2)
    assert evaluate("dominance", ctx, 1, 2)[:3] == (0, "<=", 2)
    assert evaluate("dominance", ctx, 1, 1)[:3] == (-1, "<=", 1)
    assert evaluate("dominance", EvalContext(7), 1, 12)[:3] == (0, "<=", 12)
    assert check_dominance(60).passed


def test_report_passed_iff_no_violations():
    rep = VerificationReport("x", {})
    assert rep.passed
    rep.violations.append(Violation(2, 3, 4, "theorem", "<=", 5, 1))
    assert not rep.passed


def test_violations_recheck():
    rep = check_fibonacci_lower(7, 6)
    assert rep.violations
    for v in rep.violations:
        assert recheck(v) == (v.lhs, v.rhs)
    bad = check_h_floor(8, equal_up_to=7)
    for v in bad.violations:
        assert recheck(v) == (v.lhs, v.rhs)


def test_reports_are_deterministic():
    a = [r.to_dict() for r in run_suites(["all"], stem_max=12, n_max=15, j_max=3)]
    b = [r.to_dict() for r in run_suites(["all"], stem_max=12, n_max=15, j_max=3)]
    assert a == b


@given(st.sampled_from([2, 3, 5, 7]), st.integers(1, 15), st.integers(1, 40))
@settings(max_examples=150)
def test_star_subchecks_hold(p, half, stem):
    n = 2 * half + 1
    assert check_star(p, n, n + stem).passed


@given(st.sampled_from([2, 3, 5, 7]), st.integers(1, 15), st.integers(1, 40))
def test_merged_exponents_are_consecutive(p, half, stem):
    n = 2 * half + 1
    e = merged_exponents(p, n, n + stem)
    assert all(b - a == 1 for a, b in zip(e, e[1:]))


def test_dominance_exponents_are_exact_fractions():
    lhs, _, rhs, _ = evaluate("dominance", EvalContext(3), 1, 8)
    assert lhs == Fraction(4, 2) and isinstance(lhs, Fraction) and rhs == 8


def test_fib_list_sanity():
    assert fib_list(7)[1:8] == [1, 1, 2, 3, 5, 8, 13]
