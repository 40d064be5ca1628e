"""Finite-range certification of the inequalities behind the bound.

Every check is a named *relation* evaluated at one (p, n, q). A suite walks a
grid, evaluates its relations and records each failure as a Violation holding
the relation name and its parameters, so ``recheck`` can reproduce the
recorded sides exactly. Failed relations are data and never raise.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass, field
from fractions import Fraction

from .bounds import fibonacci, strong_bound, strong_exponent
from .core import (DomainError, EvalContext, P2Policy, even_sphere_value, require_prime,
                   stem_has_special_case, t_value)

DEFAULT_PRIMES = (2, 3, 5, 7)
DEFAULT_STEM_MAX = 40
DEFAULT_N_MAX = 60
DEFAULT_J_MAX = 6
DEFAULT_STAR_N_MAX = 31
DEFAULT_H_MAX = 80

_OPS = {"<=": operator.le, ">=": operator.ge, "==": operator.eq}


@dataclass(frozen=True)
class Violation:
    p: int
    n: int
    q: int
    relation: str
    op: str
    lhs: int | Fraction
    rhs: int | Fraction
    params: tuple = ()
    policy: str = P2Policy.Q2N1.value

    def sort_key(self):
        return self.p, self.n, self.q, self.relation, self.params

    def to_dict(self) -> dict:
        return {"p": self.p, "n": self.n, "q": self.q, "relation": self.relation,
                "op": self.op, "lhs": str(self.lhs), "rhs": str(self.rhs),
                "params": dict(self.params)}


@dataclass
class VerificationReport:
    suite_name: str
    ranges: dict
    checks_run: int = 0
    violations: list[Violation] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {"suite": self.suite_name, "ranges": self.ranges,
                "checks_run": self.checks_run, "violation_count": len(self.violations),
                "passed": self.passed, "violations": [v.to_dict() for v in self.violations]}

    def merge(self, other: VerificationReport) -> None:
        self.checks_run += other.checks_run
        self.violations.extend(other.violations)
        self.violations.sort(key=Violation.sort_key)


# -- star-display arithmetic -------------------------------------------------

def _floor_pow2(e: int) -> int:
    return 1 << e if e >= 0 else 0


def star_exponents(p: int, n: int, q: int) -> list[tuple[int, int]]:
    """Exponent pairs of the two-term sum, i = 0 .. (n-3)/2."""
    out = []
    for i in range((n - 3) // 2 + 1):
        m = n - 2 * i - 1
        e1 = (q - 2 * i - (p * m + 1) + 3 - 2 * p) // (p - 1)
        e2 = (q - 2 * i - 1 - (p * m - 1) + 3 - 2 * p) // (p - 1)
        out.append((e1, e2))
    return out


def merged_exponents(p: int, n: int, q: int) -> list[int]:
    """Exponents of the single merged sum, i = 0 .. n-2."""
    return [(q - i - (p * (n - i - 1) + 1) + 3 - 2 * p) // (p - 1) for i in range(n - 1)]


def special_allowance(p: int, n: int, q: int) -> int:
    """The leading '+1' of the sum.

    It pays for the special case of the recursion, which only occurs on stems
    >= 2p - 3, i.e. exactly when the target exponent is nonnegative.
    """
    return 1 if strong_exponent(p, q - n) >= 0 else 0


def star_rhs(p: int, n: int, q: int) -> int:
    return special_allowance(p, n, q) + sum(
        _floor_pow2(a) + _floor_pow2(b) for a, b in star_exponents(p, n, q))


def merged_rhs(p: int, n: int, q: int) -> int:
    return special_allowance(p, n, q) + sum(_floor_pow2(e) for e in merged_exponents(p, n, q))


# -- relations ---------------------------------------------------------------

def _rel_theorem(ctx, n, q):
    return t_value(ctx, n, q), "<=", strong_bound(ctx.p, n, q)


def _rel_theorem_split(ctx, n, q):
    rhs = strong_bound(ctx.p, n - 1, q - 1) + strong_bound(ctx.p, 2 * n - 1, q)
    return even_sphere_value(ctx, n, q), "<=", rhs


def _rel_star_special(ctx, n, q):
    return int(stem_has_special_case(ctx, n, q)), "<=", special_allowance(ctx.p, n, q)


def _rel_star_1(ctx, n, q):
    return t_value(ctx, n, q), "<=", star_rhs(ctx.p, n, q)


def _rel_star_2(ctx, n, q):
    return star_rhs(ctx.p, n, q), "<=", merged_rhs(ctx.p, n, q)


def _rel_star_3(ctx, n, q):
    live = [e for e in merged_exponents(ctx.p, n, q) if e >= 0]
    return len(live), "==", len(set(live))


def _rel_star_4(ctx, n, q):
    exps = merged_exponents(ctx.p, n, q)
    # the maximum must sit at i = n - 2
    top = max(exps) if exps[-1] == max(exps) else None
    return top, "==", strong_exponent(ctx.p, q - n) - 1


def _rel_star_5(ctx, n, q):
    return merged_rhs(ctx.p, n, q), "<=", strong_bound(ctx.p, n, q)


def _rel_fibonacci(ctx, n, q, period):
    j = (q - n + 3 - 2 * ctx.p) // period
    return t_value(ctx, n, q), ">=", fibonacci(2 * j + 1)


def _rel_h_floor(ctx, n, q):
    return t_value(ctx, n, q), ">=", fibonacci(q - 2)


def _rel_h_equal(ctx, n, q):
    return t_value(ctx, n, q), "==", fibonacci(q - 2)


def _rel_monotone(ctx, n, q):
    return t_value(ctx, n - 2, q - 2), "<=", t_value(ctx, n, q)


def _rel_vanishing(ctx, n, q):
    return t_value(ctx, n, q), "==", 0


def _rel_first_torsion(ctx, n, q):
    return t_value(ctx, n, q), "==", 1


def _rel_dominance(ctx, n, q):
    p = ctx.p
    return Fraction(q - n + 3 - 2 * p, p - 1), "<=", Fraction(q - n + 1)


RELATIONS = {
    "theorem": _rel_theorem,
    "theorem-split": _rel_theorem_split,
    "star-0": _rel_star_special,
    "star-1": _rel_star_1,
    "star-2": _rel_star_2,
    "star-3": _rel_star_3,
    "star-4": _rel_star_4,
    "star-5": _rel_star_5,
    "fibonacci": _rel_fibonacci,
    "h-floor": _rel_h_floor,
    "h-equal": _rel_h_equal,
    "monotone": _rel_monotone,
    "vanishing": _rel_vanishing,
    "first-torsion": _rel_first_torsion,
    "dominance": _rel_dominance,
}


def evaluate(relation: str, ctx: EvalContext, n: int, q: int, **params):
    """Evaluate a named relation: returns (lhs, op, rhs, holds)."""
    lhs, op, rhs = RELATIONS[relation](ctx, n, q, **params)
    return lhs, op, rhs, lhs is not None and _OPS[op](lhs, rhs)


def recheck(v: Violation) -> tuple:
    """Re-evaluate a violation in a fresh context; returns (lhs, rhs)."""
    ctx = EvalContext(v.p, P2Policy(v.policy))
    lhs, _, rhs, _ = evaluate(v.relation, ctx, v.n, v.q, **dict(v.params))
    return lhs, rhs


def _run(report: VerificationReport, relation: str, ctx: EvalContext, n: int, q: int,
         **params) -> None:
    lhs, op, rhs, ok = evaluate(relation, ctx, n, q, **params)
    report.checks_run += 1
    if not ok:
        report.violations.append(Violation(ctx.p, n, q, relation, op, lhs, rhs,
                                           tuple(sorted(params.items())),
                                           ctx.p2_policy.value))


def _finish(report: VerificationReport) -> VerificationReport:
    report.violations.sort(key=Violation.sort_key)
    return report


# -- suites ------------------------------------------------------------------

def check_theorem(ctx: EvalContext, stem_max: int = DEFAULT_STEM_MAX,
                  n_max: int = DEFAULT_N_MAX, stem_min: int = 0) -> VerificationReport:
    """t(n, q) <= floor-strengthened bound over stems stem_min..stem_max, n <= n_max.

    At odd p the even-n cells compare the splitting value with the sum of the
    strong bounds of its two odd summands (relation ``theorem-split``).
    """
    report = VerificationReport("theorem", {"p": [ctx.p], "stem": [stem_min, stem_max],
                                            "n": [1, n_max], "policy": ctx.p2_policy.value})
    for k in range(stem_min, stem_max + 1):
        for n in range(1, n_max + 1):
            q = n + k
            if q < 1:
                continue
            if ctx.p != 2 and n % 2 == 0:
                _run(report, "theorem-split", ctx, n, q)
            else:
                _run(report, "theorem", ctx, n, q)
    return _finish(report)


STAR_RELATIONS = ("star-0", "star-1", "star-2", "star-3", "star-4", "star-5")


def check_star(p: int, n: int, q: int, ctx: EvalContext | None = None) -> VerificationReport:
    """All proof-step checks of the summation argument at a single (p, n, q).

    star-1: t <= two-term sum;  star-2: two-term sum <= merged sum;
    star-3: nonnegative merged exponents are distinct;
    star-4: the largest merged exponent is floor((q-n+3-2p)/(p-1)) - 1;
    star-5: merged sum <= 2^floor((q-n+3-2p)/(p-1)).
    star-0 confirms the leading 1 covers every special case on the stem.
    """
    ctx = ctx or EvalContext(p)
    if ctx.p != p:
        raise DomainError("context prime does not match p")
    if n % 2 == 0 or n < 3 or q <= n:
        raise DomainError(f"need odd n >= 3 and q > n, got n={n}, q={q}")
    report = VerificationReport("star", {"p": [p], "n": [n, n], "q": [q, q]})
    for rel in STAR_RELATIONS:
        _run(report, rel, ctx, n, q)
    return _finish(report)


def check_star_grid(primes=DEFAULT_PRIMES, n_max: int = DEFAULT_STAR_N_MAX,
                    stem_max: int = DEFAULT_STEM_MAX,
                    policy: P2Policy = P2Policy.Q2N1) -> VerificationReport:
    """check_star over odd n in [3, n_max] and q in (n, n + stem_max]."""
    report = VerificationReport("star", {"p": list(primes), "n": [3, n_max],
                                         "stem": [1, stem_max]})
    for p in primes:
        ctx = EvalContext(p, policy)
        for n in range(3, n_max + 1, 2):
            for q in range(n + 1, n + stem_max + 1):
                report.merge(check_star(p, n, q, ctx))
    return _finish(report)


def fibonacci_period(p: int) -> int:
    return 4 * p + 5


def check_fibonacci_lower(p: int, j_max: int = DEFAULT_J_MAX, ctx: EvalContext | None = None,
                          n_values=(3, 5, 7), period: int | None = None) -> VerificationReport:
    """t_p(n, 2p + j*period + n - 3) >= F_{2j+1} for j = 0..j_max and odd n in n_values.

    ``period`` defaults to 4p + 5.
    """
    require_prime(p)
    ctx = ctx or EvalContext(p)
    period = fibonacci_period(p) if period is None else period
    report = VerificationReport("fibonacci", {"p": [p], "j": [0, j_max], "n": list(n_values),
                                              "period": period})
    for n in n_values:
        for j in range(j_max + 1):
            _run(report, "fibonacci", ctx, n, 2 * p + j * period + n - 3, period=period)
    return _finish(report)


def check_h_floor(q_max: int = DEFAULT_H_MAX, equal_up_to: int = 5,
                  ctx: EvalContext | None = None) -> VerificationReport:
    """H_q = t_2(2, q+2) >= F_q for q = 1..q_max, with equality for q <= equal_up_to."""
    ctx = ctx or EvalContext(2)
    report = VerificationReport("h-floor", {"p": [2], "q": [1, q_max],
                                            "equal_up_to": equal_up_to})
    for q in range(1, q_max + 1):
        _run(report, "h-floor", ctx, 2, q + 2)
        if q <= equal_up_to:
            _run(report, "h-equal", ctx, 2, q + 2)
    return _finish(report)


def check_monotonicity(ctx: EvalContext, stem_max: int = DEFAULT_STEM_MAX,
                       n_max: int = DEFAULT_N_MAX, stem_min: int = 0) -> VerificationReport:
    report = VerificationReport("monotonicity", {"p": [ctx.p], "stem": [stem_min, stem_max],
                                                 "n": [3, n_max]})
    step = 1 if ctx.p == 2 else 2
    for k in range(stem_min, stem_max + 1):
        for n in range(3, n_max + 1, step):
            if n + k - 2 >= 1:
                _run(report, "monotone", ctx, n, n + k)
    return _finish(report)


def check_vanishing(ctx: EvalContext, n_max: int = DEFAULT_N_MAX) -> VerificationReport:
    """t = 0 on stems 1..2p-4 and t = 1 on stem 2p-3 (odd n >= 3; all n >= 2 at p = 2)."""
    p = ctx.p
    report = VerificationReport("vanishing", {"p": [p], "n": [3 if p != 2 else 2, n_max],
                                              "stem": [1, 2 * p - 3]})
    ns = range(2, n_max + 1) if p == 2 else range(3, n_max + 1, 2)
    for n in ns:
        for k in range(1, 2 * p - 3):
            _run(report, "vanishing", ctx, n, n + k)
        _run(report, "first-torsion", ctx, n, n + 2 * p - 3)
    return _finish(report)


def check_dominance(stem_max: int = DEFAULT_STEM_MAX,
                    primes=DEFAULT_PRIMES) -> VerificationReport:
    """Exponent of the new bound <= exponent of 2^(q-n+1), exactly, per stem.

    Both exponents depend on the stem only; cells are recorded at n = 1.
    """
    report = VerificationReport("dominance", {"p": list(primes), "stem": [0, stem_max]})
    for p in primes:
        ctx = EvalContext(p)
        for k in range(stem_max + 1):
            _run(report, "dominance", ctx, 1, 1 + k)
    return _finish(report)


SUITES = ("theorem", "star", "fibonacci", "monotonicity", "vanishing", "dominance")


def run_suites(names, primes=DEFAULT_PRIMES, stem_max: int = DEFAULT_STEM_MAX,
               n_max: int = DEFAULT_N_MAX, j_max: int = DEFAULT_J_MAX,
               star_n_max: int = DEFAULT_STAR_N_MAX, h_max: int = DEFAULT_H_MAX,
               policy: P2Policy = P2Policy.Q2N1) -> list[VerificationReport]:
    """Run the named suites over the given grid, one merged report per suite."""
    if "all" in names:
        names = SUITES
    contexts = {p: EvalContext(p, policy) for p in primes}
    out = []
    for name in names:
        if name == "theorem":
            rep = VerificationReport("theorem", {"p": list(primes), "stem": [0, stem_max],
                                                 "n": [1, n_max]})
            for p in primes:
                rep.merge(check_theorem(contexts[p], stem_max, n_max))
        elif name == "star":
            rep = check_star_grid(primes, min(star_n_max, n_max), stem_max, policy)
        elif name == "fibonacci":
            rep = VerificationReport("fibonacci", {"p": list(primes), "j": [0, j_max],
                                                   "n": [3, 5, 7], "period": "4p+5",
                                                   "h_q": [1, h_max]})
            for p in primes:
                rep.merge(check_fibonacci_lower(p, j_max, contexts[p]))
            if 2 in contexts:
                rep.merge(check_h_floor(h_max, ctx=contexts[2]))
        elif name == "monotonicity":
            rep = VerificationReport("monotonicity", {"p": list(primes), "stem": [0, stem_max],
                                                      "n": [3, n_max]})
            for p in primes:
                rep.merge(check_monotonicity(contexts[p], stem_max, n_max))
        elif name == "vanishing":
            rep = VerificationReport("vanishing", {"p": list(primes), "n": [2, n_max]})
            for p in primes:
                rep.merge(check_vanishing(contexts[p], n_max))
        elif name == "dominance":
            rep = check_dominance(stem_max, primes)
        else:
            raise ValueError(f"unknown suite {name!r}")
        out.append(_finish(rep))
    return out
