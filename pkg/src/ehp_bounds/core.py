"""Best bounds on p-torsion of sphere homotopy groups obtainable from the EHP inequalities.

For a prime p write s_p(n, q) for log_p of the order of the p-torsion in
pi_q(S^n). The EHP sequences give, for n odd,

    s_p(n, q) <= s_p(p(n-1)+1, q) + s_p(p(n-1)-1, q-1) + s_p(n-2, q-2)   (q != p(n-1))
    s_p(n, q) <= 1 + s_p(n-2, q-2)                                       (q == p(n-1))

and at p = 2, for every n, s_2(n, q) <= s_2(2n-1, q) + s_2(n-1, q-1).
Replacing each inequality by an equality defines integers t_p(n, q), the
sharpest upper bound these inequalities can ever deliver. This module computes
them exactly with a per-context memo.
"""

from __future__ import annotations

import enum
import threading
from dataclasses import dataclass, field


class EHPError(ValueError):
    """Base class for invalid queries."""


class DomainError(EHPError):
    pass


class ParityError(EHPError):
    pass


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def require_prime(p: int) -> int:
    if not isinstance(p, int) or not is_prime(p):
        raise DomainError(f"{p!r} is not prime")
    return p


class P2Policy(enum.Enum):
    """Where the '+1' case of the recursion sits when p = 2."""

    Q2N1 = "q2n1"  # q == 2n - 1 (default)
    Q2N2 = "q2n2"  # q == 2n - 2
    NONE = "none"

    def special(self, n: int, q: int) -> bool:
        if self is P2Policy.Q2N1:
            return q == 2 * n - 1
        if self is P2Policy.Q2N2:
            return q == 2 * n - 2
        return False


@dataclass(frozen=True)
class SphereEntry:
    """A pair (n, q) standing for pi_q(S^n); the stem is q - n."""

    n: int
    q: int

    def __post_init__(self):
        if self.n < 1 or self.q < 1:
            raise DomainError(f"need n >= 1 and q >= 1, got n={self.n}, q={self.q}")

    @property
    def stem(self) -> int:
        return self.q - self.n


@dataclass
class EvalContext:
    """A prime, a p = 2 policy, and the memo for t_p(n, q).

    Contexts are independent: two with the same ``(p, p2_policy)`` answer
    every query identically. The memo is guarded by a lock so a context can be
    shared between threads.
    """

    p: int
    p2_policy: P2Policy = P2Policy.Q2N1
    _memo: dict = field(default_factory=dict, init=False, repr=False, compare=False)
    _lock: threading.RLock = field(default_factory=threading.RLock, init=False, repr=False,
                                   compare=False)

    def __post_init__(self):
        require_prime(self.p)
        if isinstance(self.p2_policy, str):
            self.p2_policy = P2Policy(self.p2_policy)

    @property
    def key(self) -> tuple[int, str]:
        return self.p, self.p2_policy.value

    def memo_size(self) -> int:
        return len(self._memo)

    def export_memo(self) -> dict:
        with self._lock:
            entries = sorted([n, q, t] for (n, q), t in self._memo.items())
        return {"format": "ehp-memo", "version": 1, "p": self.p,
                "p2_policy": self.p2_policy.value, "entries": entries}

    def load_memo(self, payload: dict) -> None:
        if payload.get("format") != "ehp-memo" or payload.get("version") != 1:
            raise DomainError("unrecognised memo file")
        if (payload.get("p"), payload.get("p2_policy")) != self.key:
            raise DomainError(f"memo was written for p={payload.get('p')}, "
                              f"policy={payload.get('p2_policy')}")
        with self._lock:
            for n, q, t in payload["entries"]:
                self._memo[(int(n), int(q))] = int(t)


def _check_entry(ctx: EvalContext, n: int, q: int) -> None:
    SphereEntry(n, q)
    if ctx.p != 2 and n % 2 == 0:
        raise ParityError(f"t_{ctx.p}(n, q) is defined for odd n only (got n={n}); "
                          "use even_sphere_value")


def recursion_step(ctx: EvalContext, n: int, q: int) -> tuple[int, tuple[tuple[int, int], ...]]:
    """One unrolling of the recursion: t(n, q) = const + sum of t over the returned entries.

    Base cases return ``(0, ())``.
    """
    if q <= n or n == 1:
        return 0, ()
    p = ctx.p
    if p == 2:
        if ctx.p2_policy.special(n, q):
            return 1, ((n - 1, q - 1),)
        return 0, ((2 * n - 1, q), (n - 1, q - 1))
    if q == p * (n - 1):
        return 1, ((n - 2, q - 2),)
    return 0, ((p * (n - 1) + 1, q), (p * (n - 1) - 1, q - 1), (n - 2, q - 2))


def _evaluate(ctx: EvalContext, n: int, q: int) -> int:
    memo = ctx._memo
    # explicit stack: dependency chains are hundreds deep for q ~ 300
    stack = [(n, q)]
    while stack:
        key = stack[-1]
        if key in memo:
            stack.pop()
            continue
        const, deps = recursion_step(ctx, *key)
        pending = [d for d in deps if d not in memo]
        if pending:
            stack.extend(pending)
            continue
        memo[key] = const + sum(memo[d] for d in deps)
        stack.pop()
    return memo[(n, q)]


def t_value(ctx: EvalContext, n: int, q: int) -> int:
    """Return t_p(n, q) for the context's prime.

    Odd primes accept odd n only; p = 2 accepts every n >= 1.
    """
    _check_entry(ctx, n, q)
    if q <= n or n == 1:
        return 0
    with ctx._lock:
        return _evaluate(ctx, n, q)


def even_sphere_value(ctx: EvalContext, n_even: int, q: int) -> int:
    """Bound for an even sphere at an odd prime via Serre's splitting.

    pi_q(S^n) localised at p splits as pi_{q-1}(S^{n-1}) + pi_q(S^{2n-1}),
    so the bound is t(n-1, q-1) + t(2n-1, q).
    """
    if ctx.p == 2:
        raise ParityError("p = 2 needs no splitting; call t_value directly")
    SphereEntry(n_even, q)
    if n_even % 2:
        raise ParityError(f"n_even must be even, got {n_even}")
    if q <= n_even:
        return 0
    return t_value(ctx, n_even - 1, q - 1) + t_value(ctx, 2 * n_even - 1, q)


def sphere_value(ctx: EvalContext, n: int, q: int) -> int:
    """t_value, or the splitting value for even n at an odd prime."""
    if ctx.p != 2 and n % 2 == 0:
        return even_sphere_value(ctx, n, q)
    return t_value(ctx, n, q)


def stem_has_special_case(ctx: EvalContext, n: int, q: int) -> bool:
    """Whether unrolling t(n, q) down its own stem passes through the '+1' case."""
    _check_entry(ctx, n, q)
    step = 1 if ctx.p == 2 else 2
    k = q - n
    m = n
    while m > 1 and m + k > m:
        const, _ = recursion_step(ctx, m, m + k)
        if const:
            return True
        m -= step
    return False


@dataclass(frozen=True)
class StemRow:
    n: int
    q: int
    t: int
    split: bool = False


@dataclass(frozen=True)
class StemTable:
    p: int
    k: int
    rows: tuple[StemRow, ...]


def stem_table(ctx: EvalContext, k: int, n_max: int) -> StemTable:
    if n_max < 1:
        raise DomainError("n_max must be >= 1")
    rows = []
    for n in range(1, n_max + 1):
        q = n + k
        if q < 1:
            continue
        split = ctx.p != 2 and n % 2 == 0
        rows.append(StemRow(n, q, sphere_value(ctx, n, q), split))
    return StemTable(ctx.p, k, tuple(rows))


def h_sequence(q_max: int, ctx: EvalContext | None = None) -> list[int]:
    """H_1..H_{q_max} with H_j = t_2(2, j + 2)."""
    if q_max < 1:
        raise DomainError("q_max must be >= 1")
    if ctx is None:
        ctx = EvalContext(2)
    elif ctx.p != 2:
        raise DomainError("the H-sequence lives at p = 2")
    return [t_value(ctx, 2, j + 2) for j in range(1, q_max + 1)]
