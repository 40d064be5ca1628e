"""Closed-form bound families on s_p(n, q) and the constants that go with them.

Integer-valued bounds use the convention floor(2^i) = 0 for i < 0: a negative
exponent yields the bound 0 rather than a fraction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .core import DomainError, ParityError, require_prime

# golden ratio, 20 significant digits
PHI = 1.6180339887498948482

INDISTINGUISHABLE_RTOL = 1e-9


@dataclass(frozen=True)
class ExpForm:
    """``base ** exponent`` with an exact rational exponent.

    The base is a Fraction when rational, otherwise a float carrying at least
    15 significant digits.
    """

    base: Fraction | float
    exponent: Fraction

    def __post_init__(self):
        if not self.base > 0:
            raise DomainError(f"base must be positive, got {self.base}")
        if not isinstance(self.exponent, Fraction):
            object.__setattr__(self, "exponent", Fraction(self.exponent))
        if isinstance(self.base, int):
            object.__setattr__(self, "base", Fraction(self.base))

    def log_value(self) -> float:
        if self.exponent == 0:
            return 0.0
        return float(self.exponent) * math.log(self.base)

    def value(self) -> float:
        """Float value; ``math.inf`` past the float range.

        Exact (then rounded once) for a rational base and integer exponent.
        """
        lv = self.log_value()
        if lv > 709.0:
            return math.inf
        if lv < -745.0:
            return 0.0
        if isinstance(self.base, Fraction) and self.exponent.denominator == 1:
            return float(self.base ** self.exponent.numerator)
        return math.pow(float(self.base), float(self.exponent))

    def floor_int(self) -> int:
        """Exact floor of the value when base and exponent are integers."""
        if not (isinstance(self.base, Fraction) and self.base.denominator == 1
                and self.exponent.denominator == 1):
            raise DomainError("floor_int needs an integer base and exponent")
        e = self.exponent.numerator
        return int(self.base) ** e if e >= 0 else 0

    def compare(self, other: ExpForm) -> int:
        """-1, 0 or 1. Equal bases compare exponents exactly; otherwise logs are
        compared and a relative gap below 1e-9 counts as indistinguishable (0)."""
        if self.base == other.base:
            a, b = self.exponent, other.exponent
            if self.base < 1:
                a, b = b, a
            return (a > b) - (a < b)
        la, lb = self.log_value(), other.log_value()
        if abs(la - lb) <= INDISTINGUISHABLE_RTOL:
            return 0
        return 1 if la > lb else -1

    def __str__(self):
        return f"{self.base}^({self.exponent})"


def _check_family_domain(p: int, n: int, q: int) -> None:
    require_prime(p)
    if n < 1 or q < 1:
        raise DomainError(f"need n >= 1 and q >= 1, got n={n}, q={q}")
    if p != 2 and n % 2 == 0:
        raise ParityError(f"bound stated for odd n at odd p (got n={n}, p={p})")


def strong_exponent(p: int, stem: int) -> int:
    """floor((stem + 3 - 2p) / (p - 1))."""
    return (stem + 3 - 2 * p) // (p - 1)


def strong_bound(p: int, n: int, q: int) -> int:
    """2^floor((q-n+3-2p)/(p-1)), or 0 for a negative exponent. No parity check."""
    e = strong_exponent(p, q - n)
    return 1 << e if e >= 0 else 0


def boyde_bound(p: int, n: int, q: int) -> tuple[ExpForm, int]:
    """The 2^((q-n+3-2p)/(p-1)) bound together with its floor-strengthened integer.

    The integer is 2^e for e = floor((q-n+3-2p)/(p-1)) and 0 when e < 0.
    """
    _check_family_domain(p, n, q)
    form = ExpForm(Fraction(2), Fraction(q - n + 3 - 2 * p, p - 1))
    return form, strong_bound(p, n, q)


def simple_bound(p: int, n: int, q: int) -> ExpForm:
    _check_family_domain(p, n, q)
    return ExpForm(Fraction(2), Fraction(q - n, p - 1))


def henn_bound(n: int, q: int) -> int:
    """2^(q-n+1); 0 when q < n - 1."""
    e = q - n + 1
    return 1 << e if e >= 0 else 0


def henn_form(n: int, q: int) -> ExpForm:
    return ExpForm(Fraction(2), Fraction(q - n + 1))


def bodigheimer_henn_bound(n: int, q: int) -> ExpForm:
    """3^(q - n/2). Originally stated for odd n; any n is accepted here."""
    return ExpForm(Fraction(3), Fraction(2 * q - n, 2))


def selick_rank_bound(q: int) -> ExpForm:
    if q < 1:
        raise DomainError(f"q must be >= 1, got {q}")
    return ExpForm(Fraction(3), Fraction(q * q))


def fibonacci(k: int) -> int:
    """F_k with F_1 = F_2 = 1 (fast doubling)."""
    if k < 1:
        raise DomainError(f"Fibonacci index must be >= 1, got {k}")

    def pair(m):
        # (F_m, F_{m+1})
        if m == 0:
            return 0, 1
        a, b = pair(m >> 1)
        c = a * (2 * b - a)
        d = a * a + b * b
        return (d, c + d) if m & 1 else (c, d)

    return pair(k)[0]


def limitation_constants(p: int) -> tuple[ExpForm, ExpForm]:
    """(phi^(2/(4p+5)), (1/2)^(1/(p-1))).

    The first is the smallest exponential base any bound from the EHP
    inequalities could have; the second is the lower bound on the constant c_p
    in Henn's radius-of-convergence result.
    """
    require_prime(p)
    return (ExpForm(PHI, Fraction(2, 4 * p + 5)),
            ExpForm(Fraction(1, 2), Fraction(1, p - 1)))


def all_bounds(p: int, n: int, q: int) -> list[tuple[str, ExpForm | None, int | None]]:
    """Every family evaluated at (p, n, q) as (name, form, integer bound).

    Families whose domain excludes (p, n, q) are omitted.
    """
    rows: list[tuple[str, ExpForm | None, int | None]] = []
    try:
        form, strong = boyde_bound(p, n, q)
        rows.append(("boyde", form, strong))
        rows.append(("simple", simple_bound(p, n, q), None))
    except ParityError:
        pass
    rows.append(("henn", henn_form(n, q), henn_bound(n, q)))
    rows.append(("bodigheimer_henn", bodigheimer_henn_bound(n, q), None))
    rows.append(("selick_rank", selick_rank_bound(q), None))
    golden, cp = limitation_constants(p)
    rows.append(("golden_base", golden, None))
    rows.append(("cp_lower", cp, None))
    return rows
