import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ehp_bounds.bounds import (PHI, ExpForm, all_bounds, bodigheimer_henn_bound, boyde_bound,
                               fibonacci, henn_bound, limitation_constants, selick_rank_bound,
                               simple_bound, strong_bound)
from ehp_bounds.core import DomainError, ParityError

from oracles import fib_list, strong


@pytest.mark.parametrize("p,n,q,exponent,integer", [
    (2, 3, 4, Fraction(0), 1),
    (3, 3, 3, Fraction(-3, 2), 0),
    (2, 2, 8, Fraction(5), 32),
])
def test_boyde_examples(p, n, q, exponent, integer):
    form, strong_int = boyde_bound(p, n, q)
    assert form.base == 2 and form.exponent == exponent
    assert strong_int == integer


def test_boyde_parity_and_domain():
    with pytest.raises(ParityError):
        boyde_bound(3, 4, 10)
    with pytest.raises(ParityError):
        simple_bound(5, 2, 10)
    with pytest.raises(DomainError):
        boyde_bound(4, 3, 10)


@pytest.mark.parametrize("p,n,q,exponent", [(2, 3, 4, 1), (3, 3, 3, 0), (5, 5, 13, 2)])
def test_simple_examples(p, n, q, exponent):
    assert simple_bound(p, n, q) == ExpForm(Fraction(2), Fraction(exponent))


def test_henn_examples():
    assert henn_bound(3, 4) == 4
    assert henn_bound(3, 3) == 2
    assert henn_bound(5, 3) == 0
    assert henn_bound(4, 3) == 1


def test_bodigheimer_henn_examples():
    assert bodigheimer_henn_bound(3, 4).exponent == Fraction(5, 2)
    assert bodigheimer_henn_bound(2, 1).exponent == 0
    assert bodigheimer_henn_bound(4, 6) == ExpForm(Fraction(3), Fraction(4))
    assert bodigheimer_henn_bound(4, 6).value() == pytest.approx(81.0, rel=1e-14)


def test_selick():
    assert selick_rank_bound(1) == ExpForm(Fraction(3), Fraction(1))
    assert selick_rank_bound(4).exponent == 16
    with pytest.raises(DomainError):
        selick_rank_bound(0)
    assert selick_rank_bound(300).value() == math.inf


def test_fibonacci():
    assert fibonacci(1) == fibonacci(2) == 1
    assert fibonacci(7) == 13
    assert fibonacci(13) == 233
    f = fib_list(500)
    assert [fibonacci(k) for k in range(1, 501)] == f[1:501]
    with pytest.raises(DomainError):
        fibonacci(0)


def test_fibonacci_ratio_tends_to_phi():
    assert abs(fibonacci(41) / fibonacci(40) - PHI) < 1e-6
    assert PHI == pytest.approx((1 + math.sqrt(5)) / 2, rel=1e-15)


def test_limitation_constants():
    golden, cp = limitation_constants(2)
    assert golden.value() == pytest.approx(1.0768, abs=5e-5)
    assert golden.value() == pytest.approx(math.exp(2 / 13 * math.log(1.6180339887)), rel=1e-9)
    assert cp.value() == 0.5
    assert limitation_constants(3)[1].value() == pytest.approx(0.70711, abs=5e-6)


def test_expform_compare():
    a = ExpForm(Fraction(2), Fraction(3))
    b = ExpForm(Fraction(3), Fraction(2))
    assert a.compare(b) == -1 and b.compare(a) == 1
    # 4^(1/2) vs 2^1, different bases, equal values
    assert ExpForm(Fraction(4), Fraction(1, 2)).compare(ExpForm(Fraction(2), Fraction(1))) == 0
    half = Fraction(1, 2)
    assert ExpForm(half, Fraction(1)).compare(ExpForm(half, Fraction(2))) == 1
    with pytest.raises(DomainError):
        ExpForm(Fraction(0), Fraction(1))
    assert ExpForm(Fraction(2), Fraction(5)).floor_int() == 32
    assert ExpForm(Fraction(2), Fraction(-1)).floor_int() == 0


def test_all_bounds_lists_families():
    names = [r[0] for r in all_bounds(3, 3, 9)]
    assert names[:3] == ["boyde", "simple", "henn"]
    names = [r[0] for r in all_bounds(3, 4, 9)]
    assert "boyde" not in names and "henn" in names


primes = st.sampled_from([2, 3, 5, 7])


@given(primes, st.integers(0, 60))
def test_boyde_dominated_by_henn_exactly(p, stem):
    form, _ = boyde_bound(p, 1, 1 + stem)
    assert form.exponent <= stem + 1
    assert (p - 2) * stem + 3 * p - 4 >= 0


@given(primes, st.integers(1, 80), st.integers(1, 120))
def test_strong_vs_real(p, n, q):
    if p != 2 and n % 2 == 0:
        return
    form, s = boyde_bound(p, n, q)
    assert s == strong(p, n, q) == strong_bound(p, n, q)
    assert s <= form.value() * (1 + 1e-12)
    num = q - n + 3 - 2 * p
    exact = num % (p - 1) == 0 and num >= 0
    assert (s == form.value()) == exact


@given(primes, st.integers(1, 200))
def test_zero_stem_strong_is_zero(p, n):
    if p != 2 and n % 2 == 0:
        return
    assert boyde_bound(p, n, n)[1] == 0
