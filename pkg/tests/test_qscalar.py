import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qkraw.qscalar import (
    ONE,
    Q,
    ZERO,
    LaurentScalar,
    QPow,
    phi21_terminating,
    q_binomial,
    q_multinomial,
    q_pochhammer,
)

coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=7)
laurent = st.dictionaries(st.integers(-4, 4), coeffs, max_size=4).map(LaurentScalar)


@settings(max_examples=60, deadline=None)
@given(laurent, laurent, laurent)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    assert a * b == b * a
    assert a - a == ZERO
    assert a * ONE == a


@settings(max_examples=60, deadline=None)
@given(laurent, laurent)
def test_divexact_inverts_multiplication(a, b):
    if b.is_zero():
        return
    assert (a * b).divexact(b) == a


def test_divexact_rejects_non_divisor():
    with pytest.raises(ArithmeticError):
        (Q + 2).divexact(Q - 1)


def test_canonical_form_drops_zero_coefficients():
    p = LaurentScalar({0: 1, 3: 0, -2: Fraction(0)})
    assert p.terms == {0: Fraction(1)}
    assert LaurentScalar({1: 1}) - Q == ZERO


@settings(max_examples=40, deadline=None)
@given(laurent)
def test_json_round_trip(a):
    assert LaurentScalar.from_json(a.to_json()) == a


def test_evaluate_exact_and_float():
    p = Q**2 - 3 * Q**-1
    assert p.evaluate(Fraction(1, 2)) == Fraction(1, 4) - 6
    assert p.evaluate(0.5) == pytest.approx(0.25 - 6)


def test_pochhammer_examples():
    assert q_pochhammer(0.3, 0.5, 0) == 1
    assert q_pochhammer(1.0, 0.5, 3) == 0
    assert q_pochhammer(0.3, 0.5, 3) == pytest.approx((1 - 0.3) * (1 - 0.15) * (1 - 0.075), rel=1e-15)


def test_terminating_zero_is_exact():
    # (q^-2; q^2)_2 has the factor 1 - q^0
    assert q_pochhammer(QPow(-1), Q**2, 2) == ZERO
    assert q_pochhammer(QPow(-1), 0.36, 2) == 0


def test_infinite_pochhammer():
    direct = math.prod(1 - 0.5 * 0.25**k for k in range(200))
    assert q_pochhammer(0.5, 0.25, math.inf) == pytest.approx(direct, rel=1e-15)
    with pytest.raises(ValueError):
        q_pochhammer(0.5, 1.5, math.inf)
    with pytest.raises(ValueError):
        q_pochhammer(0.5, Q, math.inf)


def test_binomial_examples():
    assert q_binomial(5, 0, Q) == ONE
    assert q_binomial(2, 1, Q) == 1 + Q
    assert q_binomial(3, 5, Q) == ZERO
    for n in range(8):
        for k in range(n + 1):
            assert q_binomial(n, k, Q) == q_binomial(n, n - k, Q)


def test_binomial_at_one_is_classical():
    for n in range(13):
        for k in range(n + 1):
            assert q_binomial(n, k, Q).evaluate(1) == math.comb(n, k)
            assert q_binomial(n, k, 1) == math.comb(n, k)


def test_pascal_recurrence():
    for n in range(1, 11):
        for k in range(1, n):
            assert q_binomial(n, k, Q) == q_binomial(n - 1, k - 1, Q) + Q**k * q_binomial(n - 1, k, Q)


def test_multinomial_examples():
    assert q_multinomial(4, (4, 0, 0), Q) == ONE
    assert q_multinomial(2, (1, 1, 0), Q) == 1 + Q
    for N in range(6):
        for a in range(N + 1):
            for b in range(N - a + 1):
                m = (a, b, N - a - b)
                assert q_multinomial(N, m, Q) == q_binomial(N, a, Q) * q_binomial(N - a, b, Q)
    with pytest.raises(ValueError):
        q_multinomial(3, (1, 1, 0), Q)


def test_multinomial_at_one_is_classical():
    for N in range(13):
        for a in range(N + 1):
            for b in range(N - a + 1):
                m = (a, b, N - a - b)
                expect = math.factorial(N) // (math.factorial(a) * math.factorial(b) * math.factorial(N - a - b))
                assert q_multinomial(N, m, Q).evaluate(1) == expect


def test_phi21_examples():
    assert phi21_terminating(0, 3, 5, 0.5, 0.7) == 1
    assert phi21_terminating(-3, 0, -5, 0.5, 0.7) == 1
    # n = 2, x = 1, N = 3: only the j = 1 term survives besides j = 0
    direct = 1 + (1 - 0.5**-2) * (1 - 0.5**-1) / ((1 - 0.5) * (1 - 0.5**-3)) * 0.2
    assert phi21_terminating(-2, -1, -3, 0.5, 0.2) == pytest.approx(direct, rel=1e-15)
    assert phi21_terminating(-2, -1, -3, 0.5, 0.2) == pytest.approx(0.8285714285714285, rel=1e-14)


def test_phi21_formal_matches_numeric():
    # with zero lower parameter the terms are Gaussian binomials, so the sum is Laurent
    exact = phi21_terminating(-3, None, None, Q, Q)
    assert isinstance(exact, LaurentScalar)
    assert exact.evaluate(0.4) == pytest.approx(phi21_terminating(-3, None, None, 0.4, 0.4), rel=1e-13)


def test_phi21_singular_denominator():
    with pytest.raises(ZeroDivisionError):
        phi21_terminating(-3, None, -1, 0.5, 0.2)
    with pytest.raises(ValueError):
        phi21_terminating(2, None, None, 0.5, 0.2)
