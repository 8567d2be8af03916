"""Unit tests for the exact sequence tables and tail weights."""

from fractions import Fraction
from math import factorial

import pytest
from mpmath import mp

from hardyz.sequences import (arcsin_power_coefficients, b_table, d_limit_check,
                              d_value, e_coefficients, f_poly, g_closed_form_sum,
                              g_limit_check, g_poly, tail_weight, tail_weight_sum)
from hardyz.precision import working_precision

PREC = 192


def test_b_first_row_factorial_squares():
    b = b_table(1, 30).entries
    for l in range(1, 31):
        assert b[1, l] == factorial(l - 1) ** 2


def test_b_recurrence_spot_values():
    b = b_table(3, 6).entries
    assert b[0, 0] == 1
    assert b[1, 1] == 1
    assert b[2, 2] == 1
    # b_{2,3} = b_{1,2} + 4 b_{2,2}
    assert b[2, 3] == b[1, 2] + 4 * b[2, 2]


def test_arcsin_power_series_numerical():
    # (Arcsin x)^2 partial series against direct evaluation
    cs = arcsin_power_coefficients(1, 40)
    with working_precision(PREC):
        x = mp.mpf("0.3")
        acc = mp.mpf(0)
        for l, c in enumerate(cs):
            acc += mp.mpf(c.numerator) / c.denominator * x ** (2 * l)
        assert abs(acc - mp.asin(x) ** 2) < mp.mpf(10) ** -40


def test_d_limits():
    d2, limit2, gap2 = d_limit_check(2, 200, prec=PREC)
    with working_precision(PREC):
        assert abs(limit2 - mp.pi ** 2 / 6) < mp.mpf(2) ** -150
    assert gap2 < 0.01 * limit2
    d3, limit3, _ = d_limit_check(3, 200, prec=PREC)
    with working_precision(PREC):
        assert abs(limit3 - mp.pi ** 4 / 120) < mp.mpf(2) ** -140
    assert d3 < limit3
    assert d_value(3, 199) < d_value(3, 200)


def test_g_first_row_is_one():
    for l in range(1, 31):
        g = g_poly(1, l)
        assert g == g.__class__({0: Fraction(1)})


def test_closed_form_sum_vanishes():
    for m in range(1, 9):
        assert g_closed_form_sum(m) == 0


def test_g_decreasing_to_zero():
    prev = None
    for L in (5, 20, 80):
        v = g_limit_check(2, L, prec=PREC)
        assert v > 0
        if prev is not None:
            assert v < prev
        prev = v


def test_e_positive():
    for m in range(1, 9):
        es = e_coefficients(m, 40)
        for l in range(1, 41):
            assert es[l].evaluate(PREC) > 0


def test_f_matches_e_scaling():
    m, l = 3, 5
    fp = f_poly(m, l)
    ep = e_coefficients(m, l)[l]
    r = Fraction(factorial(2 * m) * 2 ** (2 * l), factorial(2 * l) * 2 ** (2 * m))
    assert ep == fp.scale(r).shift(-m)


def test_tail_weight_domination_sample():
    for l in (0, 1, 10, 100, 1000):
        cap = tail_weight(10, l, prec=PREC)
        for n in (11, 15, 20):
            assert tail_weight(n, l, prec=PREC) <= cap


def test_tail_weight_sum_converges():
    total, tail = tail_weight_sum(10, 2000, prec=PREC)
    assert mp.isfinite(total)
    assert mp.isfinite(tail)
    assert tail < total


def test_regime_guards():
    with pytest.raises(ValueError):
        tail_weight(5, 3, prec=PREC)
    with pytest.raises(ValueError):
        d_limit_check(0, 10, prec=PREC)
