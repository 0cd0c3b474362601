import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from emptymono.bounds import (Bound, c_const, certify, degree_schedule, improved_c_closed, improved_c_const,
                              int_root_ceil, log2_floor, rational_bound)


def test_constants():
    assert c_const(3) == 39
    assert c_const(4) == 84
    assert improved_c_const(3) < c_const(3)
    assert improved_c_const(3) == improved_c_closed(3) == 25
    for d in range(3, 8):
        # the integer schedule never loses to the closed form
        assert improved_c_const(d) <= improved_c_closed(d)


def test_degree_schedule_bands():
    d = 3
    assert degree_schedule(d, 13) == 6
    assert degree_schedule(d, 12) == 5
    assert degree_schedule(d, 7) == 5
    assert degree_schedule(d, 6) == 4


@given(st.integers(0, 10 ** 12), st.integers(0, 4))
def test_int_root_ceil(m, e):
    c = int_root_ceil(m, e)
    k = 2 ** e
    assert c ** k >= m
    assert c == 0 or (c - 1) ** k < m


@given(st.integers(1, 10 ** 9))
def test_log2_floor(m):
    assert 2 ** log2_floor(m) <= m < 2 ** (log2_floor(m) + 1)


@given(st.integers(-50, 500), st.integers(2, 10 ** 6), st.fractions(0, 5, max_denominator=9))
def test_log_bound_is_exact(a, m, coef):
    b = Bound("t", Fraction(0), "log2", coef, m)
    lhs = Fraction(a)
    if coef == 0:
        assert b.satisfied_by(a) == (a >= 0)
        return
    # exact: a >= coef*log2 m  <=>  2**(a/coef) >= m
    ref = lhs >= 0 and 2 ** (lhs / coef) >= m if abs(float(lhs / coef) - math.log2(m)) > 1e-9 else None
    if ref is not None:
        assert b.satisfied_by(a) == ref


@given(st.integers(0, 200), st.integers(1, 10 ** 6), st.integers(0, 3))
def test_root_bound_is_exact(a, m, e):
    b = Bound("t", Fraction(0), "root", Fraction(1), m, e)
    assert b.satisfied_by(a) == (a ** (2 ** e) >= m)


def test_certificate_json():
    c = certify(10, rational_bound("x", Fraction(19, 2)))
    j = c.to_json()
    assert j["holds"] and j["slack"] == "1/2" and j["bound"] == "19/2"
    assert not certify(3, rational_bound("x", 4)).holds
    with pytest.raises(ValueError):
        Bound("a", Fraction(0), "log2", Fraction(1), 4) + Bound("b", Fraction(0), "log2", Fraction(1), 4)
