"""Doubling tower, exact table, identity residuals, and cosine degrees."""

import random

import mpmath
import pytest

from trisectlab.algdeg import (
    Biquad,
    TABLE,
    angle_degree,
    angle_number,
    cn_degree_check,
    dn_degree_check,
    identity_suite,
    p_tower,
    tower_checks,
)
from trisectlab.errors import CapExceeded, NotCoprime
from trisectlab.polyalg import IntPoly


def test_p_tower_examples():
    assert p_tower(1) == IntPoly((-2, 0, 1))
    assert p_tower(2) == IntPoly((2, 0, -4, 0, 1))
    assert p_tower(3) == IntPoly((2, 0, -16, 0, 20, 0, -8, 0, 1))
    with pytest.raises(CapExceeded):
        p_tower(50)


def test_tower_checks():
    report = tower_checks(2)
    assert report["ok"]
    assert all(r["method"] == "exact" for r in report["descent"])
    for n in range(1, 11):
        assert tower_checks(n)["ok"], n


def test_tower_descent_value():
    # p_2(sqrt(2)) = 4 - 8 + 2 = -2
    from trisectlab.exact_arith import QuadElem

    got = p_tower(2).evaluate(QuadElem(0, 1, 1, 2))
    assert got == QuadElem(-2, 0, 1, 2)


def test_doubling_identity_numeric():
    rng = random.Random(41)
    for n in range(1, 11):
        poly = p_tower(n)
        # Horner on the monomial form cancels near |x| = 2; budget the
        # precision from the exact magnitude bound sum |c_i| 2^i
        magnitude = sum(abs(c) * 2 ** i for i, c in enumerate(poly.coeffs))
        with mpmath.workprec(magnitude.bit_length() + 120):
            for _ in range(50):
                t = mpmath.mpf(rng.random()) * 6 - 3
                got = poly.evaluate(2 * mpmath.cos(t))
                assert abs(got - 2 * mpmath.cos(2 ** n * t)) < mpmath.mpf(10) ** -25


def test_angle_degree_examples():
    assert angle_degree(1, 12) == 2
    assert angle_number(1, 12).minimal_poly == IntPoly((-3, 0, 1))
    assert angle_degree(1, 1) == 1
    assert angle_degree(7, 24) == 4
    with pytest.raises(NotCoprime):
        angle_degree(2, 12)


def test_a_sequence_degrees():
    for n in range(1, 11):
        assert angle_degree(1, 2 ** (n + 1)) == 2 ** (n - 1)


def test_cn_dn_degrees():
    assert cn_degree_check(1)["degree"] == 2   # value -sqrt(3)
    assert cn_degree_check(2)["degree"] == 4
    for n in range(1, 9):
        assert cn_degree_check(n)["ok"]
    assert dn_degree_check(1)["degree"] == 2   # folds to 2cos(pi/6) = sqrt(3)
    for n in range(2, 9):
        assert dn_degree_check(n)["ok"]


def test_biquad_arithmetic():
    r2 = Biquad(0, 1)
    r3 = Biquad(0, 0, 1)
    assert r2 * r2 == Biquad(2)
    assert r3 * r3 == Biquad(3)
    assert r2 * r3 == Biquad(0, 0, 0, 1)
    assert (r2 + r3) * (r2 - r3) == Biquad(-1)


def test_exact_table_reproduces():
    # c_2 = (1 - sqrt(3))/sqrt(2) = (sqrt(2) - sqrt(6))/2 and its mirror
    assert TABLE["c"][2] * Biquad(0, 1) == Biquad(1, 0, -1)
    assert TABLE["d"][2] * Biquad(0, 1) == Biquad(1, 0, 1)
    # a_2 = b_2 = sqrt(2); squares are 2
    assert TABLE["a"][2] * TABLE["a"][2] == Biquad(2)
    suite = identity_suite(2)
    assert suite["ok"]
    table_checks = [r for r in suite["records"] if r["check"].startswith("table-")]
    assert len(table_checks) == 12 and all(r["ok"] for r in table_checks)


def test_identity_examples():
    # d_0 = 2 - c_1^2 = 2 - 3 = -1
    assert 2 - TABLE["c"][1] * TABLE["c"][1] == TABLE["d"][0]
    # d_1 = 2 - c_2^2 = sqrt(3)
    assert 2 - TABLE["c"][2] * TABLE["c"][2] == Biquad(0, 0, 1)
    # c_1 = a_1/2 - (sqrt(3)/2) b_1 = -sqrt(3)
    lhs = (TABLE["a"][1] - Biquad(0, 0, 1) * TABLE["b"][1]) * Biquad("1/2")
    assert lhs == TABLE["c"][1]


def test_identity_suite_residuals():
    suite = identity_suite(10)
    assert suite["ok"]
    assert suite["max_width"] < 2.0 ** -64
    exact = [r for r in suite["records"] if r["method"] == "exact"]
    assert len(exact) == 16  # eight identities at n = 1 and n = 2
