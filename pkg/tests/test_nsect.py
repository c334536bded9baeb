"""Multiple-angle polynomial structure and n-section certificates."""

import random
from fractions import Fraction

import mpmath
import pytest

from trisectlab.errors import BadParameters, NotOddPrime
from trisectlab.nsect import (
    dense_family_certificate,
    nonsectability_cert,
    nsect_reduce,
    psection_poly,
    verify_structure,
)
from trisectlab.polyalg import IntPoly, eisenstein_check, is_prime
from trisectlab.trisect_core import decide_trisection

ODD_PRIMES_TO_31 = (3, 5, 7, 11, 13, 17, 19, 23, 29, 31)


def test_psection_examples():
    assert psection_poly(3).coeffs == IntPoly((0, -3, 0, 4))
    assert psection_poly(5).coeffs == IntPoly((0, 5, 0, -20, 0, 16))
    assert psection_poly(7).coeffs == IntPoly((0, -7, 0, 56, 0, -112, 0, 64))
    with pytest.raises(NotOddPrime):
        psection_poly(2)
    with pytest.raises(NotOddPrime):
        psection_poly(9)


def test_structure_to_101():
    for p in range(3, 102):
        if not is_prime(p):
            continue
        report = verify_structure(psection_poly(p))
        assert report["ok"], report
        assert report["leading"] == 2 ** (p - 1)
        assert report["x_coeff"] == (-1) ** ((p - 1) // 2) * p


def test_multiple_angle_identity_numeric():
    """Evaluating the a-free part at cos(t) reproduces cos(p*t)."""
    rng = random.Random(31)
    with mpmath.workprec(150):
        for p in ODD_PRIMES_TO_31:
            poly = psection_poly(p).coeffs
            for _ in range(100):
                t = mpmath.mpf(rng.random()) * 6 - 3
                got = poly.evaluate(mpmath.cos(t))
                assert abs(got - mpmath.cos(p * t)) < mpmath.mpf(10) ** -25


def test_trisection_bridge_exact():
    # doubling both variables in the cos-convention cubic gives the
    # 2cos-convention cubic: 2*P(x, a) = p(2x, 2a)
    lhs = psection_poly(3).coeffs * 2            # 8x^3 - 6x
    rhs = IntPoly((0, -6, 0, 8))                 # (2x)^3 - 3*(2x)
    assert lhs == rhs


def test_nonsectability_certificates():
    cert = nonsectability_cert(3, 3, 4)
    assert cert.data["coeffs"] == ["-48", "-192", "0", "256"]
    assert cert.verify()
    assert eisenstein_check(IntPoly([int(c) for c in cert.data["coeffs"]]), 3)

    cert = nonsectability_cert(5, 5, 7)
    assert cert.verify()
    assert eisenstein_check(IntPoly([int(c) for c in cert.data["coeffs"]]), 5)

    with pytest.raises(BadParameters):
        nonsectability_cert(3, 9, 10)  # 9 divisible by p^2
    with pytest.raises(BadParameters):
        nonsectability_cert(3, 3, 6)   # gcd(c, dd) != 1
    with pytest.raises(BadParameters):
        nonsectability_cert(3, 6, 5)   # p^2 fine but |c/dd| > 1
    with pytest.raises(BadParameters):
        nonsectability_cert(5, 3, 4)   # p does not divide c


def test_cross_check_with_trisection_decision():
    """A cos-convention certificate at p = 3 for cos = c/dd forces the
    2cos-convention value 2c/dd to be refused."""
    for c, dd in ((3, 4), (3, 5), (-3, 4), (3, 7), (-3, 8), (6, 7), (-6, 7)):
        if abs(Fraction(2 * c, dd)) > 2:
            continue
        cert = nonsectability_cert(3, c, dd)
        assert cert.verify()
        assert not decide_trisection(Fraction(2 * c, dd)).member


def test_nsect_reduce():
    assert nsect_reduce(8)["power_of_two"]
    assert nsect_reduce(1)["power_of_two"]
    assert nsect_reduce(12)["obstruction"] == 3
    assert nsect_reduce(15)["obstruction"] == 3
    assert nsect_reduce(35)["obstruction"] == 5


def test_dense_family_certificates():
    cert = dense_family_certificate(5, 4)
    assert (cert.a, cert.b) == (1, -1) and cert.phi_power_of_two
    cert = dense_family_certificate(3, 2)
    assert (cert.a, cert.b) == (1, -1)
    with pytest.raises(BadParameters):
        dense_family_certificate(5, 10)
    rng = random.Random(13)
    for _ in range(100):
        n, m = rng.randint(1, 400), rng.randint(1, 400)
        from math import gcd

        if gcd(n, m) != 1:
            continue
        cert = dense_family_certificate(n, m)
        assert cert.a * n + cert.b * m == 1
