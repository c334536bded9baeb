"""Angle n-section machinery around the multiple-angle polynomial.

For an odd prime p the polynomial P(x, a) with P(cos t, cos pt) = 0 has
degree p, leading coefficient 2^(p-1), x-coefficient (-1)^((p-1)/2) * p,
and every non-leading coefficient divisible by p; Eisenstein at p then
certifies angles that cannot be p-sected.  Note the cos convention here
(not 2*cos): the bridge to the trisection cubic is 2*P(x, a) = p(2x, 2a).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, gcd

from .errors import BadParameters, NotOddPrime
from .polyalg import IntPoly, eisenstein_check, euler_phi, is_prime
from .trisect_core import Certificate, register_certificate_kind


@dataclass(frozen=True)
class PsectionPoly:
    """The a-free part of P(x, a) for an odd prime p; P(x, a) itself is
    this polynomial minus the parameter a."""

    p: int
    q: int
    coeffs: IntPoly

    def with_parameter(self, num: int, den: int) -> IntPoly:
        """den^p * P(x, num/den) as an integer polynomial."""
        scaled = self.coeffs * (den ** self.p)
        return scaled - IntPoly.const(num * den ** (self.p - 1))


def psection_poly(p: int) -> PsectionPoly:
    """Expand the double binomial sum for cos(p*t) in powers of cos(t);
    the structural facts are asserted on construction."""
    if p < 3 or p % 2 == 0 or not is_prime(p):
        raise NotOddPrime(f"{p} is not an odd prime")
    q = (p - 1) // 2
    coeffs = [0] * (p + 1)
    for k in range(q + 1):
        for ell in range(k + 1):
            sign = -1 if (k + ell) % 2 else 1
            coeffs[p - 2 * k + 2 * ell] += sign * comb(p, 2 * k) * comb(k, ell)
    poly = IntPoly(coeffs)
    pp = PsectionPoly(p=p, q=q, coeffs=poly)
    report = verify_structure(pp)
    if not report["ok"]:
        raise AssertionError(f"structural invariants failed for p={p}: {report}")
    return pp


def verify_structure(pp: PsectionPoly) -> dict:
    """Re-derive the three structural facts independently and compare:
    leading coefficient is the direct binomial sum over even lower indices
    (= 2^(p-1)), the x-coefficient is (-1)^q * p, and p divides every
    non-leading coefficient."""
    p, q, poly = pp.p, pp.q, pp.coeffs
    binom_sum = sum(comb(p, 2 * k) for k in range(q + 1))
    leading_ok = poly.degree == p and poly.leading == binom_sum == 2 ** (p - 1)
    x_coeff_ok = poly[1] == (-1) ** q * p
    divis_ok = all(c % p == 0 for c in poly.coeffs[:-1])
    return {
        "p": p,
        "leading": poly.leading,
        "binomial_sum": binom_sum,
        "x_coeff": poly[1],
        "leading_ok": leading_ok,
        "x_coeff_ok": x_coeff_ok,
        "divisibility_ok": divis_ok,
        "ok": leading_ok and x_coeff_ok and divis_ok,
    }


def nonsectability_cert(p: int, c: int, dd: int) -> Certificate:
    """Certificate that dd^p * P(x, c/dd) is Eisenstein at p, so the angle
    with cos = c/dd cannot be p-sected."""
    if dd < 1:
        raise BadParameters("denominator must be positive")
    if c % p != 0 or c % (p * p) == 0:
        raise BadParameters(f"need p | c and p^2 does not divide c")
    if gcd(c, dd) != 1:
        raise BadParameters("c and dd must be coprime")
    if abs(c) > dd:
        raise BadParameters("|c/dd| must be <= 1 to name a real angle")
    pp = psection_poly(p)
    cleared = pp.with_parameter(c, dd)
    if not eisenstein_check(cleared, p):
        raise AssertionError(f"Eisenstein at {p} failed for c/dd = {c}/{dd}")
    return Certificate(
        kind="eisenstein-psection",
        data={
            "p": p,
            "c": c,
            "dd": dd,
            "coeffs": cleared.coeff_strings(),
        },
    )


def _verify_psection(data: dict) -> bool:
    p, c, dd = data["p"], data["c"], data["dd"]
    if c % p != 0 or c % (p * p) == 0 or gcd(c, dd) != 1 or abs(c) > dd:
        return False
    cleared = psection_poly(p).with_parameter(c, dd)
    if cleared.coeff_strings() != data["coeffs"]:
        return False
    return eisenstein_check(cleared, p)


register_certificate_kind("eisenstein-psection", _verify_psection)


def nsect_reduce(n: int) -> dict:
    """Either n is a power of two (every angle splits by iterated
    bisection) or its smallest odd prime factor p obstructs: an angle with
    no p-section has no n-section either."""
    if n < 1:
        raise BadParameters("n must be positive")
    m = n
    while m % 2 == 0:
        m //= 2
    if m == 1:
        return {"n": n, "power_of_two": True, "obstruction": None}
    f = 3
    while m % f:
        f += 2
    return {
        "n": n,
        "power_of_two": False,
        "obstruction": f,
        "rationale": f"an n-section of any angle yields a {f}-section of it",
    }


@dataclass(frozen=True)
class DenseFamilyCert:
    """Bezout pair a*n + b*m = 1 showing 2*pi/m splits into n parts once
    2*pi/n is granted; the Gauss condition on phi(n) is reported, not
    enforced."""

    n: int
    m: int
    a: int
    b: int
    phi_power_of_two: bool


def dense_family_certificate(n: int, m: int) -> DenseFamilyCert:
    if n < 1 or m < 1:
        raise BadParameters("n and m must be positive")
    if gcd(m, n) != 1:
        raise BadParameters(f"gcd({m}, {n}) != 1")
    # least absolute residue of m^{-1} mod n keeps the pair small
    if n == 1:
        a, b = 1 - m, 1
    else:
        inv = pow(m, -1, n)
        b = inv if inv <= n - inv else inv - n
        a = (1 - b * m) // n
    assert a * n + b * m == 1
    phi = euler_phi(n)
    return DenseFamilyCert(n=n, m=m, a=a, b=b, phi_power_of_two=phi & (phi - 1) == 0)
