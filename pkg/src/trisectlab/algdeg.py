"""Degrees of the cosine tower around pi/3 +- pi/2^n.

The quantities tracked are a_n = 2cos(pi/2^n), b_n = 2sin(pi/2^n),
c_n = 2cos(pi/3 + pi/2^n), d_n = 2cos(pi/3 - pi/2^n).  Degrees over Q come
from an independent cyclotomic oracle (2cos(2*pi*j/m) has degree phi(m)/2
for m >= 3), the doubling tower p_1 = x^2 - 2, p_n = p_1 ∘ p_{n-1} is
checked structurally and against the Chebyshev-like family, and the eight
standard identities linking a, b, c, d are verified exactly where the
values live in degree <= 2 fields and by certified interval arithmetic
beyond that.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import mpmath

from .errors import BadParameters, CapExceeded, NotCoprime
from .exact_arith import QuadElem
from .polyalg import IntPoly, chebyshev_like, cos_minimal_poly, eisenstein_check, euler_phi

DEGREE_CAP = 4096


@dataclass(frozen=True)
class AngleNumber:
    """2cos(2*pi*j/m) for coprime j, m, with its minimal polynomial."""

    j: int
    m: int
    minimal_poly: IntPoly

    @property
    def degree(self) -> int:
        return self.minimal_poly.degree

    def value(self, prec: int = 100):
        with mpmath.workprec(prec):
            return 2 * mpmath.cos(2 * mpmath.pi * self.j / self.m)


def angle_number(j: int, m: int, verify: bool = True) -> AngleNumber:
    if m < 1 or j < 1:
        raise BadParameters("need positive j, m")
    if gcd(j, m) != 1:
        raise NotCoprime(f"gcd({j}, {m}) != 1")
    poly = cos_minimal_poly(m)
    num = AngleNumber(j=j, m=m, minimal_poly=poly)
    if verify:
        _verify_numeric_root(num)
    return num


def _verify_numeric_root(num: AngleNumber, tol_exp: int = -25) -> None:
    poly = num.minimal_poly
    bits = max(abs(c).bit_length() for c in poly.coeffs)
    prec = bits + 2 * poly.degree + 200
    with mpmath.workprec(prec):
        x = 2 * mpmath.cos(2 * mpmath.pi * num.j / num.m)
        residual = abs(poly.evaluate(x))
        if residual >= mpmath.mpf(10) ** tol_exp:
            raise AssertionError(
                f"2cos(2*pi*{num.j}/{num.m}) misses its minimal polynomial "
                f"by {mpmath.nstr(residual, 5)}"
            )


def angle_degree(j: int, m: int) -> int:
    """Degree over Q of 2cos(2*pi*j/m): phi(m)/2 for m >= 3, else 1; the
    minimal polynomial is built and its numeric root verified."""
    return angle_number(j, m).degree


def p_tower(n: int, cap: int = DEGREE_CAP) -> IntPoly:
    """p_n = p_1 composed with itself n-1 times, p_1 = x^2 - 2; exact."""
    if n < 1:
        raise BadParameters("n must be >= 1")
    if 2 ** n > cap:
        raise CapExceeded(f"degree 2^{n} exceeds cap {cap}")
    p1 = IntPoly((-2, 0, 1))
    poly = p1
    for _ in range(n - 1):
        poly = p1.compose(poly)
    return poly


def _a_quad(n: int) -> QuadElem:
    """a_n as an exact element of Q(sqrt(2)) for n <= 2."""
    table = {0: QuadElem(-2, 0, 1, 2), 1: QuadElem(0, 0, 1, 2), 2: QuadElem(0, 1, 1, 2)}
    return table[n]


def _compose_square_minus_2(x, k: int):
    for _ in range(k):
        x = x * x - 2
    return x


def tower_checks(n: int, cap: int = DEGREE_CAP) -> dict:
    """Verify the tower polynomial p_n: the x^(2^n) + 2x*q(x) +- 2 shape,
    Eisenstein at 2, the descent p_k(a_n) = a_{n-k} (exactly where a_n has
    degree <= 2, by interval arithmetic elsewhere), and agreement with the
    Chebyshev-like family at index 2^n."""
    poly = p_tower(n, cap=cap)
    shape_ok = (
        poly.leading == 1
        and abs(poly.coeffs[0]) == 2
        and all(c % 2 == 0 for c in poly.coeffs[:-1])
    )
    eis_ok = eisenstein_check(poly, 2)
    descent = []
    for k in range(1, n + 1):
        if n <= 2:
            got = p_tower(k, cap=cap).evaluate(_a_quad(n))
            want = _a_quad(n - k)
            ok = got == want
            descent.append({"k": k, "method": "exact", "ok": bool(ok)})
        else:
            # evaluate p_k through its defining composition; the expanded
            # monomial form cancels catastrophically near x = 2
            ok, width = _interval_zero(
                lambda iv, k=k: _compose_square_minus_2(
                    2 * iv.cos(iv.pi / 2 ** n), k
                )
                - 2 * iv.cos(iv.pi / 2 ** (n - k))
            )
            descent.append({"k": k, "method": "interval", "ok": ok, "width": width})
    cheb_ok = poly == chebyshev_like(2 ** n)
    all_ok = shape_ok and eis_ok and cheb_ok and all(r["ok"] for r in descent)
    return {
        "n": n,
        "shape_ok": shape_ok,
        "eisenstein_at_2": eis_ok,
        "descent": descent,
        "chebyshev_match": cheb_ok,
        "ok": all_ok,
    }


def cn_degree_check(n: int, cap: int = DEGREE_CAP) -> dict:
    """2cos(pi/3 + pi/2^n) equals 2cos(2*pi*(2^n+3)/(3*2^(n+1))); its
    degree must be exactly 2^n."""
    if n < 1:
        raise BadParameters("n must be >= 1")
    j, m = 2 ** n + 3, 3 * 2 ** (n + 1)
    g = gcd(j, m)
    j, m = j // g, m // g
    if euler_phi(m) // 2 > cap:
        raise CapExceeded(f"phi({m})/2 exceeds cap {cap}")
    degree = angle_degree(j, m)
    return {"n": n, "j": j, "m": m, "degree": degree, "expected": 2 ** n, "ok": degree == 2 ** n}


def dn_degree_check(n: int, cap: int = DEGREE_CAP) -> dict:
    """Companion check for 2cos(pi/3 - pi/2^n), mapping the angle to its
    positive residue (cos is even, so n = 1 folds to pi/6)."""
    if n < 1:
        raise BadParameters("n must be >= 1")
    j, m = abs(2 ** n - 3), 3 * 2 ** (n + 1)
    g = gcd(j, m)
    j, m = j // g, m // g
    if euler_phi(m) // 2 > cap:
        raise CapExceeded(f"phi({m})/2 exceeds cap {cap}")
    degree = angle_degree(j, m)
    expected = 2 ** n if n >= 2 else 2
    return {"n": n, "j": j, "m": m, "degree": degree, "expected": expected, "ok": degree == expected}


class Biquad:
    """Exact arithmetic in Q(sqrt(2), sqrt(3)): w + x*sqrt(2) + y*sqrt(3)
    + z*sqrt(6) with rational coordinates.  Only the little that the n <= 2
    table needs."""

    __slots__ = ("w", "x", "y", "z")

    def __init__(self, w=0, x=0, y=0, z=0):
        self.w, self.x, self.y, self.z = (Fraction(t) for t in (w, x, y, z))

    def __eq__(self, other) -> bool:
        other = other if isinstance(other, Biquad) else Biquad(other)
        return (self.w, self.x, self.y, self.z) == (other.w, other.x, other.y, other.z)

    def __add__(self, other):
        other = other if isinstance(other, Biquad) else Biquad(other)
        return Biquad(self.w + other.w, self.x + other.x, self.y + other.y, self.z + other.z)

    __radd__ = __add__

    def __neg__(self):
        return Biquad(-self.w, -self.x, -self.y, -self.z)

    def __sub__(self, other):
        other = other if isinstance(other, Biquad) else Biquad(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = other if isinstance(other, Biquad) else Biquad(other)
        w1, x1, y1, z1 = self.w, self.x, self.y, self.z
        w2, x2, y2, z2 = other.w, other.x, other.y, other.z
        return Biquad(
            w1 * w2 + 2 * x1 * x2 + 3 * y1 * y2 + 6 * z1 * z2,
            w1 * x2 + x1 * w2 + 3 * (y1 * z2 + z1 * y2),
            w1 * y2 + y1 * w2 + 2 * (x1 * z2 + z1 * x2),
            w1 * z2 + z1 * w2 + x1 * y2 + y1 * x2,
        )

    __rmul__ = __mul__

    def interval(self, iv):
        return (
            iv.mpf(self.w.numerator) / self.w.denominator
            + iv.mpf(self.x.numerator) / self.x.denominator * iv.sqrt(2)
            + iv.mpf(self.y.numerator) / self.y.denominator * iv.sqrt(3)
            + iv.mpf(self.z.numerator) / self.z.denominator * iv.sqrt(6)
        )

    def __repr__(self):
        return f"Biquad({self.w}, {self.x}, {self.y}, {self.z})"


SQRT3 = Biquad(0, 0, 1, 0)
HALF = Fraction(1, 2)

# table of exact values for n = 0, 1, 2
TABLE = {
    "a": {0: Biquad(-2), 1: Biquad(0), 2: Biquad(0, 1)},
    "b": {0: Biquad(0), 1: Biquad(2), 2: Biquad(0, 1)},
    "c": {0: Biquad(-1), 1: -SQRT3, 2: Biquad(0, HALF, 0, -HALF)},
    "d": {0: Biquad(-1), 1: SQRT3, 2: Biquad(0, HALF, 0, HALF)},
}

# (name, lhs(vals, n), rhs(vals, n)); vals[q][n] gives the quantity q at n,
# and vals supplies "root3" and "half" in whichever arithmetic is in play
IDENTITIES = (
    ("a-prev-is-a-squared-minus-2", lambda v, n: v["a"][n - 1], lambda v, n: v["a"][n] * v["a"][n] - 2),
    ("a-prev-is-2-minus-b-squared", lambda v, n: v["a"][n - 1], lambda v, n: 2 - v["b"][n] * v["b"][n]),
    ("b-prev-is-a-times-b", lambda v, n: v["b"][n - 1], lambda v, n: v["a"][n] * v["b"][n]),
    ("c-is-half-a-minus-half-root3-b", lambda v, n: v["c"][n],
     lambda v, n: (v["a"][n] - v["root3"] * v["b"][n]) * v["half"]),
    ("d-is-half-a-plus-half-root3-b", lambda v, n: v["d"][n],
     lambda v, n: (v["a"][n] + v["root3"] * v["b"][n]) * v["half"]),
    ("d-prev-is-2-minus-c-squared", lambda v, n: v["d"][n - 1], lambda v, n: 2 - v["c"][n] * v["c"][n]),
    ("a-prev-is-c-times-d-plus-1", lambda v, n: v["a"][n - 1], lambda v, n: v["c"][n] * v["d"][n] + 1),
    ("c-prev-is-2-minus-d-squared", lambda v, n: v["c"][n - 1], lambda v, n: 2 - v["d"][n] * v["d"][n]),
)

EXACT_TABLE = {**TABLE, "root3": SQRT3, "half": Biquad(HALF)}


def _interval_values(iv, N: int) -> dict:
    pi = iv.pi
    vals = {"a": {}, "b": {}, "c": {}, "d": {}, "root3": iv.sqrt(3), "half": iv.mpf(0.5)}
    for n in range(N + 1):
        t = pi / 2 ** n
        vals["a"][n] = 2 * iv.cos(t)
        vals["b"][n] = 2 * iv.sin(t)
        vals["c"][n] = 2 * iv.cos(pi / 3 + t)
        vals["d"][n] = 2 * iv.cos(pi / 3 - t)
    return vals


def _interval_zero(make_residual, prec: int = 100, retry_prec: int = 200):
    """Evaluate a residual in interval arithmetic; certified zero iff the
    interval contains 0 with width below 2^-64.  One retry at higher
    precision on an indeterminate answer."""
    iv = mpmath.iv
    for p in (prec, retry_prec):
        old = iv.prec
        try:
            iv.prec = p
            res = make_residual(iv)
            width = float(res.delta)
            if 0 in res and width < 2.0 ** -64:
                return True, width
        finally:
            iv.prec = old
    return False, width


def identity_suite(N: int) -> dict:
    """Check all eight identities for 1 <= n <= N: exactly over
    Q(sqrt(2), sqrt(3)) while every quantity lives there (n <= 2), by
    certified interval arithmetic beyond; also re-derives the tabulated
    values for n <= 2 against their defining cosines."""
    if N < 1:
        raise BadParameters("N must be >= 1")
    records = []
    table_ok = True
    for name, col in TABLE.items():
        for n, exact in col.items():
            ok, width = _interval_zero(
                lambda iv, name=name, n=n, exact=exact: exact.interval(iv)
                - _interval_values(iv, n)[name][n]
            )
            table_ok = table_ok and ok
            records.append(
                {"check": f"table-{name}{n}", "n": n, "method": "interval", "ok": ok, "width": width}
            )
    for n in range(1, N + 1):
        if n <= 2:
            for name, lhs, rhs in IDENTITIES:
                got_l, got_r = lhs(EXACT_TABLE, n), rhs(EXACT_TABLE, n)
                ok = got_l == got_r
                records.append({"check": name, "n": n, "method": "exact", "ok": bool(ok)})
        else:
            for name, lhs, rhs in IDENTITIES:
                ok, width = _interval_zero(
                    lambda iv, name=name, n=n, lhs=lhs, rhs=rhs: (
                        lambda vals: lhs(vals, n) - rhs(vals, n)
                    )(_interval_values(iv, n))
                )
                records.append(
                    {"check": name, "n": n, "method": "interval", "ok": ok, "width": width}
                )
    all_ok = table_ok and all(r["ok"] for r in records)
    max_width = max((r.get("width", 0.0) for r in records), default=0.0)
    return {"N": N, "records": records, "max_width": max_width, "ok": all_ok}
