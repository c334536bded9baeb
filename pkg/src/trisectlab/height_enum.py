"""Enumeration and counting of height balls and the box construction that
certifies a lower bound for the in-interval count.

A height ball B(R) over a field is the finite set of canonical elements of
height at most R.  Enumeration is lexicographic in (b, a1[, a2]) so streams
are reproducible; counting goes through the coprime-tuple sieve instead of
enumeration and the two are cross-checked in the tests.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from .coprime_count import Box, mobius_table, sieve_count, zeta
from .errors import BadParameters, CapExceeded
from .exact_arith import (
    FieldDescriptor,
    QuadElem,
    floor_linear,
    in_interval,
)

DEFAULT_ENUM_CAP = 20_000_000


@dataclass(frozen=True)
class HeightBall:
    """All elements of the field with height <= R."""

    field: FieldDescriptor
    R: Fraction

    def __init__(self, field: FieldDescriptor, R):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "R", Fraction(R))

    @property
    def bound(self) -> int:
        """Integer coordinate bound floor(R)."""
        return self.R.numerator // self.R.denominator


def count_ball(ball: HeightBall) -> int:
    """Exact |B(R)| assembled from sieve counts over the sign/zero pattern
    decomposition plus the singleton zero element."""
    F = ball.bound
    if F < 1:
        return 0
    if ball.field.degree == 1:
        return 2 * sieve_count(Box((F, F))) + 1
    return 4 * sieve_count(Box((F, F, F))) + 4 * sieve_count(Box((F, F))) + 1


def enumerate_ball(ball: HeightBall, cap: int | None = None):
    """Yield every element of B(R) exactly once, lexicographic in
    (b, a1[, a2])."""
    cap = DEFAULT_ENUM_CAP if cap is None else cap
    if count_ball(ball) > cap:
        raise CapExceeded(f"|B({ball.R})| exceeds cap {cap}")
    F = ball.bound
    if ball.field.degree == 1:
        for b in range(1, F + 1):
            for a in range(-F, F + 1):
                if gcd(a, b) == 1:
                    yield Fraction(a, b)
        return
    d = ball.field.d
    for b in range(1, F + 1):
        for a1 in range(-F, F + 1):
            g1 = gcd(a1, b)
            for a2 in range(-F, F + 1):
                if gcd(g1, a2) == 1:
                    yield QuadElem(a1, a2, b, d)


def enumerate_ball_interval(ball: HeightBall, lo, hi, cap: int | None = None, b_values=None):
    """Yield the elements of B(R) lying in [lo, hi], same order as
    :func:`enumerate_ball`.

    The a1 range is clipped per (b, a2) to the strip
    |a1 + a2*sqrt(d)| <= max(|lo|, |hi|)*b before the gcd test; membership
    itself is decided exactly.  ``b_values`` restricts the denominators
    visited (the sharding hook); the cap is enforced only on full streams.
    """
    lo, hi = Fraction(lo), Fraction(hi)
    if lo > hi:
        raise BadParameters("interval endpoints out of order")
    F = ball.bound
    if b_values is None:
        cap = DEFAULT_ENUM_CAP if cap is None else cap
        if count_ball_interval(ball, lo, hi) > cap:
            raise CapExceeded(f"|B({ball.R}) in [{lo}, {hi}]| exceeds cap {cap}")
        b_values = range(1, F + 1)
    if ball.field.degree == 1:
        for b in b_values:
            a_lo = max(-F, math.ceil(lo * b))
            a_hi = min(F, math.floor(hi * b))
            for a in range(a_lo, a_hi + 1):
                if gcd(a, b) == 1:
                    yield Fraction(a, b)
        return
    d = ball.field.d
    strip = max(abs(lo), abs(hi))
    for b in b_values:
        sb = strip * b
        for a2 in range(-F, F + 1):
            a_lo = max(-F, -floor_linear(sb, a2, d))
            a_hi = min(F, floor_linear(sb, -a2, d))
            g1 = gcd(a2, b)
            for a1 in range(a_lo, a_hi + 1):
                if gcd(g1, a1) == 1:
                    x = QuadElem(a1, a2, b, d)
                    if in_interval(x, lo, hi):
                        yield x


def materialize_lines(stream) -> str:
    """One canonical element per line, in stream order."""
    from .exact_arith import format_element

    return "".join(format_element(x) + "\n" for x in stream)


def materialize_json(stream) -> str:
    """JSON array of canonical element strings, in stream order."""
    import json

    from .exact_arith import format_element

    return json.dumps([format_element(x) for x in stream])


_SPF_CACHE: list[int] = [0, 1]


def _spf_table(n: int) -> list[int]:
    """Smallest-prime-factor table up to n, memoized."""
    global _SPF_CACHE
    if n < len(_SPF_CACHE):
        return _SPF_CACHE
    size = max(n + 1, 2 * len(_SPF_CACHE))
    spf = list(range(size))
    for p in range(2, isqrt(size - 1) + 1):
        if spf[p] == p:
            for m in range(p * p, size, p):
                if spf[m] == m:
                    spf[m] = p
    _SPF_CACHE = spf
    return spf


def _signed_squarefree_divisors(n: int) -> list[tuple[int, int]]:
    """(divisor, mu) pairs over the squarefree divisors of n."""
    spf = _spf_table(n)
    out = [(1, 1)]
    while n > 1:
        p = spf[n]
        while n % p == 0:
            n //= p
        out += [(d * p, -s) for d, s in out]
    return out


def _coprime_in_range(a_lo: int, a_hi: int, g: int) -> int:
    """#{a in [a_lo, a_hi] : gcd(a, g) = 1}, counting a = 0 only when
    g = 1 (gcd(0, g) = g convention)."""
    if a_lo > a_hi:
        return 0
    if g == 1:
        return a_hi - a_lo + 1
    total = 0
    for e, s in _signed_squarefree_divisors(g):
        total += s * (a_hi // e - (a_lo - 1) // e)
    return total


def count_ball_interval(ball: HeightBall, lo, hi) -> int:
    """Exact |B(R) ∩ [lo, hi]| without materializing the stream."""
    lo, hi = Fraction(lo), Fraction(hi)
    if lo > hi:
        raise BadParameters("interval endpoints out of order")
    F = ball.bound
    if F < 1:
        return 0
    total = 0
    if ball.field.degree == 1:
        for b in range(1, F + 1):
            a_lo = max(-F, math.ceil(lo * b))
            a_hi = min(F, math.floor(hi * b))
            total += _coprime_in_range(a_lo, a_hi, b)
        return total
    d = ball.field.d
    for b in range(1, F + 1):
        lob, hib = lo * b, hi * b
        for a2 in range(-F, F + 1):
            a_lo = max(-F, -floor_linear(-lob, a2, d))
            a_hi = min(F, floor_linear(hib, -a2, d))
            total += _coprime_in_range(a_lo, a_hi, gcd(a2, b))
    return total


@dataclass(frozen=True)
class QBoxSpec:
    """The box pair (m, n) whose set difference is a certified subset of
    B(R) ∩ [-2, 2]: m_i = n_i = 2R/((k+1)v_i) over the basis elements, and
    the last coordinate runs over (kR/(k+1), R]."""

    field: FieldDescriptor
    R: Fraction

    def __init__(self, field: FieldDescriptor, R):
        R = Fraction(R)
        if R < field.degree + 1:
            raise BadParameters("need R >= k+1 for a nonempty box pair")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "R", R)

    def side_floors(self, j: int = 1):
        """Floored sides (n/j, m/j) of the outer and inner boxes; the
        irrational side 2R/((k+1)sqrt(d)) floors exactly through isqrt."""
        k = self.field.degree
        R = self.R
        c = 2 * R / (k + 1)
        if k == 1:
            n = (math.floor(c / j), math.floor(R / j))
            m = (n[0], math.floor(k * R / ((k + 1) * j)))
            return n, m
        d = self.field.d
        num, den = c.numerator, c.denominator
        # floor( (num/den) / (j*sqrt(d)) ) = floor(num*sqrt(d)) // (den*j*d)
        rad = isqrt(num * num * d) // (den * j * d)
        n = (math.floor(c / j), rad, math.floor(R / j))
        m = (n[0], n[1], math.floor(k * R / ((k + 1) * j)))
        return n, m


def _generalized_sieve(spec: QBoxSpec, inner: bool) -> int:
    n0, m0 = spec.side_floors(1)
    sides = m0 if inner else n0
    jmax = min(sides)
    if jmax < 1:
        return 0
    mu = mobius_table(jmax)
    total = 0
    for j in range(1, jmax + 1):
        if mu[j] == 0:
            continue
        nj, mj = spec.side_floors(j)
        prod = 1
        for f in (mj if inner else nj):
            prod *= f
        total += mu[j] * prod
    return total


def qbox_count(spec: QBoxSpec) -> int:
    """|Q(R)| = (outer box count) - (inner box count)."""
    return _generalized_sieve(spec, inner=False) - _generalized_sieve(spec, inner=True)


def qbox_main_term(spec: QBoxSpec) -> float:
    k = spec.field.degree
    R = float(spec.R)
    norm = spec.field.basis_norm()
    return 2 ** k * R ** (k + 1) / ((k + 1) ** (k + 1) * norm * zeta(k + 1))


def _qbox_members(spec: QBoxSpec):
    """Enumerate the (a..., b) tuples of the box difference."""
    n, m = spec.side_floors(1)
    k = spec.field.degree
    b_lo, b_hi = m[-1] + 1, n[-1]
    if k == 1:
        for b in range(b_lo, b_hi + 1):
            for a in range(1, n[0] + 1):
                if gcd(a, b) == 1:
                    yield (a, b)
        return
    for b in range(b_lo, b_hi + 1):
        for a1 in range(1, n[0] + 1):
            g1 = gcd(a1, b)
            for a2 in range(1, n[1] + 1):
                if gcd(g1, a2) == 1:
                    yield (a1, a2, b)


def qbox(spec: QBoxSpec, sample_cap: int = 200_000, seed: int = 0) -> dict:
    """Count the box difference and verify, element by element (or on a
    random sample above ``sample_cap``), that every member lies in B(R)
    and in [-2, 2] exactly."""
    count = qbox_count(spec)
    main = qbox_main_term(spec)
    F = spec.R.numerator // spec.R.denominator
    checked = 0
    violations = 0
    rng = random.Random(seed)
    keep_all = count <= sample_cap
    keep_prob = 1.0 if keep_all else sample_cap / max(count, 1)
    for tup in _qbox_members(spec):
        if not keep_all and rng.random() > keep_prob:
            continue
        checked += 1
        *nums, b = tup
        if max(*nums, b) > F:
            violations += 1
            continue
        if spec.field.degree == 1:
            x = Fraction(nums[0], b)
        else:
            x = QuadElem(nums[0], nums[1], b, spec.field.d)
        if not in_interval(x, -2, 2):
            violations += 1
    return {
        "field": spec.field.label(),
        "d": spec.field.d,
        "R": str(spec.R),
        "count": count,
        "main_term": main,
        "ratio": count / main if main else float("nan"),
        "members_checked": checked,
        "membership_violations": violations,
        "exhaustive": keep_all,
    }
