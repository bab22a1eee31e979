"""Integer polynomial helpers.

Polynomials are tuples of Python ints in ascending order, ``(c0, c1, ..., cd)``.
Factoring, resultants and real-root isolation are delegated to sympy; sign
evaluation and bisection stay here because they run in hot loops.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

from sympy import Poly, ZZ, symbols

_x, _y = symbols("x y")

IntPoly = tuple


def normalize(coeffs) -> IntPoly:
    """Strip trailing zeros, make primitive with positive leading coefficient."""
    c = [int(v) for v in coeffs]
    while c and c[-1] == 0:
        c.pop()
    if not c:
        raise ValueError("zero polynomial")
    g = 0
    for v in c:
        g = gcd(g, v)
    if c[-1] < 0:
        g = -g
    return tuple(v // g for v in c)


def degree(p: IntPoly) -> int:
    return len(p) - 1


def to_sympy(p: IntPoly, var=_x) -> Poly:
    return Poly(list(reversed(p)), var, domain=ZZ)


def from_sympy(poly: Poly) -> IntPoly:
    return tuple(int(c) for c in reversed(poly.all_coeffs()))


def eval_sign(p: IntPoly, r: Fraction) -> int:
    """Sign of p(r), computed as the integer b^d * p(a/b)."""
    a, b = r.numerator, r.denominator
    d = len(p) - 1
    acc = 0
    apow = 1
    bpow = b**d
    for i, c in enumerate(p):
        if c:
            acc += c * apow * bpow
        if i < d:
            apow *= a
            bpow //= b
    return (acc > 0) - (acc < 0)


def eval_fraction(p: IntPoly, r: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * r + c
    return acc


@lru_cache(maxsize=4096)
def irreducible_factors(p: IntPoly) -> tuple[IntPoly, ...]:
    """Distinct irreducible factors over Q, each normalized, sorted."""
    _, factors = to_sympy(p).factor_list()
    return tuple(sorted({normalize(from_sympy(f)) for f, _ in factors}, key=lambda f: (len(f), f)))


@lru_cache(maxsize=4096)
def real_root_intervals(p: IntPoly) -> tuple[tuple[Fraction, Fraction], ...]:
    """Isolating intervals of the real roots of an irreducible p, ascending.

    Degree-one polynomials get the degenerate interval ``(r, r)``.
    """
    if len(p) == 2:
        r = Fraction(-p[0], p[1])
        return ((r, r),)
    out = []
    for (lo, hi), _mult in to_sympy(p).intervals():
        out.append((Fraction(int(lo.p), int(lo.q)), Fraction(int(hi.p), int(hi.q))))
    out.sort()
    return tuple(out)


def bisect(p: IntPoly, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    """Halve an isolating interval of a simple irrational root of p."""
    if lo == hi:
        return lo, hi
    mid = (lo + hi) / 2
    s_mid = eval_sign(p, mid)
    if s_mid == 0:
        return mid, mid
    if eval_sign(p, lo) * s_mid < 0:
        return lo, mid
    return mid, hi


def resultant_sum(p: IntPoly, q: IntPoly) -> IntPoly:
    """Polynomial whose roots include every alpha + beta, p(alpha) = q(beta) = 0."""
    fp = Poly(list(reversed(p)), _y, domain=ZZ)
    fq = Poly(sum(c * (_x - _y) ** i for i, c in enumerate(q)), _y, _x, domain=ZZ)
    res = Poly(fp.as_expr(), _y, _x, domain=ZZ).resultant(fq)
    return normalize(from_sympy(Poly(res.as_expr(), _x, domain=ZZ)))


def resultant_product(p: IntPoly, q: IntPoly) -> IntPoly:
    """Polynomial whose roots include every alpha * beta (both nonzero)."""
    d = len(q) - 1
    fp = Poly(list(reversed(p)), _y, domain=ZZ)
    fq = Poly(sum(c * _x**i * _y ** (d - i) for i, c in enumerate(q)), _y, _x, domain=ZZ)
    res = Poly(fp.as_expr(), _y, _x, domain=ZZ).resultant(fq)
    return normalize(from_sympy(Poly(res.as_expr(), _x, domain=ZZ)))
