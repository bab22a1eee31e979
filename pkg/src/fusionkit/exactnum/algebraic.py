"""Certified real algebraic numbers.

An :class:`AlgebraicReal` is an irreducible integer polynomial together with a
rational interval isolating exactly one of its real roots.  Values are kept in
canonical form: the interval is always the one produced by root isolation of
the minimal polynomial, so two values are equal iff their ``(minpoly,
interval)`` pairs are identical.
"""
from __future__ import annotations

import enum
import math
from fractions import Fraction
from functools import lru_cache, total_ordering

from sympy import Poly, ZZ

from . import _poly
from ._poly import IntPoly


class Ordering(enum.IntEnum):
    LT = -1
    EQ = 0
    GT = 1


def _locate(f: IntPoly, lo: Fraction, hi: Fraction) -> int:
    """Index of the canonical root of ``f`` isolated by ``[lo, hi]``."""
    ivs = _poly.real_root_intervals(f)
    while True:
        hits = [j for j, (l, h) in enumerate(ivs) if l <= hi and lo <= h]
        if len(hits) == 1:
            return hits[0]
        if not hits:
            raise ValueError(f"interval [{lo}, {hi}] contains no root of {f}")
        lo, hi = _poly.bisect(f, lo, hi)


def _interval_add(a, b):
    return a[0] + b[0], a[1] + b[1]


def _interval_mul(a, b):
    prods = [a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]]
    return min(prods), max(prods)


@total_ordering
class AlgebraicReal:
    """A real algebraic number in canonical form.  Immutable."""

    __slots__ = ("minpoly", "interval", "_hash")

    def __init__(self, minpoly: IntPoly, interval: tuple[Fraction, Fraction]):
        # Callers are expected to pass canonical data; use the classmethods.
        self.minpoly = tuple(minpoly)
        self.interval = (Fraction(interval[0]), Fraction(interval[1]))
        self._hash = hash((self.minpoly, self.interval))

    # -- construction -----------------------------------------------------

    @classmethod
    def _canonical(cls, f: IntPoly, index: int) -> AlgebraicReal:
        return cls(f, _poly.real_root_intervals(f)[index])

    @classmethod
    def from_integer(cls, n: int) -> AlgebraicReal:
        return cls.from_rational(Fraction(int(n)))

    @classmethod
    def from_rational(cls, r) -> AlgebraicReal:
        r = Fraction(r)
        return cls((-r.numerator, r.denominator), (r, r))

    @classmethod
    def sqrt_integer(cls, n: int) -> AlgebraicReal:
        """The positive square root of a positive integer."""
        if n < 1:
            raise ValueError("sqrt_integer expects n >= 1")
        s = math.isqrt(n)
        if s * s == n:
            return cls.from_integer(s)
        f = (-n, 0, 1)
        return cls._canonical(f, len(_poly.real_root_intervals(f)) - 1)

    @classmethod
    def from_root(cls, poly, lo, hi) -> AlgebraicReal:
        """The unique real root of ``poly`` inside ``[lo, hi]``.

        ``poly`` need not be irreducible; the interval must isolate a single
        real root of it.
        """
        p = _poly.normalize(poly)
        lo, hi = Fraction(lo), Fraction(hi)
        if lo > hi:
            raise ValueError("empty interval")
        sp = _poly.to_sympy(p)
        nroots = sp.count_roots(_q(lo), _q(hi))
        if nroots != 1:
            raise ValueError(f"[{lo}, {hi}] holds {nroots} real roots of {p}, expected 1")
        for f in _poly.irreducible_factors(p):
            if _poly.to_sympy(f).count_roots(_q(lo), _q(hi)) == 1:
                if len(f) == 2:
                    return cls._canonical(f, 0)
                # shrink to an open sign-change interval before locating
                ivs = _poly.real_root_intervals(f)
                for j, (l, h) in enumerate(ivs):
                    if l <= hi and lo <= h:
                        cand = cls._canonical(f, j)
                        if _count_in(f, lo, hi, cand):
                            return cand
        raise AssertionError("root isolation inconsistent")  # pragma: no cover

    @classmethod
    def largest_real_root(cls, poly) -> AlgebraicReal:
        """Largest real root of an integer polynomial (must have one)."""
        p = _poly.normalize(poly)
        best = None
        for f in _poly.irreducible_factors(p):
            ivs = _poly.real_root_intervals(f)
            if not ivs:
                continue
            cand = cls._canonical(f, len(ivs) - 1)
            if best is None or cand > best:
                best = cand
        if best is None:
            raise ValueError(f"{p} has no real roots")
        return best

    @classmethod
    def from_approximation(cls, poly, value: Fraction, radius: Fraction) -> AlgebraicReal:
        """The unique real root of ``poly`` within ``radius`` of ``value``."""
        p = _poly.normalize(poly)
        value, radius = Fraction(value), Fraction(radius)
        cands = []
        for f in _poly.irreducible_factors(p):
            for j in range(len(_poly.real_root_intervals(f))):
                cands.append(cls._canonical(f, j))
        lo, hi = value - radius, value + radius
        hits = [c for c in cands if _count_in(c.minpoly, lo, hi, c)]
        if len(hits) != 1:
            raise ValueError(f"{len(hits)} roots of {p} within {float(radius):.3g} of {float(value)}")
        return hits[0]

    # -- basic queries ----------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.minpoly) - 1

    def is_rational(self) -> bool:
        return len(self.minpoly) == 2

    def as_rational(self) -> Fraction | None:
        if self.is_rational():
            return self.interval[0]
        return None

    def as_integer(self) -> int | None:
        r = self.as_rational()
        if r is not None and r.denominator == 1:
            return r.numerator
        return None

    def refined(self, width) -> tuple[Fraction, Fraction]:
        """An isolating interval of width at most ``width``."""
        lo, hi = self.interval
        width = Fraction(width)
        while hi - lo > width:
            lo, hi = _poly.bisect(self.minpoly, lo, hi)
        return lo, hi

    def __float__(self) -> float:
        lo, hi = self.refined(Fraction(1, 2**60))
        return float((lo + hi) / 2)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return _combine(self, other, "add")

    __radd__ = __add__

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return _combine(self, other, "mul")

    __rmul__ = __mul__

    def __neg__(self) -> AlgebraicReal:
        if self.is_rational():
            return AlgebraicReal.from_rational(-self.interval[0])
        f = _poly.normalize(c * (-1) ** i for i, c in enumerate(self.minpoly))
        lo, hi = self.interval
        return AlgebraicReal._canonical(f, _locate(f, -hi, -lo))

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __pow__(self, n: int) -> AlgebraicReal:
        if n < 0:
            raise ValueError("negative powers are not supported")
        result = AlgebraicReal.from_integer(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- comparison -------------------------------------------------------

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self.minpoly == other.minpoly and self.interval == other.interval

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return compare(self, other) is Ordering.LT

    # -- display / serialization -----------------------------------------

    def __repr__(self):
        return f"AlgebraicReal({self})"

    def __str__(self):
        return _pretty(self)

    def to_json(self) -> dict:
        return {
            "minpoly": list(self.minpoly),
            "interval": [_frac_str(self.interval[0]), _frac_str(self.interval[1])],
        }

    @classmethod
    def from_json(cls, data: dict) -> AlgebraicReal:
        p = tuple(int(c) for c in data["minpoly"])
        if _poly.normalize(p) != p:
            raise ValueError(f"minpoly {p} is not primitive with positive leading coefficient")
        if _poly.irreducible_factors(p) != (p,):
            raise ValueError(f"minpoly {p} is not irreducible")
        lo, hi = (Fraction(s) for s in data["interval"])
        return cls.from_root(p, lo, hi)


def _q(r: Fraction):
    from sympy import Rational

    return Rational(r.numerator, r.denominator)


def _count_in(f: IntPoly, lo: Fraction, hi: Fraction, cand: AlgebraicReal) -> bool:
    """Whether the root represented by ``cand`` lies in [lo, hi]."""
    l, h = cand.interval
    while True:
        if lo <= l and h <= hi:
            return True
        if h < lo or l > hi:
            return False
        if l == h:
            return lo <= l <= hi
        l, h = _poly.bisect(f, l, h)


def _frac_str(r: Fraction) -> str:
    return f"{r.numerator}/{r.denominator}"


def _coerce(v):
    if isinstance(v, AlgebraicReal):
        return v
    if isinstance(v, (int, Fraction)):
        return AlgebraicReal.from_rational(v)
    return NotImplemented


def compare(a: AlgebraicReal, b: AlgebraicReal) -> Ordering:
    """Exact trichotomy."""
    if a == b:
        return Ordering.EQ
    alo, ahi = a.interval
    blo, bhi = b.interval
    while True:
        if ahi < blo:
            return Ordering.LT
        if bhi < alo:
            return Ordering.GT
        alo, ahi = _poly.bisect(a.minpoly, alo, ahi)
        blo, bhi = _poly.bisect(b.minpoly, blo, bhi)


@lru_cache(maxsize=65536)
def _combine(a: AlgebraicReal, b: AlgebraicReal, op: str) -> AlgebraicReal:
    ra, rb = a.as_rational(), b.as_rational()
    if ra is not None and rb is not None:
        return AlgebraicReal.from_rational(ra + rb if op == "add" else ra * rb)
    if op == "add":
        if ra == 0:
            return b
        if rb == 0:
            return a
        R = _poly.resultant_sum(a.minpoly, b.minpoly)
        interval_op = _interval_add
    else:
        if ra == 0 or rb == 0:
            return AlgebraicReal.from_integer(0)
        if ra == 1:
            return b
        if rb == 1:
            return a
        R = _poly.resultant_product(a.minpoly, b.minpoly)
        interval_op = _interval_mul
    cands = []
    for f in _poly.irreducible_factors(R):
        for j, iv in enumerate(_poly.real_root_intervals(f)):
            cands.append((f, j, iv))
    ia, ib = a.interval, b.interval
    while True:
        lo, hi = interval_op(ia, ib)
        cands = [c for c in cands if c[2][0] <= hi and lo <= c[2][1]]
        if len(cands) == 1:
            f, j, _ = cands[0]
            return AlgebraicReal._canonical(f, j)
        if not cands:
            raise AssertionError("lost the root during resultant refinement")  # pragma: no cover
        cands = [(f, j, _poly.bisect(f, *iv)) for f, j, iv in cands]
        ia = _poly.bisect(a.minpoly, *ia)
        ib = _poly.bisect(b.minpoly, *ib)


def arith(a: AlgebraicReal, b: AlgebraicReal, op: str) -> AlgebraicReal:
    if op not in ("add", "mul"):
        raise ValueError(f"unknown operation {op!r}")
    return _combine(a, b, op)


def _squarefree_split(n: int) -> tuple[int, int]:
    """n = s^2 * m with m squarefree; returns (s, m)."""
    s, m = 1, n
    p = 2
    while p * p <= m:
        while m % (p * p) == 0:
            m //= p * p
            s *= p
        p += 1
    return s, m


def _pretty(a: AlgebraicReal) -> str:
    r = a.as_rational()
    if r is not None:
        return str(r)
    if a.degree == 2:
        c, b, A = a.minpoly
        disc = b * b - 4 * A * c
        s, m = _squarefree_split(disc)
        # intervals are ascending, so the larger root takes the + sign
        sign = "+" if _poly.real_root_intervals(a.minpoly).index(a.interval) == 1 else "-"
        g = math.gcd(math.gcd(-b, s), 2 * A)
        num_r, num_s, den = -b // g, s // g, 2 * A // g
        rad = f"√{m}" if num_s == 1 else f"{num_s}√{m}"
        if num_r == 0:
            body = rad if sign == "+" else f"-{rad}"
        else:
            body = f"{num_r} {sign} {rad}"
        if den == 1:
            return body
        return f"({body})/{den}"
    return f"root of {list(a.minpoly)} near {float(a):.6g}"


alg_from_integer = AlgebraicReal.from_integer
alg_sqrt_integer = AlgebraicReal.sqrt_integer
alg_arith = arith
alg_compare = compare


def alg_is_integer(a: AlgebraicReal) -> int | None:
    return a.as_integer()
