"""Exact arithmetic in cyclotomic fields.

A :class:`Cyclotomic` lives in Q(zeta_n) for its *conductor* n and stores
rational coordinates over the power basis 1, zeta, ..., zeta^(phi(n)-1).
On construction every value is moved to the smallest cyclotomic field that
contains it (conductors are never 2 mod 4), so equality is coordinatewise.
"""
from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache

from sympy import QQ, Poly, symbols
from sympy.polys.matrices import DomainMatrix
from sympy.polys.specialpolys import cyclotomic_poly

from .algebraic import AlgebraicReal

_x = symbols("x")


def _canonical_conductor(n: int) -> int:
    if n % 4 == 2:
        return n // 2
    return n


@lru_cache(maxsize=None)
def _field(n: int):
    """(phi, reduction table) for Q(zeta_n).

    ``table[e]`` is the coordinate vector of zeta^e, 0 <= e < n, as a sparse
    tuple of (index, int) pairs.
    """
    if n == 1:
        return 1, (((0, 1),),)
    phi_poly = [int(c) for c in reversed(cyclotomic_poly(n, _x, polys=True).all_coeffs())]
    phi = len(phi_poly) - 1
    table = []
    vec = [0] * phi
    vec[0] = 1
    for _ in range(n):
        table.append(tuple((i, c) for i, c in enumerate(vec) if c))
        top = vec[-1]
        vec = [0] + vec[:-1]
        if top:
            vec = [v - top * phi_poly[i] for i, v in enumerate(vec)]
    return phi, tuple(table)


def _reduce(n: int, dense: dict[int, int]) -> list[int]:
    """Coordinates of sum_e dense[e] zeta_n^e."""
    phi, table = _field(n)
    out = [0] * phi
    for e, c in dense.items():
        if c:
            for i, t in table[e % n]:
                out[i] += c * t
    return out


def _prime_power(n: int):
    for p in range(2, n + 1):
        if n % p == 0:
            k = 0
            m = n
            while m % p == 0:
                m //= p
                k += 1
            return (p, k) if m == 1 else None
    return None


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0 and d % 4 != 2]


@lru_cache(maxsize=None)
def _subfield_solver(d: int, n: int):
    """Data to test membership of Q(zeta_n) vectors in Q(zeta_d)."""
    phi_n, _ = _field(n)
    phi_d, _ = _field(d)
    step = n // d
    cols = [_reduce(n, {j * step: 1}) for j in range(phi_d)]
    # pick phi_d independent rows by fraction-exact elimination
    rows = []
    mat = DomainMatrix([[QQ(cols[j][i]) for j in range(phi_d)] for i in range(phi_n)], (phi_n, phi_d), QQ)
    _, pivots = mat.transpose().rref()
    rows = list(pivots)
    sub = DomainMatrix([[QQ(cols[j][i]) for j in range(phi_d)] for i in rows], (phi_d, phi_d), QQ)
    inv = sub.inv().to_Matrix().tolist()
    inv = [[Fraction(int(v.p), int(v.q)) for v in row] for row in inv]
    return rows, inv, cols


def _minimize(n: int, num: list[int]) -> tuple[int, list[int]]:
    """Move integer coordinates to the smallest cyclotomic subfield holding them."""
    while n > 1:
        if not any(num[1:]):
            return 1, [num[0]]
        pk = _prime_power(n)
        if pk is None:
            break
        p, k = pk
        if k == 1 or (p == 2 and k == 2):
            return n, num
        # Q(zeta_{p^(k-1)}) is spanned by the basis powers divisible by p
        if any(c for i, c in enumerate(num) if i % p):
            return n, num
        n //= p
        num = num[::p]
    if n == 1:
        return 1, num
    for d in _divisors(n):
        if d == n:
            break
        rows, inv, cols = _subfield_solver(d, n)
        vec = [num[i] for i in rows]
        a = [sum(r * v for r, v in zip(row, vec)) for row in inv]
        if any(x.denominator != 1 for x in a):
            continue
        a = [int(x) for x in a]
        recon = [sum(a[j] * cols[j][i] for j in range(len(a))) for i in range(len(num))]
        if recon == num:
            return d, a
    return n, num


class Cyclotomic:
    """An element of a cyclotomic field, in canonical (minimal conductor) form."""

    __slots__ = ("conductor", "_num", "_den", "_hash", "_root")

    def __init__(self, conductor: int, coeffs):
        n = _canonical_conductor(int(conductor))
        coeffs = [Fraction(c) for c in coeffs]
        if n != int(conductor):
            # Q(zeta_2m) = Q(zeta_m) for odd m: rewrite zeta_2m = -zeta_m^((m+1)/2)
            m = n
            dense: dict[int, Fraction] = {}
            for j, c in enumerate(coeffs):
                e = (j * (m + 1) // 2) % m
                dense[e] = dense.get(e, 0) + (-c if j % 2 else c)
            coeffs = _reduce_fractions(m, dense)
        else:
            phi, _ = _field(n)
            if len(coeffs) > phi:
                coeffs = _reduce_fractions(n, dict(enumerate(coeffs)))
            else:
                coeffs = coeffs + [Fraction(0)] * (phi - len(coeffs))
        den = 1
        for c in coeffs:
            den = den * c.denominator // math.gcd(den, c.denominator)
        num = [int(c * den) for c in coeffs]
        self._set(*_minimize(n, num), den)

    def _set(self, n, num, den):
        g = den
        for v in num:
            g = math.gcd(g, v)
        if g > 1:
            num = [v // g for v in num]
            den //= g
        self.conductor = n
        self._num = tuple(num)
        self._den = den
        self._hash = hash((n, self._num, den))
        self._root = None

    @classmethod
    def _raw(cls, n: int, num: list[int], den: int) -> Cyclotomic:
        obj = cls.__new__(cls)
        n2, num2 = _minimize(n, num)
        obj._set(n2, num2, den)
        return obj

    # -- construction -----------------------------------------------------

    @classmethod
    def from_rational(cls, r) -> Cyclotomic:
        r = Fraction(r)
        return cls._raw(1, [r.numerator], r.denominator)

    @classmethod
    def zeta(cls, n: int) -> Cyclotomic:
        return cls.root_of_unity(n, 1)

    @classmethod
    def root_of_unity(cls, n: int, e: int) -> Cyclotomic:
        """exp(2 pi i e / n)."""
        return _root_of_unity(int(n), int(e) % int(n))

    # -- queries ----------------------------------------------------------

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(v, self._den) for v in self._num)

    def is_zero(self) -> bool:
        return not any(self._num)

    def is_rational(self) -> bool:
        return self.conductor == 1

    def as_rational(self) -> Fraction | None:
        if self.conductor == 1:
            return Fraction(self._num[0], self._den)
        return None

    def is_real(self) -> bool:
        return self == self.conj()

    def __complex__(self) -> complex:
        n = self.conductor
        return sum(v * cmath.exp(2j * math.pi * i / n) for i, v in enumerate(self._num)) / self._den

    def to_mpc(self, dps: int = 50):
        import mpmath

        with mpmath.workdps(dps):
            n = self.conductor
            z = mpmath.mpc(0)
            for i, v in enumerate(self._num):
                if v:
                    z += v * mpmath.expjpi(mpmath.mpf(2 * i) / n)
            return z / self._den

    def root_exponent(self) -> tuple[int, int] | None:
        """``(m, e)`` with self = exp(2 pi i e/m), or None if not a root of unity.

        ``m`` is ``lcm(2, conductor)`` so that sign changes are covered.
        """
        if self._root is not None:
            return self._root or None
        found: tuple = ()
        if self._den == 1:
            n = self.conductor
            m = n if n % 2 == 0 else 2 * n
            _, table = _field(n)
            phi = len(self._num)
            for e in range(n):
                vec = [0] * phi
                for i, t in table[e]:
                    vec[i] = t
                if tuple(vec) == self._num:
                    found = (m, (e * (m // n)) % m)
                    break
                if tuple(-v for v in vec) == self._num:
                    found = (m, (e * (m // n) + m // 2) % m)
                    break
        self._root = found
        return found or None

    def root_order(self) -> int | None:
        r = self.root_exponent()
        if r is None:
            return None
        m, e = r
        return m // math.gcd(m, e)

    # -- arithmetic -------------------------------------------------------

    def _lift(self, n: int) -> list[int]:
        if n == self.conductor:
            return list(self._num)
        step = n // self.conductor
        return _reduce(n, {i * step: v for i, v in enumerate(self._num) if v})

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        n = math.lcm(self.conductor, other.conductor)
        a, b = self._lift(n), other._lift(n)
        den = math.lcm(self._den, other._den)
        fa, fb = den // self._den, den // other._den
        return Cyclotomic._raw(n, [x * fa + y * fb for x, y in zip(a, b)], den)

    __radd__ = __add__

    def __neg__(self):
        obj = Cyclotomic.__new__(Cyclotomic)
        obj._set(self.conductor, [-v for v in self._num], self._den)
        return obj

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

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return _mul(self, other)

    __rmul__ = __mul__

    def conj(self) -> Cyclotomic:
        """Complex conjugation, zeta -> zeta^-1."""
        n = self.conductor
        if n == 1:
            return self
        dense = {(-i) % n: v for i, v in enumerate(self._num) if v}
        return Cyclotomic._raw(n, _reduce(n, dense), self._den)

    def galois(self, k: int) -> Cyclotomic:
        """The automorphism zeta_n -> zeta_n^k (k coprime to the conductor)."""
        n = self.conductor
        if math.gcd(k, n) != 1:
            raise ValueError(f"{k} is not a unit mod {n}")
        dense = {(i * k) % n: v for i, v in enumerate(self._num) if v}
        return Cyclotomic._raw(n, _reduce(n, dense), self._den)

    def inverse(self) -> Cyclotomic:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return _inverse(self)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k: int) -> Cyclotomic:
        if k < 0:
            return self.inverse() ** (-k)
        result = Cyclotomic.from_rational(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self.conductor == other.conductor and self._den == other._den and self._num == other._num

    def __hash__(self):
        return self._hash

    # -- conversion -------------------------------------------------------

    def multiplication_matrix(self) -> list[list[Fraction]]:
        """Matrix of x -> self * x on the power basis (columns are images)."""
        n = self.conductor
        phi = len(self._num)
        cols = []
        for j in range(phi):
            dense: dict[int, int] = {}
            for i, v in enumerate(self._num):
                if v:
                    dense[(i + j) % n] = dense.get((i + j) % n, 0) + v
            cols.append(_reduce(n, dense))
        return [[Fraction(cols[j][i], self._den) for j in range(phi)] for i in range(phi)]

    def minimal_polynomial(self) -> tuple[int, ...]:
        """Minimal polynomial over Q as ascending integer coefficients."""
        from . import _poly

        mat = self.multiplication_matrix()
        phi = len(mat)
        dm = DomainMatrix([[QQ(v.numerator, v.denominator) for v in row] for row in mat], (phi, phi), QQ)
        cp = [Fraction(int(c.numerator), int(c.denominator)) for c in dm.charpoly()]
        den = 1
        for c in cp:
            den = math.lcm(den, c.denominator)
        ints = _poly.normalize(int(c * den) for c in reversed(cp))
        z = self.to_mpc(60)
        best = None
        for f in _poly.irreducible_factors(ints):
            val = abs(sum(c * z**i for i, c in enumerate(f)))
            if best is None or val < best[0]:
                best = (val, f)
        return best[1]

    def to_algebraic_real(self) -> AlgebraicReal:
        """The same number as a certified real algebraic number (must be real)."""
        r = self.as_rational()
        if r is not None:
            return AlgebraicReal.from_rational(r)
        if not self.is_real():
            raise ValueError(f"{self} is not real")
        f = self.minimal_polynomial()
        man, exp = self.to_mpc(60).real.man_exp
        approx = Fraction(man) * Fraction(2) ** exp
        return AlgebraicReal.from_approximation(f, approx, Fraction(1, 10**40))

    def __repr__(self):
        return f"Cyclotomic({self.conductor}, {[str(c) for c in self.coeffs]})"

    def __str__(self):
        if self.conductor == 1:
            return str(Fraction(self._num[0], self._den))
        r = self.root_exponent()
        if r is not None:
            m, e = r
            g = math.gcd(m, e)
            return f"E({m // g})^{e // g}"
        terms = []
        for i, v in enumerate(self._num):
            if v:
                c = Fraction(v, self._den)
                terms.append(f"{c}*E({self.conductor})^{i}" if i else str(c))
        return " + ".join(terms)

    def to_json(self) -> dict:
        return {"conductor": self.conductor, "coeffs": [f"{c.numerator}/{c.denominator}" for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> Cyclotomic:
        return cls(int(data["conductor"]), [Fraction(s) for s in data["coeffs"]])


def _reduce_fractions(n: int, dense: dict[int, Fraction]) -> list[Fraction]:
    phi, table = _field(n)
    out = [Fraction(0)] * phi
    for e, c in dense.items():
        if c:
            for i, t in table[e % n]:
                out[i] += c * t
    return out


def _coerce(v):
    if isinstance(v, Cyclotomic):
        return v
    if isinstance(v, (int, Fraction)):
        return Cyclotomic.from_rational(v)
    return NotImplemented


@lru_cache(maxsize=None)
def _root_of_unity(n: int, e: int) -> Cyclotomic:
    if n % 4 == 2:
        m = n // 2
        val = _root_of_unity(m, (e * (m + 1) // 2) % m)
        out = -val if e % 2 else val
    else:
        out = Cyclotomic._raw(n, _reduce(n, {e: 1}), 1)
    g = math.gcd(n, e)
    order = n // g
    m = out.conductor if out.conductor % 2 == 0 else 2 * out.conductor
    out._root = (m, (e // g) * (m // order) % m)
    return out


@lru_cache(maxsize=1 << 16)
def _mul(a: Cyclotomic, b: Cyclotomic) -> Cyclotomic:
    ra, rb = a.as_rational(), b.as_rational()
    if ra is not None and rb is not None:
        return Cyclotomic.from_rational(ra * rb)
    n = math.lcm(a.conductor, b.conductor)
    x, y = a._lift(n), b._lift(n)
    dense: dict[int, int] = {}
    for i, u in enumerate(x):
        if u:
            for j, v in enumerate(y):
                if v:
                    k = (i + j) % n
                    dense[k] = dense.get(k, 0) + u * v
    return Cyclotomic._raw(n, _reduce(n, dense), a._den * b._den)


@lru_cache(maxsize=4096)
def _inverse(a: Cyclotomic) -> Cyclotomic:
    r = a.as_rational()
    if r is not None:
        return Cyclotomic.from_rational(1 / r)
    mat = a.multiplication_matrix()
    phi = len(mat)
    dm = DomainMatrix([[QQ(v.numerator, v.denominator) for v in row] for row in mat], (phi, phi), QQ)
    rhs = DomainMatrix([[QQ(1)]] + [[QQ(0)] for _ in range(phi - 1)], (phi, 1), QQ)
    sol = dm.lu_solve(rhs).to_Matrix()
    coeffs = [Fraction(int(sol[i, 0].p), int(sol[i, 0].q)) for i in range(phi)]
    return Cyclotomic(a.conductor, coeffs)


def cyc_arith(a: Cyclotomic, b: Cyclotomic | None, op: str) -> Cyclotomic:
    """Dispatch for ``add``, ``mul`` and ``conj`` (``b`` ignored for conj)."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "conj":
        return a.conj()
    raise ValueError(f"unknown operation {op!r}")
