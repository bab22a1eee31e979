"""Modular data (s, T) over cyclotomic numbers.

``smat`` is the unnormalized s-matrix with first row equal to the
Frobenius-Perron dimensions, and ``tmat`` holds the diagonal twists.  When
every entry is a root of unity (pointed data) the checks run on integer
exponent arrays with numpy; otherwise they use exact cyclotomic arithmetic.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .constructors import group_ring, ising_ring, trivial_ring
from .exactnum import Cyclotomic
from .exactnum.cyclotomic import _field
from .groups import FiniteGroup, abelian_group
from .ring import FusionRing, Violation, fpdim_object, is_commutative, validate
from .structure import Subring, deligne_product

DEFAULT_ORDER_BOUND = 64


def _cyc(v) -> Cyclotomic:
    if isinstance(v, Cyclotomic):
        return v
    return Cyclotomic.from_rational(v)


@dataclass(frozen=True, eq=False)
class ModularData:
    ring: FusionRing
    smat: tuple[tuple[Cyclotomic, ...], ...]
    tmat: tuple[Cyclotomic, ...]
    name: str | None = None
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        r = self.ring.rank
        smat = tuple(tuple(_cyc(v) for v in row) for row in self.smat)
        tmat = tuple(_cyc(v) for v in self.tmat)
        if len(smat) != r or any(len(row) != r for row in smat):
            raise ValueError(f"s-matrix must be {r}x{r}")
        if len(tmat) != r:
            raise ValueError(f"T needs {r} entries")
        object.__setattr__(self, "smat", smat)
        object.__setattr__(self, "tmat", tmat)

    @property
    def rank(self) -> int:
        return self.ring.rank

    @property
    def dims(self) -> tuple[Cyclotomic, ...]:
        return self.smat[0]

    @property
    def global_dim(self) -> Cyclotomic:
        """Sum of squared dimensions (pseudo-unitary convention)."""
        if "global_dim" not in self._cache:
            total = Cyclotomic.from_rational(0)
            for d in self.dims:
                total = total + d * d
            self._cache["global_dim"] = total
        return self._cache["global_dim"]

    def root_data(self) -> tuple[int, np.ndarray, np.ndarray] | None:
        """``(M, S, T)`` with every entry equal to ``zeta_M ** exponent``, if possible."""
        if "root_data" not in self._cache:
            self._cache["root_data"] = _root_data(self.smat, self.tmat)
        return self._cache["root_data"]

    def __eq__(self, other):
        if not isinstance(other, ModularData):
            return NotImplemented
        return self.ring == other.ring and self.smat == other.smat and self.tmat == other.tmat

    def __hash__(self):
        return hash((self.ring, self.tmat))

    def __repr__(self):
        tag = f" {self.name!r}" if self.name else ""
        return f"<ModularData{tag} rank={self.rank}>"


def _root_data(smat, tmat):
    exps = {}
    for v in itertools.chain(itertools.chain.from_iterable(smat), tmat):
        if v not in exps:
            re_ = v.root_exponent()
            if re_ is None:
                return None
            exps[v] = re_
    M = 1
    for m, _ in exps.values():
        M = math.lcm(M, m)
    lift = {v: e * (M // m) % M for v, (m, e) in exps.items()}
    S = np.array([[lift[v] for v in row] for row in smat], dtype=np.int64)
    T = np.array([lift[v] for v in tmat], dtype=np.int64)
    return M, S, T


@lru_cache(maxsize=None)
def _reduction_matrix(M: int) -> np.ndarray:
    """Row ``e`` holds the power-basis coordinates of ``zeta_M ** e``."""
    phi, table = _field(M)
    R = np.zeros((M, phi), dtype=np.float64)
    for e, entries in enumerate(table):
        for i, c in entries:
            R[e, i] = c
    return R


def _root_sums(M: int, exps: np.ndarray) -> np.ndarray:
    """Coordinates of ``sum_t zeta_M ** exps[..., t]`` over the last axis."""
    lead = exps.shape[:-1]
    n = int(np.prod(lead)) if lead else 1
    flat = exps.reshape(n, exps.shape[-1]) % M
    idx = (np.arange(n)[:, None] * M + flat).ravel()
    hist = np.bincount(idx, minlength=n * M).reshape(n, M).astype(np.float64)
    coords = hist @ _reduction_matrix(M)
    return np.rint(coords).astype(np.int64).reshape(*lead, -1)


# -- validation ---------------------------------------------------------------


def validate_modular(md: ModularData, order_bound: int = DEFAULT_ORDER_BOUND) -> list[Violation]:
    """Check every modular-data axiom; an empty list means the data are modular."""
    out: list[Violation] = []
    ring = md.ring
    r = ring.rank
    for v in validate(ring):
        out.append(Violation("ring", v.witness, f"{v.axiom}: {v.message}"))
    if out:
        return out
    if not is_commutative(ring):
        out.append(Violation("commutative", (), "modular data need a commutative ring"))

    S, T = md.smat, md.tmat
    for i in range(r):
        for j in range(i + 1, r):
            if S[i][j] != S[j][i]:
                out.append(Violation("symmetry", (i, j), f"s[{i},{j}] = {S[i][j]} but s[{j},{i}] = {S[j][i]}"))
    for i in range(r):
        if not _is_dimension(S[0][i], ring, i):
            out.append(Violation("first_row", (0, i), f"s[0,{i}] = {S[0][i]} is not FPdim = {fpdim_object(ring, i)}"))
    if T[0] != 1:
        out.append(Violation("twist", (0,), f"t_0 = {T[0]}, expected 1"))
    for i in range(r):
        order = T[i].root_order()
        if order is None:
            out.append(Violation("twist", (i,), f"t_{i} = {T[i]} is not a root of unity"))
        elif order > order_bound:
            out.append(Violation("twist", (i,), f"t_{i} has order {order} > {order_bound}"))

    rd = md.root_data()
    fast = rd is not None and not rd[1][0].any()
    sq = _check_s_squared_fast(md, rd) if fast else _check_s_squared_exact(md)
    out.extend(sq)
    if sq:
        dependent = _dependent_row(S)
        if dependent is not None:
            out.append(Violation("nondegeneracy", (dependent,), f"row {dependent} of s is a combination of earlier rows"))
            return out
    if fast:
        out.extend(_check_verlinde_fast(md, rd))
    else:
        out.extend(verlinde_coefficients(md).violations)
    return out


def is_modular(md: ModularData) -> bool:
    return not validate_modular(md)


def _is_dimension(c: Cyclotomic, ring: FusionRing, i: int) -> bool:
    d = fpdim_object(ring, i)
    q = d.as_rational()
    if q is not None:
        return c.as_rational() == q
    if not c.is_real():
        return False
    return c.to_algebraic_real() == d


def _duality_matrix_target(md: ModularData) -> list[list[Cyclotomic]]:
    r = md.rank
    zero = Cyclotomic.from_rational(0)
    D2 = md.global_dim
    return [[D2 if k == md.ring.dual[i] else zero for k in range(r)] for i in range(r)]


def _check_s_squared_exact(md: ModularData) -> list[Violation]:
    S = md.smat
    r = md.rank
    target = _duality_matrix_target(md)
    out = []
    for i in range(r):
        for k in range(r):
            acc = Cyclotomic.from_rational(0)
            for j in range(r):
                acc = acc + S[i][j] * S[j][k]
            if acc != target[i][k]:
                out.append(Violation("s_squared", (i, k), f"(s^2)[{i},{k}] = {acc}, expected {target[i][k]}"))
    return out


def _check_s_squared_fast(md: ModularData, rd) -> list[Violation]:
    M, E, _ = rd
    r = md.rank
    coords = _root_sums(M, E[:, None, :] + E.T[None, :, :])  # [i, k, j] -> E_ij + E_jk
    expected = np.zeros_like(coords)
    dual = np.array(md.ring.dual)
    expected[np.arange(r), dual, 0] = r
    out = []
    for i, k in zip(*np.nonzero((coords != expected).any(axis=2))):
        out.append(Violation("s_squared", (int(i), int(k)), f"(s^2)[{i},{k}] differs from D^2 C"))
    return out


def _check_verlinde_fast(md: ModularData, rd) -> list[Violation]:
    """Verlinde consistency for pointed root-of-unity data.

    With s invertible and first row 1, Verlinde's formula for the ring is
    equivalent to ``s_ia s_ja = s_(i(x)j),a`` together with
    ``conj(s_ka) = s_(k*),a``; both are exponent identities.
    """
    M, E, _ = rd
    ring = md.ring
    r = ring.rank
    out = []
    dual = np.array(ring.dual)
    bad = (E[dual] + E) % M != 0
    for k, a in zip(*np.nonzero(bad)):
        out.append(Violation("verlinde", (int(k), int(a)), f"conj(s[{k},{a}]) differs from s[{ring.dual[k]},{a}]"))
    prod = _pointed_product_table(ring)
    if prod is None:
        return out + [Violation("verlinde", (), "root-of-unity data on a non-pointed ring")]
    lhs = E[prod]  # [i, j, a] -> E[i(x)j, a]
    rhs = (E[:, None, :] + E[None, :, :]) % M
    for i, j in zip(*np.nonzero((lhs != rhs).any(axis=2))):
        out.append(
            Violation("verlinde", (int(i), int(j), int(prod[i, j])), f"s does not diagonalize {ring.labels[i]} (x) {ring.labels[j]}")
        )
    return out


def _pointed_product_table(ring: FusionRing) -> np.ndarray | None:
    """``table[i, j] = i (x) j`` when every product is a single simple."""
    if "product_table" not in ring._cache:
        r = ring.rank
        prod = np.full((r, r), -1, dtype=np.int64)
        for (i, j, k), n in ring.coeffs.items():
            if n != 1 or prod[i, j] != -1:
                prod = None
                break
            prod[i, j] = k
        ring._cache["product_table"] = prod
    return ring._cache["product_table"]


def _dependent_row(S) -> int | None:
    """Index of the first row of S in the span of earlier rows, or None."""
    rows = [list(row) for row in S]
    r = len(rows)
    basis: list[tuple[int, list[Cyclotomic]]] = []
    for idx, row in enumerate(rows):
        v = list(row)
        for piv, b in basis:
            if not v[piv].is_zero():
                f = v[piv] / b[piv]
                v = [x - f * y for x, y in zip(v, b)]
        piv = next((c for c in range(r) if not v[c].is_zero()), None)
        if piv is None:
            return idx
        basis.append((piv, v))
    return None


# -- Verlinde --------------------------------------------------------------


@dataclass(frozen=True)
class VerlindeResult:
    coefficients: dict
    violations: list

    def as_ring_coeffs(self) -> dict[tuple[int, int, int], int]:
        return {k: int(v) for k, v in self.coefficients.items() if isinstance(v, Fraction) and v.denominator == 1 and v}


def verlinde_coefficients(md: ModularData) -> VerlindeResult:
    """``N_ij^k = (1/D^2) sum_a s_ia s_ja conj(s_ka) / s_0a``, exactly.

    Non-integer, negative or mismatching values are reported as violations.
    """
    rd = md.root_data()
    if rd is not None and not rd[1][0].any():
        values = _verlinde_fast(md, rd)
    else:
        values = _verlinde_exact(md)
    coeffs = {}
    out = []
    for (i, j, k), v in values.items():
        q = v.as_rational() if isinstance(v, Cyclotomic) else v
        want = md.ring.N(i, j, k)
        if q is None:
            out.append(Violation("verlinde", (i, j, k), f"N = {v} is not rational"))
            coeffs[(i, j, k)] = v
            continue
        if q:
            coeffs[(i, j, k)] = q
        if q.denominator != 1:
            out.append(Violation("verlinde", (i, j, k), f"N = {q} is not an integer"))
        elif q < 0:
            out.append(Violation("verlinde", (i, j, k), f"N = {q} is negative"))
        elif q != want:
            out.append(Violation("verlinde", (i, j, k), f"N = {q} but the ring has {want}"))
    return VerlindeResult(coeffs, out)


def _verlinde_exact(md: ModularData) -> dict:
    S = md.smat
    r = md.rank
    inv_D2 = md.global_dim.inverse()
    conj = [[S[k][a].conj() for a in range(r)] for k in range(r)]
    inv_dim = [S[0][a].inverse() for a in range(r)]
    values = {}
    for i in range(r):
        for j in range(r):
            u = [S[i][a] * S[j][a] * inv_dim[a] for a in range(r)]
            for k in range(r):
                acc = Cyclotomic.from_rational(0)
                for a in range(r):
                    acc = acc + u[a] * conj[k][a]
                values[(i, j, k)] = acc * inv_D2
    return values


def _verlinde_fast(md: ModularData, rd) -> dict:
    M, E, _ = rd
    r = md.rank
    D2 = r
    values = {}
    for i in range(r):
        exps = (E[i][None, None, :] + E[:, None, :] - E[None, :, :])  # [j, k, a]
        coords = _root_sums(M, exps)
        nonconst = coords[:, :, 1:].any(axis=2)
        for j in range(r):
            for k in range(r):
                if nonconst[j, k]:
                    vec = [Fraction(int(c), D2) for c in coords[j, k]]
                    values[(i, j, k)] = Cyclotomic(M, vec) if M > 1 else Fraction(int(coords[j, k, 0]), D2)
                else:
                    values[(i, j, k)] = Fraction(int(coords[j, k, 0]), D2)
    return values


# -- centralizers -----------------------------------------------------------


def muger_centralizer(md: ModularData, D: Subring) -> Subring:
    """Simples ``X`` with ``s_XY = d_X d_Y`` for every ``Y`` in ``D``."""
    S = md.smat
    r = md.rank
    rd = md.root_data()
    if rd is not None and not rd[1][0].any():
        E = rd[1]
        cols = D.sorted_indices
        keep = [x for x in range(r) if not E[x, list(cols)].any()]
    else:
        d = md.dims
        keep = [x for x in range(r) if all(S[x][y] == d[x] * d[y] for y in D.sorted_indices)]
    return Subring.of(md.ring, keep)


def muger_center(md: ModularData) -> Subring:
    return muger_centralizer(md, Subring(md.ring, frozenset(range(md.rank))))


# -- metric groups ------------------------------------------------------------


class MetricGroup:
    """Finite abelian group with a quadratic form ``q(g) = zeta_modulus ** exponents[g]``."""

    def __init__(self, group: FiniteGroup, modulus: int, exponents, factors: tuple[int, ...] | None = None):
        if not group.is_abelian:
            raise ValueError("metric groups are abelian")
        exps = [int(e) % modulus for e in exponents]
        if len(exps) != group.order:
            raise ValueError(f"need {group.order} form values, got {len(exps)}")
        g = math.gcd(modulus, *exps)
        self.group = group
        self.modulus = modulus // g
        self.exponents = tuple(e // g for e in exps)
        self.factors = factors
        self._bilinear = None

    @classmethod
    def from_qform(cls, group: FiniteGroup, values) -> MetricGroup:
        roots = []
        for v in values:
            re_ = _cyc(v).root_exponent()
            if re_ is None:
                raise ValueError(f"form value {v} is not a root of unity")
            roots.append(re_)
        M = 1
        for m, _ in roots:
            M = math.lcm(M, m)
        return cls(group, M, [e * (M // m) for m, e in roots])

    @classmethod
    def from_generators(cls, factors, q_turns, b_turns=None) -> MetricGroup:
        """Form on ``Z_n1 x ... x Z_nk`` from its values on the standard generators.

        ``q_turns[i]`` is q(e_i) and ``b_turns[(i, j)]`` is b(e_i, e_j) for
        ``i < j``, both as fractions of a full turn.
        """
        factors = tuple(int(n) for n in factors)
        q_turns = [Fraction(v) for v in q_turns]
        b_turns = {tuple(sorted(k)): Fraction(v) for k, v in (b_turns or {}).items()}
        if len(q_turns) != len(factors):
            raise ValueError(f"need one q value per generator ({len(factors)})")
        for i, n in enumerate(factors):
            allowed = 2 * n if n % 2 == 0 else n
            if (q_turns[i] * allowed).denominator != 1:
                raise ValueError(f"q(e_{i}) = {q_turns[i]} turns is not well defined on Z{n}")
        for (i, j), v in b_turns.items():
            if i == j or not (0 <= i < len(factors) and 0 <= j < len(factors)):
                raise ValueError(f"bad generator pair {(i, j)}")
            if (v * math.gcd(factors[i], factors[j])).denominator != 1:
                raise ValueError(f"b(e_{i}, e_{j}) = {v} turns is not well defined")
        M = _form_modulus(factors)
        a = [int(t * M) for t in q_turns]
        c = {k: int(v * M) for k, v in b_turns.items()}
        group = abelian_group(*factors) if factors else abelian_group()
        return cls(group, M, _form_values(factors, a, c, M), factors=factors)

    @property
    def qform(self) -> tuple[Cyclotomic, ...]:
        return tuple(Cyclotomic.root_of_unity(self.modulus, e) for e in self.exponents)

    def bilinear_exponents(self) -> np.ndarray:
        """``b(g, h) = q(gh) / (q(g) q(h))`` as exponents of ``zeta_modulus`` (read-only)."""
        if self._bilinear is None:
            q = np.array(self.exponents, dtype=np.int64)
            table = self.group.table_array
            b = (q[table] - q[:, None] - q[None, :]) % self.modulus
            b.flags.writeable = False
            self._bilinear = b
        return self._bilinear

    def check(self) -> list[str]:
        """Brute-force check of the quadratic-form axioms on every element."""
        out = []
        q = np.array(self.exponents, dtype=np.int64)
        inv = np.array(self.group.inverses)
        table = self.group.table_array
        if q[0] != 0:
            out.append("q(identity) != 1")
        for g in np.nonzero(q != q[inv])[0]:
            out.append(f"q(g) != q(g^-1) at {self.group.labels[g]}")
        b = self.bilinear_exponents()
        # b(gh, k) = b(g, k) b(h, k)
        lhs = b[table]  # [g, h, k]
        rhs = (b[:, None, :] + b[None, :, :]) % self.modulus
        bad = np.argwhere(lhs != rhs)
        for g, h, k in bad[:5]:
            out.append(f"b is not multiplicative at ({g}, {h}, {k})")
        return out

    def is_nondegenerate(self) -> bool:
        b = self.bilinear_exponents()
        return bool(b[1:].any(axis=1).all())

    def __eq__(self, other):
        if not isinstance(other, MetricGroup):
            return NotImplemented
        return self.group.table == other.group.table and (self.modulus, self.exponents) == (other.modulus, other.exponents)

    def __hash__(self):
        return hash((self.modulus, self.exponents))

    def __repr__(self):
        vals = ", ".join(f"{e}/{self.modulus}" for e in self.exponents)
        return f"MetricGroup({self.group.describe()}; q turns = [{vals}])"


def _form_modulus(factors) -> int:
    M = 1
    for n in factors:
        M = math.lcm(M, 2 * n if n % 2 == 0 else n)
    return M


def _form_values(factors, a, c, M) -> list[int]:
    coords = list(itertools.product(*(range(n) for n in factors)))
    out = []
    for x in coords:
        e = sum(ai * xi * xi for ai, xi in zip(a, x))
        e += sum(cij * x[i] * x[j] for (i, j), cij in c.items())
        out.append(e % M)
    return out


def quadratic_forms(factors) -> list[MetricGroup]:
    """Every quadratic form on ``Z_n1 x ... x Z_nk``, by generator parameters.

    Each form is fixed by q(e_i), a ``2 n_i``-th root of unity (an ``n_i``-th
    root for odd ``n_i``), and b(e_i, e_j), a ``gcd(n_i, n_j)``-th root.
    """
    factors = tuple(int(n) for n in factors)
    M = _form_modulus(factors)
    group = abelian_group(*factors) if factors else abelian_group()
    q_choices = [range(0, M, M // (2 * n if n % 2 == 0 else n)) for n in factors]
    pairs = list(itertools.combinations(range(len(factors)), 2))
    b_choices = [range(0, M, M // math.gcd(factors[i], factors[j])) for i, j in pairs]
    coords = np.array(list(itertools.product(*(range(n) for n in factors))), dtype=np.int64).reshape(group.order, len(factors))
    sq = coords * coords
    cross = np.stack([coords[:, i] * coords[:, j] for i, j in pairs], axis=1) if pairs else np.zeros((group.order, 0), dtype=np.int64)
    out = []
    for a in itertools.product(*q_choices):
        base = sq @ np.array(a, dtype=np.int64) if factors else np.zeros(group.order, dtype=np.int64)
        for c in itertools.product(*b_choices):
            vals = (base + (cross @ np.array(c, dtype=np.int64) if pairs else 0)) % M
            out.append(MetricGroup(group, M, vals.tolist(), factors=factors))
    return out


# -- constructions ----------------------------------------------------------


@lru_cache(maxsize=64)
def _group_ring_of(group: FiniteGroup) -> FusionRing:
    return group_ring(group)


def pointed_modular_from_metric_group(mg: MetricGroup, name: str | None = None) -> ModularData:
    """``s_gh = b(g, h)``, ``t_g = q(g)`` on the group ring."""
    if not mg.is_nondegenerate():
        raise ValueError(f"{mg} is degenerate")
    M = mg.modulus
    B = mg.bilinear_exponents()
    roots = [Cyclotomic.root_of_unity(M, e) for e in range(M)]
    smat = tuple(tuple(roots[e] for e in row) for row in B.tolist())
    tmat = tuple(roots[e] for e in mg.exponents)
    md = ModularData(_group_ring_of(mg.group), smat, tmat, name=name)
    md._cache["root_data"] = (M, B, np.array(mg.exponents, dtype=np.int64))
    return md


def semion_modular_data(sign: int = 1) -> ModularData:
    """Rank 2 with ``t = (1, i)`` (or ``(1, -i)`` when ``sign < 0``)."""
    mg = MetricGroup(abelian_group(2), 4, [0, 1 if sign > 0 else 3])
    return pointed_modular_from_metric_group(mg, name="semion" if sign > 0 else "semion*")


def ising_modular_data(zeta_exponent: int) -> ModularData:
    """Ising data with ``t_X = zeta_16 ** zeta_exponent`` (exponent odd)."""
    e = int(zeta_exponent)
    if e % 2 == 0:
        raise ValueError(f"Ising twist exponent must be odd, got {zeta_exponent}")
    e %= 16
    z8 = Cyclotomic.zeta(8)
    sqrt2 = z8 + z8.inverse()
    one = Cyclotomic.from_rational(1)
    zero = Cyclotomic.from_rational(0)
    smat = ((one, one, sqrt2), (one, one, -sqrt2), (sqrt2, -sqrt2, zero))
    tmat = (one, -one, Cyclotomic.root_of_unity(16, e))
    return ModularData(ising_ring(), smat, tmat, name=f"Ising[{e}]")


def trivial_modular_data() -> ModularData:
    one = Cyclotomic.from_rational(1)
    return ModularData(trivial_ring(), ((one,),), (one,), name="trivial")


def modular_product(a: ModularData, b: ModularData) -> ModularData:
    """Entrywise product data on the Deligne product ring."""
    ra, rb = a.rank, b.rank
    smat = tuple(
        tuple(a.smat[i][k] * b.smat[j][l] for k in range(ra) for l in range(rb)) for i in range(ra) for j in range(rb)
    )
    tmat = tuple(a.tmat[i] * b.tmat[j] for i in range(ra) for j in range(rb))
    name = f"{a.name}⊠{b.name}" if a.name and b.name else None
    return ModularData(deligne_product(a.ring, b.ring), smat, tmat, name=name)


def degenerate_toy_data() -> ModularData:
    """Z2 group ring with an all-ones s-matrix: s has two equal rows."""
    one = Cyclotomic.from_rational(1)
    return ModularData(group_ring(abelian_group(2)), ((one, one), (one, one)), (one, one), name="degenerate")
