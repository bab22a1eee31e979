"""Fusion rings: data model, axiom validation, Frobenius-Perron dimensions."""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Mapping

import numpy as np
from sympy import ZZ
from sympy.polys.matrices import DomainMatrix

from .exactnum import AlgebraicReal


@dataclass(frozen=True)
class Violation:
    """One failed axiom with the index tuple that witnesses it."""

    axiom: str
    witness: tuple
    message: str

    def __str__(self):
        return f"{self.axiom} at {self.witness}: {self.message}"


class FusionRing:
    """Basis labels, a duality involution and coefficients ``N_ij^k``.

    Index 0 is the unit.  Coefficients are stored sparsely; absent keys are
    zero.  Instances are treated as immutable.
    """

    def __init__(self, labels, dual, coeffs: Mapping[tuple[int, int, int], int], name: str | None = None):
        self.labels = tuple(str(s) for s in labels)
        self.dual = tuple(int(d) for d in dual)
        r = len(self.labels)
        if r == 0:
            raise ValueError("a fusion ring needs at least the unit")
        if len(self.dual) != r:
            raise ValueError(f"dual has length {len(self.dual)}, expected {r}")
        if any(not 0 <= d < r for d in self.dual):
            raise ValueError("dual maps outside the basis")
        clean = {}
        for key, n in coeffs.items():
            i, j, k = (int(v) for v in key)
            if not all(0 <= v < r for v in (i, j, k)):
                raise ValueError(f"coefficient index {key} outside rank {r}")
            if int(n) != n:
                raise ValueError(f"coefficient {key} = {n} is not an integer")
            if n:
                clean[(i, j, k)] = int(n)
        self.coeffs = dict(sorted(clean.items()))
        self.name = name
        self._cache: dict = {}

    @property
    def rank(self) -> int:
        return len(self.labels)

    def N(self, i: int, j: int, k: int) -> int:
        return self.coeffs.get((i, j, k), 0)

    @property
    def tensor(self) -> np.ndarray:
        """Dense array ``T[i, j, k] = N_ij^k`` (read-only)."""
        if "tensor" not in self._cache:
            r = self.rank
            t = np.zeros((r, r, r), dtype=np.int64)
            for (i, j, k), n in self.coeffs.items():
                t[i, j, k] = n
            t.setflags(write=False)
            self._cache["tensor"] = t
        return self._cache["tensor"]

    def product(self, i: int, j: int) -> dict[int, int]:
        """``i (x) j`` as ``{k: N_ij^k}``."""
        prods = self._cache.get("products")
        if prods is None:
            prods = {}
            for (a, b, k), n in self.coeffs.items():
                prods.setdefault((a, b), {})[k] = n
            self._cache["products"] = prods
        return dict(prods.get((i, j), {}))

    def support(self, i: int, j: int) -> tuple[int, ...]:
        return tuple(sorted(self.product(i, j)))

    def is_invertible(self, i: int) -> bool:
        return self.product(i, self.dual[i]) == {0: 1}

    @property
    def invertibles(self) -> tuple[int, ...]:
        if "invertibles" not in self._cache:
            self._cache["invertibles"] = tuple(i for i in range(self.rank) if self.is_invertible(i))
        return self._cache["invertibles"]

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def __eq__(self, other):
        if not isinstance(other, FusionRing):
            return NotImplemented
        return self.labels == other.labels and self.dual == other.dual and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.labels, self.dual, tuple(self.coeffs.items())))

    def __repr__(self):
        tag = f" {self.name!r}" if self.name else ""
        return f"<FusionRing{tag} rank={self.rank}>"

    def describe_product(self, i: int, j: int) -> str:
        terms = []
        for k, n in sorted(self.product(i, j).items()):
            terms.append(self.labels[k] if n == 1 else f"{n}{self.labels[k]}")
        return " + ".join(terms) if terms else "0"


def validate(ring: FusionRing) -> list[Violation]:
    """Check unit, duality, Frobenius reciprocity and associativity.

    Returns every violation found; an empty list means the ring is valid.
    """
    if "violations" not in ring._cache:
        ring._cache["violations"] = tuple(_validate(ring))
    return list(ring._cache["violations"])


def _associator_mismatches(T: np.ndarray):
    """Yield ``(i, j, k, l, left, right)`` where the two bracketings differ.

    Works one ``i`` slice at a time with float matmuls, which are exact here
    because all partial sums stay far below 2**53.
    """
    r = T.shape[0]
    Tf = T.astype(np.float64)
    flat_right = Tf.reshape(r, r * r)  # [m, (k, l)]
    flat_left = Tf.reshape(r * r, r)  # [(j, k), m]
    for i in range(r):
        left = (Tf[i] @ flat_right).reshape(r, r, r)  # sum_m T[i,j,m] T[m,k,l]
        right = (flat_left @ Tf[i]).reshape(r, r, r)  # sum_m T[j,k,m] T[i,m,l]
        for j, k, l in zip(*np.nonzero(left != right)):
            yield i, int(j), int(k), int(l), int(left[j, k, l]), int(right[j, k, l])


def _validate(ring: FusionRing) -> list[Violation]:
    out: list[Violation] = []
    r = ring.rank
    T = ring.tensor
    lab = ring.labels
    dual = np.array(ring.dual)

    if len(set(lab)) != r:
        out.append(Violation("labels", (), "basis labels are not distinct"))
    for i, j, k in zip(*np.nonzero(T < 0)):
        out.append(Violation("nonnegativity", (int(i), int(j), int(k)), f"N = {T[i, j, k]}"))
    if ring.dual[0] != 0:
        out.append(Violation("duality", (0,), "the unit is not self-dual"))
    for i in range(r):
        if ring.dual[ring.dual[i]] != i:
            out.append(Violation("duality", (i,), f"dual is not an involution at {lab[i]}"))

    eye = np.eye(r, dtype=np.int64)
    for j, k in zip(*np.nonzero(T[0] != eye)):
        out.append(Violation("unit", (0, int(j), int(k)), f"1 (x) {lab[j]} has coefficient {T[0, j, k]} on {lab[k]}"))
    for j, k in zip(*np.nonzero(T[:, 0, :] != eye)):
        if j == 0:
            continue
        out.append(Violation("unit", (int(j), 0, int(k)), f"{lab[j]} (x) 1 has coefficient {T[j, 0, k]} on {lab[k]}"))

    expected0 = np.zeros((r, r), dtype=np.int64)
    expected0[np.arange(r), dual] = 1
    for i, j in zip(*np.nonzero(T[:, :, 0] != expected0)):
        out.append(
            Violation("duality", (int(i), int(j), 0), f"N_{{{lab[i]},{lab[j]}}}^1 = {T[i, j, 0]}, expected {expected0[i, j]}")
        )

    # N_ij^k = N_{i* k}^j = N_{k j*}^i
    recip1 = T[dual, :, :].transpose(0, 2, 1)  # [i, j, k] -> T[i*, k, j]
    recip2 = T[:, dual, :].transpose(2, 1, 0)  # [i, j, k] -> T[k, j*, i]
    bad = (T != recip1) | (T != recip2)
    for i, j, k in zip(*np.nonzero(bad)):
        out.append(
            Violation(
                "reciprocity",
                (int(i), int(j), int(k)),
                f"N_ij^k={T[i, j, k]}, N_(i*)k^j={recip1[i, j, k]}, N_k(j*)^i={recip2[i, j, k]}",
            )
        )

    for i, j, k, l, lv, rv in _associator_mismatches(T):
        out.append(
            Violation(
                "associativity",
                (i, j, k, l),
                f"(({lab[i]}{lab[j]}){lab[k]}) has {lv} copies of {lab[l]}, ({lab[i]}({lab[j]}{lab[k]})) has {rv}",
            )
        )
    return out


def is_valid(ring: FusionRing) -> bool:
    return not validate(ring)


def fusion_matrix(ring: FusionRing, i: int) -> np.ndarray:
    """Left multiplication by basis element ``i``: entry ``[k, j] = N_ij^k``."""
    if not 0 <= i < ring.rank:
        raise IndexError(f"basis index {i} out of range for rank {ring.rank}")
    return np.array(ring.tensor[i].T)


def characteristic_polynomial(matrix) -> tuple[int, ...]:
    """Ascending integer coefficients of det(xI - M)."""
    m = np.asarray(matrix)
    n = m.shape[0]
    dm = DomainMatrix([[ZZ(int(v)) for v in row] for row in m], (n, n), ZZ)
    return tuple(int(c) for c in reversed(dm.charpoly()))


def fpdim_object(ring: FusionRing, i: int) -> AlgebraicReal:
    """Perron-Frobenius eigenvalue of the fusion matrix of ``i``."""
    dims = ring._cache.setdefault("fpdims", {})
    if i not in dims:
        if ring.is_invertible(i):
            dims[i] = AlgebraicReal.from_integer(1)
        else:
            dims[i] = AlgebraicReal.largest_real_root(characteristic_polynomial(fusion_matrix(ring, i)))
    return dims[i]


def fpdims(ring: FusionRing) -> tuple[AlgebraicReal, ...]:
    return tuple(fpdim_object(ring, i) for i in range(ring.rank))


def sum_of_squares(dims) -> AlgebraicReal:
    total = AlgebraicReal.from_integer(0)
    for d in dims:
        total = total + d * d
    return total


def fpdim_ring(ring: FusionRing) -> AlgebraicReal:
    """Global dimension: sum of squared object dimensions."""
    if "fpdim_ring" not in ring._cache:
        ring._cache["fpdim_ring"] = sum_of_squares(fpdims(ring))
    return ring._cache["fpdim_ring"]


@dataclass(frozen=True)
class TypeSignature:
    """``(d0, n0; d1, n1; ...)`` with ``1 = d0 < d1 < ...``."""

    entries: tuple[tuple[AlgebraicReal, int], ...]

    def __post_init__(self):
        ds = [d for d, _ in self.entries]
        if not ds or ds[0] != AlgebraicReal.from_integer(1):
            raise ValueError("a type signature starts with dimension 1")
        if any(not a < b for a, b in zip(ds, ds[1:])):
            raise ValueError("dimensions must be strictly increasing")
        if any(n < 1 for _, n in self.entries):
            raise ValueError("multiplicities must be positive")

    @classmethod
    def of(cls, *pairs) -> TypeSignature:
        """Build from ``(d, n)`` pairs; ``d`` may be an int or AlgebraicReal."""
        entries = []
        for d, n in pairs:
            if not isinstance(d, AlgebraicReal):
                d = AlgebraicReal.from_rational(d)
            entries.append((d, int(n)))
        return cls(tuple(entries))

    @classmethod
    def from_squares(cls, *pairs) -> TypeSignature:
        """Build from ``(d^2, n)`` pairs with integer squared dimensions."""
        return cls.of(*((AlgebraicReal.sqrt_integer(s), n) for s, n in pairs))

    @classmethod
    def parse(cls, text: str) -> TypeSignature:
        """Parse ``"(1,2; √2,1)"``; dimensions are integers, ``√n``, ``a√n`` or ``sqrt(n)``."""
        body = text.strip()
        if body.startswith("(") and body.endswith(")"):
            body = body[1:-1]
        pairs = []
        for chunk in body.split(";"):
            try:
                d_text, n_text = (t.strip() for t in chunk.split(","))
                pairs.append((_parse_square(d_text), int(n_text)))
            except ValueError as exc:
                raise ValueError(f"cannot parse type entry {chunk.strip()!r}") from exc
        return cls.from_squares(*pairs)

    @property
    def rank(self) -> int:
        return sum(n for _, n in self.entries)

    @property
    def fpdim(self) -> AlgebraicReal:
        total = AlgebraicReal.from_integer(0)
        for d, n in self.entries:
            total = total + d * d * n
        return total

    def is_pointed(self) -> bool:
        return len(self.entries) == 1

    def __str__(self):
        return "(" + "; ".join(f"{d},{n}" for d, n in self.entries) + ")"


_SQRT = re.compile(r"^(\d*)\s*(?:√|sqrt)\s*\(?\s*(\d+)\s*\)?$")


def _parse_square(text: str) -> int:
    """Square of a dimension token such as ``3``, ``√2``, ``2√2`` or ``sqrt(5)``."""
    if text.isdigit():
        return int(text) ** 2
    m = _SQRT.match(text)
    if not m:
        raise ValueError(f"bad dimension {text!r}")
    a = int(m.group(1) or 1)
    return a * a * int(m.group(2))


def type_signature(ring: FusionRing) -> TypeSignature:
    counts: dict[AlgebraicReal, int] = {}
    for d in fpdims(ring):
        counts[d] = counts.get(d, 0) + 1
    return TypeSignature(tuple(sorted(counts.items(), key=lambda kv: kv[0])))


class Integrality(enum.Enum):
    INTEGRAL = "integral"
    WEAKLY_INTEGRAL = "weakly_integral_not_integral"
    NON_WEAKLY_INTEGRAL = "non_weakly_integral"


def classify_integrality(ring: FusionRing) -> Integrality:
    if all(d.as_integer() is not None for d in fpdims(ring)):
        return Integrality.INTEGRAL
    if fpdim_ring(ring).as_integer() is not None:
        return Integrality.WEAKLY_INTEGRAL
    return Integrality.NON_WEAKLY_INTEGRAL


def is_commutative(ring: FusionRing) -> bool:
    if "commutative" not in ring._cache:
        T = ring.tensor
        ring._cache["commutative"] = bool((T == T.transpose(1, 0, 2)).all())
    return ring._cache["commutative"]


def is_pointed(ring: FusionRing) -> bool:
    return len(ring.invertibles) == ring.rank
