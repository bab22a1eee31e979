"""Standard fusion rings and recognizers for graded families."""
from __future__ import annotations

from dataclasses import dataclass

from .groups import FiniteGroup, cyclic
from .ring import FusionRing, fpdim_ring, is_pointed
from .structure import Grading, Subring, gradings_by_group, orbit_stabilizer


def _element_labels(G: FiniteGroup) -> list[str]:
    if G.name and G.name.startswith("Z") and G.name[1:].isdigit():
        n = G.order
        if n == 1:
            return ["1"]
        if n == 2:
            return ["1", "g"]
        return ["1", "g"] + [f"g^{k}" for k in range(2, n)]
    labels = list(G.labels)
    labels[0] = "1"
    if len(set(labels)) != len(labels):
        labels = ["1"] + [f"g{k}" for k in range(1, G.order)]
    return labels


def group_ring(G: FiniteGroup) -> FusionRing:
    """Pointed ring with basis G and ``g (x) h = gh``."""
    n = G.order
    coeffs = {(a, b, G.mul(a, b)): 1 for a in range(n) for b in range(n)}
    return FusionRing(_element_labels(G), G.inverses, coeffs, name=f"Vec({G.describe()})")


def tambara_yamagami_ring(A: FiniteGroup) -> FusionRing:
    """``A`` plus one self-dual ``X`` with ``X (x) X = sum of all a``."""
    if not A.is_abelian:
        raise ValueError(f"Tambara-Yamagami rings need an abelian group, got {A.describe()}")
    n = A.order
    X = n
    coeffs = {(a, b, A.mul(a, b)): 1 for a in range(n) for b in range(n)}
    for a in range(n):
        coeffs[(a, X, X)] = 1
        coeffs[(X, a, X)] = 1
        coeffs[(X, X, a)] = 1
    labels = _element_labels(A) + ["X"]
    dual = list(A.inverses) + [X]
    name = "Ising" if n == 2 else f"TY({A.describe()})"
    return FusionRing(labels, dual, coeffs, name=name)


def ising_ring() -> FusionRing:
    """Rank 3 with labels 1, g, X and ``X (x) X = 1 + g``."""
    return tambara_yamagami_ring(cyclic(2))


def fibonacci_ring() -> FusionRing:
    """Rank 2 with ``X (x) X = 1 + X``."""
    coeffs = {(0, 0, 0): 1, (0, 1, 1): 1, (1, 0, 1): 1, (1, 1, 0): 1, (1, 1, 1): 1}
    return FusionRing(["1", "X"], [0, 1], coeffs, name="Fib")


def trivial_ring() -> FusionRing:
    return FusionRing(["1"], [0], {(0, 0, 0): 1}, name="Vec")


@dataclass(frozen=True)
class GTYWitness:
    """Stabilizer ``N`` of the first non-invertible plus the numeric checks."""

    stabilizer: tuple[int, ...]
    invertibles: int
    non_invertibles: tuple[int, ...]

    @property
    def index(self) -> int:
        return self.invertibles // len(self.stabilizer)


def is_generalized_TY(ring: FusionRing) -> GTYWitness | None:
    """Witness when products of non-invertibles only contain invertibles.

    Raises ValueError if the ring passes the support test but violates the
    rank or dimension formulas, which only happens for invalid input.
    """
    if is_pointed(ring):
        return None
    inv = set(ring.invertibles)
    non_inv = [x for x in range(ring.rank) if x not in inv]
    for x in non_inv:
        for y in non_inv:
            if not set(ring.product(x, y)) <= inv:
                return None
    # Stabilizers along the orbit are conjugate; they coincide when G is abelian.
    N = orbit_stabilizer(ring, non_inv[0]).stabilizer
    G = len(inv)
    if G % len(N):
        raise ValueError("stabilizer order does not divide the number of invertibles")
    if ring.rank != (G // len(N)) * (1 + len(N)):
        raise ValueError(f"rank {ring.rank} differs from [G:N](1+|N|) = {(G // len(N)) * (1 + len(N))}")
    if fpdim_ring(ring) != 2 * G:
        raise ValueError(f"global dimension {fpdim_ring(ring)} differs from 2|G| = {2 * G}")
    return GTYWitness(stabilizer=N, invertibles=G, non_invertibles=tuple(non_inv))


def zq_extension_witness(ring: FusionRing, q: int) -> tuple[Grading, Subring] | None:
    """A faithful Z_q-grading with pointed identity component, if any."""
    for grading in gradings_by_group(ring, cyclic(q)):
        c0 = grading.identity_component
        if c0.is_pointed():
            return grading, c0
    return None
