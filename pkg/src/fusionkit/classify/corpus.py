"""The built-in corpus of small rings used by the verifiers and the CLI.

Each entry keeps its construction recipe next to the ring, so expected
outcomes are derived from how a ring was built rather than from the checks
that are being tested.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

from ..constructors import fibonacci_ring, group_ring, tambara_yamagami_ring, trivial_ring
from ..groups import abelian_group, cyclic, dihedral4, quaternion8, symmetric3
from ..ring import FusionRing, TypeSignature
from ..structure import deligne_product
from .enumerate import enumerate_rings

MAX_PRODUCT_RANK = 12


@dataclass(frozen=True)
class CorpusEntry:
    """A named ring with its recipe.

    ``kind`` is one of ``group``, ``ty``, ``fibonacci``, ``product`` or
    ``enumerated``.  ``parts`` lists the factor names of a product.
    ``ty_order`` is ``|A|`` when the ring is ``TY(A)`` or ``pointed x TY(A)``.
    """

    name: str
    ring: FusionRing = field(repr=False)
    kind: str
    parts: tuple[str, ...] = ()
    pointed: bool = False
    ty_order: int | None = None

    @property
    def expected_extension_outcome(self) -> str | None:
        """``pass`` or ``flagged`` for TY-type rings, None when out of scope.

        A TY(A) factor is a Z2-extension of a pointed ring, so its dimension
        ``2|A|`` has to be a power of 2 for the factorization clause.
        """
        if self.ty_order is None:
            return None
        n = self.ty_order
        return "pass" if n & (n - 1) == 0 else "flagged"


def _abelian_groups_up_to(n_max: int):
    """Abelian groups of order 2..n_max, one per isomorphism type."""
    by_order = {
        2: [(2,)], 3: [(3,)], 4: [(4,), (2, 2)], 5: [(5,)], 6: [(6,)],
        7: [(7,)], 8: [(8,), (4, 2), (2, 2, 2)],
    }
    for n in range(2, n_max + 1):
        for inv in by_order[n]:
            yield abelian_group(*inv)


def _group_entries() -> list[CorpusEntry]:
    groups = [cyclic(n) for n in range(2, 9)]
    groups += [abelian_group(2, 2), abelian_group(4, 2), abelian_group(2, 2, 2)]
    groups += [symmetric3(), dihedral4(), quaternion8()]
    out = [CorpusEntry("Vec", trivial_ring(), "group", pointed=True)]
    for G in groups:
        ring = group_ring(G)
        out.append(CorpusEntry(ring.name, ring, "group", pointed=True))
    return out


def _ty_entries() -> list[CorpusEntry]:
    out = []
    for A in _abelian_groups_up_to(8):
        ring = tambara_yamagami_ring(A)
        out.append(CorpusEntry(ring.name, ring, "ty", ty_order=A.order))
    return out


def _product_entry(a: CorpusEntry, b: CorpusEntry) -> CorpusEntry:
    ring = deligne_product(a.ring, b.ring)
    ty_order = None
    if a.pointed and b.ty_order is not None:
        ty_order = b.ty_order
    elif b.pointed and a.ty_order is not None:
        ty_order = a.ty_order
    name = f"{a.name}⊠{b.name}"
    return CorpusEntry(name, ring, "product", parts=(a.name, b.name), pointed=a.pointed and b.pointed, ty_order=ty_order)


@lru_cache(maxsize=1)
def builtin_corpus() -> tuple[CorpusEntry, ...]:
    """Group rings up to order 8, TY(A) for ``|A| <= 8``, Fibonacci, and products.

    Products run over unordered pairs (with repetition) of non-trivial items
    whose Deligne product has rank at most 12.
    """
    base = _group_entries() + _ty_entries()
    fib = fibonacci_ring()
    base.append(CorpusEntry("Fib", fib, "fibonacci"))
    factors = [e for e in base if e.ring.rank > 1]
    products = []
    for a, b in itertools.combinations_with_replacement(factors, 2):
        if a.ring.rank * b.ring.rank <= MAX_PRODUCT_RANK:
            products.append(_product_entry(a, b))
    return tuple(base + products)


# Types whose exhaustive enumeration feeds the extension verifiers; the
# (1,4; 2,2) search produces Z3-extensions of pointed rings.
ENUMERATED_TYPES = (
    ((1, 2), (2, 1)),
    ((1, 3), (3, 1)),
    ((1, 4), (4, 1)),
    ((1, 4), (2, 2)),
    ((1, 2), (4, 1)),
    ((1, 4), (4, 2)),
)


@lru_cache(maxsize=4)
def enumerated_corpus(jobs: int | None = None) -> tuple[CorpusEntry, ...]:
    """Every commutative ring of the types in :data:`ENUMERATED_TYPES`."""
    out = []
    for squares in ENUMERATED_TYPES:
        sig = TypeSignature.from_squares(*squares)
        for ring in enumerate_rings(sig, commutative=True, jobs=jobs):
            out.append(CorpusEntry(ring.name, ring, "enumerated"))
    return tuple(out)


def full_corpus(jobs: int | None = None) -> tuple[CorpusEntry, ...]:
    return builtin_corpus() + enumerated_corpus(jobs)


def corpus_entry(name: str) -> CorpusEntry:
    for entry in full_corpus():
        if entry.name == name:
            return entry
    raise KeyError(name)
