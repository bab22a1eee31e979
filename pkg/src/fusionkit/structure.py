"""Subrings, gradings, invertible-object orbits, nilpotency and Deligne products."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .exactnum import AlgebraicReal
from .groups import FiniteGroup, homomorphisms
from .ring import FusionRing, fpdim_object, fpdim_ring, sum_of_squares


class GradingError(ValueError):
    """The fusion rules do not induce a well-defined grading group."""


@dataclass(frozen=True, eq=False)
class Subring:
    """A dual-closed, fusion-closed set of basis indices of ``parent``."""

    parent: FusionRing
    indices: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "indices", frozenset(self.indices))

    @classmethod
    def of(cls, ring: FusionRing, indices) -> Subring:
        """Wrap ``indices`` after checking the subring conditions."""
        idx = frozenset(indices)
        if 0 not in idx:
            raise ValueError("a subring contains the unit")
        for i in idx:
            if ring.dual[i] not in idx:
                raise ValueError(f"{ring.labels[i]} is in the set but its dual is not")
            for j in idx:
                for k in ring.product(i, j):
                    if k not in idx:
                        raise ValueError(
                            f"{ring.labels[i]} (x) {ring.labels[j]} contains {ring.labels[k]} outside the set"
                        )
        return cls(ring, idx)

    @property
    def sorted_indices(self) -> tuple[int, ...]:
        return tuple(sorted(self.indices))

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(self.parent.labels[i] for i in self.sorted_indices)

    def __contains__(self, i) -> bool:
        return i in self.indices

    def __len__(self) -> int:
        return len(self.indices)

    def __iter__(self):
        return iter(self.sorted_indices)

    def __eq__(self, other):
        if not isinstance(other, Subring):
            return NotImplemented
        return self.indices == other.indices and (self.parent is other.parent or self.parent == other.parent)

    def __hash__(self):
        return hash(self.indices)

    def __le__(self, other: Subring) -> bool:
        return self.indices <= other.indices

    def __repr__(self):
        return "Subring{" + ", ".join(self.labels) + "}"

    @property
    def fpdim(self) -> AlgebraicReal:
        return sum_of_squares(fpdim_object(self.parent, i) for i in self.sorted_indices)

    def is_trivial(self) -> bool:
        return self.indices == frozenset({0})

    def is_whole(self) -> bool:
        return len(self.indices) == self.parent.rank

    def is_pointed(self) -> bool:
        return all(self.parent.is_invertible(i) for i in self.indices)

    def as_ring(self) -> FusionRing:
        """The subring as a standalone ring, re-indexed in increasing order."""
        idx = self.sorted_indices
        pos = {old: new for new, old in enumerate(idx)}
        coeffs = {}
        for (i, j, k), n in self.parent.coeffs.items():
            if i in pos and j in pos and k in pos:
                coeffs[(pos[i], pos[j], pos[k])] = n
        return FusionRing(
            [self.parent.labels[i] for i in idx],
            [pos[self.parent.dual[i]] for i in idx],
            coeffs,
        )


def _closure(ring: FusionRing, seed) -> frozenset[int]:
    elems = {0}
    for s in seed:
        elems.add(s)
        elems.add(ring.dual[s])
    frontier = list(elems)
    while frontier:
        x = frontier.pop()
        for y in list(elems):
            for k in list(ring.product(x, y)) + list(ring.product(y, x)):
                if k not in elems:
                    elems.add(k)
                    elems.add(ring.dual[k])
                    frontier.append(k)
                    frontier.append(ring.dual[k])
    return frozenset(elems)


def subring_generated(ring: FusionRing, seed) -> Subring:
    """Smallest subring containing ``seed``."""
    return Subring(ring, _closure(ring, seed))


def pointed_part(ring: FusionRing) -> Subring:
    return subring_generated(ring, ring.invertibles)


def _adjoint_seed(ring: FusionRing, indices) -> set[int]:
    seed: set[int] = set()
    for x in indices:
        seed.update(ring.product(x, ring.dual[x]))
    return seed


def adjoint_subring(ring: FusionRing) -> Subring:
    """Subring generated by the supports of ``X (x) X*``."""
    return subring_generated(ring, _adjoint_seed(ring, range(ring.rank)))


def commutator_subring(ring: FusionRing, D: Subring) -> Subring:
    """Subring generated by the simples ``X`` with ``X (x) X*`` inside ``D``."""
    seed = [x for x in range(ring.rank) if set(ring.product(x, ring.dual[x])) <= D.indices]
    return subring_generated(ring, seed)


@dataclass(frozen=True, eq=False)
class Grading:
    """Assignment of basis indices to elements of a finite group."""

    parent: FusionRing
    group: FiniteGroup
    assignment: tuple[int, ...]

    def component(self, g: int) -> tuple[int, ...]:
        return tuple(i for i, a in enumerate(self.assignment) if a == g)

    @property
    def components(self) -> tuple[tuple[int, ...], ...]:
        return tuple(self.component(g) for g in range(self.group.order))

    def is_faithful(self) -> bool:
        return len(set(self.assignment)) == self.group.order

    @property
    def identity_component(self) -> Subring:
        return Subring(self.parent, frozenset(self.component(0)))

    def component_fpdim(self, g: int) -> AlgebraicReal:
        return sum_of_squares(fpdim_object(self.parent, i) for i in self.component(g))

    def check(self) -> list[str]:
        """Problems with the grading axioms; empty when consistent."""
        ring, grp, a = self.parent, self.group, self.assignment
        out = []
        if a[0] != 0:
            out.append("unit is not in the identity component")
        for i in range(ring.rank):
            if a[ring.dual[i]] != grp.inverse(a[i]):
                out.append(f"dual of {ring.labels[i]} is in the wrong component")
        for (i, j, k) in ring.coeffs:
            if a[k] != grp.mul(a[i], a[j]):
                out.append(f"{ring.labels[k]} in {ring.labels[i]} (x) {ring.labels[j]} breaks the grading")
        return out

    def __eq__(self, other):
        if not isinstance(other, Grading):
            return NotImplemented
        return (
            self.parent == other.parent
            and self.assignment == other.assignment
            and self.group.table == other.group.table
        )

    def __hash__(self):
        return hash(self.assignment)

    def __repr__(self):
        comps = "; ".join(
            "{" + ", ".join(self.parent.labels[i] for i in c) + "}" for c in self.components
        )
        return f"Grading({self.group.describe()}: {comps})"


def universal_grading(ring: FusionRing) -> Grading:
    """Finest faithful grading; its identity component is the adjoint subring."""
    adj = adjoint_subring(ring)
    r = ring.rank
    parent = list(range(r))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for x in range(r):
        for a in adj.indices:
            for y in ring.product(x, a):
                rx, ry = find(x), find(y)
                if rx != ry:
                    parent[max(rx, ry)] = min(rx, ry)

    roots = sorted({find(x) for x in range(r)})
    cls = {root: n for n, root in enumerate(roots)}
    assignment = tuple(cls[find(x)] for x in range(r))
    if assignment[0] != 0:
        raise GradingError("unit class is not first")
    if set(i for i in range(r) if assignment[i] == 0) != set(adj.indices):
        raise GradingError("identity class differs from the adjoint subring")

    m = len(roots)
    table = [[-1] * m for _ in range(m)]
    for (i, j, k) in ring.coeffs:
        a, b, c = assignment[i], assignment[j], assignment[k]
        if table[a][b] == -1:
            table[a][b] = c
        elif table[a][b] != c:
            raise GradingError(
                f"{ring.labels[i]} (x) {ring.labels[j]} meets two classes; the induced law is ill-defined"
            )
    if any(v == -1 for row in table for v in row):
        raise GradingError("some pair of classes has an empty product")
    try:
        group = FiniteGroup(table, labels=[ring.labels[root] for root in roots])
    except ValueError as exc:
        raise GradingError(f"induced law is not a group: {exc}") from exc
    return Grading(ring, group, assignment)


def gradings_by_group(ring: FusionRing, H: FiniteGroup) -> list[Grading]:
    """All faithful H-gradings: surjections from the universal group composed with it."""
    U = universal_grading(ring)
    out = []
    for phi in homomorphisms(U.group, H, surjective=True):
        out.append(Grading(ring, H, tuple(phi[u] for u in U.assignment)))
    out.sort(key=lambda g: g.assignment)
    return out


def faithful_gradings(ring: FusionRing) -> list[Grading]:
    """One faithful grading per quotient of the universal grading group."""
    U = universal_grading(ring)
    out = []
    for normal in U.group.normal_subgroups:
        quot, proj = U.group.quotient(normal)
        out.append(Grading(ring, quot, tuple(proj[u] for u in U.assignment)))
    out.sort(key=lambda g: (g.group.order, g.assignment))
    return out


@dataclass(frozen=True)
class OrbitData:
    parent: FusionRing = field(repr=False)
    target: int
    orbit: tuple[int, ...]
    stabilizer: tuple[int, ...]


def orbit_stabilizer(ring: FusionRing, X: int) -> OrbitData:
    """Orbit and stabilizer of ``X`` under left tensoring with invertibles."""
    orbit = set()
    stab = []
    for g in ring.invertibles:
        prod = ring.product(g, X)
        if len(prod) != 1 or sum(prod.values()) != 1:
            raise ValueError(f"{ring.labels[g]} (x) {ring.labels[X]} is not simple; the ring is invalid")
        (y,) = prod
        orbit.add(y)
        if y == X:
            stab.append(g)
    return OrbitData(ring, X, tuple(sorted(orbit)), tuple(stab))


@dataclass(frozen=True)
class NilpotencyResult:
    series: tuple[Subring, ...]
    nilpotent: bool
    nilpotency_class: int | None
    cyclically_nilpotent: bool
    grading_groups: tuple[FiniteGroup, ...] = field(repr=False, default=())


def nilpotency_series(ring: FusionRing) -> NilpotencyResult:
    """Iterate the adjoint subring until it stabilizes."""
    series = [Subring(ring, frozenset(range(ring.rank)))]
    groups = []
    while True:
        current = series[-1]
        nxt = Subring(ring, _closure(ring, _adjoint_seed(ring, current.indices)))
        if nxt == current:
            if not nxt.is_trivial():
                series.append(nxt)  # show where the series gets stuck
            break
        groups.append(universal_grading(current.as_ring()).group)
        series.append(nxt)
    nilpotent = series[-1].is_trivial()
    return NilpotencyResult(
        series=tuple(series),
        nilpotent=nilpotent,
        nilpotency_class=len(series) - 1 if nilpotent else None,
        cyclically_nilpotent=nilpotent and all(g.is_solvable for g in groups),
        grading_groups=tuple(groups),
    )


def deligne_product(a: FusionRing, b: FusionRing) -> FusionRing:
    """Tensor product of based rings; basis index ``i * rank(b) + j``."""
    ra, rb = a.rank, b.rank
    coeffs = {}
    for (i, k, m), n1 in a.coeffs.items():
        for (j, l, p), n2 in b.coeffs.items():
            coeffs[(i * rb + j, k * rb + l, m * rb + p)] = n1 * n2
    full = [f"{x}⊠{y}" for x in a.labels for y in b.labels]
    short = []
    for i in range(ra):
        for j in range(rb):
            if i == 0 and j == 0:
                short.append(a.labels[0])
            elif i == 0:
                short.append(b.labels[j])
            elif j == 0:
                short.append(a.labels[i])
            else:
                short.append(full[i * rb + j])
    labels = short if len(set(short)) == len(short) else full
    dual = [a.dual[i] * rb + b.dual[j] for i in range(ra) for j in range(rb)]
    name = f"{a.name}⊠{b.name}" if a.name and b.name else None
    return FusionRing(labels, dual, coeffs, name=name)


def all_subrings(ring: FusionRing) -> list[Subring]:
    """Every subring, sorted by size then indices."""
    start = frozenset({0})
    found = {start}
    frontier = [start]
    while frontier:
        s = frontier.pop()
        for i in range(ring.rank):
            if i not in s:
                t = _closure(ring, s | {i})
                if t not in found:
                    found.add(t)
                    frontier.append(t)
    return [Subring(ring, s) for s in sorted(found, key=lambda s: (len(s), sorted(s)))]


def _pairing(ring: FusionRing, A: Subring, B: Subring) -> dict[tuple[int, int], int] | None:
    pairs = {}
    for a in A.sorted_indices:
        for b in B.sorted_indices:
            prod = ring.product(a, b)
            if len(prod) != 1 or sum(prod.values()) != 1:
                return None
            (k,) = prod
            pairs[(a, b)] = k
    if len(set(pairs.values())) != ring.rank:
        return None
    return pairs


def _respects_product(ring: FusionRing, A: Subring, B: Subring, phi) -> bool:
    for a1 in A.sorted_indices:
        for b1 in B.sorted_indices:
            x = phi[(a1, b1)]
            for a2 in A.sorted_indices:
                for b2 in B.sorted_indices:
                    y = phi[(a2, b2)]
                    expected = {}
                    for a3, n1 in ring.product(a1, a2).items():
                        for b3, n2 in ring.product(b1, b2).items():
                            expected[phi[(a3, b3)]] = n1 * n2
                    if ring.product(x, y) != expected:
                        return False
    return True


def factorizations(ring: FusionRing) -> list[tuple[Subring, Subring]]:
    """Unordered pairs of proper subrings ``(A, B)`` with ``ring = A ⊠ B`` certified."""
    total = fpdim_ring(ring)
    subs = [s for s in all_subrings(ring) if not s.is_trivial() and not s.is_whole()]
    dims = {s: s.fpdim for s in subs}
    out = []
    for A, B in combinations(subs, 2):
        if A.indices & B.indices != {0} or len(A) * len(B) != ring.rank:
            continue
        if dims[A] * dims[B] != total:
            continue
        phi = _pairing(ring, A, B)
        if phi is None or not _respects_product(ring, A, B, phi):
            continue
        out.append((A, B))
    return out
