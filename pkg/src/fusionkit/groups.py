"""Small finite groups given by multiplication tables.

Elements are the integers ``0..n-1`` with ``0`` the identity.  Named presets
cover the groups the rest of the package asks for by name: ``Zn``,
products such as ``Z2xZ4``, ``S3``, ``D4`` and ``Q8``.
"""
from __future__ import annotations

import itertools
import math
import re
from functools import cached_property

import numpy as np


class FiniteGroup:
    """A finite group as a Cayley table with identity 0."""

    def __init__(self, table, labels=None, name: str | None = None):
        self.table = tuple(tuple(int(v) for v in row) for row in table)
        n = len(self.table)
        if n == 0 or any(len(row) != n for row in self.table):
            raise ValueError("multiplication table must be a non-empty square")
        self.labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(n))
        self.name = name
        self._check()

    def _check(self):
        n = self.order
        rng = range(n)
        for a in rng:
            if self.table[0][a] != a or self.table[a][0] != a:
                raise ValueError("element 0 must be the identity")
            if sorted(self.table[a]) != list(rng) or sorted(self.table[b][a] for b in rng) != list(rng):
                raise ValueError("table is not a Latin square")
        T = np.array(self.table, dtype=np.int64)
        bad = np.argwhere(T[T] != T[np.arange(n)[:, None, None], T[None, :, :]])
        if len(bad):
            raise ValueError(f"table is not associative at {tuple(int(v) for v in bad[0])}")

    @property
    def order(self) -> int:
        return len(self.table)

    def __len__(self):
        return self.order

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    @cached_property
    def table_array(self) -> np.ndarray:
        """Read-only int64 copy of the Cayley table."""
        arr = np.array(self.table, dtype=np.int64)
        arr.flags.writeable = False
        return arr

    @cached_property
    def inverses(self) -> tuple[int, ...]:
        return tuple(self.table[a].index(0) for a in range(self.order))

    def inverse(self, a: int) -> int:
        return self.inverses[a]

    def power(self, a: int, k: int) -> int:
        out = 0
        for _ in range(k % self.element_order(a)):
            out = self.table[out][a]
        return out

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = self.table[x][a]
            k += 1
        return k

    @cached_property
    def is_abelian(self) -> bool:
        n = self.order
        return all(self.table[a][b] == self.table[b][a] for a in range(n) for b in range(a + 1, n))

    def closure(self, gens) -> frozenset[int]:
        """Subgroup generated by ``gens``."""
        elems = {0}
        frontier = [0]
        gens = list(gens)
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = self.table[x][g]
                if y not in elems:
                    elems.add(y)
                    frontier.append(y)
        return frozenset(elems)

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """A small generating set, chosen greedily by element order."""
        gens: list[int] = []
        current = frozenset({0})
        for a in sorted(range(self.order), key=lambda a: (-self.element_order(a), a)):
            if a not in current:
                gens.append(a)
                current = self.closure(gens)
                if len(current) == self.order:
                    break
        return tuple(gens)

    @cached_property
    def subgroups(self) -> tuple[frozenset[int], ...]:
        """All subgroups, as joins of cyclic subgroups."""
        cyclic = {self.closure([a]) for a in range(self.order)}
        found = set(cyclic)
        frontier = list(cyclic)
        while frontier:
            h = frontier.pop()
            for c in cyclic:
                if not c <= h:
                    j = self.closure(h | c)
                    if j not in found:
                        found.add(j)
                        frontier.append(j)
        return tuple(sorted(found, key=lambda s: (len(s), sorted(s))))

    def is_normal(self, sub) -> bool:
        sub = frozenset(sub)
        return all(
            self.table[self.table[g][h]][self.inverses[g]] in sub for g in range(self.order) for h in sub
        )

    @cached_property
    def normal_subgroups(self) -> tuple[frozenset[int], ...]:
        return tuple(s for s in self.subgroups if self.is_normal(s))

    def commutator_subgroup(self, sub=None) -> frozenset[int]:
        elems = range(self.order) if sub is None else sorted(sub)
        comms = set()
        for a in elems:
            for b in elems:
                ab = self.table[a][b]
                comms.add(self.table[ab][self.inverses[self.table[b][a]]])
        return self.closure(comms)

    @cached_property
    def is_solvable(self) -> bool:
        current = frozenset(range(self.order))
        while len(current) > 1:
            nxt = self.commutator_subgroup(current)
            if nxt == current:
                return False
            current = nxt
        return True

    def quotient(self, normal) -> tuple[FiniteGroup, tuple[int, ...]]:
        """``G/N`` and the projection as a tuple ``element -> coset index``."""
        normal = frozenset(normal)
        if not self.is_normal(normal):
            raise ValueError("quotient by a non-normal subgroup")
        coset_of = [-1] * self.order
        reps = []
        for a in range(self.order):
            if coset_of[a] < 0:
                idx = len(reps)
                reps.append(a)
                for h in normal:
                    coset_of[self.table[a][h]] = idx
        table = [[coset_of[self.table[r][s]] for s in reps] for r in reps]
        return FiniteGroup(table, name=None), tuple(coset_of)

    @cached_property
    def abelian_invariants(self) -> tuple[int, ...] | None:
        """Invariant factors n1 | n2 | ... for abelian groups, else None."""
        if not self.is_abelian:
            return None
        if self.order == 1:
            return ()
        # count elements of each order dividing prime powers, per prime
        factors: list[int] = []
        n = self.order
        primes = [p for p in range(2, n + 1) if n % p == 0 and all(p % q for q in range(2, p))]
        per_prime: dict[int, list[int]] = {}
        for p in primes:
            # number of elements with x^(p^k) = 1 determines the p-partition
            counts = []
            k = 0
            while True:
                c = sum(1 for a in range(n) if self.power(a, p**k) == 0)
                counts.append(c)
                if c == 0 or (k > 0 and counts[-1] == counts[-2]):
                    break
                k += 1
            # ranks r_k = log_p(c_k / c_{k-1}) = #cyclic factors of order >= p^k
            ranks = [round(math.log(counts[i] / counts[i - 1], p)) for i in range(1, len(counts))]
            exps = []
            for k in range(1, len(ranks) + 1):
                here = ranks[k - 1] - (ranks[k] if k < len(ranks) else 0)
                exps.extend([k] * here)
            per_prime[p] = sorted(exps, reverse=True)
        width = max(len(v) for v in per_prime.values())
        for i in range(width):
            m = 1
            for p, exps in per_prime.items():
                if i < len(exps):
                    m *= p ** exps[i]
            factors.append(m)
        return tuple(sorted(factors))

    def describe(self) -> str:
        if self.name:
            return self.name
        inv = self.abelian_invariants
        if inv is not None:
            return "x".join(f"Z{m}" for m in inv) if inv else "trivial"
        for name, builder in (("S3", symmetric3), ("D4", dihedral4), ("Q8", quaternion8)):
            if self.order == builder().order and is_isomorphic(self, builder()):
                return name
        return f"nonabelian group of order {self.order}"

    def __repr__(self):
        return f"FiniteGroup({self.describe()}, order={self.order})"


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("cyclic group order must be positive")
    return FiniteGroup([[(a + b) % n for b in range(n)] for a in range(n)], labels=[str(a) for a in range(n)], name=f"Z{n}")


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    ng, nh = g.order, h.order
    table = [
        [g.table[a // nh][b // nh] * nh + h.table[a % nh][b % nh] for b in range(ng * nh)]
        for a in range(ng * nh)
    ]
    labels = [f"({g.labels[a // nh]},{h.labels[a % nh]})" for a in range(ng * nh)]
    name = f"{g.describe()}x{h.describe()}"
    return FiniteGroup(table, labels=labels, name=name)


def abelian_group(*invariants: int) -> FiniteGroup:
    """Z_{n1} x Z_{n2} x ...; elements are ordered lexicographically."""
    if not invariants:
        return FiniteGroup([[0]], labels=["0"], name="trivial")
    elems = list(itertools.product(*(range(n) for n in invariants)))
    index = {e: i for i, e in enumerate(elems)}
    table = [
        [index[tuple((x + y) % n for x, y, n in zip(a, b, invariants))] for b in elems] for a in elems
    ]
    labels = ["(" + ",".join(map(str, e)) + ")" if len(invariants) > 1 else str(e[0]) for e in elems]
    return FiniteGroup(table, labels=labels, name="x".join(f"Z{n}" for n in invariants))


def _perm_group(perms, name):
    perms = [tuple(p) for p in perms]
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(a[b[i]] for i in range(len(a)))] for b in perms] for a in perms]
    return FiniteGroup(table, labels=["".join(map(str, p)) for p in perms], name=name)


def symmetric3() -> FiniteGroup:
    perms = sorted(itertools.permutations(range(3)))
    return _perm_group(perms, "S3")


def dihedral4() -> FiniteGroup:
    """Symmetries of the square, order 8."""
    r = (1, 2, 3, 0)
    s = (0, 3, 2, 1)
    elems = {(0, 1, 2, 3)}
    frontier = [(0, 1, 2, 3)]
    while frontier:
        a = frontier.pop()
        for g in (r, s):
            b = tuple(a[g[i]] for i in range(4))
            if b not in elems:
                elems.add(b)
                frontier.append(b)
    return _perm_group(sorted(elems), "D4")


def quaternion8() -> FiniteGroup:
    # basis order 1, -1, i, -i, j, -j, k, -k
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    unit = {"1": {"1": ("1", 1), "i": ("i", 1), "j": ("j", 1), "k": ("k", 1)},
            "i": {"1": ("i", 1), "i": ("1", -1), "j": ("k", 1), "k": ("j", -1)},
            "j": {"1": ("j", 1), "i": ("k", -1), "j": ("1", -1), "k": ("i", 1)},
            "k": {"1": ("k", 1), "i": ("j", 1), "j": ("i", -1), "k": ("1", -1)}}

    def split(x):
        return (x[1:], -1) if x.startswith("-") else (x, 1)

    def label(b, s):
        return b if s == 1 else "-" + b

    table = []
    for a in names:
        row = []
        for b in names:
            ba, sa = split(a)
            bb, sb = split(b)
            bc, sc = unit[ba][bb]
            row.append(names.index(label(bc, sa * sb * sc)))
        table.append(row)
    return FiniteGroup(table, labels=names, name="Q8")


_PRESET = re.compile(r"^Z(\d+)$")


def parse_group(spec: str) -> FiniteGroup:
    """Parse ``Zn``, products like ``Z2xZ4`` (``x``, ``×`` or ``*``), ``S3``, ``D4``, ``Q8``."""
    spec = spec.strip()
    parts = re.split(r"\s*[x×*]\s*", spec)
    groups = []
    for part in parts:
        m = _PRESET.match(part)
        if m:
            groups.append(cyclic(int(m.group(1))))
        elif part == "S3":
            groups.append(symmetric3())
        elif part == "D4":
            groups.append(dihedral4())
        elif part == "Q8":
            groups.append(quaternion8())
        elif part in ("1", "trivial"):
            groups.append(abelian_group())
        else:
            raise ValueError(f"unknown group preset {part!r}")
    if all(g.is_abelian and g.name and _PRESET.match(g.name) for g in groups) and len(groups) > 1:
        return abelian_group(*(g.order for g in groups))
    out = groups[0]
    for g in groups[1:]:
        out = direct_product(out, g)
    return out


def from_table(table, labels=None, name=None) -> FiniteGroup:
    return FiniteGroup(table, labels=labels, name=name)


def homomorphisms(g: FiniteGroup, h: FiniteGroup, surjective: bool = False) -> list[tuple[int, ...]]:
    """All homomorphisms g -> h as image tuples, sorted.

    Images of a generating set are enumerated; each candidate is extended
    along the Cayley graph and checked on the full table.
    """
    gens = g.generators
    out = []
    candidates = [[b for b in range(h.order) if g.element_order(a) % h.element_order(b) == 0] for a in gens]
    for images in itertools.product(*candidates):
        phi = [-1] * g.order
        phi[0] = 0
        frontier = [0]
        ok = True
        while frontier and ok:
            x = frontier.pop()
            for a, b in zip(gens, images):
                y = g.table[x][a]
                val = h.table[phi[x]][b]
                if phi[y] < 0:
                    phi[y] = val
                    frontier.append(y)
                elif phi[y] != val:
                    ok = False
                    break
        if not ok:
            continue
        if any(phi[g.table[x][y]] != h.table[phi[x]][phi[y]] for x in range(g.order) for y in range(g.order)):
            continue
        if surjective and len(set(phi)) != h.order:
            continue
        out.append(tuple(phi))
    return sorted(set(out))


def is_isomorphic(g: FiniteGroup, h: FiniteGroup) -> bool:
    if g.order != h.order or g.is_abelian != h.is_abelian:
        return False
    if sorted(g.element_order(a) for a in range(g.order)) != sorted(h.element_order(a) for a in range(h.order)):
        return False
    return any(len(set(phi)) == h.order for phi in homomorphisms(g, h))
