"""Relabeling: canonical forms and explicit isomorphisms of rings and data."""
from __future__ import annotations

import itertools
from collections import Counter

import numpy as np

from ..modular import MetricGroup, ModularData
from ..ring import FusionRing, fpdims


def dimension_classes(ring: FusionRing) -> list[list[int]]:
    """Indices grouped by FP dimension, the unit split off as its own class."""
    dims = fpdims(ring)
    groups: dict = {}
    for i in range(1, ring.rank):
        groups.setdefault(dims[i], []).append(i)
    return [[0]] + [groups[d] for d in sorted(groups)]


def _class_permutations(classes):
    # Classes land in consecutive blocks, in the order given.
    for parts in itertools.product(*(itertools.permutations(c) for c in classes)):
        yield [i for images in parts for i in images]


def canonical_key(T: np.ndarray, classes) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Lexicographically least flattened tensor over class-preserving relabelings.

    Returns ``(key, perm)`` where position ``a`` of the canonical ring is
    old index ``perm[a]``.  Ties resolve to the first permutation in
    enumeration order, so an already-canonical tensor keeps the identity.
    """
    best = None
    best_perm = None
    for perm in _class_permutations(classes):
        p = np.array(perm)
        key = tuple(T[np.ix_(p, p, p)].ravel().tolist())
        if best is None or key < best:
            best, best_perm = key, tuple(perm)
    return best, best_perm


def relabel(ring: FusionRing, perm, labels=None) -> FusionRing:
    """Ring whose basis element ``a`` is old element ``perm[a]``."""
    inv = {old: new for new, old in enumerate(perm)}
    coeffs = {(inv[i], inv[j], inv[k]): n for (i, j, k), n in ring.coeffs.items()}
    dual = [inv[ring.dual[perm[a]]] for a in range(ring.rank)]
    if labels is None:
        labels = [ring.labels[perm[a]] for a in range(ring.rank)]
    return FusionRing(labels, dual, coeffs, name=ring.name)


def canonical_form(ring: FusionRing) -> FusionRing:
    """Relabel to the lexicographically least coefficient tensor."""
    _, perm = canonical_key(ring.tensor, dimension_classes(ring))
    return relabel(ring, perm)


def _signature(ring: FusionRing, i: int, dims) -> tuple:
    T = ring.tensor
    return (
        dims[i],
        ring.dual[i] == i,
        tuple(sorted(Counter(T[i].ravel().tolist()).items())),
        tuple(sorted(Counter(T[:, i].ravel().tolist()).items())),
        tuple(sorted(T[i, ring.dual[i]].tolist())),
    )


def find_isomorphism(a: FusionRing, b: FusionRing, extra=None) -> tuple[int, ...] | None:
    """A bijection ``phi`` with ``N^b_{phi i, phi j}^{phi k} = N^a_{ij}^k``, or None.

    ``extra(i, x, phi)`` may veto mapping ``i`` to ``x`` given the partial map.
    """
    if a.rank != b.rank or len(a.coeffs) != len(b.coeffs):
        return None
    da, db = fpdims(a), fpdims(b)
    sa = [_signature(a, i, da) for i in range(a.rank)]
    sb = [_signature(b, i, db) for i in range(b.rank)]
    if sorted(map(repr, sa)) != sorted(map(repr, sb)):
        return None
    Ta, Tb = a.tensor, b.tensor
    r = a.rank
    order = sorted(range(1, r), key=lambda i: (sum(1 for j in range(1, r) if sa[j] == sa[i]), i))
    phi = [-1] * r
    phi[0] = 0
    if sb[0] != sa[0]:
        return None
    used = {0}
    done = [0]

    def consistent(i, x):
        for j in done:
            y = phi[j]
            for k in done + [i]:
                z = x if k == i else phi[k]
                if Ta[i, j, k] != Tb[x, y, z] or Ta[j, i, k] != Tb[y, x, z] or Ta[j, k, i] != Tb[y, z, x]:
                    return False
                if Ta[k, j, i] != Tb[z, y, x] or Ta[i, k, j] != Tb[x, z, y] or Ta[k, i, j] != Tb[z, x, y]:
                    return False
        return Ta[i, i, i] == Tb[x, x, x]

    def search(pos):
        if pos == len(order):
            return True
        i = order[pos]
        for x in range(1, r):
            if x in used or sb[x] != sa[i]:
                continue
            if not consistent(i, x) or (extra is not None and not extra(i, x, phi)):
                continue
            phi[i] = x
            used.add(x)
            done.append(i)
            if search(pos + 1):
                return True
            done.pop()
            used.discard(x)
            phi[i] = -1
        return False

    if not search(0):
        return None
    result = tuple(phi)
    coeffs = {(result[i], result[j], result[k]): n for (i, j, k), n in a.coeffs.items()}
    return result if coeffs == b.coeffs else None


def rings_isomorphic(a: FusionRing, b: FusionRing) -> bool:
    return find_isomorphism(a, b) is not None


def modular_isomorphism(a: ModularData, b: ModularData) -> tuple[int, ...] | None:
    """Relabeling of the basis matching the rings, s-matrices and twists."""
    if Counter(a.tmat) != Counter(b.tmat):
        return None

    def extra(i, x, phi):
        if a.tmat[i] != b.tmat[x] or a.smat[i][i] != b.smat[x][x]:
            return False
        return all(a.smat[i][j] == b.smat[x][phi[j]] for j in range(a.rank) if phi[j] >= 0)

    return find_isomorphism(a.ring, b.ring, extra=extra)


def metric_isomorphism(m1: MetricGroup, m2: MetricGroup) -> dict[int, int] | None:
    """Group isomorphism carrying the form of ``m1`` to that of ``m2``.

    Both groups must come from :func:`quadratic_forms` (standard generators).
    Images of the generators are chosen with matching orders, form values
    and pairings; the induced homomorphism is then checked to be bijective.
    """
    if m1.factors is None or m2.factors is None:
        raise ValueError("metric isomorphism needs groups with standard generators")
    if m1.group.order != m2.group.order or m1.modulus != m2.modulus:
        return None
    if sorted(m1.exponents) != sorted(m2.exponents):
        return None
    f1, f2 = m1.factors, m2.factors
    c1 = np.array(_coords(m1), dtype=np.int64).reshape(m1.group.order, len(f1))
    c2 = np.array(_coords(m2), dtype=np.int64).reshape(m2.group.order, len(f2))
    radix = np.array([int(np.prod(f2[t + 1:])) for t in range(len(f2))], dtype=np.int64)
    gen_idx1 = [int(np.prod(f1[k + 1:])) for k in range(len(f1))]  # index of e_k
    b1 = m1.bilinear_exponents()
    b2 = m2.bilinear_exponents()
    q1, q2 = m1.exponents, m2.exponents
    order2 = [m2.group.element_order(x) for x in range(m2.group.order)]
    images: list[int] = []

    def extend():
        img = (c1 @ c2[images]) % np.array(f2, dtype=np.int64)
        return img @ radix

    def search(pos):
        if pos == len(f1):
            return len(set(extend().tolist())) == len(c1)
        g = gen_idx1[pos]
        for x in range(m2.group.order):
            if f1[pos] % order2[x] or q2[x] != q1[g]:
                continue
            if any(b2[x, images[t]] != b1[g, gen_idx1[t]] for t in range(pos)):
                continue
            images.append(x)
            if search(pos + 1):
                return True
            images.pop()
        return False

    if not search(0):
        return None
    phi = extend()
    if any(q1[i] != q2[phi[i]] for i in range(len(c1))):
        return None
    return {i: int(v) for i, v in enumerate(phi)}


def _coords(mg: MetricGroup) -> list[tuple[int, ...]]:
    return list(itertools.product(*(range(n) for n in mg.factors)))
