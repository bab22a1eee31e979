"""Independent reference computations used to check the library.

Nothing here imports fusionkit internals beyond reading plain attributes
(labels, dual, coefficient dicts, group tables).  The code is deliberately
naive: nested loops, floats, brute force.
"""
from __future__ import annotations

import cmath
import itertools
import math
from fractions import Fraction

import numpy as np


# -- fusion rings ------------------------------------------------------------


def brute_force_ring_ok(labels, dual, coeffs) -> bool:
    """Unit, duality, reciprocity and associativity by plain loops."""
    r = len(labels)

    def N(i, j, k):
        return coeffs.get((i, j, k), 0)

    if any(n < 0 for n in coeffs.values()):
        return False
    if dual[0] != 0 or any(dual[dual[i]] != i for i in range(r)):
        return False
    for j in range(r):
        for k in range(r):
            want = 1 if j == k else 0
            if N(0, j, k) != want or N(j, 0, k) != want:
                return False
    for i in range(r):
        for j in range(r):
            if N(i, j, 0) != (1 if j == dual[i] else 0):
                return False
            for k in range(r):
                n = N(i, j, k)
                if n != N(dual[i], k, j) or n != N(k, dual[j], i):
                    return False
    for i in range(r):
        for j in range(r):
            for k in range(r):
                for l in range(r):
                    left = sum(N(i, j, m) * N(m, k, l) for m in range(r))
                    right = sum(N(j, k, m) * N(i, m, l) for m in range(r))
                    if left != right:
                        return False
    return True


def numeric_fpdims(ring) -> list[float]:
    """Largest real eigenvalue of each left-multiplication matrix."""
    r = ring.rank
    out = []
    for i in range(r):
        m = np.zeros((r, r))
        for (a, b, c), n in ring.coeffs.items():
            if a == i:
                m[c, b] = n
        ev = np.linalg.eigvals(m)
        out.append(max(v.real for v in ev if abs(v.imag) < 1e-9))
    return out


def numeric_verlinde(smat) -> np.ndarray:
    """Fusion tensor from a complex s-matrix, as floats."""
    S = np.array([[complex(v) for v in row] for row in smat])
    r = S.shape[0]
    D2 = sum(abs(S[0, a]) ** 2 for a in range(r))
    out = np.zeros((r, r, r))
    for i in range(r):
        for j in range(r):
            for k in range(r):
                v = sum(S[i, a] * S[j, a] * S[k, a].conjugate() / S[0, a] for a in range(r)) / D2
                out[i, j, k] = v.real
                assert abs(v.imag) < 1e-8
    return out


# -- metric groups -----------------------------------------------------------


def coordinates(factors) -> list[tuple[int, ...]]:
    """Lexicographic element coordinates of Z_n1 x ... x Z_nk."""
    return list(itertools.product(*(range(n) for n in factors)))


def form_turns(mg) -> list[Fraction]:
    return [Fraction(e, mg.modulus) for e in mg.exponents]


def brute_force_nondegenerate(mg) -> bool:
    """Every non-identity g has some h with b(g, h) != 1, in floating point."""
    n = mg.group.order
    q = [cmath.exp(2j * math.pi * float(t)) for t in form_turns(mg)]
    for g in range(1, n):
        if all(abs(q[mg.group.mul(g, h)] / (q[g] * q[h]) - 1) < 1e-9 for h in range(n)):
            return False
    return True


def gauss_sum(mg) -> complex:
    """Normalized Gauss sum of the form; an isomorphism invariant."""
    n = mg.group.order
    total = sum(cmath.exp(2j * math.pi * float(t)) for t in form_turns(mg))
    return total / math.sqrt(n)


def nonsingular_symmetric_count(n: int, p: int) -> int:
    """Number of invertible symmetric n x n matrices over F_p, p odd."""
    total = Fraction(p) ** (n * (n + 1) // 2)
    for i in range(1, math.ceil(n / 2) + 1):
        total *= 1 - Fraction(p) ** (1 - 2 * i)
    assert total.denominator == 1
    return int(total)


def automorphisms(factors):
    """All automorphisms of Z_n1 x ... x Z_nk as index permutations."""
    coords = coordinates(factors)
    index = {c: i for i, c in enumerate(coords)}
    k = len(factors)
    # An image of e_i must have order dividing n_i.
    choices = []
    for n in factors:
        choices.append([c for c in coords if all((n * x) % m == 0 for x, m in zip(c, factors))])
    out = []
    for images in itertools.product(*choices):
        perm = []
        for c in coords:
            img = tuple(
                sum(c[i] * images[i][t] for i in range(k)) % factors[t] for t in range(k)
            )
            perm.append(index[img])
        if len(set(perm)) == len(perm):
            out.append(tuple(perm))
    return out


def orbit_count(forms, autos) -> int:
    """Number of orbits of the automorphism group acting on form exponent tuples."""
    if not forms:
        return 0
    M = math.lcm(*(f.modulus for f in forms))
    perms = np.array(autos, dtype=np.int64)
    remaining = {tuple(e * (M // f.modulus) for e in f.exponents) for f in forms}
    orbits = 0
    while remaining:
        e = np.array(next(iter(remaining)), dtype=np.int64)
        orbit = {tuple(row) for row in e[perms].tolist()}
        remaining -= orbit
        orbits += 1
    return orbits


# -- enumeration -------------------------------------------------------------


def brute_force_rank3_rings(dims: tuple[float, float, float]) -> int:
    """Count rank-3 commutative rings with the given dimensions up to relabeling.

    Every free coefficient is bounded by ``d_i d_j / d_k`` and searched
    exhaustively; relabeling may swap basis elements of equal dimension.
    """
    r = 3
    free = [(i, j, k) for i in range(1, r) for j in range(i, r) for k in range(r)]
    found = set()
    for dual in ([0, 1, 2], [0, 2, 1]):
        bounds = [int(dims[i] * dims[j] / dims[k] + 1e-9) for i, j, k in free]
        for values in itertools.product(*(range(b + 1) for b in bounds)):
            coeffs = {(0, a, a): 1 for a in range(r)} | {(a, 0, a): 1 for a in range(1, r)}
            for (i, j, k), n in zip(free, values):
                if n:
                    coeffs[(i, j, k)] = n
                    coeffs[(j, i, k)] = n
            if not brute_force_ring_ok(["1", "a", "b"], dual, coeffs):
                continue
            # dimensions must be an eigenvector: d_i d_j = sum_k N_ij^k d_k
            if any(
                abs(dims[i] * dims[j] - sum(coeffs.get((i, j, k), 0) * dims[k] for k in range(r))) > 1e-9
                for i in range(r)
                for j in range(r)
            ):
                continue
            keys = []
            for perm in ([0, 1, 2], [0, 2, 1]):
                if abs(dims[perm[1]] - dims[1]) > 1e-9:
                    continue
                inv = {old: new for new, old in enumerate(perm)}
                keys.append(tuple(sorted(((inv[i], inv[j], inv[k]), n) for (i, j, k), n in coeffs.items())))
            found.add(min(keys))
    return len(found)
