"""Exhaustive search for fusion rings of a prescribed type.

Unknown coefficients are grouped into orbits of the reciprocity (and, for
commutative searches, transposition) symmetries.  Rows ``i (x) j`` are
filled one at a time with vectors solving the dimension equation
``d_i d_j = sum_k N_ij^k d_k``; partial associativity prunes the tree.
Results are deduplicated by canonical form.
"""
from __future__ import annotations

import itertools
import math
import os
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from ..ring import FusionRing, TypeSignature, type_signature, validate
from .canonical import canonical_key

MAX_RANK = 7


def _squarefree(n: int) -> tuple[int, int]:
    """``n = a**2 * m`` with ``m`` squarefree; returns ``(a, m)``."""
    a, m = 1, 1
    p = 2
    while p * p <= n:
        while n % (p * p) == 0:
            n //= p * p
            a *= p
        if n % p == 0:
            n //= p
            m *= p
        p += 1
    return a, m * n


def _squares(sig: TypeSignature) -> list[tuple[int, int]]:
    out = []
    for d, n in sig.entries:
        s = (d * d).as_integer()
        if s is None:
            raise ValueError(f"dimension {d} does not square to an integer")
        out.append((s, n))
    return out


class _Problem:
    def __init__(self, squares, dual, commutative):
        self.squares_by_class = squares
        self.dual = dual
        self.commutative = commutative
        sq = []
        classes = []
        pos = 0
        for c, (s, n) in enumerate(squares):
            sq.extend([s] * n)
            classes.append(list(range(pos, pos + n)))
            pos += n
        self.r = r = pos
        self.sq = sq
        self.classes = [[0]] + [c for c in [classes[0][1:]] + classes[1:] if c]
        self.rad = [_squarefree(s) for s in sq]  # d_i = a_i sqrt(m_i)
        # orbits of triples
        orbit_of = {}
        orbits = []
        for t in itertools.product(range(r), repeat=3):
            if t in orbit_of:
                continue
            members = {t}
            frontier = [t]
            while frontier:
                i, j, k = frontier.pop()
                imgs = [(dual[i], k, j), (k, dual[j], i)]
                if commutative:
                    imgs.append((j, i, k))
                for u in imgs:
                    if u not in members:
                        members.add(u)
                        frontier.append(u)
            idx = len(orbits)
            for u in members:
                orbit_of[u] = idx
            orbits.append(sorted(members))
        self.orbit_of = orbit_of
        self.orbits = orbits
        fixed = {}
        for idx, members in enumerate(orbits):
            vals = set()
            for i, j, k in members:
                if i == 0:
                    vals.add(int(j == k))
                elif j == 0:
                    vals.add(int(i == k))
                elif k == 0:
                    vals.add(int(j == dual[i]))
            if len(vals) > 1:
                raise ValueError("inconsistent duality")
            if vals:
                fixed[idx] = vals.pop()
        self.fixed = fixed
        if commutative:
            self.rows = [(i, j) for i in range(1, r) for j in range(i, r)]
        else:
            self.rows = [(i, j) for i in range(1, r) for j in range(1, r)]

    def initial(self) -> np.ndarray:
        vals = np.full(len(self.orbits), -1, dtype=np.int64)
        for idx, v in self.fixed.items():
            vals[idx] = v
        return vals

    def tensor(self, vals: np.ndarray) -> np.ndarray:
        r = self.r
        T = np.empty((r, r, r), dtype=np.int64)
        for idx, members in enumerate(self.orbits):
            for t in members:
                T[t] = vals[idx]
        return T

    def row_candidates(self, vals, i, j):
        """Completions of row ``i (x) j`` compatible with the dimension equation."""
        r = self.r
        ai, mi = self.rad[i]
        aj, mj = self.rad[j]
        g = math.gcd(mi, mj)
        target_m = (mi // g) * (mj // g)
        target = ai * aj * g
        known = 0
        free = []
        for k in range(r):
            v = vals[self.orbit_of[(i, j, k)]]
            ak, mk = self.rad[k]
            if v >= 0:
                if v and mk != target_m:
                    return []
                if mk == target_m:
                    known += v * ak
            elif mk == target_m:
                free.append(k)
        rest = target - known
        if rest < 0:
            return []
        out = []
        weights = [self.rad[k][0] for k in free]

        def rec(pos, remaining, acc):
            if pos == len(free):
                if remaining == 0:
                    out.append(list(acc))
                return
            w = weights[pos]
            for n in range(remaining // w + 1):
                acc.append(n)
                rec(pos + 1, remaining - n * w, acc)
                acc.pop()

        rec(0, rest, [])
        zero_free = [k for k in range(r) if vals[self.orbit_of[(i, j, k)]] < 0 and self.rad[k][1] != target_m]
        result = []
        for choice in out:
            assign = dict(zip(free, choice))
            for k in zero_free:
                assign[k] = 0
            result.append(assign)
        return result

    def apply(self, vals, i, j, assign):
        new = vals.copy()
        for k, n in assign.items():
            idx = self.orbit_of[(i, j, k)]
            if new[idx] >= 0 and new[idx] != n:
                return None
            new[idx] = n
        return new

    def associative_so_far(self, vals) -> bool:
        T = self.tensor(vals)
        K = T >= 0
        Z = T == 0
        V = np.where(K, T, 0)
        # left[i,j,k,l] = sum_m T[i,j,m] T[m,k,l]
        lk = (Z[:, :, None, None, :] | Z.transpose(1, 2, 0)[None, None, :, :, :]
              | (K[:, :, None, None, :] & K.transpose(1, 2, 0)[None, None, :, :, :])).all(axis=4)
        lv = np.einsum("ijm,mkl->ijkl", V, V)
        # right[i,j,k,l] = sum_m T[j,k,m] T[i,m,l]
        rk = (Z[None, :, :, None, :] | Z.transpose(0, 2, 1)[:, None, None, :, :]
              | (K[None, :, :, None, :] & K.transpose(0, 2, 1)[:, None, None, :, :])).all(axis=4)
        rv = np.einsum("jkm,iml->ijkl", V, V)
        return not ((lk & rk) & (lv != rv)).any()


def _dual_choices(squares):
    """Involutions, one per conjugacy pattern: self-dual elements first, then pairs."""
    per_class = []
    start = 0
    for c, (_, n) in enumerate(squares):
        members = list(range(start, start + n))
        start += n
        movable = members[1:] if c == 0 else members
        opts = []
        for fixed in range(len(movable), -1, -1):
            if (len(movable) - fixed) % 2:
                continue
            d = {x: x for x in movable[:fixed]}
            rest = movable[fixed:]
            for a, b in zip(rest[::2], rest[1::2]):
                d[a], d[b] = b, a
            opts.append(d)
        per_class.append(opts)
    out = []
    for combo in itertools.product(*per_class):
        dual = {0: 0}
        for d in combo:
            dual.update(d)
        out.append(tuple(dual[i] for i in range(start)))
    return out


def _search(problem: _Problem, vals, row_index, found: dict):
    if row_index == len(problem.rows):
        T = problem.tensor(vals)
        key, _ = canonical_key(T, problem.classes)
        found.setdefault(key, (problem.dual, T))
        return
    i, j = problem.rows[row_index]
    for assign in problem.row_candidates(vals, i, j):
        new = problem.apply(vals, i, j, assign)
        if new is None or not problem.associative_so_far(new):
            continue
        _search(problem, new, row_index + 1, found)


def _run_task(args):
    squares, dual, commutative, first_assign = args
    problem = _Problem(squares, dual, commutative)
    vals = problem.initial()
    found: dict = {}
    if not problem.rows:
        _search(problem, vals, 0, found)
        return found
    i, j = problem.rows[0]
    new = problem.apply(vals, i, j, first_assign)
    if new is not None and problem.associative_so_far(new):
        _search(problem, new, 1, found)
    return found


def _tasks(squares, commutative):
    tasks = []
    for dual in _dual_choices(squares):
        problem = _Problem(squares, dual, commutative)
        if not problem.rows:
            tasks.append((squares, dual, commutative, {}))
            continue
        i, j = problem.rows[0]
        for assign in problem.row_candidates(problem.initial(), i, j):
            tasks.append((squares, dual, commutative, assign))
    return tasks


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("FUSIONKIT_JOBS", "1")))
    except ValueError:
        return 1


def enumerate_rings(type_sig: TypeSignature, commutative: bool = True, jobs: int | None = None) -> list[FusionRing]:
    """All fusion rings of the given type up to relabeling within dimension classes."""
    if type_sig.rank > MAX_RANK:
        raise ValueError(f"rank {type_sig.rank} exceeds the enumeration cutoff {MAX_RANK}")
    squares = _squares(type_sig)
    tasks = _tasks(squares, commutative)
    jobs = default_jobs() if jobs is None else max(1, jobs)
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_task, tasks))
    else:
        results = [_run_task(t) for t in tasks]
    merged: dict = {}
    for part in results:
        for key, val in part.items():
            merged.setdefault(key, val)
    rings = []
    for n, key in enumerate(sorted(merged)):
        rings.append(_ring_from_key(key, squares, type_sig, n))
    return rings


def _labels(squares) -> list[str]:
    labels = ["1"]
    names = "gXYZWV"
    for c, (s, n) in enumerate(squares):
        count = n - 1 if c == 0 else n
        base = names[c] if c < len(names) else f"C{c}_"
        if count == 1:
            labels.append(base)
        else:
            labels.extend(f"{base}{t}" for t in range(1, count + 1))
    return labels


def _ring_from_key(key, squares, type_sig, n) -> FusionRing:
    r = sum(c for _, c in squares)
    T = np.array(key, dtype=np.int64).reshape(r, r, r)
    coeffs = {(int(i), int(j), int(k)): int(T[i, j, k]) for i, j, k in zip(*np.nonzero(T))}
    dual = [int(np.nonzero(T[i, :, 0])[0][0]) for i in range(r)]
    ring = FusionRing(_labels(squares), dual, coeffs, name=f"{type_sig}#{n}")
    if validate(ring) or type_signature(ring) != type_sig:
        raise AssertionError(f"enumeration produced an invalid ring for {type_sig}")
    return ring


def canonical_tensor_key(ring: FusionRing) -> tuple[int, ...]:
    """Canonical key of an enumerated-style ring (classes by FP dimension)."""
    from .canonical import dimension_classes

    key, _ = canonical_key(ring.tensor, dimension_classes(ring))
    return key

