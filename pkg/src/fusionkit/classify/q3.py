"""Modular data of Frobenius-Perron dimension q^3 for small primes q.

Two independent layers:

* type arithmetic (:func:`type_candidates_q3`): every type with dimensions
  squaring to powers of ``q`` and global dimension ``q^3``, each either
  kept or rejected with the reason;
* constructions (:func:`classify_modular_q3`): all pointed data from
  nondegenerate quadratic forms on groups of order ``q^3``, plus, for
  ``q = 2``, the sixteen products of a semion datum with an Ising datum.
"""
from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass, field

from ..exactnum import AlgebraicReal
from ..modular import (
    DEFAULT_ORDER_BOUND,
    MetricGroup,
    ModularData,
    ising_modular_data,
    modular_product,
    muger_center,
    pointed_modular_from_metric_group,
    quadratic_forms,
    semion_modular_data,
    validate_modular,
)
from ..ring import TypeSignature, fpdim_ring, type_signature
from ..structure import universal_grading
from .canonical import metric_isomorphism, modular_isomorphism
from .theorems import TheoremReport, Verdict

SUPPORTED_Q = (2, 3, 5)
MAX_PROFILE_Q = 7
# Above this many labelled forms per group only one datum per isomorphism
# class is run through the full modular validation.
FULL_VALIDATION_LIMIT = 2000


def _is_prime(q: int) -> bool:
    return q >= 2 and all(q % p for p in range(2, int(q**0.5) + 1))


@dataclass(frozen=True)
class CandidateProfile:
    """One admissible type of global dimension ``q^3`` and its grading data.

    ``grading_order`` is the order of the universal grading group and
    ``component_dim`` the common dimension of its components.
    """

    q: int
    signature: TypeSignature
    pointed_size: int
    grading_order: int
    component_dim: int

    @property
    def fpdim(self) -> int:
        return self.q**3

    @property
    def rank(self) -> int:
        return self.signature.rank

    @property
    def is_pointed(self) -> bool:
        return self.signature.is_pointed

    def check(self) -> list[str]:
        out = []
        if self.signature.fpdim != AlgebraicReal.from_integer(self.fpdim):
            out.append(f"sum of squares {self.signature.fpdim} != {self.fpdim}")
        if self.grading_order * self.component_dim != self.fpdim:
            out.append(f"|U| * component dim = {self.grading_order * self.component_dim} != {self.fpdim}")
        if self.signature.entries[0] != (AlgebraicReal.from_integer(1), self.pointed_size):
            out.append("pointed part does not match the signature")
        return out

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "type": str(self.signature),
            "rank": self.rank,
            "fpdim": self.fpdim,
            "pointed_size": self.pointed_size,
            "grading_order": self.grading_order,
            "component_dim": self.component_dim,
        }


@dataclass(frozen=True)
class TypeCandidate:
    q: int
    squares: tuple[tuple[int, int], ...]
    reason: str | None  # None when the type survives

    @property
    def signature(self) -> TypeSignature:
        return TypeSignature.from_squares(*self.squares)


def _reject_reason(q: int, m: int, n1: int, n2: int) -> str | None:
    total = q**3
    if total % m:
        return f"pointed part of dimension {m} does not divide {total}"
    if n1 == 0 and n2 == 0:
        return None
    if n2:
        return f"simple of dimension {q} (= sqrt(q^2)) cannot occur in a non-pointed modular category of dimension q^3"
    if m != q * q:
        return f"non-pointed case needs a pointed part of dimension q^2 = {q * q}, got {m}"
    if n1 != q * q - q:
        return f"non-pointed case needs q^2 - q = {q * q - q} simples of dimension sqrt(q)"
    if total % 4:
        return f"a pointed modular factor times Ising has dimension 4 * fpdim(B), which cannot be {total}"
    return None


def type_candidates_q3(q: int) -> list[TypeCandidate]:
    """All types ``(1,m; sqrt(q),n1; q,n2)`` with ``m + n1 q + n2 q^2 = q^3``.

    Dimensions of non-invertibles must square to a power of ``q`` below
    ``q^3``, so only ``sqrt(q)`` and ``q`` are possible.
    """
    if not _is_prime(q) or q > MAX_PROFILE_Q:
        raise ValueError(f"q must be a prime <= {MAX_PROFILE_Q}, got {q}")
    total = q**3
    out = []
    for n2 in range(total // (q * q) + 1):
        for n1 in range((total - n2 * q * q) // q + 1):
            m = total - n1 * q - n2 * q * q
            if m < 1:
                continue
            squares = [(1, m)] + [(q, n1)] * bool(n1) + [(q * q, n2)] * bool(n2)
            out.append(TypeCandidate(q, tuple(squares), _reject_reason(q, m, n1, n2)))
    return out


def enumerate_types_q3(q: int) -> list[CandidateProfile]:
    """Types that survive the structural filters for modular data of dimension ``q^3``."""
    out = []
    for cand in type_candidates_q3(q):
        if cand.reason is not None:
            continue
        m = cand.squares[0][1]
        if len(cand.squares) == 1:
            profile = CandidateProfile(q, cand.signature, m, m, 1)
        else:
            # Universal grading components all have dimension q.
            profile = CandidateProfile(q, cand.signature, m, q * q, q)
        problems = profile.check()
        if problems:
            raise AssertionError(f"inconsistent profile {profile}: {problems}")
        out.append(profile)
    return out


def abelian_factorizations(q: int) -> list[tuple[int, ...]]:
    """Invariant factors of the abelian groups of order ``q^3``."""
    return [(q**3,), (q * q, q), (q, q, q)]


def _metric_invariant(mg: MetricGroup) -> tuple:
    """Cheap isomorphism invariant: value distribution of the form per element order."""
    orders = [mg.group.element_order(x) for x in range(mg.group.order)]
    return tuple(sorted(Counter(zip(orders, mg.exponents)).items()))


def metric_classes(forms: list[MetricGroup]) -> list[list[MetricGroup]]:
    """Partition nondegenerate forms into isomorphism classes."""
    buckets: dict = {}
    for mg in forms:
        classes = buckets.setdefault((mg.modulus, _metric_invariant(mg)), [])
        for cls in classes:
            if metric_isomorphism(mg, cls[0]) is not None:
                cls.append(mg)
                break
        else:
            classes.append([mg])
    return [cls for key in sorted(buckets, key=repr) for cls in buckets[key]]


@dataclass
class PointedBranch:
    factors: tuple[int, ...]
    forms: int
    nondegenerate: int
    classes: int
    validated: int
    invalid: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "group": "x".join(f"Z{n}" for n in self.factors),
            "quadratic_forms": self.forms,
            "nondegenerate": self.nondegenerate,
            "isomorphism_classes": self.classes,
            "validated": self.validated,
        }


def _pointed_branch(q: int, factors, order_bound: int) -> tuple[PointedBranch, list[ModularData]]:
    forms = quadratic_forms(factors)
    nondeg = [mg for mg in forms if mg.is_nondegenerate()]
    classes = metric_classes(nondeg)
    if len(nondeg) <= FULL_VALIDATION_LIMIT:
        to_check = nondeg
    else:
        to_check = [cls[0] for cls in classes]
    branch = PointedBranch(tuple(factors), len(forms), len(nondeg), len(classes), 0)
    samples = []
    for mg in to_check:
        md = pointed_modular_from_metric_group(mg)
        bad = validate_modular(md, order_bound=order_bound)
        if bad or not muger_center(md).is_trivial():
            branch.invalid.append(f"{mg}: {bad[0] if bad else 'nontrivial center'}")
        branch.validated += 1
        if len(samples) < 1:
            samples.append(md)
    return branch, samples


def semion_ising_products() -> list[ModularData]:
    """The sixteen labelled products semion(+/-) x Ising(zeta_16^e), e odd."""
    return [modular_product(semion_modular_data(s), ising_modular_data(e)) for s in (1, -1) for e in range(1, 16, 2)]


def _modular_classes(data: list[ModularData]) -> list[list[ModularData]]:
    classes: list[list[ModularData]] = []
    for md in data:
        for cls in classes:
            if modular_isomorphism(md, cls[0]) is not None:
                cls.append(md)
                break
        else:
            classes.append([md])
    return classes


def classify_modular_q3(q: int) -> TheoremReport:
    """Pointed vs. ``B x Ising`` dichotomy for modular data of dimension ``q^3``."""
    if q not in SUPPORTED_Q:
        raise ValueError(f"classification is configured for q in {SUPPORTED_Q}; q = {q} is beyond the cutoff")
    start = time.perf_counter()
    order_bound = max(DEFAULT_ORDER_BOUND, 2 * q**3)
    report = TheoremReport("modular-dimension-q3", f"modular data of FP dimension {q}^3 = {q**3}")
    profiles = enumerate_types_q3(q)
    profile_sigs = {p.signature: p for p in profiles}
    rejected = [c for c in type_candidates_q3(q) if c.reason is not None]

    pointed_total = {"nondegenerate": 0, "classes": 0}
    branches = []
    for factors in abelian_factorizations(q):
        branch, samples = _pointed_branch(q, factors, order_bound)
        branches.append(branch)
        pointed_total["nondegenerate"] += branch.nondegenerate
        pointed_total["classes"] += branch.classes
        clauses = {
            "all_validate": not branch.invalid,
            "matches_profile": all(type_signature(md.ring) in profile_sigs for md in samples),
        }
        witnesses = {}
        if branch.invalid:
            witnesses["all_validate"] = branch.invalid[0]
        if not clauses["matches_profile"]:
            witnesses["matches_profile"] = f"type {type_signature(samples[0].ring)} not among the profiles"
        scope = "all" if branch.validated == branch.nondegenerate else "one per class"
        note = (
            f"{branch.forms} forms, {branch.nondegenerate} nondegenerate, "
            f"{branch.classes} classes, validated {branch.validated} ({scope})"
        )
        label = "pointed " + "x".join(f"Z{n}" for n in factors)
        report.verdicts.append(Verdict(label, "pass" if all(clauses.values()) else "fail", clauses, witnesses, note))

    non_pointed = {"constructed": 0, "validated": 0, "distinct": 0, "classes": 0}
    if q == 2:
        data = semion_ising_products()
        bad = [(md.name, validate_modular(md, order_bound=order_bound)) for md in data]
        bad = [(n, v) for n, v in bad if v]
        distinct = len({(md.smat, md.tmat) for md in data})
        classes = _modular_classes(data)
        sigs = {type_signature(md.ring) for md in data}
        prof = [profile_sigs.get(s) for s in sigs]
        U = universal_grading(data[0].ring)
        clauses = {
            "all_validate": not bad,
            "trivial_center": all(muger_center(md).is_trivial() for md in data),
            "distinct_pairs": distinct == len(data),
            "matches_profile": all(p is not None for p in prof),
            "grading_matches_profile": all(
                p is not None and U.group.order == p.grading_order and fpdim_ring(md.ring) == AlgebraicReal.from_integer(q**3)
                for p, md in zip(prof, data)
            ),
        }
        witnesses = {}
        if bad:
            witnesses["all_validate"] = f"{bad[0][0]}: {bad[0][1][0]}"
        for key in clauses:
            if not clauses[key] and key not in witnesses:
                witnesses[key] = f"sigs {sorted(map(str, sigs))}, |U| = {U.group.order}"
        non_pointed.update(constructed=len(data), validated=len(data) - len(bad), distinct=distinct, classes=len(classes))
        note = f"{len(data)} labelled (S,T) pairs of type {', '.join(sorted(map(str, sigs)))}; {len(classes)} classes up to relabeling"
        report.verdicts.append(Verdict("semion x Ising", "pass" if all(clauses.values()) else "fail", clauses, witnesses, note))

    # Type level: no surviving non-pointed profile except B x Ising.
    allowed = {p.signature for p in profiles if p.is_pointed}
    if q == 2:
        allowed.add(TypeSignature.from_squares((1, 4), (2, 2)))
    extra = [p for p in profiles if p.signature not in allowed]
    clauses = {"only_pointed_or_ising_product": not extra}
    witnesses = {"only_pointed_or_ising_product": ", ".join(str(p.signature) for p in extra)} if extra else {}
    note = f"{len(profiles)} surviving of {len(profiles) + len(rejected)} types: " + ", ".join(str(p.signature) for p in profiles)
    report.verdicts.append(Verdict("type profiles", "pass" if not extra else "fail", clauses, witnesses, note))

    report.counts = {
        "profiles": [p.to_dict() for p in profiles],
        "rejected_types": len(rejected),
        "pointed": [b.to_dict() for b in branches],
        "pointed_nondegenerate_total": pointed_total["nondegenerate"],
        "pointed_classes_total": pointed_total["classes"],
        "non_pointed": non_pointed,
        "seconds": round(time.perf_counter() - start, 2),
    }
    return report


def golden_counts(report: TheoremReport) -> dict:
    """The deterministic part of a classification report (no timings)."""
    counts = dict(report.counts)
    counts.pop("seconds", None)
    return {"theorem": report.theorem, "summary": report.summary(), "counts": counts}


def rejections(q: int) -> list[str]:
    return [f"{c.signature}: {c.reason}" for c in type_candidates_q3(q) if c.reason]
