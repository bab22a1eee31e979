"""Corpus-wide checks of the structural results on Z_q-extensions.

Each verifier returns a :class:`TheoremReport` with one verdict per ring in
scope.  Statuses:

``pass``
    every checked clause holds.
``fail``
    a clause that holds for every valid fusion ring did not; this points at
    a bug (in the library or the input) and always carries a witness.
``flagged``
    a clause that needs a braiding did not hold; the ring admits no braided
    categorification whose extension structure matches.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from ..constructors import is_generalized_TY
from ..exactnum import AlgebraicReal
from ..ring import FusionRing, fpdim_ring, fpdims, is_commutative, is_pointed, type_signature
from ..structure import (
    Subring,
    adjoint_subring,
    commutator_subring,
    factorizations,
    gradings_by_group,
    orbit_stabilizer,
    pointed_part,
    universal_grading,
)
from ..groups import cyclic
from .corpus import CorpusEntry

STATUSES = ("pass", "fail", "flagged")
FLAG_NOTE = "no braided categorification has this extension structure"


@dataclass
class Verdict:
    instance: str
    status: str
    clauses: dict[str, bool] = field(default_factory=dict)
    witnesses: dict[str, str] = field(default_factory=dict)
    note: str = ""
    expected: str | None = None

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")
        if self.status == "fail" and not self.witnesses:
            raise ValueError(f"fail verdict for {self.instance} has no witness")

    @property
    def explained(self) -> bool:
        return self.expected is None or self.expected == self.status

    def to_dict(self) -> dict:
        out = {"instance": self.instance, "status": self.status, "clauses": dict(self.clauses)}
        if self.witnesses:
            out["witnesses"] = dict(self.witnesses)
        if self.note:
            out["note"] = self.note
        if self.expected is not None:
            out["expected"] = self.expected
        return out


@dataclass
class TheoremReport:
    theorem: str
    corpus: str
    verdicts: list[Verdict] = field(default_factory=list)
    skipped: list[str] = field(default_factory=list)
    counts: dict = field(default_factory=dict)

    def _with(self, status):
        return [v for v in self.verdicts if v.status == status]

    @property
    def passed(self) -> list[Verdict]:
        return self._with("pass")

    @property
    def failures(self) -> list[Verdict]:
        return self._with("fail")

    @property
    def flagged(self) -> list[Verdict]:
        return self._with("flagged")

    @property
    def unexplained(self) -> list[Verdict]:
        return [v for v in self.verdicts if not v.explained]

    @property
    def ok(self) -> bool:
        return not self.failures and not self.unexplained

    def summary(self) -> dict:
        return {
            "checked": len(self.verdicts),
            "pass": len(self.passed),
            "fail": len(self.failures),
            "flagged": len(self.flagged),
            "unexplained": len(self.unexplained),
            "skipped": len(self.skipped),
        }

    def to_dict(self) -> dict:
        out = {
            "theorem": self.theorem,
            "corpus": self.corpus,
            "summary": self.summary(),
            "verdicts": [v.to_dict() for v in self.verdicts],
            "skipped": list(self.skipped),
        }
        if self.counts:
            out["counts"] = self.counts
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False, sort_keys=False) + "\n"

    def to_text(self, verbose: bool = False) -> str:
        s = self.summary()
        lines = [f"{self.theorem}: {self.corpus}"]
        lines.append("  " + ", ".join(f"{k} {v}" for k, v in s.items()))
        for key, val in self.counts.items():
            lines.extend(_count_lines(key, val))
        for v in self.verdicts:
            if not verbose and v.status == "pass" and v.explained:
                continue
            mark = "" if v.explained else f" (expected {v.expected})"
            lines.append(f"  [{v.status}] {v.instance}{mark}")
            for name, ok in v.clauses.items():
                if not ok:
                    lines.append(f"      clause {name} fails: {v.witnesses.get(name, '')}")
            if v.note:
                lines.append(f"      {v.note}")
        return "\n".join(lines) + "\n"


def _flat(val) -> str:
    if isinstance(val, dict):
        return ", ".join(f"{k} {v}" for k, v in val.items())
    return str(val)


def _count_lines(key, val) -> list[str]:
    if isinstance(val, list):
        return [f"  {key}:"] + [f"    - {_flat(item)}" for item in val]
    return [f"  {key}: {_flat(val)}"]


def _entries(corpus) -> list[CorpusEntry]:
    out = []
    for item in corpus:
        if isinstance(item, CorpusEntry):
            out.append(item)
        elif isinstance(item, FusionRing):
            out.append(CorpusEntry(item.name or repr(item), item, "ring"))
        else:
            raise TypeError(f"corpus items must be rings or corpus entries, got {type(item).__name__}")
    return out


def _primes(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def pointed_extensions(ring: FusionRing):
    """All ``(q, grading)`` with a faithful Z_q-grading whose identity part is pointed.

    Only primes dividing the universal grading group order can occur.
    """
    out = []
    order = universal_grading(ring).group.order
    for q in _primes(order):
        for g in gradings_by_group(ring, cyclic(q)):
            if g.identity_component.is_pointed():
                out.append((q, g))
    return out


def _fmt(sub: Subring) -> str:
    return "{" + ", ".join(sub.labels) + "}"


def verify_pointed_extension(corpus, description: str = "corpus") -> TheoremReport:
    """Z_q-extensions of pointed rings: the adjoint part is pointed and C_0 = C_pt.

    Every Z_q-grading with pointed identity component is checked, for each
    prime ``q`` that occurs.
    """
    report = TheoremReport("pointed-extension", description)
    for entry in _entries(corpus):
        ring = entry.ring
        exts = pointed_extensions(ring)
        if not exts:
            report.skipped.append(entry.name)
            continue
        adj = adjoint_subring(ring)
        pt = pointed_part(ring)
        pointed = is_pointed(ring)
        clauses = {"adjoint_pointed": adj.is_pointed(), "identity_is_pointed_part": True}
        witnesses = {}
        if not clauses["adjoint_pointed"]:
            witnesses["adjoint_pointed"] = f"adjoint subring {_fmt(adj)} is not pointed"
        for q, g in exts:
            c0 = g.identity_component
            if not pointed and c0 != pt:
                clauses["identity_is_pointed_part"] = False
                witnesses["identity_is_pointed_part"] = f"Z{q}-grading with C0 = {_fmt(c0)} but pointed part {_fmt(pt)}"
                break
        status = "pass" if all(clauses.values()) else "fail"
        qs = sorted({q for q, _ in exts})
        note = "pointed ring" if pointed else f"q = {', '.join(map(str, qs))}"
        report.verdicts.append(Verdict(entry.name, status, clauses, witnesses, note))
    return report


def verify_gty_criterion(corpus, description: str = "corpus") -> TheoremReport:
    """Non-pointed Z_q-extensions of pointed rings are generalized TY iff q = 2."""
    report = TheoremReport("generalized-TY-criterion", description)
    for entry in _entries(corpus):
        ring = entry.ring
        if is_pointed(ring):
            report.skipped.append(entry.name)
            continue
        qs = sorted({q for q, _ in pointed_extensions(ring)})
        if not qs:
            report.skipped.append(entry.name)
            continue
        witness = is_generalized_TY(ring)
        clauses = {"single_prime": len(qs) == 1}
        witnesses = {}
        if len(qs) != 1:
            witnesses["single_prime"] = f"pointed-identity extensions for several primes {qs}"
        for q in qs:
            key = f"gty_iff_q2[q={q}]"
            clauses[key] = (witness is not None) == (q == 2)
            if not clauses[key]:
                state = "is" if witness is not None else "is not"
                witnesses[key] = f"Z{q}-extension {state} generalized TY"
        status = "pass" if all(clauses.values()) else "fail"
        note = f"q = {qs[0]}, " + ("generalized TY" if witness else "not generalized TY")
        report.verdicts.append(Verdict(entry.name, status, clauses, witnesses, note))
    return report


def _is_power_of(value: AlgebraicReal, q: int) -> bool:
    n = value.as_integer()
    if n is None or n < 1:
        return False
    while n % q == 0:
        n //= q
    return n == 1


def _extension_clauses(ring: FusionRing, q: int) -> tuple[dict, dict, dict]:
    """Clauses (a)-(e) for one prime; returns clauses, witnesses and facts."""
    dims = fpdims(ring)
    clauses: dict[str, bool] = {}
    witnesses: dict[str, str] = {}
    facts: dict[str, str] = {}
    one = AlgebraicReal.from_integer(1)
    big = sorted({d for d in dims if d != one})
    clauses["a_two_dimensions"] = len(big) == 1
    if len(big) != 1:
        witnesses["a_two_dimensions"] = "simple dimensions " + ", ".join(map(str, [one] + big))
        return clauses, witnesses, facts
    alpha = big[0]
    alpha_sq = alpha * alpha
    facts["alpha"] = str(alpha)
    non_inv = [i for i in range(ring.rank) if dims[i] == alpha]
    X = non_inv[0]
    stab_ok = True
    for Y in non_inv:
        stab = orbit_stabilizer(ring, Y).stabilizer
        if alpha_sq != AlgebraicReal.from_integer(len(stab)):
            stab_ok = False
            witnesses["b_stabilizer_order"] = f"stabilizer of {ring.labels[Y]} has order {len(stab)}, alpha^2 = {alpha_sq}"
            break
    clauses["b_stabilizer_order"] = stab_ok
    D = Subring.of(ring, orbit_stabilizer(ring, X).stabilizer)
    co = commutator_subring(ring, D)
    clauses["c_commutator_whole"] = co.is_whole()
    if not co.is_whole():
        witnesses["c_commutator_whole"] = f"commutator of {_fmt(D)} is {_fmt(co)}"
    adj = adjoint_subring(ring)
    clauses["d_adjoint_is_stabilizer"] = adj == D
    if adj != D:
        witnesses["d_adjoint_is_stabilizer"] = f"adjoint {_fmt(adj)} differs from stabilizer {_fmt(D)}"
    found = None
    tried = []
    for A, B in [(Subring.of(ring, [0]), Subring(ring, frozenset(range(ring.rank))))] + factorizations(ring):
        for P, E in ((A, B), (B, A)):
            if not P.is_pointed() or E.is_pointed():
                continue
            E_ring = E.as_ring()
            sig = type_signature(E_ring)
            good = (
                len(sig.entries) == 2
                and sig.entries[1][0] == alpha
                and _is_power_of(alpha_sq, q)
                and _is_power_of(fpdim_ring(E_ring), q)
            )
            tried.append(f"{_fmt(P)} x {_fmt(E)} of type {sig}, fpdim {fpdim_ring(E_ring)}")
            if good:
                found = (P, E, sig)
                break
        if found:
            break
    clauses["e_factorization"] = found is not None
    if found:
        facts["factorization"] = f"{_fmt(found[0])} x {_fmt(found[1])}, E of type {found[2]}"
    else:
        witnesses["e_factorization"] = "; ".join(tried) or "no pointed x non-pointed factorization"
    return clauses, witnesses, facts


def verify_braided_extension_structure(corpus, description: str = "corpus") -> TheoremReport:
    """Necessary conditions on the fusion ring of a braided Z_q-extension.

    In scope are commutative non-pointed rings with a Z_q-grading whose
    identity component is pointed.  Clauses that fail are flagged, since the
    theorem needs a braiding that a bare ring need not admit.
    """
    report = TheoremReport("braided-extension-structure", description)
    for entry in _entries(corpus):
        ring = entry.ring
        if is_pointed(ring) or not is_commutative(ring):
            report.skipped.append(entry.name)
            continue
        qs = sorted({q for q, _ in pointed_extensions(ring)})
        if not qs:
            report.skipped.append(entry.name)
            continue
        for q in qs:
            clauses, witnesses, facts = _extension_clauses(ring, q)
            status = "pass" if all(clauses.values()) else "flagged"
            parts = [f"q = {q}"] + [f"{k} {v}" for k, v in facts.items()]
            if status == "flagged":
                parts.append(FLAG_NOTE)
            name = entry.name if len(qs) == 1 else f"{entry.name} [q={q}]"
            report.verdicts.append(
                Verdict(name, status, clauses, witnesses, "; ".join(parts), expected=entry.expected_extension_outcome)
            )
    return report
