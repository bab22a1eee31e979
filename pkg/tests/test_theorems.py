from __future__ import annotations

import json

import pytest

from fusionkit import AlgebraicReal, cyclic, deligne_product, group_ring, ising_ring, tambara_yamagami_ring
from fusionkit.classify import (
    CorpusEntry,
    Verdict,
    builtin_corpus,
    corpus_entry,
    pointed_extensions,
    verify_braided_extension_structure,
    verify_gty_criterion,
    verify_pointed_extension,
)
from fusionkit.classify.theorems import TheoremReport


@pytest.fixture(scope="module")
def reports(corpus):
    return {
        "pointed": verify_pointed_extension(corpus),
        "gty": verify_gty_criterion(corpus),
        "braided": verify_braided_extension_structure(corpus),
    }


def test_corpus_contents():
    names = {e.name for e in builtin_corpus()}
    for name in ["Vec", "Vec(Z8)", "Vec(Q8)", "Vec(D4)", "Ising", "TY(Z2xZ2xZ2)", "Fib", "Vec(Z3)⊠TY(Z3)"]:
        assert name in names
    assert all(e.ring.rank <= 12 for e in builtin_corpus())
    assert corpus_entry("Ising").ty_order == 2
    with pytest.raises(KeyError):
        corpus_entry("nonexistent")


@pytest.mark.parametrize("n, outcome", [(1, "pass"), (2, "pass"), (3, "flagged"), (4, "pass"), (6, "flagged")])
def test_expected_outcome_from_recipe(n, outcome):
    entry = CorpusEntry("x", ising_ring(), "ty", ty_order=n)
    assert entry.expected_extension_outcome == outcome
    assert CorpusEntry("y", ising_ring(), "group").expected_extension_outcome is None


def test_no_failures(reports):
    for rep in reports.values():
        assert rep.failures == []
        assert rep.unexplained == []
        assert rep.ok


def test_pointed_extension_covers_non_pointed_rings(reports):
    checked = {v.instance for v in reports["pointed"].verdicts}
    assert {"Ising", "TY(Z3)", "Vec(Z2)⊠Ising"} <= checked
    assert "Fib" in reports["pointed"].skipped


def test_gty_iff_q2(reports):
    by_name = {v.instance: v for v in reports["gty"].verdicts}
    assert "generalized TY" in by_name["Ising"].note and by_name["Ising"].note.startswith("q = 2")
    assert by_name["TY(Z3)"].note == "q = 2, generalized TY"
    three = [v for v in reports["gty"].verdicts if v.note.startswith("q = 3")]
    assert three and all("not generalized TY" in v.note for v in three)


def test_braided_verdicts(reports):
    rep = reports["braided"]
    by_name = {v.instance: v for v in rep.verdicts}
    assert by_name["Ising"].status == "pass"
    assert by_name["Vec(Z3)⊠TY(Z3)"].status == "flagged"
    assert by_name["Vec(Z3)⊠TY(Z3)"].witnesses
    for v in rep.passed:
        assert all(v.clauses.values())


def test_verdict_requires_witness_for_failure():
    with pytest.raises(ValueError):
        Verdict("x", "fail", {"a": False})
    with pytest.raises(ValueError):
        Verdict("x", "maybe")


def test_report_serialization(reports):
    rep = reports["braided"]
    data = json.loads(rep.to_json())
    assert data["summary"] == rep.summary()
    assert len(data["verdicts"]) == len(rep.verdicts)
    text = rep.to_text(verbose=True)
    assert "Vec(Z3)⊠TY(Z3)" in text


def test_single_ring_inputs():
    rep = verify_braided_extension_structure([tambara_yamagami_ring(cyclic(4))])
    assert [v.status for v in rep.verdicts] == ["pass"]
    rep = verify_gty_criterion([deligne_product(group_ring(cyclic(3)), tambara_yamagami_ring(cyclic(3)))])
    assert rep.ok


def test_pointed_extensions_of_ising():
    exts = pointed_extensions(ising_ring())
    assert [q for q, _ in exts] == [2]


def test_failure_is_reported_not_raised():
    rep = TheoremReport("demo", "manual")
    rep.verdicts.append(Verdict("bad", "fail", {"c": False}, {"c": "witness"}))
    assert not rep.ok and rep.summary()["fail"] == 1
