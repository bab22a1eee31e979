from __future__ import annotations

import pytest

import oracles
from fusionkit import AlgebraicReal, TypeSignature, quadratic_forms, type_signature, validate_modular
from fusionkit.classify import (
    SUPPORTED_Q,
    classify_modular_q3,
    enumerate_types_q3,
    metric_classes,
    semion_ising_products,
    type_candidates_q3,
)
from fusionkit.classify.canonical import modular_isomorphism
from fusionkit.classify.q3 import abelian_factorizations, golden_counts, rejections


@pytest.mark.parametrize("q", [2, 3, 5, 7])
def test_profiles_are_consistent(q):
    profiles = enumerate_types_q3(q)
    assert profiles
    for p in profiles:
        assert p.check() == []
        assert p.signature.fpdim == AlgebraicReal.from_integer(q**3)


@pytest.mark.parametrize("q", [2, 3, 5, 7])
def test_candidates_cover_every_type(q):
    cands = type_candidates_q3(q)
    for c in cands:
        assert c.signature.fpdim == AlgebraicReal.from_integer(q**3)
    survivors = [c for c in cands if c.reason is None]
    assert len(survivors) == len(enumerate_types_q3(q))
    assert len(rejections(q)) == len(cands) - len(survivors)


def test_q2_profiles():
    sigs = [p.signature for p in enumerate_types_q3(2)]
    assert sigs == [TypeSignature.of((1, 8)), TypeSignature.from_squares((1, 4), (2, 2))]


@pytest.mark.parametrize("q", [3, 5, 7])
def test_odd_q_profiles_are_pointed(q):
    assert all(p.is_pointed for p in enumerate_types_q3(q))


@pytest.mark.parametrize("q", [1, 4, 9, 11])
def test_profile_cutoff(q):
    with pytest.raises(ValueError):
        type_candidates_q3(q)


@pytest.mark.parametrize("q", [7, 11, 4])
def test_classification_cutoff(q):
    with pytest.raises(ValueError, match="cutoff"):
        classify_modular_q3(q)


def test_semion_ising_products():
    data = semion_ising_products()
    assert len(data) == 16
    assert len({(md.smat, md.tmat) for md in data}) == 16
    for md in data:
        assert validate_modular(md) == []
        assert str(type_signature(md.ring)) == "(1,4; √2,2)"


def test_semion_ising_relabeling_classes():
    data = semion_ising_products()
    reps = []
    for md in data:
        if not any(modular_isomorphism(md, r) is not None for r in reps):
            reps.append(md)
    assert len(reps) == 8


@pytest.mark.parametrize("factors", [(8,), (4, 2), (2, 2, 2), (27,), (9, 3), (3, 3, 3), (125,), (25, 5)], ids=str)
def test_metric_classes_match_orbit_oracle(factors):
    forms = [mg for mg in quadratic_forms(factors) if mg.is_nondegenerate()]
    autos = oracles.automorphisms(factors)
    classes = metric_classes(forms)
    assert len(classes) == oracles.orbit_count(forms, autos)
    # Gauss sums are constant on classes.
    for cls in classes:
        g = oracles.gauss_sum(cls[0])
        assert all(abs(oracles.gauss_sum(mg) - g) < 1e-9 for mg in cls)


@pytest.mark.parametrize("p", [3, pytest.param(5, marks=pytest.mark.slow)])
def test_elementary_abelian_nondegenerate_count(p):
    forms = quadratic_forms((p, p, p))
    assert len(forms) == p**6
    assert sum(mg.is_nondegenerate() for mg in forms) == oracles.nonsingular_symmetric_count(3, p)


@pytest.mark.slow
def test_z5_cubed_classes_split_by_gauss_sum():
    # Too many automorphisms for the orbit oracle; nondegenerate forms over F_p
    # are determined by the square class of the determinant, so at most two
    # classes exist, and distinct Gauss sums show there are two.
    forms = [mg for mg in quadratic_forms((5, 5, 5)) if mg.is_nondegenerate()]
    classes = metric_classes(forms)
    assert sorted(len(c) for c in classes) == [6200, 6200]
    sums = sorted(round(oracles.gauss_sum(c[0]).real) for c in classes)
    assert sums == [-1, 1]


def test_factorizations_of_q_cubed():
    assert abelian_factorizations(3) == [(27,), (9, 3), (3, 3, 3)]


@pytest.mark.parametrize("q", [pytest.param(q, marks=pytest.mark.slow) if q == 5 else q for q in SUPPORTED_Q])
def test_classification_report(q, q3_reports):
    rep = q3_reports(q)
    assert rep.ok and rep.failures == []
    counts = rep.counts
    assert counts["pointed_nondegenerate_total"] == sum(b["nondegenerate"] for b in counts["pointed"])
    if q == 2:
        assert counts["non_pointed"]["constructed"] == 16
        assert counts["non_pointed"]["validated"] == 16
        assert any(v.instance == "semion x Ising" for v in rep.verdicts)
    else:
        assert counts["non_pointed"]["constructed"] == 0
        assert all(p["type"].count(";") == 0 for p in counts["profiles"])
    assert golden_counts(rep)["counts"].get("seconds") is None
