from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fusionkit import (
    AlgebraicReal,
    GradingError,
    FusionRing,
    Subring,
    abelian_group,
    adjoint_subring,
    all_subrings,
    commutator_subring,
    cyclic,
    deligne_product,
    factorizations,
    faithful_gradings,
    fibonacci_ring,
    fpdim_ring,
    gradings_by_group,
    group_ring,
    ising_ring,
    nilpotency_series,
    orbit_stabilizer,
    parse_group,
    pointed_part,
    tambara_yamagami_ring,
    trivial_ring,
    type_signature,
    universal_grading,
    validate,
)
from fusionkit.classify import builtin_corpus, rings_isomorphic
from fusionkit.structure import subring_generated

CORPUS = builtin_corpus()
corpus_rings = st.sampled_from([e.ring for e in CORPUS])


def labels(sub):
    return set(sub.labels)


def test_generated_subrings():
    ising = ising_ring()
    assert subring_generated(ising, [2]).is_whole()
    assert labels(subring_generated(ising, [1])) == {"1", "g"}
    assert subring_generated(fibonacci_ring(), []).is_trivial()


def test_subring_of_rejects_non_closed_sets():
    with pytest.raises(ValueError):
        Subring.of(ising_ring(), [0, 2])
    with pytest.raises(ValueError):
        Subring.of(ising_ring(), [1])


def test_pointed_part():
    ty3 = tambara_yamagami_ring(abelian_group(3))
    pt = pointed_part(ty3)
    assert len(pt) == 3 and pt.fpdim == 3
    z6 = group_ring(cyclic(6))
    assert pointed_part(z6).is_whole()
    assert pointed_part(fibonacci_ring()).is_trivial()


def test_adjoint_subring():
    assert labels(adjoint_subring(ising_ring())) == {"1", "g"}
    assert adjoint_subring(group_ring(parse_group("S3"))).is_trivial()
    assert adjoint_subring(fibonacci_ring()).is_whole()


def test_commutator_subring():
    ising = ising_ring()
    assert commutator_subring(ising, Subring.of(ising, [0, 1])).is_whole()
    whole = Subring.of(ising, range(3))
    assert commutator_subring(ising, whole).is_whole()
    ty4 = tambara_yamagami_ring(cyclic(4))
    co = commutator_subring(ty4, Subring.of(ty4, [0]))
    assert co.indices == frozenset(ty4.invertibles) and len(co) == 4


def test_universal_grading_examples():
    U = universal_grading(ising_ring())
    assert U.group.order == 2
    assert {frozenset(c) for c in U.components} == {frozenset({0, 1}), frozenset({2})}

    s3 = group_ring(parse_group("S3"))
    Us3 = universal_grading(s3)
    assert Us3.group.order == 6 and not Us3.group.is_abelian
    assert all(len(c) == 1 for c in Us3.components)

    ty4 = tambara_yamagami_ring(cyclic(4))
    U4 = universal_grading(ty4)
    assert U4.group.order == 2
    assert U4.identity_component.indices == frozenset(ty4.invertibles)


def test_universal_grading_rejects_ill_defined_class_law():
    # Adjoint part is {1}, but a (x) b is missing, so the class law has a hole.
    coeffs = {(0, i, i): 1 for i in range(3)} | {(i, 0, i): 1 for i in range(3)}
    coeffs |= {(1, 1, 0): 1, (2, 2, 0): 1}
    bad = FusionRing(["1", "a", "b"], [0, 1, 2], coeffs)
    assert validate(bad)
    with pytest.raises(GradingError):
        universal_grading(bad)


def test_gradings_by_group_examples():
    ising = ising_ring()
    assert len(gradings_by_group(ising, cyclic(2))) == 1
    assert gradings_by_group(ising, cyclic(3)) == []
    assert len(gradings_by_group(group_ring(parse_group("Z2xZ2")), cyclic(2))) == 3


def test_orbit_stabilizer_examples():
    ty4 = tambara_yamagami_ring(cyclic(4))
    data = orbit_stabilizer(ty4, 4)
    assert set(data.stabilizer) == set(ty4.invertibles)
    ising = ising_ring()
    stab = orbit_stabilizer(ising, 2).stabilizer
    assert len(stab) == 2 and AlgebraicReal.from_integer(len(stab)) == AlgebraicReal.sqrt_integer(2) ** 2
    z6 = group_ring(cyclic(6))
    data = orbit_stabilizer(z6, 3)
    assert data.stabilizer == (0,) and set(data.orbit) == set(range(6))


def test_nilpotency_examples():
    res = nilpotency_series(ising_ring())
    assert [labels(s) for s in res.series] == [{"1", "g", "X"}, {"1", "g"}, {"1"}]
    assert res.nilpotent and res.nilpotency_class == 2 and res.cyclically_nilpotent

    fib = nilpotency_series(fibonacci_ring())
    assert not fib.nilpotent and fib.nilpotency_class is None
    assert [s.is_whole() for s in fib.series] == [True, True]

    z6 = nilpotency_series(group_ring(cyclic(6)))
    assert z6.nilpotency_class == 1 and z6.series[-1].is_trivial()


def test_deligne_product_examples():
    z2 = group_ring(cyclic(2))
    prod = deligne_product(z2, ising_ring())
    assert prod.rank == 6
    assert str(type_signature(prod)) == "(1,4; √2,2)"
    assert fpdim_ring(prod) == 8
    assert rings_isomorphic(deligne_product(trivial_ring(), ising_ring()), ising_ring())
    assert rings_isomorphic(deligne_product(z2, z2), group_ring(parse_group("Z2xZ2")))


def test_factorizations_examples():
    prod = deligne_product(group_ring(cyclic(2)), ising_ring())
    facts = factorizations(prod)
    assert facts
    for A, B in facts:
        assert rings_isomorphic(A.as_ring(), group_ring(cyclic(2)))
        assert rings_isomorphic(B.as_ring(), ising_ring())
    assert factorizations(ising_ring()) == []
    assert len(factorizations(group_ring(parse_group("Z2xZ2")))) == 3


def test_all_subrings_of_ising():
    assert [labels(s) for s in all_subrings(ising_ring())] == [{"1"}, {"1", "g"}, {"1", "g", "X"}]


# -- properties ------------------------------------------------------------


@given(corpus_rings)
def test_subrings_are_closed(ring):
    for sub in all_subrings(ring):
        for i in sub:
            assert ring.dual[i] in sub
            for j in sub:
                assert set(ring.product(i, j)) <= sub.indices


@given(corpus_rings)
def test_universal_grading_identity_is_adjoint(ring):
    U = universal_grading(ring)
    assert U.check() == []
    assert U.identity_component == adjoint_subring(ring)


@given(corpus_rings)
def test_faithful_gradings_are_additive(ring):
    total = fpdim_ring(ring)
    adj = adjoint_subring(ring)
    for g in faithful_gradings(ring):
        assert g.is_faithful() and g.check() == []
        assert adj <= g.identity_component
        c0 = g.component_fpdim(0)
        assert all(g.component_fpdim(h) == c0 for h in range(g.group.order))
        assert c0 * g.group.order == total


@given(corpus_rings)
def test_orbits_partition_non_invertibles(ring):
    inv = set(ring.invertibles)
    for x in range(ring.rank):
        data = orbit_stabilizer(ring, x)
        assert len(data.orbit) * len(data.stabilizer) == len(inv)
        if x in inv:
            assert data.stabilizer == (0,)


@given(corpus_rings)
def test_nilpotency_series_descends(ring):
    res = nilpotency_series(ring)
    for a, b in zip(res.series, res.series[1:]):
        assert b <= a
    assert res.nilpotent == res.series[-1].is_trivial()
    if res.cyclically_nilpotent:
        assert res.nilpotent


@given(corpus_rings, corpus_rings)
def test_deligne_product_dimensions_multiply(a, b):
    if a.rank * b.rank > 24:
        return
    p = deligne_product(a, b)
    assert validate(p) == []
    assert fpdim_ring(p) == fpdim_ring(a) * fpdim_ring(b)
