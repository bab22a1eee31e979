from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np
import pytest

import oracles
from fusionkit import (
    AlgebraicReal,
    Cyclotomic,
    MetricGroup,
    ModularData,
    Subring,
    abelian_group,
    all_subrings,
    fpdim_ring,
    ising_modular_data,
    modular_product,
    muger_center,
    muger_centralizer,
    pointed_modular_from_metric_group,
    quadratic_forms,
    semion_modular_data,
    validate_modular,
    verlinde_coefficients,
)
from fusionkit.modular import degenerate_toy_data, trivial_modular_data

ISING = [ising_modular_data(e) for e in range(1, 16, 2)]
SEMION = [semion_modular_data(1), semion_modular_data(-1)]
ORDER_8_FACTORS = [(8,), (4, 2), (2, 2, 2)]


def modular_corpus():
    out = list(ISING) + list(SEMION)
    out.append(modular_product(SEMION[0], ISING[0]))
    out.append(modular_product(ISING[0], ISING[2]))
    for factors in [(3,), (4,), (2, 2), (5,), (8,), (3, 3)]:
        for mg in quadratic_forms(factors):
            if mg.is_nondegenerate():
                out.append(pointed_modular_from_metric_group(mg, name=repr(mg)))
                break
    return out


MODULAR_CORPUS = modular_corpus()


def _fpdim(sub: Subring) -> AlgebraicReal:
    return sub.fpdim


@pytest.mark.parametrize("md", MODULAR_CORPUS, ids=lambda m: m.name)
def test_corpus_data_validate(md):
    assert validate_modular(md) == []
    res = verlinde_coefficients(md)
    assert res.violations == []
    assert res.as_ring_coeffs() == md.ring.coeffs
    assert muger_center(md).is_trivial()


@pytest.mark.parametrize("md", MODULAR_CORPUS, ids=lambda m: m.name)
def test_verlinde_matches_float_oracle(md):
    approx = oracles.numeric_verlinde(md.smat)
    assert np.allclose(approx, md.ring.tensor, atol=1e-8)


@pytest.mark.parametrize("md", MODULAR_CORPUS, ids=lambda m: m.name)
def test_centralizer_duality_and_double_centralizer(md):
    total = fpdim_ring(md.ring)
    for D in all_subrings(md.ring):
        Dp = muger_centralizer(md, D)
        assert _fpdim(D) * _fpdim(Dp) == total
        assert muger_centralizer(md, Dp) == D


def test_ising_entries():
    md = ISING[0]
    sqrt2 = md.smat[0][2]
    assert sqrt2 * sqrt2 == Cyclotomic.from_rational(2)
    assert md.tmat[2] == Cyclotomic.zeta(16)
    assert md.global_dim == Cyclotomic.from_rational(4)


def test_ising_twist_must_be_odd():
    with pytest.raises(ValueError):
        ising_modular_data(2)


def test_eight_ising_data_are_distinct():
    assert len({md.tmat for md in ISING}) == 8


def test_semion_twists():
    assert SEMION[0].tmat[1] == Cyclotomic.zeta(4)
    assert SEMION[1].tmat[1] == Cyclotomic.zeta(4).conj()


def test_product_examples():
    si = modular_product(SEMION[0], ISING[0])
    assert si.rank == 6 and fpdim_ring(si.ring) == 8
    assert validate_modular(si) == []
    assert modular_product(trivial_modular_data(), ISING[3]).smat == ISING[3].smat
    ii = modular_product(ISING[0], ISING[1])
    assert ii.rank == 9 and fpdim_ring(ii.ring) == 16
    assert validate_modular(ii) == [] and muger_center(ii).is_trivial()


def test_degenerate_data_are_rejected():
    violations = validate_modular(degenerate_toy_data())
    assert any(v.axiom == "nondegeneracy" for v in violations)
    assert not muger_center(degenerate_toy_data()).is_trivial()


def test_bad_shapes_raise():
    one = Cyclotomic.from_rational(1)
    with pytest.raises(ValueError):
        ModularData(ISING[0].ring, ((one,),), (one, one, one))


def test_first_row_must_be_dimensions():
    md = ISING[0]
    smat = [list(row) for row in md.smat]
    smat[0][2] = smat[2][0] = Cyclotomic.from_rational(1)
    bad = ModularData(md.ring, smat, md.tmat)
    assert any(v.axiom == "first_row" for v in validate_modular(bad))


def test_twist_order_bound():
    mg = MetricGroup.from_generators([27], [Fraction(1, 27)])
    md = pointed_modular_from_metric_group(mg)
    assert any(v.axiom == "twist" for v in validate_modular(md, order_bound=16))
    assert validate_modular(md, order_bound=64) == []


def test_non_symmetric_s_is_reported():
    md = SEMION[0]
    i = Cyclotomic.zeta(4)
    smat = [[md.smat[0][0], md.smat[0][1]], [md.smat[1][0] * i, md.smat[1][1]]]
    bad = ModularData(md.ring, smat, md.tmat)
    assert any(v.axiom == "symmetry" for v in validate_modular(bad))


# -- metric groups -----------------------------------------------------------


def test_form_counts_on_small_groups():
    assert len(quadratic_forms((2,))) == 4
    assert len(quadratic_forms((3,))) == 3
    assert len(quadratic_forms((2, 2))) == 32


@pytest.mark.parametrize(
    "factors", [(2,), (3,), (4,), (2, 2), (5,), (6,), (7,), (8,), (4, 2), (2, 2, 2)], ids=str
)
def test_nondegeneracy_matches_brute_force(factors):
    for mg in quadratic_forms(factors):
        assert mg.check() == []
        nondeg = mg.is_nondegenerate()
        assert nondeg == oracles.brute_force_nondegenerate(mg)
        if nondeg:
            md = pointed_modular_from_metric_group(mg)
            assert validate_modular(md) == []
            assert muger_center(md).is_trivial()
            assert abs(abs(oracles.gauss_sum(mg)) - 1) < 1e-9
        else:
            with pytest.raises(ValueError):
                pointed_modular_from_metric_group(mg)


@pytest.mark.parametrize("factors", [(2,), (4,), (2, 2), (8,), (4, 2), (2, 2, 2)], ids=str)
def test_degenerate_forms_give_degenerate_data(factors):
    """Bypass the constructor's guard: the raw (b, q) pair must fail validation."""
    for mg in quadratic_forms(factors):
        if mg.is_nondegenerate():
            continue
        B = mg.bilinear_exponents()
        roots = [Cyclotomic.root_of_unity(mg.modulus, int(e)) for e in range(mg.modulus)]
        smat = [[roots[int(e)] for e in row] for row in B]
        md = ModularData(pointed_modular_from_metric_group(_any_nondegenerate(factors)).ring, smat, [roots[e] for e in mg.exponents])
        assert validate_modular(md)
        assert not muger_center(md).is_trivial()


def _any_nondegenerate(factors):
    return next(mg for mg in quadratic_forms(factors) if mg.is_nondegenerate())


def test_from_generators_validation():
    with pytest.raises(ValueError):
        MetricGroup.from_generators([3], [Fraction(1, 6)])
    with pytest.raises(ValueError):
        MetricGroup.from_generators([2, 2], [0, 0], {(0, 1): Fraction(1, 4)})
    mg = MetricGroup.from_generators([2, 2], [0, 0], {(0, 1): Fraction(1, 2)})
    assert mg.is_nondegenerate()


def test_from_qform_round_trip():
    mg = MetricGroup.from_generators([4], [Fraction(1, 8)])
    again = MetricGroup.from_qform(mg.group, mg.qform)
    assert again == mg


def test_bilinear_form_is_read_only():
    mg = _any_nondegenerate((3,))
    with pytest.raises(ValueError):
        mg.bilinear_exponents()[0, 0] = 1


def test_metric_groups_must_be_abelian():
    from fusionkit.groups import symmetric3

    with pytest.raises(ValueError):
        MetricGroup(symmetric3(), 2, [0] * 6)


def test_centralizer_of_pointed_part_in_semion_ising():
    md = modular_product(SEMION[0], ISING[0])
    pt = Subring.of(md.ring, md.ring.invertibles)
    cent = muger_centralizer(md, pt)
    assert cent.fpdim * pt.fpdim == 8
    assert len(cent) == 2 and cent.is_pointed()
