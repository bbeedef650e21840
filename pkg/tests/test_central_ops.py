from fractions import Fraction

import pytest

from tau_loop.central_ops import (COMMUTATOR, OperatorSpec, casimir_report, centrality_report,
                                  commutator_agreement_report, composite_reach, localization_report, omega_apply,
                                  operator_reach, proof_central_coefficients, reordering_report, safe_offsets,
                                  singular_generation, stated_central_coefficients, symmetry_report, t_apply,
                                  t_apply_commutator, vir_bracket_report)
from tau_loop.comm_algebra import preset
from tau_loop.exact_linear import SparseVec
from tau_loop.exceptions import BadParams
from tau_loop.selftest import basis_pairs
from tau_loop.tau_algebra import SL2, BiDegree, TauSymbol
from tau_loop.weight_modules import PsiFunctional, evaluation_tensor, irreducible, verma


@pytest.fixture
def scalar():
    return preset('scalar')


def scalar_verma(lam, c, d0=0, box=(2, 2)):
    algebra = preset('scalar')
    return verma(PsiFunctional.from_unit(algebra, lam, c, d0), algebra, box)


@pytest.mark.parametrize('lam,c,d0', [(1, 1, 0), (2, 3, 1), (Fraction(3, 2), 2, Fraction(-1, 3))])
def test_omega_on_highest_weight_vector(lam, c, d0):
    module = scalar_verma(lam, c, d0, box=(1, 1))
    v = module.highest_weight_vector()
    one = module.algebra.unit
    assert omega_apply(one, one, module, v) == v.scaled(SL2.casimir_value(lam, c, d0))


def test_t_minus_one_on_highest_weight_vector():
    module = scalar_verma(3, 5, box=(2, 1))
    v = module.highest_weight_vector()
    one = module.algebra.unit
    Y0, Xm1 = TauSymbol.current('Y', 0), TauSymbol.current('X', -1)
    expected = SparseVec({(Y0, Xm1): 2, (TauSymbol.current('h', -1),): 5, (TauSymbol.vir(-1),): 14})
    assert t_apply(-1, one, one, module, v) == expected
    assert t_apply_commutator(-1, one, one, module, v) == expected


def test_t_positive_kills_highest_weight_vector():
    module = scalar_verma(1, 1, box=(1, 1))
    one = module.algebra.unit
    assert t_apply(1, one, one, module, module.highest_weight_vector()) == SparseVec()


def test_operator_spec_validation(scalar):
    one = scalar.unit
    with pytest.raises(BadParams):
        OperatorSpec(0, one, one, COMMUTATOR)
    with pytest.raises(BadParams):
        OperatorSpec(1, one, one, 'other')
    with pytest.raises(BadParams):
        t_apply_commutator(0, one, one, scalar_verma(1, 1), SparseVec.unit(()))
    assert OperatorSpec(-2, one, one).describe(scalar) == {'j': -2, 'a': '1', 'b': '1',
                                                           'realization': 'normal_ordered'}


def test_reach_and_safe_offsets(scalar):
    one = scalar.unit
    assert operator_reach(OperatorSpec(0, one, one)) == (0, 0)
    assert operator_reach(OperatorSpec(-2, one, one)) == (2, 3)
    assert operator_reach(OperatorSpec(-2, one, one, COMMUTATOR)) == (2, 2)
    assert composite_reach((1, 2), BiDegree(-1, 1), BiDegree(1, -1)) == (2, 2)
    module = scalar_verma(1, 1, box=(2, 2))
    assert safe_offsets(module, (2, 2)) == [BiDegree(0, 0)]
    assert len(safe_offsets(module, (0, 0))) == 9


def test_omega_is_central_on_verma():
    module = scalar_verma(1, 1, box=(2, 2))
    one = module.algebra.unit
    report = centrality_report(OperatorSpec(0, one, one), module, window=(-1, 1))
    assert report['passed'], report['violations']
    assert report['checked'] > 0


def test_omega_is_central_over_jet():
    jet = preset('jet', 2)
    module = verma(PsiFunctional.from_unit(jet, 1, 1, 0), jet, (2, 2))
    for a, b in basis_pairs(jet):
        report = centrality_report(OperatorSpec(0, a, b), module, window=(-1, 1))
        assert report['passed'], report['violations']


def test_literal_cocycle_breaks_centrality():
    algebra = preset('scalar')
    module = verma(PsiFunctional.from_unit(algebra, 1, 1, 0), algebra, (2, 2), cocycle='literal')
    one = algebra.unit
    report = centrality_report(OperatorSpec(0, one, one), module, window=(-1, 1))
    assert not report['passed']


def test_centrality_labels_argument():
    module = scalar_verma(1, 1)
    one = module.algebra.unit
    with pytest.raises(BadParams):
        centrality_report(OperatorSpec(0, one, one), module, labels='some')


@pytest.mark.parametrize('j', [-1, 1, -2])
def test_t_is_central(j):
    module = scalar_verma(1, 2, box=(3, 3))
    one = module.algebra.unit
    report = centrality_report(OperatorSpec(j, one, one), module, window=(-1, 1))
    assert report['passed'], report['violations']


@pytest.mark.parametrize('j', [-1, 1, 2])
def test_normal_ordered_equals_commutator(j):
    jet = preset('jet', 2)
    module = verma(PsiFunctional.from_unit(jet, 1, 1, 0), jet, (3, 3))
    report = commutator_agreement_report(j, basis_pairs(jet), module)
    assert report['passed'], report['violations']
    assert report['checked'] > 0


def test_symmetry_and_reordering():
    jet = preset('jet', 2)
    module = verma(PsiFunctional.from_unit(jet, 2, 1, 0), jet, (2, 2))
    pairs = basis_pairs(jet)
    assert symmetry_report(-1, pairs, module)['passed']
    assert reordering_report(-1, pairs, module, n_range=(-1, 1))['passed']
    with pytest.raises(BadParams):
        reordering_report(0, pairs, module)


def test_central_coefficient_formulas():
    assert stated_central_coefficients(1, SL2) == (0, 0)
    assert stated_central_coefficients(2, SL2) == (-1, 1)
    assert proof_central_coefficients(2, SL2) == (2, 1)


def test_vir_bracket_off_diagonal():
    module = scalar_verma(1, 1, box=(3, 3))
    one = module.algebra.unit
    report = vir_bracket_report(1, -2, [(one, one)], [module])
    assert report['passed'], report['violations']
    assert 'measured' not in report


def test_vir_bracket_diagonal_reports_fit():
    algebra = preset('scalar')
    modules = [verma(PsiFunctional.from_unit(algebra, lam, c, 0), algebra, (3, 3))
               for lam, c in ((1, 1), (0, 2), (2, 5))]
    one = algebra.unit
    report = vir_bracket_report(1, -1, [(one, one)], modules)
    assert report['stated'] == ['0', '0']
    assert report['measured'] is not None
    assert 'determined' in report


def test_casimir_on_affine_singular_vectors():
    module = scalar_verma(1, 1, box=(2, 1))
    report = casimir_report(module)
    assert report['passed'], report['violations']
    # v, Y^2 v, X(t^-1) v and h(t^-1) v + 2 L_-1 v - 2 Y X(t^-1) v at least
    assert report['checked'] >= 4


def test_singular_generation_on_irreducible():
    algebra = preset('scalar')
    module = irreducible(PsiFunctional.from_unit(algebra, 1, 1, 0), algebra, (2, 2))
    one = algebra.unit
    found = singular_generation(module, [-1], [(one, one)])
    assert len(found) == 1
    assert found[0]['offset'] == BiDegree(0, 1)


@pytest.mark.parametrize('j', [-2, -1, 1, 2])
def test_symmetry_in_both_arguments(j):
    jet = preset('jet', 2)
    module = verma(PsiFunctional.from_unit(jet, 1, 1, 0), jet, (2, 2))
    report = symmetry_report(j, basis_pairs(jet), module)
    assert report['passed'], report['violations']
    assert report['checked'] > 0


@pytest.mark.parametrize('j', [-2, 2])
def test_reordering_stays_inside_box(j):
    module = scalar_verma(2, 1, box=(3, 3))
    one = module.algebra.unit
    report = reordering_report(j, [(one, one)], module)
    assert report['passed'], report['violations']
    assert report['checked'] > 0


def test_vir_bracket_central_coefficients_at_k_two():
    algebra = preset('scalar')
    modules = [verma(PsiFunctional.from_unit(algebra, lam, c, 0), algebra, (3, 3))
               for lam, c in ((1, 1), (0, 2), (2, 5))]
    one = algebra.unit
    report = vir_bracket_report(2, -2, [(one, one)], modules)
    assert report['passed'], report['violations']
    assert report['determined']
    assert report['measured'] == ['-1', '1']
    assert report['stated'] == ['-1', '1']
    assert report['matches_stated']


def test_casimir_on_irreducible_singular_vectors():
    algebra = preset('scalar')
    module = irreducible(PsiFunctional.from_unit(algebra, 0, 2, 0), algebra, (2, 2))
    report = casimir_report(module)
    assert report['passed'], report['violations']
    assert report['checked'] >= 1


def test_omega_of_idempotent_acts_on_its_factor():
    base = preset('scalar')
    psis = [PsiFunctional.from_unit(base, lam, c, 0) for lam, c in ((2, 1), (3, 2))]
    tensor = evaluation_tensor(psis[0], psis[1], 1, 2, (2, 1))
    report = localization_report(tensor)
    assert report['passed'], report['violations']
    assert report['checked'] == 2 * sum(tensor.dims().values())
