import inspect

import pytest

from tau_loop import selftest


@pytest.mark.parametrize('criterion', [
    selftest.casimir_eigenvalues,
    selftest.integrability,
    selftest.radical_and_crt,
    selftest.casimir_on_singular_vectors,
    selftest.casimir_localization,
    selftest.operator_identities,
])
def test_quick_criteria(criterion):
    report = criterion()
    assert report['passed'], report['violations']


def test_structure_constants_sample():
    report = selftest.structure_constants(samples=40)
    assert report['passed'], report['violations']
    assert report['checked'] == 3 * 2 * 40


def test_verma_dimensions_small_box():
    report = selftest.verma_dimensions(box=(2, 2))
    assert report['passed'], report['violations']


def test_convention_ledger():
    report = selftest.convention_ledger()
    assert report['passed']
    assert report['outcome']['standard']['central']
    assert not report['outcome']['literal']['central']


def test_evaluation_example():
    report = selftest.evaluation_example()
    assert report['passed'], report['violations']
    assert set(report['images']) == {'T_-1', 'T_-2'}
    assert all(image['singular'] for image in report['images'].values())


def test_run_selftest_subset():
    report = selftest.run_selftest(only=['radical_and_crt', 'casimir_eigenvalue'])
    assert report['identity'] == 'selftest'
    assert report['passed']
    assert [s['criterion'] for s in report['summary']] == ['casimir_eigenvalue', 'radical_and_crt']


def test_default_structure_sample_size():
    samples = inspect.signature(selftest.structure_constants).parameters['samples'].default
    assert 3 * 2 * samples >= 1000


def test_operator_suite_is_part_of_selftest():
    names = [name for name, _ in selftest.CRITERIA]
    for name in ('operator_identities', 'casimir_singular', 'localization', 'vir_bracket',
                 'normal_ordered_equals_commutator', 't_centrality', 'omega_centrality'):
        assert name in names
