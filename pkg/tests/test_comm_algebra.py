from fractions import Fraction

import pytest

from tau_loop.comm_algebra import (CommAlgebra, algebra_from_spec, crt_split, ideal_from_span, ideal_generated,
                                   ideal_intersection, ideal_product, ideal_sum, maximal_ideals, preset, quotient,
                                   radical, trace_form, validate, whole_ideal, zero_ideal)
from tau_loop.exact_linear import SparseVec, echelonize
from tau_loop.exceptions import (AmbientMismatch, BadParams, ImproperIdeal, InputError, NotAnIdeal,
                                 NotSemisimple, SplitFieldRequired)


@pytest.mark.parametrize('name,params,dim', [
    ('scalar', (), 1),
    ('jet', (3,), 3),
    ('points', ([1, 2, -1],), 3),
    ('laurent', ([2, -3, 1],), 2),
    ('poly', ([0, 0, -1, 1],), 3),
])
def test_presets_are_valid(name, params, dim):
    algebra = preset(name, *params)
    assert algebra.dim == dim
    report = validate(algebra)
    assert report['valid']
    assert report['violations'] == []


def test_validate_reports_broken_laws():
    # e1 * e0 has no entry while e0 * e1 = e1, so commutativity fails
    broken = CommAlgebra(2, {(0, 0): {0: 1}, (0, 1): {1: 1}}, {0: 1})
    report = validate(broken)
    assert not report['valid']
    assert not report['laws']['commutativity']
    assert {'law': 'commutativity', 'indices': [0, 1]} in report['violations']


def test_jet_multiplication_truncates():
    jet = preset('jet', 3)
    t = jet.basis_element(1)
    assert jet.multiply(t, t) == SparseVec.unit(2)
    assert jet.power(t, 3) == SparseVec()
    assert jet.format_element(jet.element([1, 0, -2])) == '1 - 2*t^2'


def test_points_reduce_modulo_vanishing_polynomial():
    algebra = preset('points', [1, 2])
    t = algebra.basis_element(1)
    # t^2 = 3t - 2 in Q[t]/((t-1)(t-2))
    assert algebra.multiply(t, t) == SparseVec({0: -2, 1: 3})


def test_preset_errors():
    with pytest.raises(BadParams):
        preset('points', [1, 1])
    with pytest.raises(BadParams):
        preset('points', [0, 2])
    with pytest.raises(BadParams):
        preset('laurent', [0, 1])
    with pytest.raises(BadParams):
        preset('moonshine')


def test_ideal_generated_and_closure():
    jet = preset('jet', 3)
    ideal = ideal_generated(jet, [SparseVec.unit(1)])
    assert ideal.rank == 2
    assert SparseVec.unit(2) in ideal
    assert SparseVec.unit(0) not in ideal
    with pytest.raises(NotAnIdeal):
        ideal_from_span(jet, [SparseVec.unit(1)])


def test_ideal_arithmetic():
    jet = preset('jet', 4)
    first = ideal_generated(jet, [SparseVec.unit(1)])
    second = ideal_generated(jet, [SparseVec.unit(2)])
    assert ideal_product(first, first) == second
    assert ideal_sum(first, second) == first
    assert ideal_intersection(first, second) == second
    assert whole_ideal(jet).rank == 4
    with pytest.raises(AmbientMismatch):
        ideal_sum(first, zero_ideal(preset('jet', 4)))


def test_quotient_by_ideal():
    jet = preset('jet', 3)
    reduced, projection = quotient(jet, ideal_generated(jet, [SparseVec.unit(2)]))
    assert reduced.dim == 2
    assert validate(reduced)['valid']
    assert projection(SparseVec({0: 1, 1: 2, 2: 5})) == SparseVec({0: 1, 1: 2})
    assert projection.lift(SparseVec({1: 1})) == SparseVec.unit(1)
    with pytest.raises(ImproperIdeal):
        quotient(jet, whole_ideal(jet))


def test_trace_form_of_points():
    algebra = preset('points', [1, 2])
    # basis 1, t: traces of L_1, L_t, L_t^2 are 2, 3, 5
    assert trace_form(algebra) == [SparseVec({0: 2, 1: 3}), SparseVec({0: 3, 1: 5})]


@pytest.mark.parametrize('name,params,vectors', [
    ('jet', (2,), [{1: 1}]),
    ('jet', (3,), [{1: 1}, {2: 1}]),
    ('points', ([1, 2],), []),
    ('poly', ([0, 0, -1, 1],), [{1: -1, 2: 1}]),
])
def test_radical_of_zero(name, params, vectors):
    algebra = preset(name, *params)
    expected = echelonize([SparseVec(v) for v in vectors], algebra.dim)
    assert radical(zero_ideal(algebra)).space == expected


def test_radical_of_a_power_ideal():
    jet = preset('jet', 4)
    ideal = ideal_generated(jet, [SparseVec.unit(3)])
    assert radical(ideal) == ideal_generated(jet, [SparseVec.unit(1)])


def test_crt_split_two_points():
    split = crt_split(preset('points', [1, 2]))
    assert split.idempotents == [SparseVec({0: 2, 1: -1}), SparseVec({0: -1, 1: 1})]
    assert [pm.values for pm in split.point_maps] == [(1, 1), (1, 2)]


def test_crt_split_idempotents_are_orthogonal():
    algebra = preset('points', [Fraction(1, 2), -1, 3])
    split = crt_split(algebra)
    assert len(split) == 3
    total = SparseVec()
    for i, e in enumerate(split.idempotents):
        total.iadd_scaled(1, e)
        assert algebra.multiply(e, e) == e
        for f in split.idempotents[i + 1:]:
            assert algebra.multiply(e, f) == SparseVec()
    assert total == algebra.unit
    x = algebra.element([1, 2, 3])
    rebuilt = SparseVec()
    for value, e in zip(split.components(x), split.idempotents):
        rebuilt.iadd_scaled(value, e)
    assert rebuilt == x


def test_crt_split_failures():
    with pytest.raises(NotSemisimple):
        crt_split(preset('jet', 2))
    with pytest.raises(SplitFieldRequired):
        crt_split(preset('poly', [1, 0, 1]))


def test_maximal_ideals_are_point_kernels():
    algebra = preset('points', [1, 2])
    ideals = maximal_ideals(algebra)
    split = crt_split(algebra)
    assert len(ideals) == 2
    for ideal, pm in zip(ideals, split.point_maps):
        assert ideal.rank == 1
        assert all(pm(row) == 0 for row in ideal.rows)


def test_algebra_from_spec_explicit():
    spec = {'dim': 2, 'labels': ['1', 'e'], 'unit': [1, 0],
            'mult': [[0, 0, [1, 0]], [0, 1, [0, 1]], [1, 0, [0, 1]], [1, 1, [0, '1/2']]]}
    algebra = algebra_from_spec(spec)
    assert algebra.labels == ['1', 'e']
    assert algebra.product(1, 1) == SparseVec({1: Fraction(1, 2)})
    assert validate(algebra)['valid']


@pytest.mark.parametrize('spec,field', [
    ({'preset': 'jet'}, 'algebra.N'),
    ({'preset': 'nope'}, 'algebra.preset'),
    ({'dim': 2, 'unit': [1, 0]}, 'algebra.mult'),
    ({'dim': 2, 'unit': [1], 'mult': []}, 'algebra.unit'),
    ({'dim': 1, 'unit': [1], 'mult': [[0, 0, [0.5]]]}, 'algebra.mult[0][2][0]'),
])
def test_algebra_from_spec_locates_errors(spec, field):
    with pytest.raises(InputError) as ex:
        algebra_from_spec(spec, 'algebra.yaml')
    assert ex.value.field == field
    assert 'algebra.yaml' in str(ex.value)
