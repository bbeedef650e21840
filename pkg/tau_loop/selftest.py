"""
tau-loop - exact representation theory of loop Affine-Virasoro algebras.
Copyright (C) 2026 the tau-loop developers

This program is free software: you can redistribute it and/or modify
it under the terms of the GNU General Public License as published
by the Free Software Foundation, either version 3 of the License, or
(at your option) any later version.

This program is distributed in the hope that it will be useful, but
WITHOUT ANY WARRANTY; without even the implied warranty of
MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
GNU General Public License for more details.

You should have received a copy of the GNU General Public License
along with this program.  If not, see <http://www.gnu.org/licenses/>.
"""
from fractions import Fraction

import itertools
import logging
import numpy as np
import tqdm

from .central_ops import (OperatorSpec, casimir_report, centrality_report, commutator_agreement_report,
                          localization_report, omega_apply, reordering_report, symmetry_report, t_apply,
                          t_apply_commutator, vir_bracket_report)
from .comm_algebra import crt_split, ideal_generated, preset, radical, validate, zero_ideal
from .exact_linear import SparseVec, echelonize
from .exceptions import NotSemisimple
from .io_utils import format_scalar, make_report
from .tau_algebra import TauAlgebra, TauSymbol
from .weight_modules import (PsiFunctional, check_cofinite_annihilation, dominant_integral, evaluation_tensor,
                             format_dimension_table, irreducible, is_singular, nilpotency_probe,
                             pbw_dimension_oracle, verma)

logger = logging.getLogger(__name__)

DEFAULT_SEED = 1729


def basis_pairs(algebra):
    """Unordered pairs of basis elements as algebra vectors."""
    return [(SparseVec.unit(i), SparseVec.unit(j))
            for i, j in itertools.combinations_with_replacement(range(algebra.dim), 2)]


def structure_constants(seed=DEFAULT_SEED, samples=170, progress=False):
    """
    Antisymmetry and Jacobi on sampled symbol triples from the window [-5, 5], over
    three algebras and both cocycle conventions. The default draws 1020 triples.
    """
    random_state = np.random.RandomState(seed)
    algebras = [preset('scalar'), preset('jet', 3), preset('points', [1, 2])]
    checked = 0
    violations = []
    for algebra in algebras:
        for cocycle in ('standard', 'literal'):
            tau = TauAlgebra(algebra, cocycle)
            window = tau.symbol_window(-5, 5)
            picks = random_state.randint(0, len(window), size=(samples, 3))
            for i, j, k in tqdm.tqdm(picks, disable=not progress, desc='jacobi {} {}'.format(algebra, cocycle)):
                s1, s2, s3 = window[i], window[j], window[k]
                checked += 1
                if tau.antisymmetry_probe(s1, s2):
                    violations.append({'law': 'antisymmetry', 'algebra': algebra.name, 'cocycle': cocycle,
                                       'symbols': [str(s1), str(s2)]})
                if tau.jacobi_probe(s1, s2, s3):
                    violations.append({'law': 'jacobi', 'algebra': algebra.name, 'cocycle': cocycle,
                                       'symbols': [str(s1), str(s2), str(s3)]})
    return make_report('structure_constants', {'seed': seed, 'samples_per_case': samples}, checked, violations)


def verma_dimensions(box=(4, 4)):
    """
    Verma dimensions against the generating-function count, with the hand-checked values
    (0,1) -> 3 and (1,1) -> 4 over Q.
    """
    checked = 0
    violations = []
    tables = {}
    for algebra in (preset('scalar'), preset('points', [1, 2])):
        psi = PsiFunctional.from_unit(algebra, 1, 1, 0)
        module = verma(psi, algebra, box)
        dims = module.dims()
        oracle = pbw_dimension_oracle(algebra, box)
        tables[algebra.name] = format_dimension_table(dims, box)
        for offset, d in sorted(dims.items()):
            checked += 1
            if d != oracle[offset]:
                violations.append({'algebra': algebra.name, 'offset': list(offset), 'enumerated': d,
                                   'oracle': oracle[offset]})
        if algebra.dim == 1:
            for offset, expected in (((0, 1), 3), ((1, 1), 4)):
                checked += 1
                if dims.get(offset) != expected:
                    violations.append({'algebra': algebra.name, 'offset': list(offset), 'enumerated': dims.get(offset),
                                       'expected': expected})
    return make_report('verma_dimensions', {'box': list(box)}, checked, violations, tables=tables)


def cofinite_annihilation(box=(3, 3), progress=False):
    algebra = preset('jet', 2)
    psi = PsiFunctional([1, 0], [1, 0], [0, 0])
    ideal = ideal_generated(algebra, [SparseVec.unit(1)])
    return check_cofinite_annihilation(psi, algebra, ideal, box, progress=progress)


def _jet_setting(box):
    algebra = preset('jet', 2)
    psi = PsiFunctional.from_unit(algebra, 1, 1, 0)
    return algebra, verma(psi, algebra, box)


def omega_centrality(box=(3, 3), progress=False):
    algebra, module = _jet_setting(box)
    reports = [centrality_report(OperatorSpec(0, a, b), module, progress=progress)
               for a, b in basis_pairs(algebra)]
    return _merge('omega_centrality', {'box': list(box)}, reports)


def commutator_agreement(box=(3, 3), progress=False):
    algebra, module = _jet_setting(box)
    reports = [commutator_agreement_report(j, basis_pairs(algebra), module, progress=progress)
               for j in (-3, -2, -1, 1, 2, 3)]
    return _merge('normal_ordered_equals_commutator', {'box': list(box)}, reports)


def t_centrality(box=(3, 3), progress=False):
    algebra, module = _jet_setting(box)
    reports = [centrality_report(OperatorSpec(j, a, b), module, progress=progress)
               for j in (-2, -1, 1, 2) for a, b in basis_pairs(algebra)]
    return _merge('t_centrality', {'box': list(box)}, reports)


def vir_brackets(box=(3, 3), progress=False):
    """
    [L_k, T_j] for |k|, |j| <= 2; the central scalars for j + k = 0 are fitted over three
    psi choices and compared with the stated coefficients.
    """
    algebra = preset('jet', 2)
    psis = [PsiFunctional([1, 0], [1, 0], [0, 0]),
            PsiFunctional([0, 1], [2, 1], [1, 0]),
            PsiFunctional([2, 0], [3, -1], [0, 2])]
    modules = [verma(psi, algebra, box) for psi in psis]
    pairs = [(SparseVec.unit(0), SparseVec.unit(0)), (SparseVec.unit(0), SparseVec.unit(1))]
    reports = []
    for k, j in itertools.product(range(-2, 3), repeat=2):
        if j + k == 0 and k == 0:
            continue
        chosen = modules if j + k == 0 else modules[:1]
        reports.append(vir_bracket_report(k, j, pairs, chosen, progress=progress))
    return _merge('vir_bracket', {'box': list(box)}, reports)


def operator_identities(box=(2, 2)):
    """
    T_j(a,b) = T_j(b,a), and each fixed-n term of T_j is unchanged by reordering its factors.
    """
    algebra, module = _jet_setting(box)
    pairs = basis_pairs(algebra)
    reports = [symmetry_report(j, pairs, module) for j in (-2, -1, 1, 2)]
    reports.extend(reordering_report(j, pairs, module) for j in (-2, -1, 1, 2))
    return _merge('operator_identities', {'box': list(box)}, reports)


def casimir_on_singular_vectors(box=(2, 2)):
    """
    Omega(1,1) on every affine-singular vector of M(psi) and V(psi) over Q.
    """
    algebra = preset('scalar')
    reports = []
    for lam, c in ((1, 1), (0, 2)):
        psi = PsiFunctional.from_unit(algebra, lam, c, 0)
        reports.append(casimir_report(verma(psi, algebra, box)))
        reports.append(casimir_report(irreducible(psi, algebra, box)))
    return _merge('casimir_singular', {'box': list(box)}, reports)


def casimir_localization(z=(1, 2), lams=(2, 3), cs=(1, 2), box=(2, 1)):
    base = preset('scalar')
    psis = [PsiFunctional.from_unit(base, lam, c, 0) for lam, c in zip(lams, cs)]
    tensor = evaluation_tensor(psis[0], psis[1], z[0], z[1], box)
    report = localization_report(tensor)
    report['parameters'].update({'z': [format_scalar(Fraction(x)) for x in z], 'box': list(box)})
    return report


def casimir_eigenvalues():
    """
    Omega(1,1) on the highest-weight line equals lam + lam^2/2 + (4+2c)d0 and equals
    (Lambda, Lambda + 2 rho) from the form.
    """
    algebra = preset('scalar')
    triples = [(1, 1, 0), (0, 0, 0), (Fraction(3, 2), 2, Fraction(-1, 3)), (-1, 1, 2), (5, Fraction(1, 2), 1),
               (Fraction(-7, 4), -3, Fraction(5, 6))]
    checked = 0
    violations = []
    for lam, c, d0 in triples:
        lam, c, d0 = Fraction(lam), Fraction(c), Fraction(d0)
        module = verma(PsiFunctional.from_unit(algebra, lam, c, d0), algebra, (1, 1))
        v = module.highest_weight_vector()
        image = omega_apply(algebra.unit, algebra.unit, module, v)
        direct = lam + lam * lam / 2 + (4 + 2 * c) * d0
        paired = module.tau.lie.casimir_value(lam, c, d0)
        checked += 1
        if image != v.scaled(direct) or direct != paired:
            violations.append({'lam': format_scalar(lam), 'c': format_scalar(c), 'd0': format_scalar(d0),
                               'image': module.format_vector(image), 'direct': format_scalar(direct),
                               'pairing': format_scalar(paired)})
    return make_report('casimir_eigenvalue', {'triples': len(triples)}, checked, violations)


def integrability():
    """
    Nilpotency of real root vectors in V(psi) for a dominant and a non-dominant psi, and
    failure in a Verma module.
    """
    algebra = preset('scalar')
    one = algebra.unit
    violations = []

    def expect(name, result, nilpotent, N=None):
        if result.nilpotent != nilpotent or (N is not None and result.N != N):
            violations.append({'case': name, 'nilpotent': result.nilpotent, 'N': result.N})

    dominant = PsiFunctional.from_unit(algebra, 1, 1, 0)
    small = irreducible(dominant, algebra, (2, 1))
    v = small.highest_weight_vector()
    expect('Y^2 v = 0 in V(1,1)', nilpotency_probe(small, 'Y', 0, one, v, 6), True, 2)
    expect('X(t^-1) v = 0 in V(1,1)', nilpotency_probe(small, 'X', -1, one, v, 1), True, 1)

    other = PsiFunctional.from_unit(algebra, -1, 1, 0)
    wide = irreducible(other, algebra, (6, 0))
    expect('Y^N v != 0 in V(-1,1)', nilpotency_probe(wide, 'Y', 0, one, wide.highest_weight_vector(), 6), False)

    free = verma(dominant, algebra, (6, 0))
    expect('Y^N v != 0 in M(1,1)', nilpotency_probe(free, 'Y', 0, one, free.highest_weight_vector(), 6), False)

    for psi, verdict in ((dominant, True), (other, False)):
        ok, _ = dominant_integral(psi, algebra)
        if ok != verdict:
            violations.append({'case': 'dominant_integral', 'psi': psi.to_dict(), 'verdict': ok})
    return make_report('integrability', {}, 6, violations)


def _tensor(x, y):
    out = SparseVec()
    for k1, c1 in x.items():
        for k2, c2 in y.items():
            out.add_entry((k1, k2), c1 * c2)
    return out


def example_tensor_images(tensor, lams, cs):
    """
    The displayed images of T_-1(P1,P2) and T_-2(P1,P2) on v1 (x) v2, assembled from the
    factor actions.
    """
    f1, f2 = tensor.factors
    v1, v2 = f1.highest_weight_vector(), f2.highest_weight_vector()
    lam1, lam2 = lams
    c1, c2 = cs

    def on(f, v, gen, m=0):
        return f.apply(TauSymbol.current(gen, m) if gen != 'L' else TauSymbol.vir(m), v)

    minus_one = _tensor(on(f1, v1, 'Y'), on(f2, v2, 'X', -1))
    minus_one.iadd_scaled(1, _tensor(on(f1, v1, 'X', -1), on(f2, v2, 'Y')))
    minus_one.iadd_scaled(lam1 / 2, _tensor(v1, on(f2, v2, 'h', -1)))
    minus_one.iadd_scaled(lam2 / 2, _tensor(on(f1, v1, 'h', -1), v2))
    minus_one.iadd_scaled(c1, _tensor(v1, on(f2, v2, 'L', -1)))
    minus_one.iadd_scaled(c2, _tensor(on(f1, v1, 'L', -1), v2))

    minus_two = _tensor(on(f1, v1, 'Y'), on(f2, v2, 'X', -2))
    minus_two.iadd_scaled(1, _tensor(on(f1, v1, 'Y', -1), on(f2, v2, 'X', -1)))
    minus_two.iadd_scaled(1, _tensor(on(f1, v1, 'X', -1), on(f2, v2, 'Y', -1)))
    minus_two.iadd_scaled(1, _tensor(on(f1, v1, 'X', -2), on(f2, v2, 'Y')))
    minus_two.iadd_scaled(lam1 / 2, _tensor(v1, on(f2, v2, 'h', -2)))
    minus_two.iadd_scaled(Fraction(1, 2), _tensor(on(f1, v1, 'h', -1), on(f2, v2, 'h', -1)))
    minus_two.iadd_scaled(lam2 / 2, _tensor(on(f1, v1, 'h', -2), v2))
    minus_two.iadd_scaled(c1, _tensor(v1, on(f2, v2, 'L', -2)))
    minus_two.iadd_scaled(c2, _tensor(on(f1, v1, 'L', -2), v2))
    return {-1: minus_one, -2: minus_two}


def example_idempotents(tensor):
    split = crt_split(tensor.algebra)
    out = []
    for point in tensor.point_maps:
        out.append(next(e for e, pm in zip(split.idempotents, split.point_maps) if pm == point))
    return out


def evaluation_example(z=(1, 2), lams=(2, 3), cs=(1, 2), box=(3, 2)):
    """
    T_-1 and T_-2 of the idempotents P1, P2 on v1 (x) v2 in the evaluation tensor.
    """
    lams = [Fraction(x) for x in lams]
    cs = [Fraction(x) for x in cs]
    base = preset('scalar')
    psis = [PsiFunctional.from_unit(base, lam, c, 0) for lam, c in zip(lams, cs)]
    tensor = evaluation_tensor(psis[0], psis[1], z[0], z[1], box)
    P1, P2 = example_idempotents(tensor)
    v = tensor.highest_weight_vector()
    expected = example_tensor_images(tensor, lams, cs)
    checked = 0
    violations = []
    images = {}
    for j in (-1, -2):
        checked += 1
        image = t_apply(j, P1, P2, tensor, v)
        via_commutator = t_apply_commutator(j, P1, P2, tensor, v)
        singular = is_singular(tensor, image, scope='affine')
        images['T_{}'.format(j)] = {'vector': tensor.format_vector(image), 'singular': singular}
        if image != expected[j]:
            violations.append({'j': j, 'reason': 'differs from the displayed expression',
                               'image': tensor.format_vector(image),
                               'expected': tensor.format_vector(expected[j])})
        if image != via_commutator:
            violations.append({'j': j, 'reason': 'differs from the commutator realization',
                               'commutator': tensor.format_vector(via_commutator)})
        if not singular:
            violations.append({'j': j, 'reason': 'not singular for the affine raising generators'})
    params = {'z': [format_scalar(x) for x in z], 'lam': [format_scalar(x) for x in lams],
              'c': [format_scalar(x) for x in cs], 'box': list(box),
              'P1': tensor.algebra.format_element(P1), 'P2': tensor.algebra.format_element(P2)}
    return make_report('evaluation_example', params, checked, violations, images=images)


def radical_and_crt():
    checked = 0
    violations = []

    def expect_radical(algebra, vectors):
        expected = echelonize(vectors, algebra.dim)
        found = radical(zero_ideal(algebra)).space
        if found != expected:
            violations.append({'algebra': algebra.name, 'radical_rank': found.rank, 'expected_rank': expected.rank})

    expect_radical(preset('jet', 2), [SparseVec.unit(1)])
    expect_radical(preset('points', [1, 2]), [])
    expect_radical(preset('poly', [0, 0, -1, 1]), [SparseVec({2: 1, 1: -1})])

    split = crt_split(preset('points', [1, 2]))
    if split.idempotents != [SparseVec({0: 2, 1: -1}), SparseVec({0: -1, 1: 1})]:
        violations.append({'algebra': 'points({1,2})', 'idempotents': [dict(e) for e in split.idempotents]})
    if [pm.values for pm in split.point_maps] != [(1, 1), (1, 2)]:
        violations.append({'algebra': 'points({1,2})', 'point_maps': [list(pm.values) for pm in split.point_maps]})
    if crt_split(preset('scalar')).idempotents != [SparseVec.unit(0)]:
        violations.append({'algebra': 'scalar', 'reason': 'idempotent is not 1'})
    try:
        crt_split(preset('jet', 2))
        violations.append({'algebra': 'jet(2)', 'reason': 'NotSemisimple was not raised'})
    except NotSemisimple:
        pass
    for name, params in (('scalar', ()), ('jet', (3,)), ('points', ([1, 2],)), ('laurent', ([2, -3, 1],))):
        if not validate(preset(name, *params))['valid']:
            violations.append({'algebra': name, 'reason': 'preset fails validation'})
    checked = 10
    return make_report('radical_and_crt', {}, checked, violations)


def convention_ledger(box=(2, 2)):
    """
    Omega(1,1) is central under the first-exponent cocycle and not under the literal one.
    """
    algebra = preset('scalar')
    psi = PsiFunctional.from_unit(algebra, 1, 1, 0)
    one = algebra.unit
    outcome = {}
    for cocycle in ('standard', 'literal'):
        module = verma(psi, algebra, box, cocycle)
        report = centrality_report(OperatorSpec(0, one, one), module, window=(-1, 1))
        outcome[cocycle] = {'central': report['passed'], 'violations': len(report['violations'])}
    violations = []
    if not outcome['standard']['central'] or outcome['literal']['central']:
        violations.append(dict(outcome, reason='unexpected convention outcome'))
    return make_report('convention_ledger', {'box': list(box)}, 2, violations, outcome=outcome)


def _merge(identity, parameters, reports):
    violations = []
    for r in reports:
        violations.extend(r['violations'])
    payload = {}
    central = [r for r in reports if r['identity'] == 'vir_bracket' and 'measured' in r]
    if central:
        payload['central'] = [{'k': r['parameters']['k'], 'j': r['parameters']['j'], 'measured': r['measured'],
                               'stated': r['stated'], 'proof_intermediate': r['proof_intermediate'],
                               'matches_stated': r.get('matches_stated')} for r in central]
    return make_report(identity, parameters, sum(r['checked'] for r in reports), violations, **payload)


CRITERIA = [
    ('structure_constants', structure_constants),
    ('verma_dimensions', verma_dimensions),
    ('cofinite_annihilation', cofinite_annihilation),
    ('omega_centrality', omega_centrality),
    ('normal_ordered_equals_commutator', commutator_agreement),
    ('t_centrality', t_centrality),
    ('vir_bracket', vir_brackets),
    ('operator_identities', operator_identities),
    ('casimir_eigenvalue', casimir_eigenvalues),
    ('casimir_singular', casimir_on_singular_vectors),
    ('localization', casimir_localization),
    ('integrability', integrability),
    ('evaluation_example', evaluation_example),
    ('radical_and_crt', radical_and_crt),
    ('convention_ledger', convention_ledger),
]


def run_selftest(progress=False, only=None):
    """
    Run every acceptance criterion and collect the reports.

    :param progress: show a progress bar
    :param only: optional list of criterion names to run
    """
    criteria = [(name, fn) for name, fn in CRITERIA if only is None or name in only]
    reports = []
    for name, fn in tqdm.tqdm(criteria, disable=not progress, desc='selftest'):
        logger.info('running {}'.format(name))
        reports.append(fn())
        logger.info('{}: {}'.format(name, 'passed' if reports[-1]['passed'] else 'FAILED'))
    violations = [{'criterion': r['identity'], 'violations': len(r['violations'])} for r in reports if not r['passed']]
    summary = [{'criterion': r['identity'], 'checked': r['checked'], 'passed': r['passed']} for r in reports]
    return make_report('selftest', {'criteria': [name for name, _ in criteria]},
                       sum(r['checked'] for r in reports), violations, summary=summary, reports=reports)
