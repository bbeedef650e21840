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

import logging
import tqdm

from .comm_algebra import crt_split
from .exact_linear import SparseVec, solve
from .exceptions import *
from .io_utils import format_scalar, make_report
from .tau_algebra import BiDegree, TauSymbol
from .weight_modules import is_singular, singular_vectors

logger = logging.getLogger(__name__)

NORMAL_ORDERED = 'normal_ordered'
COMMUTATOR = 'commutator_defined'


class OperatorSpec(object):
    """
    The operator T_j(a,b); j = 0 is Omega(a,b).

    :param j: Virasoro index
    :param a: SparseVec in algebra coordinates
    :param b: SparseVec in algebra coordinates
    :param realization: normal_ordered or commutator_defined
    """

    def __init__(self, j, a, b, realization=NORMAL_ORDERED):
        if realization not in (NORMAL_ORDERED, COMMUTATOR):
            raise BadParams('unknown realization [{}]'.format(realization))
        if realization == COMMUTATOR and j == 0:
            raise BadParams('the commutator realization needs j != 0')
        self.j = int(j)
        self.a = SparseVec(a)
        self.b = SparseVec(b)
        self.realization = realization

    def __repr__(self):
        name = 'Omega' if self.j == 0 else 'T_{}'.format(self.j)
        return '{}({}, {})[{}]'.format(name, dict(self.a), dict(self.b), self.realization)

    def describe(self, algebra):
        return {'j': self.j, 'a': algebra.format_element(self.a), 'b': algebra.format_element(self.b),
                'realization': self.realization}

    def apply(self, m, v):
        if self.realization == COMMUTATOR:
            return t_apply_commutator(self.j, self.a, self.b, m, v)
        return t_apply(self.j, self.a, self.b, m, v)

    def reach(self):
        return operator_reach(self)


def _cur(tau, gen, n, a):
    return tau.lift(TauSymbol.current(gen, n), a)


def _scaled_cur(tau, coeffs, n, a):
    """Lift of a Cartan element given as {gen: coef}."""
    out = SparseVec()
    for gen, c in coeffs.items():
        out.iadd_scaled(c, _cur(tau, gen, n, a))
    return out


def _pair(m, first, second, v):
    """first . (second . v)"""
    return m.act(first, m.act(second, v))


def _root_terms(m, a, b, n, j, v, swapped=False):
    """
    sum over roots beta of x_{-beta}(-n)(a) x_beta(n+j)(b) v, or in the reordered form
    x_beta(n+j)(b) x_{-beta}(-n)(a) v when swapped.
    """
    tau = m.tau
    lie = tau.lie
    out = SparseVec()
    for beta in lie.roots:
        low = _cur(tau, lie.root_vector[-beta], -n, a)
        high = _cur(tau, lie.root_vector[beta], n + j, b)
        out.iadd_scaled(1, _pair(m, high, low, v) if swapped else _pair(m, low, high, v))
    return out


def _cartan_terms(m, a, b, n, j, v, swapped=False):
    tau = m.tau
    lie = tau.lie
    out = SparseVec()
    for hi in lie.cartan:
        low = _cur(tau, hi, -n, a)
        high = _scaled_cur(tau, lie.cartan_dual[hi], n + j, b)
        out.iadd_scaled(1, _pair(m, high, low, v) if swapped else _pair(m, low, high, v))
    return out


def _ab(m, a, b):
    return m.algebra.multiply(a, b)


def omega_apply(a, b, m, v):
    """
    Omega(a,b) v. The sums over n > 0 stop at the depth of v, beyond which the raising
    factor applied first kills every component.
    """
    tau = m.tau
    lie = tau.lie
    depth = m.depth(v)
    ab = _ab(m, a, b)

    out = m.act(_scaled_cur(tau, {g: 2 * c for g, c in lie.rho_bar_coroot.items()}, 0, ab), v)
    out.iadd_scaled(2 * lie.dual_coxeter, m.act(tau.lift(TauSymbol.vir(0), ab), v))
    out.iadd_scaled(1, _cartan_terms(m, a, b, 0, 0, v))
    for x, y in ((a, b), (b, a)):
        out.iadd_scaled(1, _pair(m, tau.lift(TauSymbol.central(), x), tau.lift(TauSymbol.vir(0), y), v))
    for x, y in ((a, b), (b, a)):
        for n in range(1, depth + 1):
            out.iadd_scaled(1, _root_terms(m, x, y, n, 0, v))
            out.iadd_scaled(1, _cartan_terms(m, x, y, n, 0, v))
        for r in lie.positive_roots:
            low = _cur(tau, lie.root_vector[-r], 0, x)
            high = _cur(tau, lie.root_vector[r], 0, y)
            out.iadd_scaled(1, _pair(m, low, high, v))
    return out


def t_apply(j, a, b, m, v):
    """
    T_j(a,b) v from the explicit bilinear sums, split at n = 0: terms with n >= 0 in the
    written order, terms with n < 0 reordered so the raising factor acts first.
    """
    if j == 0:
        return omega_apply(a, b, m, v)
    tau = m.tau
    lie = tau.lie
    depth = m.depth(v)
    ab = _ab(m, a, b)

    out = SparseVec()
    for n in range(0, depth - j + 1):
        out.iadd_scaled(1, _root_terms(m, a, b, n, j, v))
        out.iadd_scaled(1, _cartan_terms(m, a, b, n, j, v))
    for n in range(-depth, 0):
        out.iadd_scaled(1, _root_terms(m, a, b, n, j, v, swapped=True))
        out.iadd_scaled(1, _cartan_terms(m, a, b, n, j, v, swapped=True))
    for x, y in ((a, b), (b, a)):
        out.iadd_scaled(1, _pair(m, tau.lift(TauSymbol.central(), x), tau.lift(TauSymbol.vir(j), y), v))
    out.iadd_scaled(2 * lie.dual_coxeter, m.act(tau.lift(TauSymbol.vir(j), ab), v))
    return out


def t_apply_commutator(j, a, b, m, v):
    """
    (-1/j)(L_j Omega(a,b) v - Omega(a,b) L_j v) with L_j carrying the unit label.
    """
    if j == 0:
        raise BadParams('the commutator realization needs j != 0')
    L = m.tau.unit_lift(TauSymbol.vir(j))
    out = m.act(L, omega_apply(a, b, m, v))
    out.iadd_scaled(-1, omega_apply(a, b, m, m.act(L, v)))
    return out.scaled(Fraction(-1, j))


def operator_reach(op):
    """
    How far below its input an evaluation of op may go, in simple-root coordinates.
    """
    j = op.j
    if j >= 0:
        return 0, 0
    if op.realization == COMMUTATOR:
        return -j, -j
    return -j, -j + 1


def _lowering_extent(degree):
    k0, k1 = BiDegree(*degree).simple_coordinates()
    return max(k0, 0), max(k1, 0)


def composite_reach(op_reach, *degrees):
    """
    Reach of an operator composed with symbols of the given degrees.
    """
    r0, r1 = op_reach
    for d in degrees:
        e0, e1 = _lowering_extent(d)
        r0, r1 = r0 + e0, r1 + e1
    return r0, r1


def safe_offsets(m, reach):
    """
    Offsets whose vectors can take an evaluation of the given reach inside the box.
    """
    P, Q = m.box
    r0, r1 = reach
    out = []
    for o in m.offsets():
        k0, k1 = o.simple_coordinates()
        if k0 + r0 <= Q and k1 + r1 <= P:
            out.append(o)
    return out


def _basis_vectors(m, offsets):
    for o in offsets:
        for key in m.basis(o):
            yield o, key, SparseVec.unit(key)


def _centrality_generators(m, window, labels):
    tau = m.tau
    lo, hi = window
    out = []
    for n in range(lo, hi + 1):
        for g in tau.lie.basis:
            s = TauSymbol.current(g, n)
            if labels == 'unit':
                out.append((s, s.label(['1']), tau.unit_lift(s)))
            else:
                for k in range(m.algebra.dim):
                    sk = s.with_label(k)
                    out.append((sk, sk.label(m.algebra.labels), SparseVec.unit(sk)))
    for k in range(m.algebra.dim):
        sk = TauSymbol.central(k)
        out.append((sk, sk.label(m.algebra.labels), SparseVec.unit(sk)))
    return out


def centrality_report(op, m, window=(-2, 2), labels='unit', progress=False):
    """
    Check u (op v) - op (u v) = 0 for the affine generators u and every basis vector in
    the safe interior for that u.

    :param labels: 'unit' for the affine algebra over the unit of A, 'all' for every basis label
    """
    if labels not in ('unit', 'all'):
        raise BadParams('labels must be unit or all, was [{}]'.format(labels))
    checked = 0
    violations = []
    generators = _centrality_generators(m, window, labels)
    for s, name, u in tqdm.tqdm(generators, disable=not progress, desc='centrality'):
        reach = composite_reach(operator_reach(op), s.degree())
        for o, key, v in _basis_vectors(m, safe_offsets(m, reach)):
            checked += 1
            residual = m.act(u, op.apply(m, v))
            residual.iadd_scaled(-1, op.apply(m, m.act(u, v)))
            if residual:
                violations.append({'generator': name, 'vector': m.format_key(key), 'offset': list(o),
                                   'residual': m.format_vector(residual)})
    logger.info('centrality of {}: {} checks, {} violations'.format(op, checked, len(violations)))
    params = dict(op.describe(m.algebra), window=list(window), labels=labels, module=m.summary())
    return make_report('centrality', params, checked, violations)


def commutator_agreement_report(j, pairs, m, progress=False):
    """
    t_apply and t_apply_commutator agree on every safe basis vector.
    """
    first, second = operator_reach(OperatorSpec(j, {}, {})), operator_reach(OperatorSpec(j, {}, {}, COMMUTATOR))
    reach = max(first[0], second[0]), max(first[1], second[1])
    checked = 0
    violations = []
    for a, b in tqdm.tqdm(pairs, disable=not progress, desc='T_{}'.format(j)):
        for o, key, v in _basis_vectors(m, safe_offsets(m, reach)):
            checked += 1
            first = t_apply(j, a, b, m, v)
            second = t_apply_commutator(j, a, b, m, v)
            if first != second:
                violations.append({'a': m.algebra.format_element(a), 'b': m.algebra.format_element(b),
                                   'vector': m.format_key(key), 'normal_ordered': m.format_vector(first),
                                   'commutator': m.format_vector(second)})
    return make_report('normal_ordered_equals_commutator', {'j': j, 'module': m.summary()}, checked, violations)


def symmetry_report(j, pairs, m):
    """
    T_j(a,b) = T_j(b,a) pointwise on safe basis vectors.
    """
    reach = operator_reach(OperatorSpec(j, {}, {}))
    checked = 0
    violations = []
    for a, b in pairs:
        for o, key, v in _basis_vectors(m, safe_offsets(m, reach)):
            checked += 1
            diff = t_apply(j, a, b, m, v)
            diff.iadd_scaled(-1, t_apply(j, b, a, m, v))
            if diff:
                violations.append({'a': m.algebra.format_element(a), 'b': m.algebra.format_element(b),
                                   'vector': m.format_key(key), 'difference': m.format_vector(diff)})
    return make_report('symmetry', {'j': j, 'module': m.summary()}, checked, violations)


def reordering_report(j, pairs, m, n_range=(-2, 2)):
    """
    For j != 0, each fixed-n root-summed term and Cartan term gives the same vector in
    both evaluation orders.
    """
    if j == 0:
        raise BadParams('reordering is only free of central terms for j != 0')
    lo, hi = n_range
    checked = 0
    violations = []
    for a, b in pairs:
        for n in range(lo, hi + 1):
            # deepest point of either order: one factor applied, or both (net -j)
            reach = (max(0, -(n + j), n, -j), max(0, -(n + j) + 1, n + 1, -j))
            for o, key, v in _basis_vectors(m, safe_offsets(m, reach)):
                for name, terms in (('root', _root_terms), ('cartan', _cartan_terms)):
                    checked += 1
                    first = terms(m, a, b, n, j, v)
                    second = terms(m, a, b, n, j, v, swapped=True)
                    if first != second:
                        violations.append({'term': name, 'n': n, 'a': m.algebra.format_element(a),
                                           'b': m.algebra.format_element(b), 'vector': m.format_key(key)})
    return make_report('reordering', {'j': j, 'n_range': list(n_range), 'module': m.summary()},
                       checked, violations)


def _bracket_lhs(k, j, a, b, m, v):
    L = m.tau.unit_lift(TauSymbol.vir(k))
    out = m.act(L, t_apply(j, a, b, m, v))
    out.iadd_scaled(-1, t_apply(j, a, b, m, m.act(L, v)))
    return out


def _vir_reach(k, j):
    reach = composite_reach(operator_reach(OperatorSpec(j, {}, {})), BiDegree(0, -k))
    other = operator_reach(OperatorSpec(j + k, {}, {}))
    return max(reach[0], other[0]), max(reach[1], other[1])


def stated_central_coefficients(k, lie):
    """
    Central coefficients of [L_k, T_{-k}(a,b)] as stated: (gamma_1 on K(ab), gamma_2 on K(a)K(b)).
    """
    cubic = Fraction(k ** 3 - k)
    gamma1 = -cubic / 6 * lie.dim + cubic / 12 * 2 * lie.dual_coxeter
    gamma2 = cubic / 12 * 2
    return gamma1, gamma2


def proof_central_coefficients(k, lie):
    """
    The intermediate coefficients (dim g - l)(k^3-k)/6 and l(k^3-k)/6 with l the rank.
    """
    cubic = Fraction(k ** 3 - k)
    return (lie.dim - lie.rank) * cubic / 6, lie.rank * cubic / 6


def vir_bracket_report(k, j, pairs, modules, progress=False):
    """
    Check [L_k, T_j(a,b)] = (j-k) T_{j+k}(a,b). When j + k = 0 the residual must act as a
    scalar gamma_1 K(ab) + gamma_2 K(a)K(b); the scalars are fitted across all modules and
    pairs and reported next to the stated values.
    """
    lie = modules[0].tau.lie
    reach = _vir_reach(k, j)
    checked = 0
    violations = []
    samples = []
    for m in modules:
        for a, b in pairs:
            for o, key, v in tqdm.tqdm(list(_basis_vectors(m, safe_offsets(m, reach))),
                                       disable=not progress, desc='[L_{}, T_{}]'.format(k, j)):
                checked += 1
                residual = _bracket_lhs(k, j, a, b, m, v)
                residual.iadd_scaled(-(j - k), t_apply(j + k, a, b, m, v))
                where = {'module': m.summary(), 'a': m.algebra.format_element(a),
                         'b': m.algebra.format_element(b), 'vector': m.format_key(key)}
                if j + k != 0:
                    if residual:
                        violations.append(dict(where, residual=m.format_vector(residual)))
                    continue
                value = residual.get(key, Fraction(0))
                if set(residual) - {key}:
                    violations.append(dict(where, reason='residual is not a multiple of the vector',
                                           residual=m.format_vector(residual)))
                    continue
                x = m.central_value(m.algebra.multiply(a, b))
                y = m.central_value(a) * m.central_value(b)
                samples.append((x, y, value, where))

    payload = {}
    if j + k == 0:
        stated = stated_central_coefficients(k, lie)
        payload['stated'] = [format_scalar(g) for g in stated]
        payload['proof_intermediate'] = [format_scalar(g) for g in proof_central_coefficients(k, lie)]
        rows = [SparseVec({0: x, 1: y}) for x, y, _, _ in samples]
        rhs = [value for _, _, value, _ in samples]
        solution, null = solve(rows, rhs, 2)
        if solution is None:
            violations.append({'reason': 'residual scalars are not of the form gamma_1 K(ab) + gamma_2 K(a)K(b)'})
            payload['measured'] = None
        else:
            measured = (solution.get(0, Fraction(0)), solution.get(1, Fraction(0)))
            payload['measured'] = [format_scalar(g) for g in measured]
            payload['determined'] = null.rank == 0
            payload['matches_stated'] = null.rank == 0 and measured == stated
    logger.info('[L_{}, T_{}]: {} checks, {} violations'.format(k, j, checked, len(violations)))
    return make_report('vir_bracket', {'k': k, 'j': j}, checked, violations, **payload)


def casimir_report(m, offsets=None):
    """
    Omega(1,1) acts on each affine-singular vector of weight Lambda by (Lambda, Lambda + 2 rho).
    Needs a module carrying psi (verma or irreducible).
    """
    lie = m.tau.lie
    lam, c, d0 = m.psi.on_unit(m.algebra)
    unit = m.algebra.unit
    checked = 0
    violations = []
    for o in (offsets if offsets is not None else m.offsets()):
        o = BiDegree(*o)
        space = singular_vectors(m, o, scope='affine')
        weight = (lam - 2 * o.p, c, d0 - o.q)
        expected = lie.casimir_value(*weight)
        for coords in space.rows:
            checked += 1
            w = m.vector(o, coords)
            image = omega_apply(unit, unit, m, w)
            if image != w.scaled(expected):
                violations.append({'offset': list(o), 'vector': m.format_vector(w),
                                   'expected': format_scalar(expected), 'image': m.format_vector(image)})
    return make_report('casimir', {'module': m.summary(), 'lam': format_scalar(lam), 'c': format_scalar(c),
                                   'd0': format_scalar(d0)}, checked, violations)


def localization_report(tensor):
    """
    On an evaluation tensor, Omega(e_i, e_i) acts as the Casimir of factor i in slot i.
    """
    checked = 0
    violations = []
    for i, (factor, point) in enumerate(zip(tensor.factors, tensor.point_maps)):
        e = _idempotent_for(tensor.algebra, point)
        unit = factor.algebra.unit
        for o in tensor.offsets():
            for key in tensor.basis(o):
                checked += 1
                image = omega_apply(e, e, tensor, SparseVec.unit(key))
                expected = SparseVec()
                for k, c in omega_apply(unit, unit, factor, SparseVec.unit(key[i])).items():
                    expected.add_entry((k, key[1]) if i == 0 else (key[0], k), c)
                if image != expected:
                    violations.append({'factor': i, 'vector': tensor.format_key(key),
                                       'image': tensor.format_vector(image),
                                       'expected': tensor.format_vector(expected)})
    return make_report('localization', {'module': tensor.summary()}, checked, violations)


def _idempotent_for(algebra, point):
    split = crt_split(algebra)
    for e, pm in zip(split.idempotents, split.point_maps):
        if pm == point:
            return e
    raise BadParams('no idempotent matches {}'.format(point))


def singular_generation(m, j_range, pairs):
    """
    T_j(a,b) applied to the highest-weight vector for each j and pair; nonzero images are
    checked against the affine raising generators.

    :return: list of dicts with j, pair, vector, offset and singular flag
    """
    v = m.highest_weight_vector()
    out = []
    for j in j_range:
        for a, b in pairs:
            w = t_apply(j, a, b, m, v)
            if not w:
                continue
            out.append({'j': j, 'pair': (a, b), 'vector': w, 'offset': BiDegree(0, -j),
                        'singular': is_singular(m, w, scope='affine')})
    return out
