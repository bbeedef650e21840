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
from collections import namedtuple
from fractions import Fraction

import logging
import numpy as np
import tqdm

from .comm_algebra import crt_split, preset, quotient, radical, zero_ideal, IdealBasis
from .exact_linear import SparseVec, SubspaceBasis, echelonize, kernel, scalar
from .exceptions import *
from .io_utils import format_scalar, make_report, parse_scalar
from .tau_algebra import BiDegree, TauAlgebra, TauSymbol, triangular_part, CENTRAL, CURRENT, MINUS, PLUS, VIR, ZERO

logger = logging.getLogger(__name__)


class PsiFunctional(object):
    """
    A linear functional on tau^0(A) = h(A) + K(A) + L_0(A), given by its values on
    h(a_k), K(a_k) and L_0(a_k) for each basis element a_k of A.
    """

    def __init__(self, h, K, L0):
        if not len(h) == len(K) == len(L0):
            raise BadParams('psi value lists differ in length: h={} K={} L0={}'.format(len(h), len(K), len(L0)))
        self.h = tuple(scalar(x) for x in h)
        self.K = tuple(scalar(x) for x in K)
        self.L0 = tuple(scalar(x) for x in L0)

    def __len__(self):
        return len(self.h)

    def __repr__(self):
        return 'PsiFunctional(h={}, K={}, L0={})'.format(*[[str(x) for x in v] for v in (self.h, self.K, self.L0)])

    @classmethod
    def from_unit(cls, algebra, lam, c, d0=0):
        """
        psi taking the given values on the unit and zero on the remaining basis elements.
        Only available when the unit of A is itself a basis vector.
        """
        unit = algebra.unit
        if len(unit) != 1 or list(unit.values())[0] != 1:
            raise BadParams('the unit of {} is not a basis vector, give psi on every basis element'.format(
                algebra.name))
        k = list(unit)[0]
        values = []
        for x in (lam, c, d0):
            row = [Fraction(0)] * algebra.dim
            row[k] = scalar(x)
            values.append(row)
        return cls(*values)

    @classmethod
    def from_spec(cls, spec, algebra, source=None):
        """
        :param spec: mapping with keys h, K, L0 (lists aligned with A's basis), or lam (also λ), c, d0
        """
        if not isinstance(spec, dict):
            raise InputError('psi', 'expected a mapping', source)
        if 'h' in spec:
            values = []
            for field in ('h', 'K', 'L0'):
                raw = spec.get(field, ['0'] * algebra.dim)
                if not isinstance(raw, list) or len(raw) != algebra.dim:
                    raise InputError('psi.{}'.format(field),
                                     'expected a list of {} rationals'.format(algebra.dim), source)
                values.append([parse_scalar(x, 'psi.{}[{}]'.format(field, i), source) for i, x in enumerate(raw)])
            return cls(*values)
        if 'λ' in spec:
            if 'lam' in spec:
                raise InputError('psi', 'give lam or λ, not both', source)
            spec = dict(spec)
            spec['lam'] = spec.pop('λ')
        unknown = set(spec) - {'lam', 'c', 'd0'}
        if unknown:
            raise InputError('psi', 'unknown keys {}'.format(sorted(unknown)), source)
        parsed = [parse_scalar(spec.get(k, 0), 'psi.{}'.format(k), source) for k in ('lam', 'c', 'd0')]
        return cls.from_unit(algebra, *parsed)

    def evaluate(self, part, a):
        """
        :param part: one of h, K, L0
        :param a: SparseVec in algebra coordinates
        """
        values = {'h': self.h, 'K': self.K, 'L0': self.L0}[part]
        return sum((c * values[k] for k, c in a.items()), Fraction(0))

    def value(self, symbol):
        if symbol.kind == CENTRAL:
            return self.K[symbol.a]
        elif symbol.kind == VIR and symbol.power == 0:
            return self.L0[symbol.a]
        elif symbol.kind == CURRENT and symbol.gen == 'h' and symbol.power == 0:
            return self.h[symbol.a]
        raise AssertionError('psi is only defined on tau^0, not on {}'.format(symbol))

    def on_unit(self, algebra):
        """
        :return: (lam, c, d0) = psi(h(1)), psi(K(1)), psi(L_0(1))
        """
        return tuple(self.evaluate(part, algebra.unit) for part in ('h', 'K', 'L0'))

    def to_dict(self):
        return {'h': [format_scalar(x) for x in self.h],
                'K': [format_scalar(x) for x in self.K],
                'L0': [format_scalar(x) for x in self.L0]}


def _raising_symbols(tau):
    out = []
    for k in range(tau.algebra.dim):
        out.extend([TauSymbol.current('X', 0, k), TauSymbol.current('Y', 1, k), TauSymbol.current('h', 1, k),
                    TauSymbol.vir(1, k), TauSymbol.vir(2, k)])
    return out


def raising_generators(tau, scope='tau'):
    """
    Finite generating sets of raising operators.

    :param tau: TauAlgebra
    :param scope: 'tau' for tau^+(A) (X, Y t, h t, L_1, L_2 on every basis label) or
        'affine' for the raising part of the affine algebra (X, Y t, h t with the unit)
    :return: list of TauElement
    """
    if scope == 'tau':
        return [SparseVec.unit(s) for s in _raising_symbols(tau)]
    elif scope == 'affine':
        return [tau.unit_lift(TauSymbol.current(g, m)) for g, m in (('X', 0), ('Y', 1), ('h', 1))]
    raise BadParams('unknown raising scope [{}]'.format(scope))


class GradedModule(object):
    """
    A highest-weight module truncated to a box of weight offsets.

    Offsets (p, q) are taken in simple-root coordinates k0 = q, k1 = p + q and the box
    (P, Q) holds 0 <= k0 <= Q, 0 <= k1 <= P. Module vectors are SparseVec keyed by basis
    keys, each key lying in a single offset.
    """
    kind = None

    def __init__(self, tau, box):
        P, Q = box
        if P < 0 or Q < 0:
            raise BadParams('box sizes must be non-negative, was {}'.format(box))
        self.tau = tau
        self.algebra = tau.algebra
        self.box = (int(P), int(Q))
        self._bases = {}
        self._indices = {}

    def __repr__(self):
        return '{}({}, box={})'.format(self.kind, self.tau, self.box)

    def in_box(self, offset):
        k0, k1 = BiDegree(*offset).simple_coordinates()
        P, Q = self.box
        return 0 <= k0 <= Q and 0 <= k1 <= P

    def fits(self, offset, degree):
        """
        True when offset + degree is in the box or carries no weight at all.
        """
        k0, k1 = (BiDegree(*offset) + degree).simple_coordinates()
        P, Q = self.box
        return k0 < 0 or k1 < 0 or (k0 <= Q and k1 <= P)

    def offsets(self):
        """
        Every offset in the box, by increasing height k0 + k1.
        """
        P, Q = self.box
        pairs = [(k0, k1) for k0 in range(Q + 1) for k1 in range(P + 1)]
        pairs.sort(key=lambda k: (k[0] + k[1], k[0]))
        return [BiDegree.from_simple(k0, k1) for k0, k1 in pairs]

    def target(self, offset, symbol):
        """
        Offset reached by applying symbol at offset.

        :return: BiDegree, or None when no weight exists there (the result is zero)
        :raises TruncationError: when the target lies beyond the box
        """
        t = BiDegree(*offset) + symbol.degree()
        k0, k1 = t.simple_coordinates()
        if k0 < 0 or k1 < 0:
            return None
        P, Q = self.box
        if k0 > Q or k1 > P:
            raise TruncationError(symbol.label(self.algebra.labels), tuple(t), self.box)
        return t

    def basis(self, offset):
        offset = BiDegree(*offset)
        if not self.in_box(offset):
            raise BoxTooSmall(tuple(offset), self.box)
        b = self._bases.get(offset)
        if b is None:
            b = self._build_basis(offset)
            self._bases[offset] = b
        return b

    def index_of(self, offset):
        offset = BiDegree(*offset)
        idx = self._indices.get(offset)
        if idx is None:
            idx = {k: i for i, k in enumerate(self.basis(offset))}
            self._indices[offset] = idx
        return idx

    def dim(self, offset):
        return len(self.basis(offset))

    def dims(self):
        return {o: self.dim(o) for o in self.offsets()}

    def highest_weight_vector(self):
        raise NotImplementedError()

    def offset_of(self, key):
        raise NotImplementedError()

    def act_symbol(self, symbol, key):
        raise NotImplementedError()

    def central_value(self, a):
        """
        Scalar by which K(a) acts.
        """
        raise NotImplementedError()

    def _build_basis(self, offset):
        raise NotImplementedError()

    def act(self, u, v):
        """
        Exact action of a TauElement on a module vector.
        """
        out = SparseVec()
        for s, cs in u.items():
            for key, cv in v.items():
                out.iadd_scaled(cs * cv, self.act_symbol(s, key))
        return out

    def apply(self, symbol, v):
        return self.act(SparseVec.unit(symbol), v)

    def coordinates(self, v, offset):
        """
        :return: SparseVec over basis indices at offset
        """
        idx = self.index_of(offset)
        try:
            return SparseVec((idx[k], c) for k, c in v.items())
        except KeyError as ex:
            raise BadParams('vector has a component {} outside offset {}'.format(ex, tuple(offset)))

    def vector(self, offset, coords):
        basis = self.basis(offset)
        return SparseVec((basis[i], c) for i, c in coords.items())

    def depth(self, v):
        """
        Largest q among the keys of v.
        """
        return max((self.offset_of(k).q for k in v), default=0)

    def format_key(self, key):
        raise NotImplementedError()

    def format_vector(self, v):
        if not v:
            return '0'
        parts = []
        for key in sorted(v, key=self._sort_key):
            c = v[key]
            term = self.format_key(key)
            if abs(c) != 1:
                term = '{}*{}'.format(abs(c), term)
            if not parts:
                parts.append(term if c > 0 else '-' + term)
            else:
                parts.append(('+ ' if c > 0 else '- ') + term)
        return ' '.join(parts)

    def _sort_key(self, key):
        o = self.offset_of(key)
        return o.simple_coordinates(), self.index_of(o).get(key, -1)

    def summary(self):
        return {'kind': self.kind, 'algebra': self.algebra.name, 'cocycle': self.tau.cocycle,
                'box': list(self.box)}


def _monomial_key(mon):
    return tuple(s.pbw_key() for s in mon)


class VermaModule(GradedModule):
    """
    M(psi) with the PBW basis of ordered monomials in lowering symbols applied to v.
    Symbols act by rewriting to normal order with the bracket of tau(A).
    """
    kind = 'verma'

    def __init__(self, psi, tau, box):
        super(VermaModule, self).__init__(tau, box)
        if len(psi) != self.algebra.dim:
            raise BadParams('psi has {} values per part, algebra {} has dimension {}'.format(
                len(psi), self.algebra.name, self.algebra.dim))
        self.psi = psi
        P, Q = self.box
        lowering = []
        for a in range(self.algebra.dim):
            for m in range(Q + 1):
                candidates = [TauSymbol.current(g, -m, a) for g in tau.lie.basis] + [TauSymbol.vir(-m, a)]
                for s in candidates:
                    if triangular_part(s) != MINUS:
                        continue
                    k0, k1 = s.degree().simple_coordinates()
                    if k0 <= Q and k1 <= P:
                        lowering.append(s)
        self.lowering = sorted(lowering, key=TauSymbol.pbw_key)
        self._kdeg = {s: s.degree().simple_coordinates() for s in self.lowering}
        self._offsets = {(): BiDegree(0, 0)}
        self._memo = {}
        logger.debug('verma module over {} with {} lowering symbols in box {}'.format(
            self.algebra.name, len(self.lowering), self.box))

    def highest_weight_vector(self):
        return SparseVec.unit(())

    def central_value(self, a):
        return self.psi.evaluate('K', a)

    def offset_of(self, key):
        o = self._offsets.get(key)
        if o is None:
            o = BiDegree(0, 0)
            for s in key:
                o = o + s.degree()
            self._offsets[key] = o
        return o

    def _build_basis(self, offset):
        k0, k1 = offset.simple_coordinates()
        found = []
        prefix = []

        def extend(start, r0, r1):
            if r0 == 0 and r1 == 0:
                found.append(tuple(prefix))
                return
            for i in range(start, len(self.lowering)):
                s = self.lowering[i]
                d0, d1 = self._kdeg[s]
                if d0 <= r0 and d1 <= r1:
                    prefix.append(s)
                    extend(i, r0 - d0, r1 - d1)
                    prefix.pop()

        extend(0, k0, k1)
        found.sort(key=_monomial_key)
        return found

    def act_symbol(self, symbol, key):
        memo_key = (symbol, key)
        out = self._memo.get(memo_key)
        if out is not None:
            return out
        if self.target(self.offset_of(key), symbol) is None:
            out = SparseVec()
        else:
            out = self._rewrite(symbol, key)
        self._memo[memo_key] = out
        return out

    def _rewrite(self, s, mon):
        part = triangular_part(s)
        if not mon:
            if part == PLUS:
                return SparseVec()
            elif part == ZERO:
                return SparseVec({(): self.psi.value(s)})
            return SparseVec.unit((s,))

        first, rest = mon[0], mon[1:]
        if part == MINUS and s.pbw_key() <= first.pbw_key():
            return SparseVec.unit((s,) + mon)

        # s f rest = f (s rest) + [s, f] rest
        out = SparseVec()
        for key, c in self.act_symbol(s, rest).items():
            out.iadd_scaled(c, self.act_symbol(first, key))
        for t, c in self.tau.bracket_symbols(s, first).items():
            out.iadd_scaled(c, self.act_symbol(t, rest))
        return out

    def format_key(self, key):
        labels = self.algebra.labels
        return ' '.join([s.label(labels) for s in key] + ['v'])


class IrreducibleModule(GradedModule):
    """
    V(psi) = M(psi)/J with J the maximal proper graded submodule, computed offset by
    offset: J at (0,0) is zero and J at any other offset is the set of vectors sent into
    J by every raising generator. Basis keys are the Verma monomials off the pivots of J.
    """
    kind = 'irreducible'

    def __init__(self, verma):
        super(IrreducibleModule, self).__init__(verma.tau, verma.box)
        self.verma = verma
        self.psi = verma.psi
        self._submodule = {}
        self._memo = {}
        self._raising = _raising_symbols(self.tau)

    def highest_weight_vector(self):
        return SparseVec.unit(())

    def central_value(self, a):
        return self.psi.evaluate('K', a)

    def offset_of(self, key):
        return self.verma.offset_of(key)

    def submodule(self, offset):
        """
        J at offset, as a subspace of the Verma coordinates there.
        """
        offset = BiDegree(*offset)
        J = self._submodule.get(offset)
        if J is not None:
            return J
        vbasis = self.verma.basis(offset)
        if offset == (0, 0):
            J = SubspaceBasis(len(vbasis), (), ())
        else:
            rows = {}
            for g in self._raising:
                t = self.target(offset, g)
                if t is None:
                    continue
                for i, mon in enumerate(vbasis):
                    image = self._reduce(self.verma.act_symbol(g, mon), t)
                    for j, c in image.items():
                        rows.setdefault((g, j), SparseVec())[i] = c
            J = kernel(list(rows.values()), len(vbasis))
        logger.debug('offset {}: verma dim {}, submodule dim {}'.format(tuple(offset), len(vbasis), J.rank))
        self._submodule[offset] = J
        return J

    def _reduce(self, vec, offset):
        coords = self.verma.coordinates(vec, offset)
        remainder, _ = self.submodule(offset).reduce(coords)
        return remainder

    def _build_basis(self, offset):
        pivots = set(self.submodule(offset).pivots)
        return [mon for i, mon in enumerate(self.verma.basis(offset)) if i not in pivots]

    def act_symbol(self, symbol, key):
        memo_key = (symbol, key)
        out = self._memo.get(memo_key)
        if out is not None:
            return out
        target = self.target(self.offset_of(key), symbol)
        if target is None:
            out = SparseVec()
        else:
            remainder = self._reduce(self.verma.act_symbol(symbol, key), target)
            out = self.verma.vector(target, remainder)
        self._memo[memo_key] = out
        return out

    def format_key(self, key):
        return self.verma.format_key(key)


class EvaluationTensor(GradedModule):
    """
    V(psi_1) (x) V(psi_2) as a tau(A)-module for A with two point evaluations: a symbol
    with label a acts as point_1(a) on the first factor plus point_2(a) on the second.
    """
    kind = 'evaluation_tensor'

    def __init__(self, factors, point_maps, tau, box):
        super(EvaluationTensor, self).__init__(tau, box)
        self.factors = tuple(factors)
        self.point_maps = tuple(point_maps)
        self._memo = {}

    def highest_weight_vector(self):
        return SparseVec.unit(((), ()))

    def central_value(self, a):
        total = Fraction(0)
        for f, point in zip(self.factors, self.point_maps):
            total += point(a) * f.central_value(f.algebra.unit)
        return total

    def offset_of(self, key):
        k1, k2 = key
        return self.factors[0].offset_of(k1) + self.factors[1].offset_of(k2)

    def _build_basis(self, offset):
        first, second = self.factors
        out = []
        for o1 in first.offsets():
            o2 = BiDegree(offset.p - o1.p, offset.q - o1.q)
            if not second.in_box(o2):
                continue
            for k1 in first.basis(o1):
                for k2 in second.basis(o2):
                    out.append((k1, k2))
        return out

    def act_symbol(self, symbol, key):
        memo_key = (symbol, key)
        out = self._memo.get(memo_key)
        if out is not None:
            return out
        out = SparseVec()
        if self.target(self.offset_of(key), symbol) is not None:
            local = symbol.with_label(0)
            k1, k2 = key
            c1 = self.point_maps[0].values[symbol.a]
            c2 = self.point_maps[1].values[symbol.a]
            if c1:
                for k, c in self.factors[0].act_symbol(local, k1).items():
                    out.add_entry((k, k2), c1 * c)
            if c2:
                for k, c in self.factors[1].act_symbol(local, k2).items():
                    out.add_entry((k1, k), c2 * c)
        self._memo[memo_key] = out
        return out

    def format_key(self, key):
        k1, k2 = key
        return '({}) (x) ({})'.format(self.factors[0].format_key(k1), self.factors[1].format_key(k2))

    def summary(self):
        out = super(EvaluationTensor, self).summary()
        out['points'] = [format_scalar(p.values[1]) for p in self.point_maps]
        return out


def verma(psi, algebra, box, cocycle='standard'):
    return VermaModule(psi, TauAlgebra(algebra, cocycle), box)


def irreducible(psi, algebra, box, cocycle='standard'):
    return IrreducibleModule(verma(psi, algebra, box, cocycle))


def evaluation_tensor(psi1, psi2, z1, z2, box, cocycle='standard'):
    """
    The tau(points({z1, z2}))-module V(psi_1) (x) V(psi_2) with evaluation at z1 and z2.

    :param psi1: PsiFunctional over the scalar algebra
    :param psi2: PsiFunctional over the scalar algebra
    """
    z1, z2 = scalar(z1), scalar(z2)
    if z1 == z2 or z1 == 0 or z2 == 0:
        raise BadParams('evaluation points must be distinct and nonzero, were {} and {}'.format(z1, z2))
    algebra = preset('points', [z1, z2])
    split = crt_split(algebra)
    # the points algebra has basis 1, t so a point map is determined by its value on t
    point_maps = [next(pm for pm in split.point_maps if pm.values[1] == z) for z in (z1, z2)]
    base = preset('scalar')
    factors = [irreducible(psi, base, box, cocycle) for psi in (psi1, psi2)]
    return EvaluationTensor(factors, point_maps, TauAlgebra(algebra, cocycle), box)


def _image_rows(m, generators, offset):
    rows = {}
    for gi, g in enumerate(generators):
        for i, key in enumerate(m.basis(offset)):
            for out_key, c in m.act(g, SparseVec.unit(key)).items():
                rows.setdefault((gi, out_key), SparseVec())[i] = c
    return list(rows.values())


def singular_vectors(m, offset, scope='tau'):
    """
    Vectors at offset killed by every raising generator.

    :return: SubspaceBasis over the basis indices of m at offset
    """
    offset = BiDegree(*offset)
    basis = m.basis(offset)
    return kernel(_image_rows(m, raising_generators(m.tau, scope), offset), len(basis))


def is_singular(m, v, scope='tau'):
    return all(not m.act(g, v) for g in raising_generators(m.tau, scope))


NilpotencyResult = namedtuple('NilpotencyResult', ['nilpotent', 'N', 'vector'])


def nilpotency_probe(m, gen, power, a, v, nmax):
    """
    Least N <= nmax with x(a)^N v = 0 for a real root vector x = gen(t^power).

    :return: NilpotencyResult, vector holds the last surviving image on failure
    """
    if gen not in m.tau.lie.root_of or m.tau.lie.root_of[gen] == 0:
        raise BadParams('[{}] is not a real root vector'.format(gen))
    x = m.tau.lift(TauSymbol.current(gen, power), a)
    w = SparseVec(v)
    if not w:
        return NilpotencyResult(True, 0, w)
    for n in range(1, nmax + 1):
        image = m.act(x, w)
        if not image:
            return NilpotencyResult(True, n, image)
        w = image
    return NilpotencyResult(False, None, w)


def check_module_axiom(m, u1, u2, v):
    """
    u1(u2 v) - u2(u1 v) - [u1,u2] v, which is zero in a module.
    """
    out = m.act(u1, m.act(u2, v))
    out.iadd_scaled(-1, m.act(u2, m.act(u1, v)))
    out.iadd_scaled(-1, m.act(m.tau.bracket(u1, u2), v))
    return out


def _generator_families(tau, window):
    lo, hi = window
    out = []
    for m in range(lo, hi + 1):
        out.extend(TauSymbol.current(g, m) for g in tau.lie.basis)
        out.append(TauSymbol.vir(m))
    out.append(TauSymbol.central())
    return out


def check_cofinite_annihilation(psi, algebra, ideal, box, cocycle='standard', window=(-2, 2), progress=False):
    """
    Check that every generator tensored with an element of the ideal acts as zero on
    V(psi) inside the box, after checking that psi kills h (x) I, K (x) I and L_0 (x) I.
    """
    params = {'algebra': algebra.name, 'ideal_rank': ideal.rank, 'box': list(box), 'cocycle': cocycle,
              'window': list(window), 'psi': psi.to_dict()}
    failing = [{'part': part, 'ideal_row': i, 'value': format_scalar(psi.evaluate(part, row))}
               for i, row in enumerate(ideal.rows) for part in ('h', 'K', 'L0') if psi.evaluate(part, row)]
    if failing:
        logger.info('annihilation: psi does not vanish on tau^0(I), nothing to check')
        return make_report('cofinite_annihilation', params, 0, [], hypothesis=False, hypothesis_failures=failing)

    module = irreducible(psi, algebra, box, cocycle)
    tau = module.tau
    elements = []
    for s in _generator_families(tau, window):
        for row in ideal.rows:
            elements.append((s, row, tau.lift(s, row)))

    checked = 0
    violations = []
    for offset in tqdm.tqdm(module.offsets(), disable=not progress, desc='annihilation'):
        for key in module.basis(offset):
            v = SparseVec.unit(key)
            for s, row, u in elements:
                if not module.fits(offset, s.degree()):
                    continue
                checked += 1
                image = module.act(u, v)
                if image:
                    violations.append({'generator': s.label(['I']), 'ideal_element': algebra.format_element(row),
                                       'vector': module.format_key(key), 'image': module.format_vector(image)})
    logger.info('annihilation: {} checks, {} violations'.format(checked, len(violations)))
    return make_report('cofinite_annihilation', params, checked, violations, hypothesis=True,
                       dims={str(tuple(o)): d for o, d in module.dims().items()})


def annihilating_ideal(m, window=(-2, 2)):
    """
    The largest ideal I of A such that every generator with a label in I acts as zero on
    the box slice of m.
    """
    n = m.algebra.dim
    rows = {}
    for fam in _generator_families(m.tau, window):
        for offset in m.offsets():
            if not m.fits(offset, fam.degree()):
                continue
            for key in m.basis(offset):
                for k in range(n):
                    for out_key, c in m.act_symbol(fam.with_label(k), key).items():
                        rows.setdefault((fam, key, out_key), SparseVec())[k] = c
    # a in I iff e_i a satisfies every row, for all i
    closed = []
    for r in rows.values():
        for i in range(n):
            row = SparseVec()
            for j in range(n):
                row.add_entry(j, r.dot(m.algebra.product(i, j)))
            closed.append(row)
    return IdealBasis(m.algebra, kernel(closed, n))


def _nonneg_int(x):
    return x.denominator == 1 and x >= 0


def dominant_integral(psi, algebra):
    """
    Decide dominant integrality of psi: psi must vanish on h~ (x) rad(0) and every CRT
    component of A/rad(0) must have lam_i and c_i - lam_i non-negative integers.

    :return: (verdict, witness mapping)
    :raises SplitFieldRequired: when A/rad(0) does not split over Q
    """
    nil = radical(zero_ideal(algebra))
    witness = {'radical_rank': nil.rank, 'components': [], 'failures': []}
    bad = [algebra.format_element(row) for row in nil.rows
           if psi.evaluate('h', row) or psi.evaluate('K', row)]
    if bad:
        witness['failures'].append({'reason': 'psi does not vanish on h~ (x) rad(0)', 'elements': bad})
        return False, witness

    reduced, projection = quotient(algebra, nil)
    split = crt_split(reduced)
    for i, e in enumerate(split.idempotents):
        lifted = projection.lift(e)
        lam = psi.evaluate('h', lifted)
        c = psi.evaluate('K', lifted)
        ok = _nonneg_int(lam) and _nonneg_int(c - lam)
        component = {'index': i, 'idempotent': algebra.format_element(lifted),
                     'lam': format_scalar(lam), 'c': format_scalar(c), 'dominant': ok}
        witness['components'].append(component)
        if not ok:
            witness['failures'].append(component)
    return not witness['failures'], witness


def pbw_dimension_oracle(algebra, box):
    """
    Verma dimensions by the product formula prod 1/(1 - x^k0 y^k1) over lowering symbol
    types, one factor per algebra basis element, truncated to the box.

    :return: dict BiDegree -> int
    """
    P, Q = box
    table = np.zeros((Q + 1, P + 1), dtype=np.int64)
    table[0, 0] = 1
    kdegs = []
    for m in range(Q + 1):
        kdegs.append((m, m + 1))
        if m >= 1:
            kdegs.extend([(m, m - 1), (m, m), (m, m)])
    kdegs = [d for d in kdegs if d[0] <= Q and d[1] <= P] * algebra.dim
    for d0, d1 in kdegs:
        if d0 > 0:
            for k0 in range(d0, Q + 1):
                table[k0, d1:] += table[k0 - d0, :P + 1 - d1]
        else:
            for k1 in range(d1, P + 1):
                table[:, k1] += table[:, k1 - d1]
    return {BiDegree.from_simple(k0, k1): int(table[k0, k1]) for k0 in range(Q + 1) for k1 in range(P + 1)}


def format_dimension_table(dims, box):
    """
    Aligned grid with a row per q and a column per p; '.' marks offsets outside the box.
    """
    P, Q = box
    columns = list(range(-Q, P + 1))
    width = max([len(str(d)) for d in dims.values()] + [len(str(p)) for p in columns] + [1])
    lines = ['q\\p ' + ' '.join(str(p).rjust(width) for p in columns)]
    for q in range(Q + 1):
        cells = []
        for p in columns:
            d = dims.get(BiDegree(p, q))
            cells.append(('.' if d is None else str(d)).rjust(width))
        lines.append(str(q).rjust(3) + ' ' + ' '.join(cells))
    return '\n'.join(lines)
