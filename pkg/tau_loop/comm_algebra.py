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

import sympy as sp

from .exact_linear import SparseVec, SubspaceBasis, echelonize, kernel, scalar
from .exceptions import *
from .io_utils import parse_scalar_list

logger = logging.getLogger(__name__)


def _from_sympy(value):
    value = sp.Rational(value)
    return Fraction(int(value.p), int(value.q))


def _monomial_label(k):
    if k == 0:
        return '1'
    elif k == 1:
        return 't'
    return 't^{}'.format(k)


class CommAlgebra(object):
    """
    A finite-dimensional commutative associative unital algebra over Q, held as a
    structure tensor: mult[(i, j)] is the expansion of e_i * e_j in the basis.
    Missing table entries are zero products.
    """

    def __init__(self, dim, mult, unit, labels=None, name=None):
        """
        :param dim: dimension n
        :param mult: dict (i, j) -> SparseVec (or coefficient mapping) for e_i * e_j
        :param unit: coordinates of 1
        :param labels: display strings for the basis, default a0..a(n-1)
        :param name: display name
        """
        if dim < 1:
            raise BadParams('algebra dimension must be positive, was {}'.format(dim))
        self.dim = dim
        self.labels = list(labels) if labels is not None else ['a{}'.format(i) for i in range(dim)]
        if len(self.labels) != dim:
            raise BadParams('expected {} basis labels, found {}'.format(dim, len(self.labels)))
        self.mult = {}
        for (i, j), v in mult.items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise IndexOutOfRange(max(i, j), dim)
            v = SparseVec(v)
            if v:
                self.mult[i, j] = v
        self.unit = SparseVec(unit)
        self.name = name if name is not None else 'algebra(dim={})'.format(dim)

    def __repr__(self):
        return self.name

    def basis_element(self, i):
        if not 0 <= i < self.dim:
            raise IndexOutOfRange(i, self.dim)
        return SparseVec.unit(i)

    def element(self, coeffs):
        """
        :param coeffs: sequence of length dim
        :return: SparseVec of the given coordinates
        """
        if len(coeffs) != self.dim:
            raise BadParams('expected {} coordinates, found {}'.format(self.dim, len(coeffs)))
        return SparseVec(enumerate(scalar(c) for c in coeffs))

    def product(self, i, j):
        v = self.mult.get((i, j))
        return v if v is not None else SparseVec()

    def multiply(self, x, y):
        out = SparseVec()
        for i, xi in x.items():
            for j, yj in y.items():
                out.iadd_scaled(xi * yj, self.product(i, j))
        return out

    def power(self, x, n):
        out = SparseVec(self.unit)
        for _ in range(n):
            out = self.multiply(out, x)
        return out

    def mult_columns(self, x):
        """
        :return: list of SparseVec, column j is x * e_j
        """
        return [self.multiply(x, SparseVec.unit(j)) for j in range(self.dim)]

    def trace(self, x):
        """
        Trace of multiplication by x.
        """
        total = Fraction(0)
        for j, col in enumerate(self.mult_columns(x)):
            total += col.get(j, 0)
        return total

    def format_element(self, x):
        if not x:
            return '0'
        parts = []
        for i in sorted(x):
            c = x[i]
            label = self.labels[i]
            if label == '1':
                term = str(abs(c))
            elif abs(c) == 1:
                term = label
            else:
                term = '{}*{}'.format(abs(c), label)
            if not parts:
                parts.append(term if c > 0 else '-' + term)
            else:
                parts.append(('+ ' if c > 0 else '- ') + term)
        return ' '.join(parts)


def validate(algebra):
    """
    Check commutativity, associativity and the unit law on all basis pairs/triples.

    :param algebra: CommAlgebra
    :return: report dict with per-law verdicts and every violated tuple
    """
    n = algebra.dim
    violations = []
    for i, j in itertools.combinations(range(n), 2):
        if algebra.product(i, j) != algebra.product(j, i):
            violations.append({'law': 'commutativity', 'indices': [i, j]})
    for i, j, k in itertools.product(range(n), repeat=3):
        left = algebra.multiply(algebra.product(i, j), SparseVec.unit(k))
        right = algebra.multiply(SparseVec.unit(i), algebra.product(j, k))
        if left != right:
            violations.append({'law': 'associativity', 'indices': [i, j, k]})
    for i in range(n):
        ei = SparseVec.unit(i)
        if algebra.multiply(algebra.unit, ei) != ei or algebra.multiply(ei, algebra.unit) != ei:
            violations.append({'law': 'unit', 'indices': [i]})
    laws = {law: not any(v['law'] == law for v in violations)
            for law in ('commutativity', 'associativity', 'unit')}
    return {'algebra': algebra.name, 'dim': n, 'laws': laws,
            'valid': not violations, 'violations': violations}


class IdealBasis(object):
    """
    An ideal of a CommAlgebra, as an echelonized subspace of its coordinates.
    """

    def __init__(self, ambient, space):
        self.ambient = ambient
        self.space = space

    @property
    def rank(self):
        return self.space.rank

    @property
    def rows(self):
        return self.space.rows

    def __contains__(self, x):
        return x in self.space

    def __eq__(self, other):
        if not isinstance(other, IdealBasis):
            return NotImplemented
        return self.ambient is other.ambient and self.space == other.space

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def is_proper(self):
        return self.rank < self.ambient.dim

    def __repr__(self):
        return 'IdealBasis({}, rank={})'.format(self.ambient.name, self.rank)


def _closure_violation(algebra, space):
    for row_index, row in enumerate(space.rows):
        for i in range(algebra.dim):
            if algebra.multiply(SparseVec.unit(i), row) not in space:
                return i, row_index
    return None


def ideal_from_span(algebra, vectors):
    """
    :raises NotAnIdeal: when the span is not closed under multiplication by A
    """
    space = echelonize(vectors, algebra.dim)
    witness = _closure_violation(algebra, space)
    if witness is not None:
        raise NotAnIdeal(*witness)
    return IdealBasis(algebra, space)


def ideal_generated(algebra, generators):
    """
    The ideal A*g_1 + ... + A*g_r.
    """
    products = [algebra.multiply(SparseVec.unit(i), g) for g in generators for i in range(algebra.dim)]
    return IdealBasis(algebra, echelonize(products, algebra.dim))


def zero_ideal(algebra):
    return IdealBasis(algebra, SubspaceBasis(algebra.dim, (), ()))


def whole_ideal(algebra):
    return ideal_generated(algebra, [algebra.unit])


def _same_ambient(first, second):
    if first.ambient is not second.ambient:
        raise AmbientMismatch(first.ambient, second.ambient)


def ideal_product(first, second):
    """
    Span of all products of basis elements of two ideals.
    """
    _same_ambient(first, second)
    algebra = first.ambient
    products = [algebra.multiply(x, y) for x in first.rows for y in second.rows]
    return IdealBasis(algebra, echelonize(products, algebra.dim))


def ideal_sum(first, second):
    _same_ambient(first, second)
    return IdealBasis(first.ambient, echelonize(list(first.rows) + list(second.rows), first.ambient.dim))


def ideal_intersection(first, second):
    """
    Intersection via the annihilator of the second ideal: x in J iff c.x = 0 for
    every c in the null space of J's rows.
    """
    _same_ambient(first, second)
    n = first.ambient.dim
    annihilator = kernel(second.rows, n).rows
    constraints = []
    for c in annihilator:
        constraints.append(SparseVec((i, c.dot(row)) for i, row in enumerate(first.rows)))
    combos = kernel(constraints, first.rank)
    vectors = []
    for combo in combos.rows:
        v = SparseVec()
        for i, coef in combo.items():
            v.iadd_scaled(coef, first.rows[i])
        vectors.append(v)
    return IdealBasis(first.ambient, echelonize(vectors, n))


class QuotientMap(object):
    """
    Projection A -> A/I. The quotient basis is the set of non-pivot basis elements of
    A; lift embeds quotient coordinates back along that complement.
    """

    def __init__(self, source, target, ideal, kept):
        self.source = source
        self.target = target
        self.ideal = ideal
        self.kept = tuple(kept)
        self._position = {k: n for n, k in enumerate(self.kept)}

    def __call__(self, x):
        remainder, _ = self.ideal.space.reduce(x)
        return SparseVec((self._position[k], v) for k, v in remainder.items())

    def lift(self, y):
        return SparseVec((self.kept[n], v) for n, v in y.items())


def quotient(algebra, ideal):
    """
    :return: (A/I, projection)
    :raises ImproperIdeal: when I = A
    """
    if ideal.ambient is not algebra:
        raise AmbientMismatch(algebra, ideal.ambient)
    if not ideal.is_proper():
        raise ImproperIdeal()
    pivots = set(ideal.space.pivots)
    kept = [k for k in range(algebra.dim) if k not in pivots]
    position = {k: n for n, k in enumerate(kept)}

    def project(x):
        remainder, _ = ideal.space.reduce(x)
        return SparseVec((position[k], v) for k, v in remainder.items())

    mult = {}
    for (n1, k1), (n2, k2) in itertools.product(enumerate(kept), repeat=2):
        mult[n1, n2] = project(algebra.product(k1, k2))

    name = algebra.name if ideal.rank == 0 else '{}/I{}'.format(algebra.name, ideal.rank)
    target = CommAlgebra(len(kept), mult, project(algebra.unit),
                         labels=[algebra.labels[k] for k in kept], name=name)
    return target, QuotientMap(algebra, target, ideal, kept)


def trace_form(algebra):
    """
    Gram matrix rows of (x, y) -> trace(L_xy) on the basis.
    """
    rows = []
    for i in range(algebra.dim):
        rows.append(SparseVec((j, algebra.trace(algebra.product(i, j))) for j in range(algebra.dim)))
    return rows


def radical(ideal):
    """
    The radical of I: preimage of the nilradical of A/I, the latter being the kernel
    of the trace form (valid in characteristic zero).
    """
    algebra = ideal.ambient
    witness = _closure_violation(algebra, ideal.space)
    if witness is not None:
        raise NotAnIdeal(*witness)
    if not ideal.is_proper():
        return ideal

    reduced, projection = quotient(algebra, ideal)
    nil = kernel(trace_form(reduced), reduced.dim)
    logger.debug('nilradical of {} has dimension {}'.format(reduced.name, nil.rank))
    vectors = list(ideal.rows) + [projection.lift(row) for row in nil.rows]
    return IdealBasis(algebra, echelonize(vectors, algebra.dim))


class PointMap(object):
    """
    A unital algebra morphism A -> Q, stored as its values on the basis.
    """

    def __init__(self, values):
        self.values = tuple(values)

    def __call__(self, x):
        return sum((v * self.values[k] for k, v in x.items()), Fraction(0))

    def __eq__(self, other):
        return isinstance(other, PointMap) and self.values == other.values

    def __repr__(self):
        return 'PointMap({})'.format([str(v) for v in self.values])


class CrtSplit(object):
    """
    Primitive idempotents e_1..e_k of a split semisimple algebra and the matching
    evaluations, so that x = sum_i point_i(x) e_i.
    """

    def __init__(self, algebra, idempotents, point_maps, separator):
        self.algebra = algebra
        self.idempotents = list(idempotents)
        self.point_maps = list(point_maps)
        self.separator = separator

    def __len__(self):
        return len(self.idempotents)

    def components(self, x):
        return [p(x) for p in self.point_maps]


def _separator_candidates(algebra):
    # basis elements first, then the combinations sum_i s^i e_i
    n = algebra.dim
    for i in range(n):
        yield SparseVec.unit(i)
    for s in range(2, n ** 3 + n + 3):
        yield SparseVec((i, Fraction(s) ** i) for i in range(n))


def _split_roots(algebra, x):
    lam = sp.Symbol('lam')
    matrix = sp.Matrix(algebra.dim, algebra.dim,
                       lambda i, j: sp.Rational(algebra.multiply(x, SparseVec.unit(j)).get(i, 0)))
    charpoly = matrix.charpoly(lam)
    _, factors = charpoly.factor_list()
    roots = set()
    for factor, _ in factors:
        if factor.degree() > 1:
            raise SplitFieldRequired(algebra.format_element(x), factor.as_expr())
        a, b = factor.all_coeffs()
        roots.add(_from_sympy(-b / a))
    return sorted(roots)


def crt_split(algebra):
    """
    Primitive idempotents of a semisimple Q-split algebra, found by searching a fixed
    sequence of elements for one whose multiplication operator has dim A distinct
    rational eigenvalues; the idempotents are then Lagrange polynomials in it.

    :raises NotSemisimple: nonzero nilradical
    :raises SplitFieldRequired: a characteristic polynomial has an irreducible factor of degree > 1
    """
    nil = radical(zero_ideal(algebra))
    if nil.rank:
        raise NotSemisimple(nil.rank)

    n = algebra.dim
    for x in _separator_candidates(algebra):
        roots = _split_roots(algebra, x)
        if len(roots) == n:
            break
    else:
        raise TauLoopException('no separating element found for {}'.format(algebra.name))

    idempotents = []
    for r in roots:
        e = SparseVec(algebra.unit)
        for s in roots:
            if s == r:
                continue
            factor = SparseVec(x).iadd_scaled(-s, algebra.unit).scaled(1 / (r - s))
            e = algebra.multiply(e, factor)
        idempotents.append(e)

    point_maps = []
    for e in idempotents:
        p = min(e)
        values = []
        for k in range(n):
            values.append(algebra.multiply(SparseVec.unit(k), e).get(p, 0) / e[p])
        point_maps.append(PointMap(values))
    logger.debug('{} splits along {}'.format(algebra.name, algebra.format_element(x)))
    return CrtSplit(algebra, idempotents, point_maps, x)


def maximal_ideals(algebra):
    """
    Kernels M_i of the point maps of a split semisimple algebra.
    """
    split = crt_split(algebra)
    out = []
    for i in range(len(split)):
        others = [e for k, e in enumerate(split.idempotents) if k != i]
        out.append(IdealBasis(algebra, echelonize(others, algebra.dim)))
    return out


def _poly_algebra(coeffs, name):
    """
    Q[t]/(p) with basis 1, t, .., t^(d-1).

    :param coeffs: ascending coefficients of p
    """
    coeffs = [scalar(c) for c in coeffs]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    degree = len(coeffs) - 1
    if degree < 1:
        raise BadParams('polynomial must have degree at least 1')
    t = sp.Symbol('t')
    modulus = sp.Poly(list(reversed([sp.Rational(c.numerator, c.denominator) for c in coeffs])), t, domain='QQ')

    mult = {}
    for i, j in itertools.product(range(degree), repeat=2):
        rem = sp.Poly(t ** (i + j), t, domain='QQ').rem(modulus)
        mult[i, j] = SparseVec((k, _from_sympy(c)) for (k,), c in rem.terms())
    return CommAlgebra(degree, mult, SparseVec.unit(0),
                       labels=[_monomial_label(k) for k in range(degree)], name=name)


def _scalar_algebra():
    return CommAlgebra(1, {(0, 0): SparseVec.unit(0)}, SparseVec.unit(0), labels=['1'], name='scalar')


def _jet(N):
    N = int(N)
    if N < 1:
        raise BadParams('jet order must be positive, was {}'.format(N))
    mult = {(i, j): SparseVec.unit(i + j) for i in range(N) for j in range(N) if i + j < N}
    return CommAlgebra(N, mult, SparseVec.unit(0),
                       labels=[_monomial_label(k) for k in range(N)], name='jet({})'.format(N))


def _points(zs):
    zs = [scalar(z) for z in zs]
    if not zs:
        raise BadParams('at least one point is required')
    if len(set(zs)) != len(zs):
        raise BadParams('points must be distinct: {}'.format([str(z) for z in zs]))
    if any(z == 0 for z in zs):
        raise BadParams('points must be nonzero for a Laurent quotient')
    t = sp.Symbol('t')
    p = sp.Poly(sp.prod([t - sp.Rational(z.numerator, z.denominator) for z in zs]), t, domain='QQ')
    coeffs = [_from_sympy(c) for c in reversed(p.all_coeffs())]
    return _poly_algebra(coeffs, 'points({{{}}})'.format(','.join(str(z) for z in zs)))


def _laurent_mod(coeffs):
    coeffs = [scalar(c) for c in coeffs]
    if not coeffs or coeffs[0] == 0:
        raise BadParams('laurent_mod needs p(0) != 0 so that t is invertible')
    return _poly_algebra(coeffs, 'laurent_mod({})'.format(','.join(str(c) for c in coeffs)))


def _poly_mod(coeffs):
    coeffs = [scalar(c) for c in coeffs]
    return _poly_algebra(coeffs, 'poly_mod({})'.format(','.join(str(c) for c in coeffs)))


PRESETS = {
    'scalar': lambda: _scalar_algebra(),
    'jet': _jet,
    'points': _points,
    'laurent': _laurent_mod,
    'laurent_mod': _laurent_mod,
    'poly': _poly_mod,
    'poly_mod': _poly_mod,
}


def preset(name, *params):
    """
    Named algebras: scalar, jet(N), points(zs), laurent_mod(coeffs), poly_mod(coeffs).
    """
    try:
        factory = PRESETS[name]
    except KeyError:
        raise BadParams('unknown algebra preset [{}], choose from {}'.format(name, sorted(PRESETS)))
    try:
        return factory(*params)
    except TypeError as ex:
        raise BadParams('bad parameters for preset {}: {}'.format(name, ex))


def algebra_from_spec(spec, source=None):
    """
    Build an algebra from a spec mapping, either a preset
    {"preset": "jet", "N": 3} / {"preset": "points", "points": ["1", "2"]} /
    {"preset": "laurent_mod", "coeffs": [...]} or an explicit structure tensor
    {"dim": n, "labels": [...], "unit": [...], "mult": [[i, j, [coeffs...]], ...]}.
    """
    if not isinstance(spec, dict):
        raise InputError('algebra', 'expected a mapping', source)

    if 'preset' in spec:
        name = spec['preset']
        if name == 'scalar':
            return preset('scalar')
        elif name == 'jet':
            if 'N' not in spec or not isinstance(spec['N'], int) or isinstance(spec['N'], bool):
                raise InputError('algebra.N', 'jet needs an integer N', source)
            return preset('jet', spec['N'])
        elif name == 'points':
            return preset('points', parse_scalar_list(spec.get('points', []), 'algebra.points', source))
        elif name in ('laurent', 'laurent_mod', 'poly', 'poly_mod'):
            return preset(name, parse_scalar_list(spec.get('coeffs', []), 'algebra.coeffs', source))
        raise InputError('algebra.preset', 'unknown preset [{}], choose from {}'.format(name, sorted(PRESETS)),
                         source)

    for field in ('dim', 'unit', 'mult'):
        if field not in spec:
            raise InputError('algebra.{}'.format(field), 'missing field', source)
    dim = spec['dim']
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise InputError('algebra.dim', 'expected a positive integer', source)

    def coords(raw, where):
        if not isinstance(raw, list) or len(raw) != dim:
            raise InputError(where, 'expected a list of {} rationals'.format(dim), source)
        return SparseVec(enumerate(parse_scalar_list(raw, where, source)))

    unit = coords(spec['unit'], 'algebra.unit')
    mult = {}
    if not isinstance(spec['mult'], list):
        raise InputError('algebra.mult', 'expected a list of [i, j, coeffs] entries', source)
    for n, entry in enumerate(spec['mult']):
        where = 'algebra.mult[{}]'.format(n)
        if not isinstance(entry, list) or len(entry) != 3:
            raise InputError(where, 'expected [i, j, coeffs]', source)
        i, j, raw = entry
        if not all(isinstance(x, int) and 0 <= x < dim for x in (i, j)):
            raise InputError(where, 'indices must be integers in [0, {})'.format(dim), source)
        mult[i, j] = coords(raw, where + '[2]')

    labels = spec.get('labels')
    if labels is not None and (not isinstance(labels, list) or len(labels) != dim):
        raise InputError('algebra.labels', 'expected {} labels'.format(dim), source)
    return CommAlgebra(dim, mult, unit, labels=[str(x) for x in labels] if labels else None,
                       name=spec.get('name'))
