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
import numbers

from sympy.polys.domains import QQ
from sympy.polys.matrices.sdm import sdm_irref

from .exceptions import IndexOutOfRange

logger = logging.getLogger(__name__)


def scalar(value):
    """
    Coerce a value to an exact rational. Integers, rationals and strings of the
    form "p/q" are accepted. Floats are refused outright, nothing in this package
    is allowed to round.

    :param value: int, Fraction, any numbers.Rational or str
    :return: Fraction
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (bool, float)):
        raise TypeError('inexact or boolean value [{!r}] cannot be used as a scalar'.format(value))
    if isinstance(value, numbers.Rational):
        return Fraction(int(value.numerator), int(value.denominator))
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError('unsupported scalar type [{}]'.format(value.__class__.__name__))


class SparseVec(dict):
    """
    A finitely supported vector: mapping from index to a nonzero Fraction.

    Keys are integers for coordinate vectors, but any hashable label can be used
    (algebra symbols, PBW monomials). Zero coefficients are never stored. A vector
    is treated as a value once returned; add_entry and iadd_scaled exist only for
    accumulating a result under construction.
    """
    __slots__ = ()

    def __init__(self, entries=None):
        super(SparseVec, self).__init__()
        if entries:
            items = entries.items() if isinstance(entries, dict) else entries
            for k, v in items:
                self.add_entry(k, v if isinstance(v, Fraction) else scalar(v))

    @classmethod
    def unit(cls, index):
        return cls({index: Fraction(1)})

    def add_entry(self, key, value):
        value = self.get(key, 0) + value
        if value:
            self[key] = value
        else:
            self.pop(key, None)

    def iadd_scaled(self, coef, other):
        """
        In-place self += coef * other.
        """
        if coef:
            for k, v in other.items():
                self.add_entry(k, coef * v)
        return self

    def scaled(self, coef):
        if not coef:
            return SparseVec()
        out = SparseVec()
        for k, v in self.items():
            out[k] = coef * v
        return out

    def dot(self, other):
        if len(other) < len(self):
            self, other = other, self
        return sum((v * other[k] for k, v in self.items() if k in other), Fraction(0))

    def __add__(self, other):
        return SparseVec(self).iadd_scaled(1, other)

    def __sub__(self, other):
        return SparseVec(self).iadd_scaled(-1, other)

    def __neg__(self):
        return self.scaled(-1)

    def __mul__(self, coef):
        return self.scaled(coef)

    __rmul__ = __mul__

    def __repr__(self):
        return 'SparseVec({})'.format(dict.__repr__(self))


class SubspaceBasis(object):
    """
    A subspace of Q^n held in reduced row-echelon form: pivots strictly increasing,
    each pivot entry 1 and every pivot column zero in all other rows.
    """

    def __init__(self, ambient_dim, rows, pivots):
        self.ambient_dim = ambient_dim
        self.rows = tuple(rows)
        self.pivots = tuple(pivots)

    @property
    def rank(self):
        return len(self.rows)

    def reduce(self, v):
        """
        Subtract from v its component along the echelon rows.

        :param v: SparseVec over range(ambient_dim)
        :return: (remainder, coefficients) where coefficients[i] multiplies rows[i]
        """
        remainder = SparseVec(v)
        coeffs = []
        for row, p in zip(self.rows, self.pivots):
            c = remainder.get(p, 0)
            coeffs.append(Fraction(c))
            if c:
                remainder.iadd_scaled(-c, row)
        return remainder, coeffs

    def __contains__(self, v):
        return not self.reduce(v)[0]

    def __eq__(self, other):
        if not isinstance(other, SubspaceBasis):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.rows == other.rows

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __repr__(self):
        return 'SubspaceBasis(dim={}, rank={}, pivots={})'.format(self.ambient_dim, self.rank, list(self.pivots))


def _check_indices(rows, ambient_dim):
    for row in rows:
        for k in row:
            if not isinstance(k, numbers.Integral) or k < 0 or k >= ambient_dim:
                raise IndexOutOfRange(k, ambient_dim)


def _to_qq(value):
    return QQ(value.numerator, value.denominator)


def _from_qq(value):
    return Fraction(int(QQ.numer(value)), int(QQ.denom(value)))


def echelonize(rows, ambient_dim):
    """
    Reduced row-echelon basis of the span of rows. The RREF of a subspace is unique,
    so the result depends only on the span: leftmost nonzero column is always the pivot.

    :param rows: iterable of SparseVec with integer indices
    :param ambient_dim: dimension of the ambient space
    :return: SubspaceBasis
    """
    rows = [r for r in rows if r]
    _check_indices(rows, ambient_dim)
    if not rows:
        return SubspaceBasis(ambient_dim, (), ())

    sdm = {i: {j: _to_qq(scalar(v)) for j, v in r.items()} for i, r in enumerate(rows)}
    reduced, pivots, _ = sdm_irref(sdm)

    out = []
    for i in sorted(reduced):
        row = SparseVec()
        for j, v in reduced[i].items():
            row[j] = _from_qq(v)
        out.append(row)
    out.sort(key=min)
    return SubspaceBasis(ambient_dim, out, [min(r) for r in out])


def kernel(rows, ambient_dim):
    """
    Basis of { v : M v = 0 } where M has the given rows.

    :param rows: matrix rows as SparseVec
    :param ambient_dim: number of columns of M
    :return: SubspaceBasis of the null space
    """
    reduced = echelonize(rows, ambient_dim)
    pivots = set(reduced.pivots)
    vectors = []
    for free in range(ambient_dim):
        if free in pivots:
            continue
        v = SparseVec({free: Fraction(1)})
        for row, p in zip(reduced.rows, reduced.pivots):
            c = row.get(free)
            if c:
                v[p] = -c
        vectors.append(v)
    result = echelonize(vectors, ambient_dim)
    assert result.rank + reduced.rank == ambient_dim, 'rank-nullity failed'
    return result


def member(v, basis):
    """
    Decide whether v lies in the span of an echelon basis.

    :param v: SparseVec
    :param basis: SubspaceBasis
    :return: (True, coefficients against basis.rows) or (False, None)
    """
    _check_indices([v], basis.ambient_dim)
    remainder, coeffs = basis.reduce(v)
    if remainder:
        return False, None
    return True, coeffs


def rank(rows, ambient_dim):
    return echelonize(rows, ambient_dim).rank


def solve(rows, rhs, ambient_dim):
    """
    Solve M x = rhs exactly.

    :param rows: matrix rows as SparseVec
    :param rhs: list of scalars, one per row
    :param ambient_dim: number of unknowns
    :return: (particular solution or None if inconsistent, kernel SubspaceBasis)
    """
    augmented = []
    for row, b in zip(rows, rhs):
        r = SparseVec(row)
        r.add_entry(ambient_dim, scalar(b))
        augmented.append(r)
    reduced = echelonize(augmented, ambient_dim + 1)
    if reduced.pivots and reduced.pivots[-1] == ambient_dim:
        return None, kernel(rows, ambient_dim)
    x = SparseVec()
    for row, p in zip(reduced.rows, reduced.pivots):
        x.add_entry(p, row.get(ambient_dim, 0))
    return x, kernel(rows, ambient_dim)
