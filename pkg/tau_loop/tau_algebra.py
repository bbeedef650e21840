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

import itertools
import logging
import re

from .exact_linear import SparseVec
from .exceptions import *

logger = logging.getLogger(__name__)

CURRENT = 'current'
VIR = 'vir'
CENTRAL = 'central'

MINUS = 'minus'
ZERO = 'zero'
PLUS = 'plus'

COCYCLES = ('standard', 'literal')


class SimpleLieData(object):
    """
    Structure data of the finite simple Lie algebra g. Only sl2 is provided, with the
    form normalised as (X,Y) = 1, (h,h) = 2.
    """

    def __init__(self):
        self.name = 'sl2'
        self.basis = ('X', 'Y', 'h')
        self.dim = 3
        self.rank = 1
        self.dual_coxeter = 2
        # root of each basis element as a multiple of alpha
        self.root_of = {'X': 1, 'Y': -1, 'h': 0}
        self.positive_roots = (1,)
        self.roots = (1, -1)
        self.root_vector = {1: 'X', -1: 'Y'}
        self.cartan = ('h',)
        self.cartan_dual = {'h': {'h': Fraction(1, 2)}}
        # gamma^-1 of the roots and of rho-bar, as Cartan coordinates
        self.coroot = {1: {'h': Fraction(1)}, -1: {'h': Fraction(-1)}}
        self.rho_bar_coroot = {'h': Fraction(1, 2)}
        self.highest_root = 1
        # alpha_0 = -beta + delta as (alpha, delta) coefficients
        self.alpha0 = (-1, 1)
        self._bracket = {
            ('X', 'Y'): {'h': Fraction(1)},
            ('Y', 'X'): {'h': Fraction(-1)},
            ('h', 'X'): {'X': Fraction(2)},
            ('X', 'h'): {'X': Fraction(-2)},
            ('h', 'Y'): {'Y': Fraction(-2)},
            ('Y', 'h'): {'Y': Fraction(2)},
        }
        self._form = {('X', 'Y'): Fraction(1), ('Y', 'X'): Fraction(1), ('h', 'h'): Fraction(2)}

    def __repr__(self):
        return self.name

    def lie_bracket(self, x, y):
        return self._bracket.get((x, y), {})

    def form(self, x, y):
        return self._form.get((x, y), Fraction(0))

    def _bracket_vec(self, x, y):
        return {z: c for z, c in self.lie_bracket(x, y).items()}

    def _form_vec(self, u, v):
        return sum((cu * cv * self.form(x, y) for x, cu in u.items() for y, cv in v.items()), Fraction(0))

    def check(self):
        """
        Verify the data-carrier invariants: dual Cartan bases, root vector brackets and
        invariance of the form on every basis triple.

        :return: list of failure descriptions, empty when consistent
        """
        failures = []
        for hi in self.cartan:
            for hj in self.cartan:
                value = self._form_vec({hi: 1}, self.cartan_dual[hj])
                if value != (1 if hi == hj else 0):
                    failures.append('dual basis pairing ({},{}^) = {}'.format(hi, hj, value))
        for r in self.positive_roots:
            x, y = self.root_vector[r], self.root_vector[-r]
            if self.form(x, y) != 1:
                failures.append('root vectors {} {} are not normalised'.format(x, y))
            if self._bracket_vec(x, y) != self.coroot[r]:
                failures.append('[{},{}] differs from the coroot of {}'.format(x, y, r))
        for a, b, c in itertools.product(self.basis, repeat=3):
            lhs = self._form_vec(self._bracket_vec(a, b), {c: 1}) + self._form_vec({b: 1}, self._bracket_vec(a, c))
            if lhs != 0:
                failures.append('form not invariant on ({},{},{})'.format(a, b, c))
        return failures

    def affine_pairing(self, first, second):
        """
        Invariant form on the dual of h + CK + Cd, weights given as (lam, c, d0) where lam
        is the coefficient of the fundamental weight, c of Lambda_0 and d0 of delta.
        """
        lam1, c1, d1 = first
        lam2, c2, d2 = second
        # (omega, omega) = 1/2 with (alpha, alpha) = 2
        return Fraction(lam1) * Fraction(lam2) / 2 + Fraction(c1) * Fraction(d2) + Fraction(c2) * Fraction(d1)

    def rho(self):
        return Fraction(1), Fraction(self.dual_coxeter), Fraction(0)

    def casimir_value(self, lam, c, d0):
        """
        (Lambda, Lambda + 2 rho) for Lambda = lam*omega + c*Lambda_0 + d0*delta.
        """
        weight = (Fraction(lam), Fraction(c), Fraction(d0))
        shifted = tuple(w + 2 * r for w, r in zip(weight, self.rho()))
        return self.affine_pairing(weight, shifted)


SL2 = SimpleLieData()


class BiDegree(namedtuple('BiDegree', ['p', 'q'])):
    """
    Offset of a weight from the highest one: the weight is psi - p*alpha - q*delta.
    """
    __slots__ = ()

    def __add__(self, other):
        return BiDegree(self.p + other[0], self.q + other[1])

    def __neg__(self):
        return BiDegree(-self.p, -self.q)

    def simple_coordinates(self):
        """
        Coefficients (k0, k1) on the simple roots alpha_0 = delta - alpha and alpha_1 = alpha.
        """
        return self.q, self.p + self.q

    @classmethod
    def from_simple(cls, k0, k1):
        return cls(k1 - k0, k0)


_KIND_TAG = {CURRENT: 0, VIR: 1, CENTRAL: 2}
_GEN_TAG = {'X': 0, 'Y': 1, 'h': 2, None: 3}


class TauSymbol(namedtuple('TauSymbol', ['kind', 'gen', 'power', 'a'])):
    """
    Basis symbol of tau(A): gen(t^power)(a_a) for currents, L_power(a_a) for Vir and K(a_a).
    """
    __slots__ = ()

    @classmethod
    def current(cls, gen, power, a=0):
        if gen not in SL2.basis:
            raise BadParams('unknown generator [{}]'.format(gen))
        return cls(CURRENT, gen, int(power), int(a))

    @classmethod
    def vir(cls, n, a=0):
        return cls(VIR, None, int(n), int(a))

    @classmethod
    def central(cls, a=0):
        return cls(CENTRAL, None, 0, int(a))

    def with_label(self, a):
        return self._replace(a=a)

    def degree(self):
        if self.kind == CURRENT:
            return BiDegree(-SL2.root_of[self.gen], -self.power)
        elif self.kind == VIR:
            return BiDegree(0, -self.power)
        return BiDegree(0, 0)

    def pbw_key(self):
        p, q = self.degree()
        return q, p, _KIND_TAG[self.kind], _GEN_TAG[self.gen], self.a, -self.power

    def label(self, labels=None):
        a = labels[self.a] if labels is not None else 'a{}'.format(self.a)
        if self.kind == CURRENT:
            return '{}(t^{};{})'.format(self.gen, self.power, a)
        elif self.kind == VIR:
            return 'L_{}({})'.format(self.power, a)
        return 'K({})'.format(a)

    def __str__(self):
        return self.label()


_SYMBOL_PATTERN = re.compile(r'^\s*(?:([XYh])\(t\^(-?\d+);([^)]+)\)|L_(-?\d+)\(([^)]+)\)|K\(([^)]+)\))\s*$')


def parse_symbol(text, labels):
    """
    Inverse of TauSymbol.label for a given list of algebra basis labels.

    :param text: e.g. "X(t^-1;1)", "L_-2(t)", "K(1)"
    :param labels: basis labels of A
    :return: TauSymbol
    """
    match = _SYMBOL_PATTERN.match(text)
    if match is None:
        raise BadParams('cannot parse symbol [{}]'.format(text))
    gen, power, cur_label, n, vir_label, k_label = match.groups()
    label = cur_label or vir_label or k_label
    if label in labels:
        a = labels.index(label)
    elif re.match(r'^a\d+$', label) and int(label[1:]) < len(labels):
        a = int(label[1:])
    else:
        raise BadParams('unknown algebra label [{}] in symbol [{}]'.format(label, text))
    if gen is not None:
        return TauSymbol.current(gen, int(power), a)
    elif n is not None:
        return TauSymbol.vir(int(n), a)
    return TauSymbol.central(a)


def triangular_part(symbol):
    """
    Classify a symbol as minus, zero or plus by the sign of its root.
    """
    p, q = symbol.degree()
    if q > 0 or (q == 0 and p > 0):
        return MINUS
    elif q < 0 or (q == 0 and p < 0):
        return PLUS
    return ZERO


def element(symbol_coeffs):
    """
    :param symbol_coeffs: mapping or pairs TauSymbol -> scalar
    :return: TauElement as a SparseVec keyed by symbols
    """
    return SparseVec(symbol_coeffs)


class TauAlgebra(object):
    """
    Structure constants of tau(A) = (Vir x| affine sl2) (x) A with C_0 identified with K.

    The affine cocycle takes its coefficient from the first exponent under the 'standard'
    convention and from the second under 'literal'; both satisfy the Jacobi identity.
    """

    def __init__(self, algebra, cocycle='standard', lie=SL2):
        if cocycle not in COCYCLES:
            raise BadParams('unknown cocycle convention [{}], choose from {}'.format(cocycle, COCYCLES))
        self.algebra = algebra
        self.cocycle = cocycle
        self.lie = lie
        self._cache = {}

    def __repr__(self):
        return 'tau({}, cocycle={})'.format(self.algebra.name, self.cocycle)

    def _check_symbol(self, s):
        if not 0 <= s.a < self.algebra.dim:
            raise AlgebraMismatch('symbol {} has a label outside {} (dim {})'.format(
                s, self.algebra.name, self.algebra.dim))

    def lift(self, symbol, a):
        """
        Tensor a symbol with a general algebra element: sum_k a_k symbol(a_k).

        :param symbol: TauSymbol, its label is ignored
        :param a: SparseVec in algebra coordinates
        """
        return SparseVec((symbol.with_label(k), v) for k, v in a.items())

    def unit_lift(self, symbol):
        return self.lift(symbol, self.algebra.unit)

    def bracket_symbols(self, s1, s2):
        """
        [s1, s2] for two basis symbols, cached.
        """
        key = (s1, s2)
        out = self._cache.get(key)
        if out is not None:
            return out
        self._check_symbol(s1)
        self._check_symbol(s2)
        out = self._bracket_symbols(s1, s2)
        self._cache[key] = out
        return out

    def _bracket_symbols(self, s1, s2):
        if s1.kind == CENTRAL or s2.kind == CENTRAL:
            return SparseVec()

        ab = self.algebra.product(s1.a, s2.a)
        if not ab:
            return SparseVec()

        out = SparseVec()
        if s1.kind == CURRENT and s2.kind == CURRENT:
            n, m = s1.power, s2.power
            for z, c in self.lie.lie_bracket(s1.gen, s2.gen).items():
                out.iadd_scaled(c, self.lift(TauSymbol.current(z, n + m), ab))
            if n + m == 0:
                coef = (n if self.cocycle == 'standard' else m) * self.lie.form(s1.gen, s2.gen)
                out.iadd_scaled(coef, self.lift(TauSymbol.central(), ab))

        elif s1.kind == VIR and s2.kind == VIR:
            n, m = s1.power, s2.power
            out.iadd_scaled(m - n, self.lift(TauSymbol.vir(n + m), ab))
            if n + m == 0:
                out.iadd_scaled(Fraction(n ** 3 - n, 12), self.lift(TauSymbol.central(), ab))

        elif s1.kind == VIR:
            out.iadd_scaled(s2.power, self.lift(TauSymbol.current(s2.gen, s1.power + s2.power), ab))

        else:
            out.iadd_scaled(-s1.power, self.lift(TauSymbol.current(s1.gen, s1.power + s2.power), ab))

        return out

    def bracket(self, u, v):
        """
        Bilinear bracket of two TauElements.
        """
        out = SparseVec()
        for s1, c1 in u.items():
            for s2, c2 in v.items():
                out.iadd_scaled(c1 * c2, self.bracket_symbols(s1, s2))
        return out

    def jacobi_probe(self, s1, s2, s3):
        """
        [s1,[s2,s3]] + [s3,[s1,s2]] + [s2,[s3,s1]], which must vanish.
        """
        e1, e2, e3 = (SparseVec.unit(s) for s in (s1, s2, s3))
        out = self.bracket(e1, self.bracket(e2, e3))
        out.iadd_scaled(1, self.bracket(e3, self.bracket(e1, e2)))
        out.iadd_scaled(1, self.bracket(e2, self.bracket(e3, e1)))
        return out

    def antisymmetry_probe(self, s1, s2):
        out = SparseVec(self.bracket_symbols(s1, s2))
        return out.iadd_scaled(1, self.bracket_symbols(s2, s1))

    def symbol_window(self, lo=-5, hi=5):
        """
        Every basis symbol with t-power or Vir index in [lo, hi], over all labels.
        """
        out = []
        for a in range(self.algebra.dim):
            for gen in self.lie.basis:
                out.extend(TauSymbol.current(gen, m, a) for m in range(lo, hi + 1))
            out.extend(TauSymbol.vir(n, a) for n in range(lo, hi + 1))
            out.append(TauSymbol.central(a))
        return out

    def format_element(self, u):
        if not u:
            return '0'
        labels = self.algebra.labels
        parts = []
        for s in sorted(u, key=TauSymbol.pbw_key):
            c = u[s]
            term = s.label(labels) if abs(c) == 1 else '{}*{}'.format(abs(c), s.label(labels))
            if not parts:
                parts.append(term if c > 0 else '-' + term)
            else:
                parts.append(('+ ' if c > 0 else '- ') + term)
        return ' '.join(parts)
