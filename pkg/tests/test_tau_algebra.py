from fractions import Fraction

import itertools

import pytest

from tau_loop.comm_algebra import preset
from tau_loop.exact_linear import SparseVec
from tau_loop.exceptions import AlgebraMismatch, BadParams
from tau_loop.tau_algebra import (MINUS, PLUS, SL2, ZERO, BiDegree, TauAlgebra, TauSymbol, parse_symbol,
                                  triangular_part)

X, Y, H = 'X', 'Y', 'h'


def cur(gen, m, a=0):
    return TauSymbol.current(gen, m, a)


def test_sl2_data_is_consistent():
    assert SL2.check() == []
    assert SL2.lie_bracket(X, Y) == {H: 1}
    assert SL2.form(H, H) == 2


@pytest.mark.parametrize('lam,c,d0,expected', [
    (0, 0, 0, 0),
    (1, 1, 0, Fraction(3, 2)),
    (2, 3, 1, 14),
])
def test_casimir_value(lam, c, d0, expected):
    assert SL2.casimir_value(lam, c, d0) == expected


def test_bidegree_coordinates():
    d = BiDegree(1, 1)
    assert d.simple_coordinates() == (1, 2)
    assert BiDegree.from_simple(1, 2) == d
    assert d + BiDegree(-1, 0) == BiDegree(0, 1)
    assert cur(X, -1).degree() == BiDegree(-1, 1)
    assert TauSymbol.vir(2).degree() == BiDegree(0, -2)


@pytest.mark.parametrize('symbol,part', [
    (cur(Y, 0), MINUS),
    (cur(X, -1), MINUS),
    (TauSymbol.vir(-1), MINUS),
    (cur(X, 0), PLUS),
    (cur(Y, 1), PLUS),
    (TauSymbol.vir(2), PLUS),
    (cur(H, 0), ZERO),
    (TauSymbol.vir(0), ZERO),
    (TauSymbol.central(), ZERO),
])
def test_triangular_part(symbol, part):
    assert triangular_part(symbol) == part


def test_affine_cocycle_conventions():
    standard = TauAlgebra(preset('scalar'))
    literal = TauAlgebra(preset('scalar'), cocycle='literal')
    expected = SparseVec({cur(H, 0): 1, TauSymbol.central(): 2})
    assert standard.bracket_symbols(cur(X, 2), cur(Y, -2)) == expected
    assert literal.bracket_symbols(cur(X, 2), cur(Y, -2)) == SparseVec({cur(H, 0): 1, TauSymbol.central(): -2})
    with pytest.raises(BadParams):
        TauAlgebra(preset('scalar'), cocycle='other')


def test_virasoro_and_mixed_brackets():
    tau = TauAlgebra(preset('scalar'))
    assert tau.bracket_symbols(TauSymbol.vir(1), TauSymbol.vir(-1)) == SparseVec({TauSymbol.vir(0): -2})
    assert tau.bracket_symbols(TauSymbol.vir(2), TauSymbol.vir(-2)) == SparseVec(
        {TauSymbol.vir(0): -4, TauSymbol.central(): Fraction(1, 2)})
    assert tau.bracket_symbols(TauSymbol.vir(1), cur(X, 2)) == SparseVec({cur(X, 3): 2})
    assert tau.bracket_symbols(cur(X, 2), TauSymbol.vir(1)) == SparseVec({cur(X, 3): -2})
    assert tau.bracket_symbols(TauSymbol.central(), cur(X, 1)) == SparseVec()


def test_labels_multiply_through_the_algebra():
    tau = TauAlgebra(preset('jet', 2))
    assert tau.bracket_symbols(cur(X, 0, 0), cur(Y, 0, 1)) == SparseVec({cur(H, 0, 1): 1})
    assert tau.bracket_symbols(cur(X, 0, 1), cur(Y, 0, 1)) == SparseVec()
    with pytest.raises(AlgebraMismatch):
        tau.bracket_symbols(cur(X, 0, 2), cur(Y, 0, 0))


def test_lift_spreads_over_coordinates():
    tau = TauAlgebra(preset('jet', 2))
    lifted = tau.lift(cur(H, 1), SparseVec({0: 1, 1: 3}))
    assert lifted == SparseVec({cur(H, 1, 0): 1, cur(H, 1, 1): 3})


@pytest.mark.parametrize('cocycle', ['standard', 'literal'])
@pytest.mark.parametrize('name,params', [('scalar', ()), ('jet', (2,)), ('points', ([1, 2],))])
def test_jacobi_and_antisymmetry_on_a_window(name, params, cocycle):
    tau = TauAlgebra(preset(name, *params), cocycle)
    sample = tau.symbol_window(-2, 2)[::3]
    for s1, s2 in itertools.combinations(sample, 2):
        assert not tau.antisymmetry_probe(s1, s2)
    for s1, s2, s3 in itertools.combinations(sample[:12], 3):
        assert not tau.jacobi_probe(s1, s2, s3)


@pytest.mark.parametrize('text,symbol', [
    ('X(t^-1;1)', TauSymbol.current('X', -1, 0)),
    ('h(t^2;t)', TauSymbol.current('h', 2, 1)),
    ('L_-2(t)', TauSymbol.vir(-2, 1)),
    ('K(1)', TauSymbol.central(0)),
    ('Y(t^0;a1)', TauSymbol.current('Y', 0, 1)),
])
def test_parse_symbol(text, symbol):
    labels = preset('jet', 2).labels
    assert parse_symbol(text, labels) == symbol


@pytest.mark.parametrize('text', ['Z(t^0;1)', 'L_1(s)', 'K()'])
def test_parse_symbol_rejects(text):
    with pytest.raises(BadParams):
        parse_symbol(text, ['1', 't'])


def test_symbol_labels_round_trip():
    labels = preset('jet', 3).labels
    for s in TauAlgebra(preset('jet', 3)).symbol_window(-1, 1):
        assert parse_symbol(s.label(labels), labels) == s
