from fractions import Fraction

import pytest

from tau_loop.exact_linear import SparseVec, echelonize, kernel, member, rank, scalar, solve
from tau_loop.exceptions import IndexOutOfRange


def test_scalar_refuses_floats():
    assert scalar('3/4') == Fraction(3, 4)
    assert scalar(5) == Fraction(5)
    with pytest.raises(TypeError):
        scalar(0.5)
    with pytest.raises(TypeError):
        scalar(True)


def test_sparse_vec_drops_zeros():
    v = SparseVec({0: 1, 1: 0, 2: Fraction(1, 2)})
    assert set(v) == {0, 2}
    w = v - SparseVec({0: 1})
    assert w == SparseVec({2: Fraction(1, 2)})
    assert (v * 0) == SparseVec()
    assert v.dot(SparseVec({2: 4, 5: 1})) == 2


def test_echelonize_depends_only_on_span():
    first = echelonize([SparseVec({0: 1, 1: 2}), SparseVec({1: 1, 2: 1})], 3)
    second = echelonize([SparseVec({0: 2, 1: 6, 2: 2}), SparseVec({0: 1, 1: 1, 2: -1})], 3)
    assert first == second
    assert first.pivots == (0, 1)
    assert first.rows[0] == SparseVec({0: 1, 2: -2})
    assert first.rows[1] == SparseVec({1: 1, 2: 1})


def test_kernel_rank_nullity():
    rows = [SparseVec({0: 1, 1: 1, 2: 1}), SparseVec({0: 1, 2: -1})]
    null = kernel(rows, 3)
    assert null.rank == 1
    v = null.rows[0]
    assert all(not r.dot(v) for r in rows)
    assert rank(rows, 3) + null.rank == 3


def test_kernel_of_nothing_is_everything():
    assert kernel([], 4).rank == 4


def test_member_returns_coefficients():
    basis = echelonize([SparseVec({0: 1}), SparseVec({1: 1, 2: 1})], 3)
    ok, coeffs = member(SparseVec({0: 3, 1: 2, 2: 2}), basis)
    assert ok
    assert coeffs == [3, 2]
    ok, coeffs = member(SparseVec({2: 1}), basis)
    assert not ok and coeffs is None


def test_member_checks_indices():
    basis = echelonize([SparseVec({0: 1})], 2)
    with pytest.raises(IndexOutOfRange):
        member(SparseVec({5: 1}), basis)


def test_solve_consistent_and_inconsistent():
    rows = [SparseVec({0: 1, 1: 1}), SparseVec({0: 1, 1: -1})]
    x, null = solve(rows, [3, 1], 2)
    assert x == SparseVec({0: 2, 1: 1})
    assert null.rank == 0

    x, null = solve([SparseVec({0: 1}), SparseVec({0: 2})], [1, 3], 2)
    assert x is None
    assert null.rank == 1
