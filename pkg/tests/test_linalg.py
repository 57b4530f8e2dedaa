from fractions import Fraction

import pytest
from hypothesis import given, settings

from src.algebra.exact_arith import TAU
from src.algebra.linalg import SparseRationalMatrix, nullspace, rref, solve, sparse_integer_nullspace
from strategies import small_integer_matrices


def _rank(matrix):
    return len(rref(matrix)[1])


class TestDense:
    def test_nullspace_of_difference_rows(self):
        basis = nullspace([[1, -1, 0], [0, 1, -1]])
        assert basis == [[1, 1, 1]]

    def test_solve_unique(self):
        assert solve([[2, 1], [1, 3]], [3, 5]) == [Fraction(4, 5), Fraction(7, 5)]

    def test_solve_inconsistent(self):
        assert solve([[1, 1], [1, 1]], [1, 2]) is None

    def test_solve_underdetermined(self):
        with pytest.raises(ValueError):
            solve([[1, 1], [2, 2]], [1, 2])

    def test_solve_over_q_tau(self):
        # (tau) x = 1 has the solution tau^-1
        assert solve([[TAU]], [1]) == [TAU ** -1]


class TestSparse:
    def test_integer_rows_clear_denominators(self):
        m = SparseRationalMatrix(1, 2, {0: {0: Fraction(1, 2), 1: Fraction(1, 3)}})
        assert m.integer_rows() == {0: {0: 3, 1: 2}}

    def test_integer_rows_are_primitive(self):
        m = SparseRationalMatrix(1, 2, {0: {0: 4, 1: -6}})
        assert m.integer_rows() == {0: {0: 2, 1: -3}}

    def test_no_stored_zeros(self):
        m = SparseRationalMatrix(2, 2, {0: {0: 0, 1: 1}, 1: {0: 0}})
        assert m.nnz == 1
        assert m.get(1, 0) == 0

    def test_identity_and_products(self):
        a = SparseRationalMatrix(2, 2, {0: {1: 1}, 1: {0: 1}})
        assert a @ a == SparseRationalMatrix.identity(2)
        assert (a - a).nnz == 0
        assert a.apply([Fraction(3), Fraction(5)]) == [5, 3]

    def test_shape_mismatch(self):
        with pytest.raises(ValueError):
            SparseRationalMatrix(2, 3) @ SparseRationalMatrix(2, 2)

    def test_chain_nullspace(self):
        rows = {0: {0: 1, 1: -1}, 1: {1: 1, 2: -1}}
        assert sparse_integer_nullspace(rows, 3) == [[1, 1, 1]]

    def test_full_rank_has_empty_nullspace(self):
        rows = {0: {0: 2, 1: 1}, 1: {0: 1, 1: 3}}
        assert sparse_integer_nullspace(rows, 2) == []

    def test_empty_columns_are_free(self):
        assert sparse_integer_nullspace({}, 2) == [[1, 0], [0, 1]]

    @settings(max_examples=60)
    @given(small_integer_matrices())
    def test_agrees_with_dense_elimination(self, matrix):
        n_cols = len(matrix[0])
        rows = {i: {j: v for j, v in enumerate(row) if v} for i, row in enumerate(matrix)}
        basis = sparse_integer_nullspace(rows, n_cols)
        assert len(basis) == n_cols - _rank(matrix)
        for vector in basis:
            for row in matrix:
                assert sum(a * x for a, x in zip(row, vector)) == 0
