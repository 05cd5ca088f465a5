# tests/test_matrix.py
import random
from fractions import Fraction

from core.chains import boundary_matrix
from core.homology import dense_rank
from core.matrix import RationalMatrix, echelon_rank
from core.semilattice import null_monoid


def test_rank_of_small_matrices():
    assert RationalMatrix.from_dense([[1, 2], [2, 4]]).rank() == 1
    assert RationalMatrix.identity(3).rank() == 3
    assert RationalMatrix(2, 5).rank() == 0
    assert RationalMatrix(0, 0).rank() == 0


def test_rank_with_fractions_matches_dense_oracle():
    m = RationalMatrix.from_dense(
        [
            [Fraction(1, 2), Fraction(1, 3), 0, 1],
            [1, Fraction(2, 3), 0, 2],
            [0, 0, Fraction(5, 7), 1],
        ]
    )
    assert m.rank() == 2
    assert dense_rank(m) == 2
    assert m.transpose().rank() == 2


def test_echelon_rank_ignores_empty_vectors():
    assert echelon_rank([{}, {0: 1}, {0: 2}, {1: -3}]) == 2


def test_kernel_basis():
    m = RationalMatrix.from_dense([[1, 1, 0], [0, 1, 1]])
    kernel = m.kernel_basis()
    assert len(kernel) == m.nullity() == 1
    for v in kernel:
        assert v
        assert m.apply(v) == {}


def test_matmul_and_transpose():
    m = RationalMatrix.from_dense([[1, 2], [3, 4]])
    assert m.matmul(RationalMatrix.identity(2)) == m
    assert m.transpose()[0, 1] == 3
    assert m.matmul(m).to_dense() == [[7, 10], [15, 22]]
    assert RationalMatrix.from_dense([[0, 0]]).is_zero()


def test_echelon_rank_does_not_depend_on_vector_order():
    m = boundary_matrix(null_monoid(), 2)
    rows = m.row_vectors()
    expected = dense_rank(m)
    rng = random.Random(4)
    for _ in range(5):
        rng.shuffle(rows)
        assert echelon_rank(rows) == expected
    assert echelon_rank(m.column_vectors()) == expected
