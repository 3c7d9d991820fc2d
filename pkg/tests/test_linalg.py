from fractions import Fraction

import pytest
from sympy import Matrix

from spinbfv import linalg


def dm(rows):
    ncols = len(rows[0]) if rows else 0
    columns = [{i: Fraction(row[j]) for i, row in enumerate(rows)} for j in range(ncols)]
    return linalg.from_columns(columns, len(rows))


def test_from_columns_drops_zeros():
    M = dm([[1, 0], [Fraction(1, 2), 3]])
    assert M.to_Matrix() == Matrix([[1, 0], [Fraction(1, 2), 3]])
    assert linalg.is_zero(dm([[0, 0]]))


def test_rank_and_kernel():
    M = dm([[1, 2, 3], [2, 4, 6]])
    assert linalg.rank(M) == Matrix([[1, 2, 3], [2, 4, 6]]).rank() == 1
    K = linalg.kernel(M)
    assert K.shape == (3, 2)
    assert linalg.is_zero(linalg.matmul(M, K))


def test_kernel_of_empty_shapes():
    assert linalg.kernel(linalg.zeros(0, 3)).shape == (3, 3)
    assert linalg.kernel(linalg.zeros(2, 3)).shape == (3, 3)
    assert linalg.rank(linalg.zeros(0, 4)) == 0


def test_relative_rank():
    B = dm([[1], [0], [0]])
    V = dm([[1, 2, 0], [0, 0, 1], [0, 0, 0]])
    assert linalg.relative_rank(B, V) == 1
    assert linalg.relative_rank(linalg.zeros(3, 0), V) == 2
    assert linalg.relative_rank(B, linalg.zeros(3, 0)) == 0
    assert linalg.relative_rank(linalg.zeros(0, 0), linalg.zeros(0, 2)) == 0


def test_hstack_skips_empty_blocks():
    B = dm([[1], [2]])
    assert linalg.hstack(linalg.zeros(2, 0), B).shape == (2, 1)
    with pytest.raises(ValueError):
        linalg.hstack(linalg.zeros(2, 0))
