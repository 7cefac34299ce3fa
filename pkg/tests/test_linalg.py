import random
from fractions import Fraction

import pytest

from nearfree import ExactMatrix, FieldTag, Scalar, kernel_basis, rank
from nearfree.field import ONE, ZERO

from support import random_nonzero_scalar, random_scalar


def _mat(rows, tag=None):
    return ExactMatrix.from_rows(rows, tag)


def test_rank_identity():
    m = _mat([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert rank(m) == 3
    assert kernel_basis(m) == []


def test_rank_dependent_rows():
    assert rank(_mat([[1, 2], [2, 4]])) == 1


def test_rank_zero_row_matrix():
    m = ExactMatrix(0, 4, (), FieldTag.Q)
    assert rank(m) == 0
    assert len(kernel_basis(m)) == 4


def test_kernel_of_zero_row():
    basis = kernel_basis(_mat([[0, 0, 0]]))
    assert len(basis) == 3
    expected = [[ONE, ZERO, ZERO], [ZERO, ONE, ZERO], [ZERO, ZERO, ONE]]
    assert basis == expected


def test_kernel_vectors_lead_with_one():
    m = _mat([[1, 2, 3], [0, 0, 1]])
    for vec in kernel_basis(m):
        lead = next(v for v in vec if v)
        assert lead == ONE


def _random_matrix(rng, nrows, ncols, rational=True):
    make = (lambda: Scalar(Fraction(rng.randint(-5, 5), rng.randint(1, 4)))) if rational else (
        lambda: random_scalar(rng, 4)
    )
    rows = [[make() for _ in range(ncols)] for _ in range(nrows)]
    return ExactMatrix.from_rows(rows)


def test_kernel_annihilates_randomized():
    rng = random.Random(3001)
    for _ in range(40):
        nrows, ncols = rng.randint(1, 6), rng.randint(1, 6)
        rational = rng.random() < 0.5
        m = _random_matrix(rng, nrows, ncols, rational)
        basis = kernel_basis(m)
        assert rank(m) + len(basis) == ncols
        for vec in basis:
            assert all(not v for v in m.matvec(vec))


def test_kernel_basis_is_independent():
    rng = random.Random(3002)
    for _ in range(25):
        m = _random_matrix(rng, rng.randint(1, 5), rng.randint(2, 6))
        basis = kernel_basis(m)
        if not basis:
            continue
        stacked = ExactMatrix.from_rows(basis)
        assert rank(stacked) == len(basis)


def test_rank_invariant_under_row_ops():
    rng = random.Random(3003)
    for _ in range(25):
        nrows, ncols = rng.randint(2, 5), rng.randint(2, 5)
        m = _random_matrix(rng, nrows, ncols)
        rows = [m.row(i) for i in range(nrows)]
        rng.shuffle(rows)
        scaled = [[random_nonzero_scalar(rng, 3) * v for v in row] for row in rows]
        m2 = ExactMatrix.from_rows(scaled)
        assert rank(m2) == rank(m)


def test_strategies_agree():
    rng = random.Random(3004)
    for _ in range(30):
        nrows, ncols = rng.randint(1, 6), rng.randint(1, 6)
        rational = rng.random() < 0.5
        m = _random_matrix(rng, nrows, ncols, rational)
        assert rank(m, "fraction") == rank(m, "fraction_free")
        assert kernel_basis(m, "fraction") == kernel_basis(m, "fraction_free")


def test_singular_square_matrices():
    rng = random.Random(3005)
    for _ in range(20):
        # build a rank-deficient matrix as an outer-ish product
        u = [random_scalar(rng, 3) for _ in range(4)]
        v = [random_scalar(rng, 3) for _ in range(4)]
        rows = [[u[i] * v[j] for j in range(4)] for i in range(4)]
        m = ExactMatrix.from_rows(rows)
        assert rank(m) <= 1
        assert rank(m, "fraction") == rank(m)


def test_unknown_strategy_rejected():
    with pytest.raises(ValueError):
        rank(_mat([[1]]), strategy="float")
