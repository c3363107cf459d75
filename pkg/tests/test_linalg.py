import numpy as np
import pytest

from degeneracy_atlas.errors import FieldMismatch, ShapeError
from degeneracy_atlas.fields import ExtField, PrimeField, RationalField, ext_field_make
from degeneracy_atlas.linalg import (
    Mat,
    batch_det,
    batch_rank,
    mat_det,
    mat_rank_kernel,
    np_kernel,
    np_solve,
)
from degeneracy_atlas.rng import SplitMix64

F5 = PrimeField(5)
F7 = PrimeField(7)


def random_mat(field, rows, cols, rng):
    return Mat(field, rows, cols, [field.random(rng) for _ in range(rows * cols)])


def cofactor_det(m: Mat):
    """Brute-force oracle: Laplace expansion along the first row."""
    F = m.field
    n = m.rows
    if n == 1:
        return m.get(0, 0)
    total = F.zero()
    for j in range(n):
        c = m.get(0, j)
        if F.is_zero(c):
            continue
        minor = m.submatrix(range(1, n), [t for t in range(n) if t != j])
        term = F.mul(c, cofactor_det(minor))
        total = F.add(total, term) if j % 2 == 0 else F.sub(total, term)
    return total


def test_rank_kernel_identity():
    rank, ker = mat_rank_kernel(Mat.identity(F5, 3))
    assert rank == 3
    assert ker.cols == 0


def test_rank_kernel_zero_matrix():
    rank, ker = mat_rank_kernel(Mat.zero(F5, 2, 4))
    assert rank == 0
    assert ker.cols == 4


def test_rank_kernel_derived_example():
    # [[1,2],[2,4]] over F7: rank 1, kernel spanned by (5,1)^T.
    # Oracle: brute force over all 49 coefficient pairs.
    m = Mat.from_rows(F7, [[1, 2], [2, 4]])
    solutions = [
        (x, y)
        for x in range(7)
        for y in range(7)
        if (x + 2 * y) % 7 == 0 and (2 * x + 4 * y) % 7 == 0
    ]
    assert len(solutions) == 7  # one-dimensional kernel
    rank, ker = mat_rank_kernel(m)
    assert rank == 1
    assert ker.cols == 1
    assert tuple(ker.col(0)) in solutions
    assert tuple(ker.col(0)) == (5, 1)


def test_kernel_columns_are_annihilated():
    rng = SplitMix64(3)
    for _ in range(25):
        m = random_mat(F5, rng.below(5) + 1, rng.below(5) + 1, rng)
        rank, ker = mat_rank_kernel(m)
        assert rank + ker.cols == m.cols
        if ker.cols:
            assert m.mul(ker).is_zero()
            assert ker.rank() == ker.cols


def test_rank_invariant_under_row_ops():
    rng = SplitMix64(11)
    for _ in range(20):
        m = random_mat(F7, 4, 5, rng)
        r = m.rank()
        rows = [m.row(i) for i in range(4)]
        perm = [2, 0, 3, 1]
        permuted = Mat.from_rows(F7, [rows[i] for i in perm])
        assert permuted.rank() == r
        c = F7.random_nonzero(rng)
        scaled_rows = [rows[0]] + [[F7.mul(c, x) for x in rows[1]]] + rows[2:]
        assert Mat.from_rows(F7, scaled_rows).rank() == r


def test_det_identity_and_diagonal():
    assert mat_det(Mat.identity(F7, 4)) == 1
    assert mat_det(Mat.from_rows(F7, [[2, 0], [0, 3]])) == 6


def test_det_matches_cofactor_oracle():
    rng = SplitMix64(17)
    for _ in range(15):
        m = random_mat(F5, 4, 4, rng)
        assert mat_det(m) == cofactor_det(m)


def test_det_multiplicative():
    rng = SplitMix64(23)
    for n in range(1, 7):
        a = random_mat(F7, n, n, rng)
        b = random_mat(F7, n, n, rng)
        assert mat_det(a.mul(b)) == F7.mul(mat_det(a), mat_det(b))


def test_det_zero_iff_rank_deficient():
    rng = SplitMix64(29)
    for _ in range(30):
        m = random_mat(F5, 3, 3, rng)
        assert (mat_det(m) == 0) == (m.rank() < 3)


def test_det_non_square_raises():
    with pytest.raises(ShapeError):
        mat_det(Mat.zero(F5, 2, 3))


def test_field_mismatch():
    with pytest.raises(FieldMismatch):
        Mat.identity(F5, 2).mul(Mat.identity(F7, 2))


def test_generic_path_matches_numpy_path():
    # same computations through the ExtField(=F_p viewed generically) path
    rng = SplitMix64(31)
    Fg = ExtField(5, 2, ext_field_make(5, 2).modulus)
    for _ in range(10):
        np_m = random_mat(F5, 4, 4, rng)
        lifted = Mat(Fg, 4, 4, [Fg.from_int(x) for x in np_m.entries])
        assert lifted.rank() == np_m.rank()
        assert lifted.det() == Fg.from_int(np_m.det())


def test_rationals_linear_algebra():
    Q = RationalField()
    from fractions import Fraction

    m = Mat.from_rows(Q, [[Fraction(1, 2), Fraction(1, 3)], [Fraction(1, 4), Fraction(1, 6)]])
    assert m.det() == 0
    assert m.rank() == 1
    rank, ker = mat_rank_kernel(m)
    assert rank == 1 and ker.cols == 1
    assert m.mul(ker).is_zero()


def test_solve_roundtrip():
    rng = SplitMix64(37)
    for _ in range(10):
        a = random_mat(F7, 4, 4, rng)
        if a.rank() < 4:
            continue
        x = random_mat(F7, 4, 2, rng)
        b = a.mul(x)
        assert a.solve(b) == x


def test_pivot_columns_are_greedy_independent():
    m = Mat.from_rows(F5, [[1, 2, 3], [2, 4, 1], [0, 0, 4]])
    piv = m.pivot_columns()
    assert piv == [0, 2]


def test_batch_rank_agrees_with_single():
    rng = SplitMix64(41)
    mats = np.array(
        [[[rng.below(7) for _ in range(5)] for _ in range(4)] for _ in range(60)],
        dtype=np.int64,
    )
    ranks = batch_rank(mats, 7)
    for i in range(60):
        assert ranks[i] == Mat.from_numpy(F7, mats[i]).rank()


def test_batch_det_agrees_with_single():
    rng = SplitMix64(43)
    mats = np.array(
        [[[rng.below(11) for _ in range(4)] for _ in range(4)] for _ in range(60)],
        dtype=np.int64,
    )
    dets = batch_det(mats, 11)
    F11 = PrimeField(11)
    for i in range(60):
        assert dets[i] == Mat.from_numpy(F11, mats[i]).det()


def test_np_solve_and_kernel():
    a = np.array([[1, 2, 3], [2, 4, 6], [0, 1, 1]], dtype=np.int64)
    ker = np_kernel(a, 7)
    assert ker.shape[1] == 1
    assert (a @ ker % 7 == 0).all()
    rhs = np.array([6, 12, 2], dtype=np.int64) % 7
    x = np_solve(a, rhs, 7)
    assert (a @ x % 7 == rhs % 7).all()
