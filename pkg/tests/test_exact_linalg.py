from fractions import Fraction
from itertools import product

import numpy as np
import pytest
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from abinv.errors import InvalidModulus, NonSymmetric, Singular
from abinv.exact_linalg import IntegerMatrix, determinant, rational_inverse, signature, \
    smith_normal_form, solution_count_mod_n


def _check_decomposition(rows, snf):
    m = IntegerMatrix.from_rows(rows)
    assert snf.u @ m @ snf.v == IntegerMatrix.diagonal(snf.d, m.rows, m.cols)
    assert abs(determinant(snf.u)) == 1
    assert abs(determinant(snf.v)) == 1
    nz = [x for x in snf.d if x]
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert all(x >= 0 for x in snf.d)


def test_snf_zero_matrix():
    snf = smith_normal_form(IntegerMatrix.zeros(2, 3))
    assert snf.d == (0, 0)
    assert snf.rank == 0


def test_snf_identity():
    assert smith_normal_form(IntegerMatrix.identity(3)).d == (1, 1, 1)


def test_snf_diag_2_3():
    # oracle: gcd(2,3)=1 so the divisors are 1 and 6
    oracle = sympy_snf(Matrix([[2, 0], [0, 3]]), domain=ZZ)
    assert [abs(oracle[i, i]) for i in range(2)] == [1, 6]
    snf = smith_normal_form([[2, 0], [0, 3]])
    assert snf.d == (1, 6)
    _check_decomposition([[2, 0], [0, 3]], snf)


def test_snf_empty_matrices():
    assert smith_normal_form(IntegerMatrix.zeros(0, 3)).d == ()
    assert smith_normal_form(IntegerMatrix.zeros(3, 0)).rank == 0


def test_snf_big_entries_no_overflow():
    big = 10**40
    snf = smith_normal_form([[big, 0], [0, big * 3]])
    assert snf.d == (big, 3 * big)


def test_signature_examples():
    assert signature([[1]]) == (1, 0, 0)
    assert signature([[0, 1], [1, 0]]) == (1, 1, 0)
    assert signature([[2, 0, 0], [0, -1, 0], [0, 0, 0]]) == (1, 1, 1)


def test_signature_against_eigenvalues():
    m = [[2, -1, 0], [-1, 2, -1], [0, -1, 2]]
    ev = np.linalg.eigvalsh(np.array(m, dtype=float))
    assert signature(m) == (int((ev > 1e-9).sum()), int((ev < -1e-9).sum()), int((abs(ev) <= 1e-9).sum()))


def test_signature_rejects_nonsymmetric():
    with pytest.raises(NonSymmetric):
        signature([[1, 2], [3, 4]])


def test_rational_inverse():
    assert rational_inverse([[2]]).tolist() == [[Fraction(1, 2)]]
    assert rational_inverse(IntegerMatrix.identity(3)).tolist() == IntegerMatrix.identity(3).tolist()
    assert rational_inverse([[2, 1], [1, 1]]).tolist() == [[1, -1], [-1, 2]]
    inv = rational_inverse([[3, 1], [1, 2]])
    assert all(x.denominator > 0 for x in inv.entries)
    assert (inv @ IntegerMatrix.from_rows([[3, 1], [1, 2]])).tolist() == [[1, 0], [0, 1]]


def test_rational_inverse_singular():
    with pytest.raises(Singular):
        rational_inverse([[1, 2], [2, 4]])


def _brute_count(rows, cols, n):
    return sum(1 for x in product(range(n), repeat=cols)
               if all(sum(a * b for a, b in zip(r, x)) % n == 0 for r in rows))


def test_solution_count_examples():
    assert _brute_count([[2]], 1, 4) == 2
    assert solution_count_mod_n([[2]], 4) == 2
    assert solution_count_mod_n(IntegerMatrix.zeros(1, 2), 5) == 25
    assert solution_count_mod_n(IntegerMatrix.identity(2), 7) == 1


def test_solution_count_bad_modulus():
    with pytest.raises(InvalidModulus):
        solution_count_mod_n([[1]], 0)


def test_matrix_shape_checks():
    from abinv.errors import DimensionMismatch
    with pytest.raises(DimensionMismatch):
        IntegerMatrix(2, 2, (1, 2, 3))
    with pytest.raises(DimensionMismatch):
        IntegerMatrix.from_rows([[1, 2], [3]])
    with pytest.raises(DimensionMismatch):
        IntegerMatrix.from_rows([[1.5]])
