from fractions import Fraction

import pytest

from apolar import CC, GF, QQ, InconsistentSystem, determinant, kernel_basis, rank, rref, solve_linear
from apolar.linalg import left_kernel, mat_vec


def Q(rows):
    return [[QQ(c) for c in r] for r in rows]


def test_kernel_small():
    assert kernel_basis(Q([[1, 1]]), QQ) == [[-1, 1]]
    assert kernel_basis(Q([[1, 0, 0], [0, 1, 0], [0, 0, 1]]), QQ) == []


def test_kernel_of_random_rank4(rng):
    while True:
        M = Q([[rng.randint(-9, 9) for _ in range(6)] for _ in range(4)])
        if rank(M, QQ) == 4:
            break
    basis = kernel_basis(M, QQ)
    assert len(basis) == 2
    for v in basis:
        assert all(c == 0 for c in mat_vec(M, v))


def test_kernel_basis_is_reduced():
    M = Q([[1, 2, 3, 4], [2, 4, 7, 9]])
    basis = kernel_basis(M, QQ)
    _, piv = rref(M, QQ)
    free = [j for j in range(4) if j not in piv]
    for k, v in enumerate(basis):
        assert [v[j] for j in free] == [1 if i == k else 0 for i in range(len(free))]


def test_solve_identity_and_underdetermined():
    b = [Fraction(3), Fraction(-1, 2)]
    assert solve_linear(Q([[1, 0], [0, 1]]), b, QQ) == b
    x = solve_linear(Q([[1, 1]]), [2], QQ)
    assert x[0] + x[1] == 2


def test_inconsistent_witness():
    with pytest.raises(InconsistentSystem) as info:
        solve_linear(Q([[1], [1]]), [0, 1], QQ)
    y = info.value.witness
    assert y[0] * 1 + y[1] * 1 == 0
    assert y[1] != 0
    assert [c / y[0] for c in y] == [1, -1]


def test_prime_field_rank():
    F = GF(7)
    M = [[F(1), F(2)], [F(3), F(6)]]
    assert rank(M, F) == 1
    assert determinant(M, F) == 0


def test_complex_threshold():
    C = CC(128)
    eps = C.ctx.mpf(2) ** -100
    M = [[C(1), C(1)], [C(1), C(1) + eps]]
    assert rank(M, C) == 1
    assert rank(M, C, tol=C.ctx.mpf(2) ** -120) == 2


def test_determinant_exact():
    assert determinant(Q([[2, 1], [1, 3]]), QQ) == 5
    assert determinant(Q([[0, 1], [1, 0]]), QQ) == -1


def test_left_kernel():
    M = Q([[1, 2], [2, 4], [0, 1]])
    for y in left_kernel(M, QQ):
        assert all(sum(y[i] * M[i][j] for i in range(3)) == 0 for j in range(2))
