import random

import pytest

from moorestems.matrices import (
    IntegerSolver,
    IntMatrix,
    hermite_row_basis,
    integer_kernel_basis,
    smith_normal_form,
    smith_normal_form_full,
    solve_integer,
)


def random_matrix(rng, max_dim=6, bound=100):
    rows = rng.randint(1, max_dim)
    cols = rng.randint(1, max_dim)
    return IntMatrix.from_rows(
        [[rng.randint(-bound, bound) for _ in range(cols)] for _ in range(rows)], cols)


def test_identity_snf():
    M = IntMatrix.identity(2)
    _, D, _ = smith_normal_form(M)
    assert D == IntMatrix.identity(2)


def test_zero_snf():
    M = IntMatrix.from_rows([[0]])
    _, D, _ = smith_normal_form(M)
    assert D == M


def test_small_example_snf():
    # gcd of the entries is 2 and |det| = 8, so the invariant factors are 2, 4
    M = IntMatrix.from_rows([[2, 4], [6, 8]])
    U, D, V = smith_normal_form(M)
    assert D.entries == ((2, 0), (0, 4))
    assert (U @ M @ V) == D


def test_rectangular_and_empty_shapes():
    for body, cols in ([[1, 2, 3]], 3), ([[1], [2], [3]], 1):
        M = IntMatrix.from_rows(body, cols)
        U, D, V = smith_normal_form(M)
        assert (U @ M @ V) == D
    M = IntMatrix.zeros(0, 3)
    U, D, V = smith_normal_form(M)
    assert D == M
    M = IntMatrix.zeros(3, 0)
    U, D, V = smith_normal_form(M)
    assert D == M


def test_snf_properties_random(rng):
    for _ in range(200):
        M = random_matrix(rng)
        U, D, V, Uinv, Vinv = smith_normal_form_full(M)
        assert (U @ M @ V) == D
        assert abs(U.det()) == 1
        assert abs(V.det()) == 1
        assert (U @ Uinv) == IntMatrix.identity(M.rows)
        assert (V @ Vinv) == IntMatrix.identity(M.cols)
        assert D.is_diagonal()
        assert all(d >= 0 for d in D.diagonal())
        diag = [d for d in D.diagonal() if d]
        assert all(b % a == 0 for a, b in zip(diag, diag[1:]))


def test_matrix_validation():
    with pytest.raises(ValueError):
        IntMatrix(1, 2, ((1,),))
    with pytest.raises(ValueError):
        IntMatrix(1, 1, ((1.5,),))  # type: ignore[arg-type]
    with pytest.raises(ValueError):
        IntMatrix(-1, 0, ())


def test_determinant():
    assert IntMatrix.identity(3).det() == 1
    assert IntMatrix.from_rows([[2, 4], [6, 8]]).det() == -8
    assert IntMatrix.from_rows([[1, 2], [2, 4]]).det() == 0
    assert IntMatrix.identity(0).det() == 1


def test_solve_integer_roundtrip(rng):
    for _ in range(100):
        M = random_matrix(rng, max_dim=5, bound=9)
        x = [rng.randint(-5, 5) for _ in range(M.cols)]
        b = list(M.mul_vec(x))
        sol = solve_integer(M, b)
        assert sol is not None
        assert M.mul_vec(sol) == tuple(b)


def test_solve_integer_unsolvable():
    M = IntMatrix.from_rows([[2]])
    assert solve_integer(M, [1]) is None
    assert solve_integer(M, [4]) == (2,)


def test_integer_solver_reuse(rng):
    M = random_matrix(rng, max_dim=4, bound=5)
    solver = IntegerSolver(M)
    for _ in range(20):
        x = [rng.randint(-3, 3) for _ in range(M.cols)]
        b = list(M.mul_vec(x))
        sol = solver.solve(b)
        assert sol is not None and M.mul_vec(sol) == tuple(b)


def test_kernel_basis(rng):
    for _ in range(60):
        M = random_matrix(rng, max_dim=5, bound=7)
        basis = integer_kernel_basis(M)
        for v in basis:
            assert all(x == 0 for x in M.mul_vec(v))
        _, D, _ = smith_normal_form(M)
        rank = sum(1 for d in D.diagonal() if d)
        assert len(basis) == M.cols - rank


def test_hermite_canonical():
    basis = hermite_row_basis([(2, 0), (0, 3), (4, 3)], 2)
    # pivots positive, entries above pivots reduced
    assert basis == ((2, 0), (0, 3))
    # a lattice is identified regardless of the spanning set
    left = hermite_row_basis([(6, 4), (2, 2)], 2)
    right = hermite_row_basis([(2, 2), (4, 2), (6, 4)], 2)
    assert left == right


def test_hermite_membership(rng):
    for _ in range(50):
        vecs = [tuple(rng.randint(-6, 6) for _ in range(4)) for _ in range(3)]
        basis = hermite_row_basis(vecs, 4)
        # every original vector solves over the basis
        if not basis:
            assert all(all(x == 0 for x in v) for v in vecs)
            continue
        Bt = IntMatrix.from_cols(basis, 4)
        for v in vecs:
            assert solve_integer(Bt, list(v)) is not None
        # and the basis spans no more than the original lattice
        M = IntMatrix.from_cols(vecs, 4)
        for b in basis:
            assert solve_integer(M, list(b)) is not None
