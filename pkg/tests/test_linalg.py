from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from mackeylab.linalg import (
    GF, QQ, ZZ, LinAlgError, Matrix, PresentedModule, Zloc,
    bezout_coefficients, det, hom_presented, identity, in_row_span,
    inverse_matrix, kernel_basis, mat, mat_eq, mat_mul, parse_ring, rank,
    row_basis, smith_normal_form, snf_diagonal, solve, subquotient, xgcd,
)

ints = st.integers(min_value=-9, max_value=9)


def int_matrices(max_dim=4):
    return st.integers(1, max_dim).flatmap(
        lambda m: st.integers(1, max_dim).flatmap(
            lambda n: st.lists(
                st.lists(ints, min_size=n, max_size=n),
                min_size=m, max_size=m).map(lambda rows: mat(rows))))


def test_ring_parsing():
    assert parse_ring("Z") == ZZ
    assert parse_ring("Q") == QQ
    assert parse_ring("F2") == GF(2)
    assert parse_ring("Z(3)") == Zloc(3)
    with pytest.raises(LinAlgError):
        parse_ring("F4")  # not prime


def test_ring_units():
    assert ZZ.is_unit(-1) and not ZZ.is_unit(2)
    assert GF(5).is_unit(3)
    assert Zloc(3).is_unit(Fraction(1, 2)) and not Zloc(3).is_unit(Fraction(3, 2))
    assert QQ.inv(Fraction(2)) == Fraction(1, 2)


def test_xgcd():
    g, x, y = xgcd(3, 2)
    assert (g, x, y) == (1, 1, -1)
    for a, b in [(12, 18), (-4, 6), (0, 5), (7, 0)]:
        g, x, y = xgcd(a, b)
        assert x * a + y * b == g >= 0


def test_bezout():
    zs = bezout_coefficients([3, 2])
    assert zs == [1, -1]
    vals = [6, 10, 15]
    zs = bezout_coefficients(vals)
    assert sum(z * v for z, v in zip(zs, vals)) == 1


def test_snf_hand_cases():
    S, U, V = smith_normal_form(mat([[2, 0], [0, 3]]))
    assert [S[0, 0], S[1, 1]] == [1, 6]
    Z = mat([[0, 0], [0, 0]])
    S, U, V = smith_normal_form(Z)
    assert mat_eq(S, Z)
    assert mat_eq(U, identity(ZZ, 2)) and mat_eq(V, identity(ZZ, 2))


def test_snf_det_preservation():
    A = mat([[2, 4], [6, 8]])
    S, U, V = smith_normal_form(A)
    assert S[0, 0] == 2 and S[1, 1] == 4
    assert abs(S[0, 0] * S[1, 1]) == abs(det(ZZ, A)) == 8
    assert S[1, 1] % S[0, 0] == 0


@given(int_matrices())
@settings(max_examples=60, deadline=None)
def test_snf_properties(A):
    S, U, V = smith_normal_form(A)
    assert mat_eq(mat_mul(ZZ, mat_mul(ZZ, U, A), V), S)
    assert det(QQ, mat([[Fraction(x) for x in r] for r in U.rows])) in (1, -1)
    assert det(QQ, mat([[Fraction(x) for x in r] for r in V.rows])) in (1, -1)
    diag = [S[i, i] for i in range(min(S.nrows, S.ncols))]
    for i in range(S.nrows):
        for j in range(S.ncols):
            if i != j:
                assert S[i, j] == 0
    for a, b in zip(diag, diag[1:]):
        if a != 0:
            assert b % a == 0
        else:
            assert b == 0


def test_kernel_hand_cases():
    assert kernel_basis(ZZ, identity(ZZ, 3)).nrows == 0
    K = kernel_basis(GF(2), mat([[0]], ncols=1))
    assert K.nrows == 1 and K[0, 0] == 1
    K = kernel_basis(ZZ, mat([[1, 1], [1, 1]]))
    assert K.nrows == 1
    assert tuple(K.row(0)) in ((1, -1), (-1, 1))


@given(int_matrices(), st.sampled_from(["Z", "Q", "F2", "F3", "Z(2)"]))
@settings(max_examples=60, deadline=None)
def test_kernel_properties(A, ringname):
    ring = parse_ring(ringname)
    B = mat(A.rows, A.ncols, ring=ring)
    K = kernel_basis(ring, B)
    if K.nrows:
        assert all(x == 0 for r in mat_mul(ring, K, B).rows for x in r)
    assert K.nrows == B.nrows - rank(ring, B)
    # random small combinations of rows of B lie outside the kernel test:
    # completeness via rank identity above.


def test_solve_hand_cases():
    assert mat_eq(solve(ZZ, identity(ZZ, 2), mat([[5, 7]])),
                  mat([[5, 7]]))
    assert solve(ZZ, mat([[2]]), mat([[1]])) is None
    X = solve(Zloc(3), mat([[2]], ring=Zloc(3)), mat([[1]], ring=Zloc(3)))
    assert X is not None and X[0, 0] == Fraction(1, 2)
    # solvable only through a combination: 2x + 3y = 1
    X = solve(ZZ, mat([[2], [3]]), mat([[1]]))
    assert X is not None
    assert 2 * X[0, 0] + 3 * X[0, 1] == 1


def test_solve_none_is_certified_small_heights():
    A = mat([[2, 0], [0, 2]])
    B = mat([[1, 0]])
    assert solve(ZZ, A, B) is None
    H = 3
    for x in range(-H, H + 1):
        for y in range(-H, H + 1):
            assert (2 * x, 2 * y) != (1, 0)


@given(int_matrices(), st.sampled_from(["Z", "Q", "F2", "Z(3)"]))
@settings(max_examples=60, deadline=None)
def test_solve_exactness(A, ringname):
    ring = parse_ring(ringname)
    B = mat(A.rows, A.ncols, ring=ring)
    # B's own rows are solvable: X = identity works, solver must find some X
    X = solve(ring, B, B)
    assert X is not None
    assert mat_eq(mat_mul(ring, X, B), B)


def test_row_basis_and_span():
    rows = [[2, 0], [0, 3], [2, 3]]
    B = row_basis(ZZ, rows, 2)
    assert B.nrows == 2
    assert in_row_span(ZZ, B, [2, 3])
    assert not in_row_span(ZZ, B, [1, 0])


def test_presented_invariant_factors():
    M = PresentedModule(ZZ, 2, mat([[2, 0]]))
    assert M.invariant_factors() == (2, 0)
    F = PresentedModule.free(ZZ, 3)
    assert F.invariant_factors() == (0, 0, 0)
    T = PresentedModule(ZZ, 1, mat([[1]]))
    assert T.invariant_factors() == ()
    V = PresentedModule(GF(2), 3, mat([[1, 1, 0]], ring=GF(2)))
    assert V.invariant_factors() == (0, 0)
    L = PresentedModule(Zloc(2), 1, mat([[6]], ring=Zloc(2)))
    assert L.invariant_factors() == (2,)


def test_hom_presented_cyclic_cases():
    R = PresentedModule.free(ZZ, 1)
    H, _ = hom_presented(R, R)
    assert H.invariant_factors() == (0,)
    Z2 = PresentedModule(ZZ, 1, mat([[2]]))
    H, _ = hom_presented(Z2, R)
    assert H.invariant_factors() == ()
    Z4 = PresentedModule(ZZ, 1, mat([[4]]))
    H, reps = hom_presented(Z2, Z4)
    assert H.invariant_factors() == (2,)
    # the generator doubles: 1 -> 2 mod 4
    assert reps[0][0, 0] % 2 == 0 and reps[0][0, 0] % 4 != 0


def test_subquotient():
    W = mat([[1, 0], [0, 2]])
    V = mat([[0, 4]])
    M, basis = subquotient(ZZ, W, V)
    assert M.invariant_factors() == (2, 0)


def test_inverse_matrix():
    A = mat([[1, 1], [0, 1]])
    X = inverse_matrix(ZZ, A)
    assert mat_eq(mat_mul(ZZ, A, X), identity(ZZ, 2))
    with pytest.raises(LinAlgError):
        inverse_matrix(ZZ, mat([[2]]))
