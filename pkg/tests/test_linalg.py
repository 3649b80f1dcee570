from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from mckatz.cyclo import CycloScalar, RootOfUnity
from mckatz.errors import EigenvalueOutsideField
from mckatz.linalg import (
    JordanData,
    Matrix,
    char_poly,
    companion,
    definiteness,
    exterior_square,
    form_symmetry,
    invariant_form,
    is_hermitian,
    jordan_data,
    poly_from_roots_of_unity,
    rank_kernel,
    solve_intertwiners,
    span_basis,
)
from mckatz.poly import Poly

small = st.integers(min_value=-3, max_value=3)


def int_matrix(rows, cols):
    return st.lists(st.lists(small, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


def to_rational(x) -> Fraction:
    if isinstance(x, CycloScalar):
        assert x.is_rational()
        return x.to_rational()
    return Fraction(x)


# -- rank, kernel, determinant against independent oracles --------------------


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5), st.integers(1, 5), st.data())
def test_rank_matches_sympy(r, c, data):
    rows = data.draw(int_matrix(r, c))
    rank, kernel = rank_kernel(Matrix(rows))
    assert rank == sympy.Matrix(rows).rank()
    assert len(kernel) == c - rank
    m = Matrix(rows)
    for v in kernel:
        assert all(x.is_zero() for x in m.apply(v))


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5), st.data())
def test_det_matches_numpy(n, data):
    rows = data.draw(int_matrix(n, n))
    d = to_rational(Matrix(rows).det())
    assert abs(float(d) - np.linalg.det(np.array(rows, dtype=float))) < 1e-6


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.data())
def test_char_poly_matches_sympy(n, data):
    rows = data.draw(int_matrix(n, n))
    ours = char_poly(Matrix(rows))
    t = sympy.Symbol("t")
    ref = sympy.Poly(sympy.Matrix(rows).charpoly(t).as_expr(), t).all_coeffs()[::-1]
    assert [to_rational(ours[k]) for k in range(n + 1)] == [Fraction(int(x)) for x in ref]


def test_rank_of_cyclotomic_matrix():
    z = CycloScalar.zeta(5, 1)
    # rows (1, z) and (z, z^2) are proportional
    m = Matrix([[1, z], [z, z * z]])
    assert m.rank() == 1
    assert m.det().is_zero()
    assert Matrix([[1, z], [z, 1]]).rank() == 2


def test_inverse_round_trip():
    z = CycloScalar.zeta(12, 1)
    m = Matrix([[1, z, 0], [0, 1, z * z], [z, 0, 1]])
    assert (m @ m.inverse()).is_identity()


def test_span_basis_is_canonical():
    a = span_basis([[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    b = span_basis([[0, 2, 2], [1, 3, 4]])
    assert a == b
    assert len(a) == 2


# -- Jordan data --------------------------------------------------------------


def test_jordan_unipotent_block():
    assert jordan_data(Matrix([[1, 1], [0, 1]])) == JordanData(((RootOfUnity(0), 2),))


def test_jordan_diagonal_roots():
    z3 = CycloScalar.zeta(3, 1)
    jd = jordan_data(Matrix.diag([z3, z3, 1]))
    assert jd.multiplicity(RootOfUnity(Fraction(1, 3))) == 2
    assert jd.block_count(RootOfUnity(Fraction(1, 3))) == 2
    assert jd.multiplicity(RootOfUnity(0)) == 1


def test_jordan_of_reflection_and_mixed_blocks():
    m = Matrix.block_diag([Matrix([[-1, 1, 0], [0, -1, 1], [0, 0, -1]]), Matrix([[-1]]), Matrix([[1]])])
    jd = jordan_data(m)
    assert sorted(jd.sizes(RootOfUnity(Fraction(1, 2)))) == [1, 3]
    assert jd.rank_minus(RootOfUnity(Fraction(1, 2))) == 3
    assert jd.dim == 5


def test_jordan_rejects_non_root_eigenvalue():
    with pytest.raises(EigenvalueOutsideField):
        jordan_data(Matrix([[2, 0], [0, 1]]))


def test_jordan_invariant_under_conjugation():
    z = CycloScalar.zeta(5, 2)
    m = Matrix([[z, 1, 0], [0, z, 0], [0, 0, -1]])
    p = Matrix([[1, 2, 0], [0, 1, -1], [1, 0, 1]])
    assert jordan_data(p @ m @ p.inverse()) == jordan_data(m)


# -- linear matrix equations --------------------------------------------------


def test_intertwiners_of_jordan_block():
    j = Matrix([[1, 1], [0, 1]])
    basis = solve_intertwiners([j], [j])
    assert len(basis) == 2
    for x in basis:
        assert x @ j == j @ x


def test_intertwiners_between_conjugate_tuples():
    a = Matrix([[0, 1], [1, 0]])
    b = Matrix([[1, 1], [0, -1]])
    p = Matrix([[1, 1], [1, 2]])
    pa, pb = p @ a @ p.inverse(), p @ b @ p.inverse()
    basis = solve_intertwiners([a, b], [pa, pb])
    assert len(basis) == 1
    x = basis[0]
    assert x.is_invertible()
    assert x @ a == pa @ x and x @ b == pb @ x


def test_invariant_forms_of_rotation():
    r = Matrix([[0, 1], [-1, 0]])
    forms = invariant_form([r])
    assert len(forms) == 2
    kinds = {form_symmetry(g) for g in forms}
    assert kinds <= {"symmetric", "antisymmetric", "none"}
    for g in forms:
        assert r.T @ g @ r == g


def test_hermitian_form_of_unitary_diagonal():
    z = CycloScalar.zeta(7, 1)
    forms = invariant_form([Matrix.diag([z, z * z])], kind="sesquilinear")
    assert len(forms) == 2
    h = Matrix.identity(2)
    assert is_hermitian(h)
    assert definiteness(h) == "positive"
    assert definiteness(Matrix([[1, 0], [0, -2]])) == "indefinite"
    assert definiteness(Matrix([[-1, 0], [0, -2]])) == "negative"


# -- constructions ------------------------------------------------------------


def test_companion_has_given_char_poly():
    p = Poly([3, -1, 0, 2, 1])
    assert char_poly(companion(p)) == p


def test_poly_from_roots_of_unity():
    assert poly_from_roots_of_unity([Fraction(1, 2), 0]) == Poly([-1, 0, 1])
    p = poly_from_roots_of_unity([Fraction(k, 5) for k in range(1, 5)])
    assert p == Poly([1, 1, 1, 1, 1])


@settings(max_examples=20, deadline=None)
@given(st.integers(2, 4), st.data())
def test_exterior_square_determinant(n, data):
    rows = data.draw(int_matrix(n, n))
    m = Matrix(rows)
    w = exterior_square(m)
    assert w.rows == n * (n - 1) // 2
    # det of the second exterior power is det(M)^(n-1)
    assert w.det() == m.det() ** (n - 1)


@settings(max_examples=20, deadline=None)
@given(st.integers(2, 4), st.data())
def test_exterior_square_is_multiplicative(n, data):
    a = Matrix(data.draw(int_matrix(n, n)))
    b = Matrix(data.draw(int_matrix(n, n)))
    assert exterior_square(a @ b) == exterior_square(a) @ exterior_square(b)
