from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from mckatz import golden
from mckatz.errors import NonRationalExponent, NotDivisible, PreconditionError
from mckatz.pipeline import L2_PARAM, L3_PARAM, L3_SHIFT, P_SHIFT
from mckatz.poly import Poly
from mckatz.weyl import (
    L3_LEFT_FACTOR,
    RiemannScheme,
    ThetaOperator,
    adjoint,
    build_hypergeometric_l4,
    build_L2J2,
    build_L3,
    build_P,
    build_remark_family,
    convolution_ca,
    divide_left_theta,
    exponents_at,
    is_formally_self_adjoint,
    op_mul,
    remark_invariants,
    riemann_scheme,
    shift_theta,
)

T = Poly.T
X = ThetaOperator({1: Poly([1])})
F = Fraction


def theta_op(p):
    return ThetaOperator({0: p})


def sorted_desc(values):
    return tuple(sorted((F(v) for v in values), reverse=True))


# -- independent oracle: act on a test function with sympy ----------------------

xs, ss = sympy.symbols("x s")
TEST_FUNCTION = xs**ss * sympy.exp(xs)


def sympy_apply(op: ThetaOperator, f):
    op = op._canon()
    total = 0
    for i, p in op.terms.items():
        acc, g = 0, f
        for c in p.coeffs:
            acc += sympy.Rational(c.numerator, c.denominator) * g
            g = xs * sympy.diff(g, xs)
        total += xs ** (i + op.x_shift) * acc
    return total


small_q = st.fractions(min_value=-3, max_value=3, max_denominator=4)
polys = st.lists(small_q, min_size=1, max_size=3).map(Poly)
operators = st.dictionaries(st.integers(0, 2), polys, min_size=1, max_size=2).map(ThetaOperator)


@settings(max_examples=30, deadline=None)
@given(operators, operators)
def test_op_mul_matches_action_on_functions(a, b):
    lhs = sympy_apply(op_mul(a, b), TEST_FUNCTION)
    rhs = sympy_apply(a, sympy_apply(b, TEST_FUNCTION))
    diff = sympy.expand((lhs - rhs) * sympy.exp(-xs) * xs ** (-ss))
    assert sympy.expand(sympy.powsimp(diff)) == 0


# -- ring structure -----------------------------------------------------------


def test_theta_times_x():
    assert op_mul(theta_op(T), X) == ThetaOperator({1: T + 1})


def test_one_is_neutral():
    l = build_L2J2()
    assert op_mul(theta_op(Poly([1])), l) == l
    assert op_mul(l, theta_op(Poly([1]))) == l


@settings(max_examples=40, deadline=None)
@given(operators, operators, operators)
def test_associative_and_distributive(a, b, c):
    assert op_mul(op_mul(a, b), c) == op_mul(a, op_mul(b, c))
    assert op_mul(a, b + c) == op_mul(a, b) + op_mul(a, c)


@settings(max_examples=40, deadline=None)
@given(operators, operators)
def test_adjoint_is_anti_homomorphism(a, b):
    assert adjoint(op_mul(a, b)) == op_mul(adjoint(b), adjoint(a))
    assert adjoint(adjoint(a)) == a


def test_adjoint_of_theta():
    assert adjoint(theta_op(T)) == theta_op(Poly([-1, -1]))


# -- self-adjointness ---------------------------------------------------------


def test_l2j2_self_adjoint_with_x_inverse():
    l = build_L2J2()
    assert is_formally_self_adjoint(l)
    m = ThetaOperator(l.terms, -1)
    assert adjoint(m) == m


def test_p_self_adjoint():
    assert is_formally_self_adjoint(build_P(), normalization="none")
    assert build_P().order == 4


def test_generic_first_order_not_self_adjoint():
    assert not is_formally_self_adjoint(theta_op(T - F(2, 7)))
    assert not is_formally_self_adjoint(theta_op(T - F(2, 7)), normalization="none")


def test_bad_normalization_flag():
    with pytest.raises(ValueError):
        is_formally_self_adjoint(build_P(), normalization="x")


# -- shift and convolution ----------------------------------------------------


def test_shift_zero_and_composition():
    l = build_L3()
    assert shift_theta(l, 0) == l
    assert shift_theta(shift_theta(l, F(1, 3)), F(1, 4)) == shift_theta(l, F(7, 12))


def test_convolution_of_theta_polynomial():
    p = theta_op((T - 2) * (T + F(1, 3)))
    assert convolution_ca(p, F(2, 5)) == theta_op(((T - 2) * (T + F(1, 3))).shift(F(-2, 5)))


def test_convolution_gauss_example():
    a, b, c = F(1, 3), F(1, 5), F(3, 7)
    l = ThetaOperator({0: T - b, 1: -(T - c)})
    expected = ThetaOperator({0: T * (T - a - b), 1: -((T + 1 - a) * (T - a - c))})
    out = convolution_ca(l, a)
    assert out == expected
    # Euler transform: the exponents at 0 become 0 and a + b
    assert exponents_at(out, 0) == sorted_desc([0, a + b])


def test_convolution_orders_along_chain():
    l2 = convolution_ca(shift_theta(build_P(), P_SHIFT), L2_PARAM)
    l3 = convolution_ca(shift_theta(l2, L3_SHIFT), L3_PARAM)
    assert [build_P().order, l2.order, l3.order] == [4, 6, 8]
    assert l2.x_degree == l3.x_degree == 2
    assert shift_theta(l3, 0) == l3


def test_chain_reproduces_l3_and_l2j2():
    l2 = convolution_ca(shift_theta(build_P(), P_SHIFT), L2_PARAM)
    l3 = convolution_ca(shift_theta(l2, L3_SHIFT), L3_PARAM)
    assert l3.content_normalized() == build_L3().content_normalized()
    r = divide_left_theta(l3, L3_LEFT_FACTOR)
    # r(theta) = L2J2(theta - 1/6), so substitute theta + 1/6
    assert shift_theta(r, F(-1, 6)).content_normalized() == build_L2J2().content_normalized()


def test_literal_parameter_does_not_reproduce_l3():
    l2 = convolution_ca(shift_theta(build_P(), P_SHIFT), F(3, 5) + F(5, 6))
    l3 = convolution_ca(shift_theta(l2, L3_SHIFT), L3_PARAM)
    assert l3.content_normalized() != build_L3().content_normalized()


def test_convolution_rejects_zero():
    with pytest.raises(PreconditionError):
        convolution_ca(ThetaOperator(), F(1, 2))


# -- division -----------------------------------------------------------------


def test_factorization_of_l3():
    prod = op_mul(theta_op(L3_LEFT_FACTOR), shift_theta(build_L2J2(), F(1, 6)))
    assert prod.same_up_to_scalar(build_L3())


@settings(max_examples=30, deadline=None)
@given(polys, operators)
def test_divide_round_trip(q, r):
    if q.is_zero():
        return
    assert divide_left_theta(op_mul(theta_op(q), r), q) == r


def test_divide_not_divisible_names_index():
    op = ThetaOperator({0: T, 1: Poly([-1])})
    with pytest.raises(NotDivisible) as err:
        divide_left_theta(op, T)
    assert err.value.index == 1


# -- Riemann schemes ----------------------------------------------------------


def scheme_golden(name):
    return RiemannScheme.from_json(golden.load(name))


def test_l2j2_scheme():
    rs = riemann_scheme(build_L2J2(), [0, 1, "inf"])
    assert rs == scheme_golden("scheme_L2J2.json")
    assert rs.column(0) == sorted_desc(["5/6", "1/3", "1/6", "-1/6", "-1/3", "-5/6"])
    assert rs.column(1) == sorted_desc([3, "5/2", 2, 1, "1/2", 0])
    assert rs.column("inf") == sorted_desc(["17/10", "7/5", "11/10", "9/10", "3/5", "3/10"])
    assert rs.fuchs_ok()


def test_l4_scheme():
    rs = riemann_scheme(build_hypergeometric_l4())
    assert rs == scheme_golden("scheme_L4.json")
    assert rs.column(0) == sorted_desc(["2/15", "7/15", "8/15", "13/15"])
    assert rs.column(1) == sorted_desc([0, 1, 1, 2])
    assert rs.column("inf") == sorted_desc(["-11/20", "-3/20", "1/20", "13/20"])
    assert rs.fuchs_ok()


@pytest.mark.parametrize("build", [build_hypergeometric_l4, build_P, build_L3, build_L2J2])
def test_fuchs_relation_for_catalog(build):
    assert riemann_scheme(build()).fuchs_ok()


def test_first_order_scheme():
    assert exponents_at(theta_op(T - F(2, 9)), 0) == (F(2, 9),)


def test_non_rational_exponent():
    with pytest.raises(NonRationalExponent):
        exponents_at(theta_op(T * T - 2), 0)


def test_shift_moves_exponents():
    a = F(1, 7)
    l = build_L2J2()
    base, moved = riemann_scheme(l), riemann_scheme(shift_theta(l, a))
    assert moved.column(0) == tuple(e + a for e in base.column(0))
    assert moved.column("inf") == tuple(e - a for e in base.column("inf"))
    assert moved.column(1) == base.column(1)


def test_scheme_json_round_trip():
    rs = riemann_scheme(build_L2J2())
    assert RiemannScheme.from_json(rs.to_json()) == rs


# -- catalog and the parametric family ----------------------------------------


def test_catalog_shapes():
    l = build_L2J2()
    assert (l.order, l.x_degree) == (6, 2)
    assert build_L3()[2].content_normalized() == Poly.from_roots(
        [F(-2, 15), F(-23, 15), F(-67, 30), F(-37, 30), F(-14, 15), F(-11, 15), F(-43, 30), F(-13, 30)]
    ).content_normalized()


@pytest.mark.parametrize("name,build", [("L4", build_hypergeometric_l4), ("P", build_P),
                                        ("L3", build_L3), ("L2J2", build_L2J2)])
def test_catalog_matches_golden(name, build):
    assert ThetaOperator.from_json(golden.load(f"operator_{name}.json")) == build()


def test_json_round_trip_with_shift():
    op = ThetaOperator(build_L2J2().terms, -1)
    assert ThetaOperator.from_json(op.to_json()) == op


@settings(max_examples=15, deadline=None)
@given(st.fractions(min_value=-1, max_value=1, max_denominator=12),
       st.fractions(min_value=0, max_value=1, max_denominator=12),
       st.fractions(min_value=0, max_value=1, max_denominator=12),
       st.fractions(min_value=0, max_value=1, max_denominator=12))
def test_remark_scheme_symbolic(a1, c1, c2, c3):
    _, l = build_remark_family(a1, c1, c2, c3)
    rs = riemann_scheme(l, [0, 1, "inf"])
    expected = golden.remark_scheme_at(a1, c1, c2, c3)
    assert list(rs.column(0)) == expected["0"]
    assert list(rs.column(1)) == expected["1"]
    assert list(rs.column("inf")) == expected["inf"]


def test_remark_l4_scheme():
    a1, c1, c2, c3 = F(-1, 6), F(19, 20), F(9, 20), F(3, 4)
    l4, _ = build_remark_family(a1, c1, c2, c3)
    rs = riemann_scheme(l4, [0, "inf"])
    assert rs.column(0) == sorted_desc([(1 + c1) / 2 - a1, (1 - c1) / 2 + a1, (1 + c1) / 2 + a1, (1 - c1) / 2 - a1])


def test_remark_specializations_self_adjoint():
    table = golden.load("remark_specializations.json")
    for row in table["2.J2"] + table["subgroups"]:
        _, l = build_remark_family(*row)
        assert l.order == 6
        assert is_formally_self_adjoint(l)


def test_remark_zero_parameters():
    assert remark_invariants(0, 0, 0, 0) == (0, 0)
    _, l = build_remark_family(0, 0, 0, 0)
    assert l[0] == Poly.from_roots([0, 0, 0, 0, 1, -1]) * 64
    assert l[1] == -(T * (T + 1) * Poly([39, 176, 304, 256, 128]))
    assert l[2] == (T + 1) ** 6 * 64


def test_pretty_groups_repeated_factors():
    _, l = build_remark_family(0, 0, 0, 0)
    text = l.pretty()
    assert "64*θ^4*(θ - 1)*(θ + 1)" in text
    assert "(θ + 1)^6" in text
