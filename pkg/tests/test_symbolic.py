import numpy as np
import pytest
from gmpy2 import mpq

from gmle.symbolic import (
    DimensionError,
    PoleError,
    Polynomial,
    RationalFunction,
    RFMatrix,
    SingularMatrixError,
    Var,
    jacobian,
    to_mpq,
)

k11, k22, k12 = (Polynomial.var(Var("k", i, j)) for i, j in [(1, 1), (2, 2), (1, 2)])
K2 = RFMatrix([[k11, k12], [k12, k22]])


def test_additive_inverse():
    assert (k11 + (-k11)).is_zero()


def test_difference_of_squares():
    assert (k11 + k12) * (k11 - k12) == k11**2 - k12**2


def test_multiplicative_identity():
    p = k11 * k22 - k12**2
    assert p * 1 == p


def test_partial_derivatives():
    p = k11 * k22 - k12**2
    assert p.diff(Var("k", 1, 2)) == -2 * k12
    f = RationalFunction(Polynomial.const(1)) / k11
    assert f.diff(Var("k", 1, 1)) == RationalFunction(Polynomial.const(-1)) / (k11 * k11)
    assert K2.det().diff(Var("k", 1, 1)) == RationalFunction(k22)


def test_determinants():
    assert RFMatrix.identity(3).det() == RationalFunction(Polynomial.const(1))
    assert K2.det() == RationalFunction(k11 * k22 - k12**2)
    with pytest.raises(DimensionError):
        RFMatrix([[1, 2, 3], [4, 5, 6]]).det()


def test_det_identity_minus_lambda_is_one():
    l13, l24 = Polynomial.var(Var("l", 1, 3)), Polynomial.var(Var("l", 2, 4))
    L = RFMatrix.zeros(4).rows
    L = [[RationalFunction.coerce(x) for x in r] for r in L]
    L[0][2], L[1][3] = RationalFunction(l13), RationalFunction(l24)
    M = RFMatrix.identity(4) - RFMatrix(L)
    assert M.det() == RationalFunction(Polynomial.const(1))
    # (I - L)^{-1} = I + L because L^2 = 0
    assert M.inverse() == RFMatrix.identity(4) + RFMatrix(L)


def test_inverse_adjugate_formula():
    d = k11 * k22 - k12**2
    expected = RFMatrix([[k22, -k12], [-k12, k11]]).scale(RationalFunction(Polynomial.const(1)) / d)
    assert K2.inverse() == expected
    assert K2 @ K2.inverse() == RFMatrix.identity(2)
    assert RFMatrix.identity(3).inverse() == RFMatrix.identity(3)


def test_singular_inverse():
    with pytest.raises(SingularMatrixError):
        RFMatrix([[k11, k11], [k11, k11]]).inverse()


def test_trace_and_gradient_order():
    assert K2.trace() == RationalFunction(k11 + k22)
    g = jacobian(K2.det(), [Var("k", 1, 1), Var("k", 2, 2), Var("k", 1, 2)])
    assert [g[0, j] for j in range(3)] == [RationalFunction(k22), RationalFunction(k11), RationalFunction(-2 * k12)]


def test_evaluate_exact_and_pole():
    f = RationalFunction(Polynomial.const(1)) / k11
    assert f.evaluate({Var("k", 1, 1): 2}) == mpq(1, 2)
    pt = {Var("k", 1, 1): 1, Var("k", 2, 2): 1, Var("k", 1, 2): 1}
    d = K2.det()
    assert d.evaluate(pt) == 0
    with pytest.raises(PoleError):
        d.inverse().evaluate(pt)


def test_evaluate_floating():
    val = (k11 * k22).evaluate({Var("k", 1, 1): 0.5, Var("k", 2, 2): 3.0})
    assert isinstance(val, float) and val == pytest.approx(1.5)
    M = K2.evaluate({Var("k", 1, 1): 1.0, Var("k", 2, 2): 2.0, Var("k", 1, 2): 0.5})
    np.testing.assert_allclose(M, [[1.0, 0.5], [0.5, 2.0]])


def test_decimal_reading():
    assert to_mpq(".105409") == mpq(105409, 1000000)
    assert to_mpq(0.105409) == mpq(105409, 1000000)
    assert to_mpq("-3/4") == mpq(-3, 4)
    with pytest.raises(TypeError):
        to_mpq(object())


def test_text_rendering():
    k34 = Polynomial.var(Var("k", 3, 4))
    k12_ = Polynomial.var(Var("k", 1, 2))
    p = 1312002 * k34**2 - 387081 * k12_ - 291556
    assert str(p) == "1312002*k_(3,4)^2 - 387081*k_(1,2) - 291556"


def test_canonical_zero_function():
    f = RationalFunction(k11) / k22 - RationalFunction(k11) / k22
    assert f.is_zero() and f == RationalFunction()


def test_variable_order_diagonal_first():
    vs = [Var("k", 1, 2), Var("p", 3, 3), Var("l", 1, 3), Var("k", 2, 2), Var("k", 1, 1)]
    assert [str(v) for v in sorted(vs)] == ["k_(1,1)", "k_(2,2)", "k_(1,2)", "l_(1,3)", "p_(3,3)"]
    assert Var("k", 2, 1) is Var("k", 1, 2)
