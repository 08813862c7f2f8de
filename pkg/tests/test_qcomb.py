from fractions import Fraction
from math import factorial

import pytest

from qplane.qcomb import eq5_lhs, eq5_rhs, gauss_binomial, q_factorial, q_integer, qpow_shifted_product
from qplane.ring import LaurentPoly, Q, RatFun

from oracles import binomial, eq5_lhs_value, pascal_gauss, poly_mul, qfact_value


def test_q_integer():
    assert q_integer(0).is_zero()
    assert q_integer(1) == 1
    assert q_integer(3) == 1 + Q + Q ** 2
    for n in range(10):
        assert q_integer(n).eval(1) == n


def test_q_factorial():
    assert q_factorial(0) == 1
    assert q_factorial(2) == 1 + Q
    assert q_factorial(3) == LaurentPoly({0: 1, 1: 2, 2: 2, 3: 1})
    for n in range(10):
        assert q_factorial(n).eval(1) == factorial(n)


def test_negative_index_rejected():
    with pytest.raises(ValueError):
        q_integer(-1)
    with pytest.raises(ValueError):
        q_factorial(-2)


def test_gauss_binomial_examples():
    assert gauss_binomial(5, 0) == 1
    assert gauss_binomial(2, 1) == RatFun(1 + Q)
    # frozen from oracles.pascal_gauss(4, 2)
    assert gauss_binomial(4, 2) == RatFun(LaurentPoly({0: 1, 1: 1, 2: 2, 3: 1, 4: 1}))
    assert gauss_binomial(3, -1).is_zero()
    assert gauss_binomial(3, 4).is_zero()


@pytest.mark.parametrize("n", range(0, 21))
def test_gauss_binomial_is_polynomial_and_matches_recurrence_oracle(n):
    for r in range(n + 1):
        g = gauss_binomial(n, r)
        assert g.is_polynomial()
        assert g.num.terms == pascal_gauss(n, r)


@pytest.mark.parametrize("n", range(0, 20))
def test_pascal_recurrence(n):
    for r in range(n + 2):
        lhs = gauss_binomial(n + 1, r)
        rhs = gauss_binomial(n, r - 1) + gauss_binomial(n, r).shift(r)
        assert lhs == rhs


@pytest.mark.parametrize("n", range(0, 21))
def test_gauss_binomial_symmetry(n):
    for r in range(n + 1):
        assert gauss_binomial(n, r) == gauss_binomial(n, n - r)


@pytest.mark.parametrize("n", range(0, 13))
def test_classical_limit_of_binomial(n):
    for r in range(n + 1):
        assert gauss_binomial(n, r).eval(1) == binomial(n, r)


def test_qpow_shifted_product():
    assert qpow_shifted_product(4, 0) == 1
    assert qpow_shifted_product(1, 1) == Q - 1
    assert qpow_shifted_product(3, 2) == (Q ** 2 - 1) * (Q ** 3 - 1)
    with pytest.raises(ValueError):
        qpow_shifted_product(2, 3)


@pytest.mark.parametrize("n", range(0, 21))
def test_shifted_product_ratio_is_gauss_binomial(n):
    for r in range(n + 1):
        ratio = RatFun(qpow_shifted_product(n, r), qpow_shifted_product(r, r))
        assert ratio == gauss_binomial(n, r)


def test_eq5_examples():
    assert eq5_lhs(0, 0) == 1
    assert eq5_lhs(1, 1) == 1
    assert eq5_lhs(3, 2) == RatFun(1, q_factorial(3) * q_factorial(2))
    # the m = n = 1 case by hand: q^-1 + q^-1 (q - 1)
    assert eq5_lhs(1, 1) == RatFun(LaurentPoly({-1: 1})) + RatFun(LaurentPoly({-1: 1}) * (Q - 1))


@pytest.mark.parametrize("m", range(0, 16))
def test_eq5_identity_and_symmetry(m):
    for n in range(16):
        lhs = eq5_lhs(m, n)
        assert lhs == eq5_rhs(m, n)
        assert lhs == eq5_lhs(n, m)


@pytest.mark.parametrize("q0", [Fraction(2), Fraction(-1, 3), Fraction(5, 7)])
def test_eq5_against_direct_rational_evaluation(q0):
    for m in range(7):
        for n in range(7):
            assert eq5_lhs(m, n).eval(q0) == eq5_lhs_value(m, n, q0)
            assert eq5_lhs_value(m, n, q0) == 1 / (qfact_value(m, q0) * qfact_value(n, q0))


def test_factorial_matches_dict_oracle():
    expected = {0: 1}
    for k in range(1, 12):
        expected = poly_mul(expected, {i: 1 for i in range(k)})
        assert q_factorial(k).terms == expected
