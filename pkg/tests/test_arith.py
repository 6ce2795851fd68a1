from fractions import Fraction as F
from math import factorial

import pytest
import sympy

from linfkit.arith import (
    as_rational, bernoulli, format_rational, getzler_coeff, phi_coeff, vinogradov_coeff,
)


def sympy_bernoulli(n):
    # sympy uses B_1 = +1/2; our convention is B_1 = -1/2
    b = sympy.bernoulli(n)
    if n == 1:
        b = -b
    return F(int(b.p), int(b.q))


def test_bernoulli_against_sympy():
    for n in range(0, 31):
        assert bernoulli(n) == sympy_bernoulli(n), n


def test_bernoulli_first_values():
    assert [bernoulli(k) for k in range(4)] == [1, F(-1, 2), F(1, 6), 0]


def test_phi_table():
    expected = [1, -1, F(1, 3), 0, F(-1, 45), 0, F(2, 945), 0, F(-1, 4725), 0]
    assert [phi_coeff(k) for k in range(1, 11)] == expected


def test_phi_formula_independent():
    for k in range(1, 16):
        assert phi_coeff(k) == F(2 ** (k - 1)) * sympy_bernoulli(k - 1) / factorial(k - 1)


def test_vinogradov_coefficients():
    # c_5 = (-1)^3 * 12 * B_4 / (4*3) = 1/30
    assert vinogradov_coeff(5) == F(1, 30)
    # c_7 = (+1) * 12 * B_6 / (6*5) = 12 / (42 * 30)
    assert vinogradov_coeff(7) == F(1, 105)
    for bad in (3, 4, 6):
        with pytest.raises(ValueError):
            vinogradov_coeff(bad)


def test_getzler_coefficients():
    assert getzler_coeff(0) == 1
    assert getzler_coeff(1) == F(1, 2)
    assert getzler_coeff(2) == F(1, 12)
    assert getzler_coeff(3) == 0


def test_rational_io():
    assert as_rational("3/6") == F(1, 2)
    assert as_rational(4) == F(4)
    assert format_rational(F(-2, 4)) == "-1/2"
    assert format_rational(F(6, 3)) == "2"
    with pytest.raises(TypeError):
        as_rational(0.5)
    with pytest.raises(TypeError):
        as_rational(True)
    with pytest.raises(ValueError):
        as_rational("1/0")
    with pytest.raises(ValueError):
        bernoulli(-1)
