"""Exact rational arithmetic and the coefficient families used throughout.

Rationals are :class:`fractions.Fraction`.  They serialize as ``"p/q"``, or
as ``"p"`` when the denominator is one.
"""
from __future__ import annotations

import threading
from fractions import Fraction
from math import comb, factorial

Rational = Fraction

_BERNOULLI = [Fraction(1)]
_LOCK = threading.Lock()


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are rejected: every coefficient in this package is exact.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational literal: {value!r}") from exc
    raise TypeError(f"cannot interpret {type(value).__name__} as an exact rational")


def format_rational(q) -> str:
    q = as_rational(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def bernoulli(m: int) -> Fraction:
    """B_m with B_0 = 1 and sum_{j<m} C(m, j) B_j = 0, so B_1 = -1/2."""
    if m < 0:
        raise ValueError("Bernoulli index must be non-negative")
    with _LOCK:
        while len(_BERNOULLI) <= m:
            k = len(_BERNOULLI)
            acc = sum(comb(k + 1, j) * _BERNOULLI[j] for j in range(k))
            _BERNOULLI.append(-acc / (k + 1))
        return _BERNOULLI[m]


def phi_coeff(k: int) -> Fraction:
    """phi_k = 2^(k-1) B_(k-1) / (k-1)!, the coefficients of the embedding Phi."""
    if k < 1:
        raise ValueError("phi_k is defined for k >= 1")
    return Fraction(2 ** (k - 1)) * bernoulli(k - 1) / factorial(k - 1)


def vinogradov_coeff(k: int) -> Fraction:
    """c_k = (-1)^((k+1)/2) 12 B_(k-1) / ((k-1)(k-2)) for odd k >= 5."""
    if k < 5 or k % 2 == 0:
        raise ValueError("c_k is defined for odd k >= 5")
    sign = -1 if ((k + 1) // 2) % 2 else 1
    return sign * 12 * bernoulli(k - 1) / ((k - 1) * (k - 2))


def getzler_coeff(n: int) -> Fraction:
    """b_n = (-1)^n B_n / n!, the prefactor of the truncated Getzler brackets."""
    if n < 0:
        raise ValueError("b_n is defined for n >= 0")
    return (-1) ** n * bernoulli(n) / factorial(n)
