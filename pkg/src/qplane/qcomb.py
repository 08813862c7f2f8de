"""q-integers, q-factorials, Gaussian binomials and related products."""

from __future__ import annotations

from functools import lru_cache

from .ring import LaurentPoly, RatFun

__all__ = [
    "q_integer",
    "q_factorial",
    "gauss_binomial",
    "qpow_shifted_product",
    "eq5_lhs",
    "eq5_rhs",
]


def _check_nonneg(name: str, n: int) -> None:
    if not isinstance(n, int) or n < 0:
        raise ValueError(f"{name} must be a nonnegative integer, got {n!r}")


@lru_cache(maxsize=None)
def q_integer(n: int) -> LaurentPoly:
    """``[n] = 1 + q + ... + q^(n-1)``; ``[0] = 0``."""
    _check_nonneg("n", n)
    return LaurentPoly({k: 1 for k in range(n)})


@lru_cache(maxsize=None)
def q_factorial(n: int) -> LaurentPoly:
    """``[n]! = [n][n-1]...[1]`` with ``[0]! = 1``."""
    _check_nonneg("n", n)
    if n == 0:
        return LaurentPoly.constant(1)
    return q_factorial(n - 1) * q_integer(n)


def gauss_binomial(n: int, r: int) -> RatFun:
    """Gaussian binomial ``[n]! / ([r]! [n-r]!)``.

    Zero outside ``0 <= r <= n`` so that sums may run over uniform ranges.
    The result is always a polynomial in ``q`` (canonical denominator 1).
    """
    _check_nonneg("n", n)
    if r < 0 or r > n:
        return RatFun(0)
    return RatFun(q_factorial(n), q_factorial(r) * q_factorial(n - r))


def qpow_shifted_product(n: int, r: int) -> LaurentPoly:
    """Product ``(q^(n-r+1) - 1)(q^(n-r+2) - 1)...(q^n - 1)``; 1 when ``r == 0``."""
    _check_nonneg("r", r)
    if r > n:
        raise ValueError(f"need r <= n, got n={n}, r={r}")
    out = LaurentPoly.constant(1)
    for i in range(n - r + 1, n + 1):
        out = out * LaurentPoly({i: 1, 0: -1})
    return out


def eq5_lhs(m: int, n: int) -> RatFun:
    r"""Sum over ``r = 0..min(m, n)`` of

    .. math:: q^{r(r-1)/2 - mn} (q-1)^r / ([m-r]! [n-r]! [r]!)

    Terms with ``r > min(m, n)`` carry the reciprocal of a factorial of a
    negative index, which vanishes, so the upper limit is ``min(m, n)``.
    """
    _check_nonneg("m", m)
    _check_nonneg("n", n)
    q_minus_1 = LaurentPoly({1: 1, 0: -1})
    total = RatFun(0)
    for r in range(min(m, n) + 1):
        num = LaurentPoly.monomial(r * (r - 1) // 2 - m * n) * q_minus_1 ** r
        den = q_factorial(m - r) * q_factorial(n - r) * q_factorial(r)
        total = total + RatFun(num, den)
    return total


def eq5_rhs(m: int, n: int) -> RatFun:
    """``1 / ([m]! [n]!)``."""
    _check_nonneg("m", m)
    _check_nonneg("n", n)
    return RatFun(1, q_factorial(m) * q_factorial(n))
