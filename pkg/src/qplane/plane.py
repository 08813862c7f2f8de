"""The Manin quantum plane ``xy = q^-1 yx`` in x-before-y normal order.

Every element is a finite sum ``c * x^m * y^n`` with ``c`` in Q(q).  Products
are normal-ordered with ``y^a x^b = q^(ab) x^b y^a``, and all series
(powers, exponentials) are computed modulo terms of total degree above a
cutoff.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from .qcomb import q_factorial, q_integer
from .ring import LaurentPoly, PoleError, RatFun, Scalar

__all__ = [
    "PlaneElement",
    "ConstantTermError",
    "RelationError",
    "X",
    "Y",
    "pe_mul",
    "pe_pow",
    "q_exp",
    "normal_order_word",
    "q_derivative_x",
    "pe_eval",
    "diagonal_representation",
    "nilpotent_representation",
]

Monomial = Tuple[int, int]
Coefficient = Union[RatFun, LaurentPoly, int, Fraction]


class ConstantTermError(ValueError):
    """The argument of a q-exponential has a nonzero constant term."""


class RelationError(ValueError):
    """Matrices supplied to :func:`pe_eval` violate ``XY = q^-1 YX``."""


def _check_cutoff(cutoff: Optional[int]) -> Optional[int]:
    if cutoff is None:
        return None
    if not isinstance(cutoff, int) or isinstance(cutoff, bool) or cutoff < 0:
        raise ValueError(f"truncation order must be a nonnegative integer, got {cutoff!r}")
    return cutoff


class PlaneElement:
    """Immutable normal-ordered element of the quantum plane over Q(q).

    ``terms`` maps ``(xdeg, ydeg)`` to a nonzero :class:`RatFun`; the stored
    monomial means ``coeff * x^xdeg * y^ydeg``.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Union[Mapping[Monomial, Coefficient], Iterable[Tuple[Monomial, Coefficient]], None] = None):
        items = terms.items() if isinstance(terms, Mapping) else (terms or ())
        acc: Dict[Monomial, RatFun] = {}
        for (m, n), c in items:
            if m < 0 or n < 0:
                raise ValueError(f"negative degree in monomial {(m, n)}")
            c = RatFun.coerce(c)
            acc[(m, n)] = acc[(m, n)] + c if (m, n) in acc else c
        self._terms = {k: c for k, c in acc.items() if not c.is_zero()}

    @classmethod
    def _from_clean(cls, terms: Dict[Monomial, RatFun]) -> "PlaneElement":
        obj = cls.__new__(cls)
        obj._terms = terms
        return obj

    @classmethod
    def scalar(cls, c: Coefficient) -> "PlaneElement":
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, m: int, n: int, c: Coefficient = 1) -> "PlaneElement":
        return cls({(m, n): c})

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self) -> Dict[Monomial, RatFun]:
        return dict(self._terms)

    def coeff(self, m: int, n: int) -> RatFun:
        return self._terms.get((m, n), RatFun(0))

    def is_zero(self) -> bool:
        return not self._terms

    def is_scalar(self) -> bool:
        return all(k == (0, 0) for k in self._terms)

    @property
    def constant_term(self) -> RatFun:
        return self.coeff(0, 0)

    @property
    def degree(self) -> int:
        """Largest total degree present (-1 for zero)."""
        return max((m + n for m, n in self._terms), default=-1)

    @property
    def min_degree(self) -> int:
        return min((m + n for m, n in self._terms), default=-1)

    def truncate(self, cutoff: int) -> "PlaneElement":
        cutoff = _check_cutoff(cutoff)
        return PlaneElement._from_clean({k: c for k, c in self._terms.items() if k[0] + k[1] <= cutoff})

    def map_coefficients(self, fn) -> "PlaneElement":
        return PlaneElement({k: fn(c) for k, c in self._terms.items()})

    def evaluate_coefficients(self, q0: Scalar) -> Dict[Monomial, Fraction]:
        """Coefficients evaluated at ``q = q0`` (zero values dropped)."""
        values = {k: c.eval(q0) for k, c in self._terms.items()}
        return {k: v for k, v in values.items() if v != 0}

    # -- arithmetic ---------------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, PlaneElement):
            return other
        try:
            return PlaneElement.scalar(RatFun.coerce(other))
        except TypeError:
            return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        acc = dict(self._terms)
        for k, c in other._terms.items():
            s = acc[k] + c if k in acc else c
            if s.is_zero():
                acc.pop(k, None)
            else:
                acc[k] = s
        return PlaneElement._from_clean(acc)

    __radd__ = __add__

    def __neg__(self):
        return PlaneElement._from_clean({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return pe_mul(self, other)

    def __rmul__(self, other):
        # scalars are central
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return pe_mul(other, self)

    def __truediv__(self, other):
        c = RatFun.coerce(other)
        inv = c.inverse()
        return PlaneElement._from_clean({k: v * inv for k, v in self._terms.items()})

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        return pe_pow(self, k)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __bool__(self):
        return bool(self._terms)

    # -- rendering ----------------------------------------------------------

    def sorted_terms(self):
        """Terms by total degree ascending, then x-degree descending."""
        return sorted(self._terms.items(), key=lambda kv: (kv[0][0] + kv[0][1], -kv[0][0]))

    def _render(self, coeff_text) -> str:
        if not self._terms:
            return "0"
        parts = []
        for (m, n), c in self.sorted_terms():
            mono = "*".join(
                p for p in (_power("x", m), _power("y", n)) if p
            )
            if c == 1:
                parts.append(mono or "1")
            elif mono:
                parts.append(f"{coeff_text(c)}*{mono}")
            else:
                parts.append(coeff_text(c))
        return " + ".join(parts)

    def __str__(self):
        return self._render(str)

    def to_expr(self) -> str:
        """Render in the expression grammar accepted by :func:`qplane.parser.parse`."""
        return self._render(lambda c: c.to_expr())

    def __repr__(self):
        return f"PlaneElement({str(self)!r})"


def _power(sym: str, k: int) -> str:
    if k == 0:
        return ""
    return sym if k == 1 else f"{sym}^{k}"


X = PlaneElement.monomial(1, 0)
Y = PlaneElement.monomial(0, 1)
ONE = PlaneElement.scalar(1)


def pe_mul(a: PlaneElement, b: PlaneElement, cutoff: Optional[int] = None) -> PlaneElement:
    """Normal-ordered product, dropping terms of total degree above ``cutoff``.

    ``(x^m1 y^n1)(x^m2 y^n2) = q^(n1*m2) x^(m1+m2) y^(n1+n2)``.
    """
    cutoff = _check_cutoff(cutoff)
    acc: Dict[Monomial, RatFun] = {}
    for (m1, n1), c1 in a._terms.items():
        d1 = m1 + n1
        for (m2, n2), c2 in b._terms.items():
            if cutoff is not None and d1 + m2 + n2 > cutoff:
                continue
            key = (m1 + m2, n1 + n2)
            c = (c1 * c2).shift(n1 * m2)
            acc[key] = acc[key] + c if key in acc else c
    return PlaneElement._from_clean({k: c for k, c in acc.items() if not c.is_zero()})


def pe_pow(a: PlaneElement, k: int, cutoff: Optional[int] = None) -> PlaneElement:
    if not isinstance(k, int) or k < 0:
        raise ValueError(f"exponent must be a nonnegative integer, got {k!r}")
    cutoff = _check_cutoff(cutoff)
    result = ONE if cutoff is None else ONE.truncate(cutoff)
    base = a if cutoff is None else a.truncate(cutoff)
    # truncated products stay associative, so square-and-multiply is exact
    while k:
        if k & 1:
            result = pe_mul(result, base, cutoff)
        k >>= 1
        if k:
            base = pe_mul(base, base, cutoff)
    return result


def q_exp(arg: PlaneElement, cutoff: int) -> PlaneElement:
    """``sum_k arg^k / [k]!`` modulo total degree above ``cutoff``."""
    cutoff = _check_cutoff(cutoff)
    if cutoff is None:
        raise ValueError("q_exp needs a truncation order")
    if not arg.constant_term.is_zero():
        raise ConstantTermError(
            f"q-exponential argument has constant term {arg.constant_term}; the truncated series is not defined"
        )
    result = ONE
    power = ONE
    for k in range(1, cutoff + 1):
        power = pe_mul(power, arg, cutoff)
        if power.is_zero():
            break
        result = result + power / RatFun.coerce(q_factorial(k))
    return result


def normal_order_word(word: Union[str, Sequence[str]]) -> PlaneElement:
    """Normal-order a word in ``x`` and ``y``: ``q^s x^m y^n`` with ``s`` the number of (y, x) inversions."""
    ys_seen = 0
    inversions = 0
    m = n = 0
    for ch in word:
        if ch == "x":
            inversions += ys_seen
            m += 1
        elif ch == "y":
            ys_seen += 1
            n += 1
        else:
            raise ValueError(f"word letters must be 'x' or 'y', got {ch!r}")
    return PlaneElement.monomial(m, n, LaurentPoly.monomial(inversions))


def q_derivative_x(a: PlaneElement) -> PlaneElement:
    """q-derivative in ``x``: ``x^m y^n -> [m] x^(m-1) y^n``."""
    return PlaneElement(
        {(m - 1, n): c * RatFun.coerce(q_integer(m)) for (m, n), c in a._terms.items() if m > 0}
    )


# ---------------------------------------------------------------------------
# Matrix representations
# ---------------------------------------------------------------------------

def _fraction_matrix(rows) -> np.ndarray:
    arr = np.array(rows, dtype=object)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError("expected a square matrix")
    return np.vectorize(lambda v: Fraction(v), otypes=[object])(arr)


def _identity(size: int) -> np.ndarray:
    out = np.full((size, size), Fraction(0), dtype=object)
    for i in range(size):
        out[i, i] = Fraction(1)
    return out


def _shift_matrix(size: int) -> np.ndarray:
    out = np.full((size, size), Fraction(0), dtype=object)
    for i in range(size - 1):
        out[i, i + 1] = Fraction(1)
    return out


def diagonal_representation(q0: Scalar, size: int = 2) -> Tuple[np.ndarray, np.ndarray]:
    """``X`` the nilpotent shift, ``Y = diag(1, q0^-1, q0^-2, ...)``."""
    q0 = Fraction(q0)
    if q0 == 0:
        raise ValueError("q0 must be nonzero")
    y = np.full((size, size), Fraction(0), dtype=object)
    for i in range(size):
        y[i, i] = q0 ** -i
    return _shift_matrix(size), y


def nilpotent_representation(q0: Scalar, size: int) -> Tuple[np.ndarray, np.ndarray]:
    """``X = S``, ``Y = S diag(1, q0^-1, ...)`` with ``S`` the shift.

    Both generators are nilpotent and every monomial of total degree
    ``>= size`` maps to zero, so matrix products of truncated series are
    exact once ``size`` exceeds the truncation order.
    """
    x, d = diagonal_representation(q0, size)
    return x, x.dot(d)


def _matpow(m: np.ndarray, k: int, cache: Dict[int, np.ndarray]) -> np.ndarray:
    if k not in cache:
        cache[k] = _identity(m.shape[0]) if k == 0 else _matpow(m, k - 1, cache).dot(m)
    return cache[k]


def pe_eval(a: PlaneElement, q0: Scalar, x_mat, y_mat) -> np.ndarray:
    """Evaluate at ``q = q0`` and ``x, y -> x_mat, y_mat`` in exact rational arithmetic."""
    q0 = Fraction(q0)
    if q0 == 0:
        raise PoleError("q0 = 0 is not allowed")
    x_mat, y_mat = _fraction_matrix(x_mat), _fraction_matrix(y_mat)
    if x_mat.shape != y_mat.shape:
        raise ValueError("X and Y must have the same shape")
    if not np.array_equal(x_mat.dot(y_mat) * q0, y_mat.dot(x_mat)):
        raise RelationError("supplied matrices do not satisfy X Y = q0^-1 Y X")
    size = x_mat.shape[0]
    xp: Dict[int, np.ndarray] = {}
    yp: Dict[int, np.ndarray] = {}
    out = np.full((size, size), Fraction(0), dtype=object)
    for (m, n), c in a._terms.items():
        value = c.eval(q0)
        out = out + _matpow(x_mat, m, xp).dot(_matpow(y_mat, n, yp)) * value
    return out
