"""Exact coefficient arithmetic: Laurent polynomials in ``q`` and the field Q(q).

A :class:`LaurentPoly` is a sparse map ``exponent -> coefficient`` with zero
coefficients pruned, so two polynomials are equal exactly when their term
maps are equal.  Coefficients are exact rationals (``int`` where integral,
:class:`fractions.Fraction` otherwise).

A :class:`RatFun` is always stored in canonical form:

* the denominator is an ordinary polynomial with nonzero constant term,
* its leading coefficient is 1,
* numerator and denominator share no common factor.

Any power of ``q`` that would otherwise sit in the denominator is moved to the
numerator as a negative exponent.  Canonical form makes equality of values
the same as equality of representations.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt, lcm
from numbers import Rational
from typing import Dict, Iterable, List, Mapping, Optional, Tuple, Union

__all__ = [
    "LaurentPoly",
    "RatFun",
    "PoleError",
    "Scalar",
    "Q",
    "QINV",
    "lp_mul",
    "lp_eval",
    "rf_canonicalize",
    "rf_arith",
    "rf_eval",
]

Scalar = Union[int, Fraction]


class PoleError(ZeroDivisionError):
    """Raised when a value is evaluated at a pole."""


def _scalar(c) -> Scalar:
    if isinstance(c, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, Rational):
        return _scalar(Fraction(c.numerator, c.denominator))
    raise TypeError(f"expected an exact rational scalar, got {type(c).__name__}")


def _norm(c: Scalar) -> Scalar:
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


# ---------------------------------------------------------------------------
# Dense ordinary polynomials (lists, low -> high degree).
# ---------------------------------------------------------------------------

def _trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _divmod_q(a: list, b: list) -> Tuple[list, list]:
    """Division with remainder over Q."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = [Fraction(c) for c in a]
    db = len(b) - 1
    lead = b[-1]
    if len(r) - 1 < db:
        return [], _trim(r)
    quo = [Fraction(0)] * (len(r) - db)
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i]
        if c == 0:
            continue
        c = c / lead
        quo[i - db] = c
        for j in range(db + 1):
            r[i - db + j] -= c * b[j]
    return _trim(quo), _trim(r[:db])


def _gcd_euclid(a: list, b: list) -> list:
    """Monic gcd over Q; slow but unconditional."""
    a, b = _trim([Fraction(c) for c in a]), _trim([Fraction(c) for c in b])
    while b:
        _, r = _divmod_q(a, b)
        if r:
            r = [c / r[-1] for c in r]
        a, b = b, r
    return [c / a[-1] for c in a] if a else a


def _zz_exact_div(a: List[int], b: List[int]) -> Optional[List[int]]:
    """``a / b`` over Z, or None if ``b`` does not divide ``a``."""
    db = len(b) - 1
    if len(a) - 1 < db:
        return None if any(a) else []
    r = list(a)
    lead = b[-1]
    quo = [0] * (len(r) - db)
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i]
        if c == 0:
            continue
        qc, rem = divmod(c, lead)
        if rem:
            return None
        quo[i - db] = qc
        for j in range(db + 1):
            r[i - db + j] -= qc * b[j]
    if any(r[:db]):
        return None
    return quo


def _zz_primitive(p: List[int]) -> Tuple[int, List[int]]:
    """Split into content (sign of the leading coefficient) and primitive part."""
    g = 0
    for c in p:
        g = gcd(g, c)
        if g == 1:
            break
    if p[-1] < 0:
        g = -g
    if g == 1:
        return 1, p
    return g, [c // g for c in p]


def _zz_eval(p: List[int], x: int) -> int:
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _zz_interpolate(h: int, x: int) -> List[int]:
    out = []
    half = x // 2
    while h:
        g = h % x
        if g > half:
            g -= x
        out.append(g)
        h = (h - g) // x
    return out


_HEU_ATTEMPTS = 6


def _zz_gcd(f: List[int], g: List[int]) -> Tuple[List[int], List[int], List[int]]:
    """gcd of primitive integer polynomials with cofactors ``(h, f/h, g/h)``.

    Heuristic gcd: evaluate at a large integer, take the integer gcd and
    read the polynomial back from its balanced base-``x`` digits.  Every
    candidate is confirmed by exact division; if no candidate survives, fall
    back to the Euclidean algorithm over Q.
    """
    if len(f) == 1 or len(g) == 1:
        return [1], f, g
    f_norm = max(abs(c) for c in f)
    g_norm = max(abs(c) for c in g)
    b = 2 * min(f_norm, g_norm) + 29
    x = max(min(b, 99 * isqrt(b)),
            2 * min(f_norm // abs(f[-1]), g_norm // abs(g[-1])) + 4)
    for _ in range(_HEU_ATTEMPTS):
        ff, gg = _zz_eval(f, x), _zz_eval(g, x)
        if ff and gg:
            hh = gcd(ff, gg)
            for cand, src, other in (
                (hh, None, None),
                (ff // hh, f, g),
                (gg // hh, g, f),
            ):
                poly = _zz_interpolate(cand, x)
                if not poly:
                    continue
                _, poly = _zz_primitive(poly)
                if src is None:
                    cf = _zz_exact_div(f, poly)
                    cg = _zz_exact_div(g, poly) if cf is not None else None
                    if cg is not None:
                        return poly, cf, cg
                else:
                    # poly is a cofactor of src; recover the gcd from it
                    h = _zz_exact_div(src, poly)
                    if h is None:
                        continue
                    co = _zz_exact_div(other, h)
                    if co is not None:
                        return (h, poly, co) if src is f else (h, co, poly)
        x = 73794 * x * isqrt(isqrt(x)) // 27011
    h = _gcd_euclid(f, g)
    _, h = _zz_primitive(_clear_denominators(h)[1])
    return h, _zz_exact_div(f, h), _zz_exact_div(g, h)


def _clear_denominators(p: list) -> Tuple[int, List[int]]:
    """Return ``(l, l*p)`` with ``l*p`` integral."""
    l = 1
    for c in p:
        if type(c) is Fraction:
            l = lcm(l, c.denominator)
    if l == 1:
        return 1, [int(c) for c in p]
    return l, [int(c * l) for c in p]


def _primitive(p: list) -> Tuple[Fraction, List[int]]:
    """Write a rational polynomial as ``content * primitive``."""
    l, ints = _clear_denominators(p)
    g, prim = _zz_primitive(ints)
    return Fraction(g, l), prim


# ---------------------------------------------------------------------------
# Laurent polynomials
# ---------------------------------------------------------------------------

class LaurentPoly:
    """Immutable Laurent polynomial in ``q`` with rational coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Union[Mapping[int, Scalar], Iterable[Tuple[int, Scalar]], None] = None):
        items = terms.items() if isinstance(terms, Mapping) else (terms or ())
        acc: Dict[int, Scalar] = {}
        for k, c in items:
            if not isinstance(k, int) or isinstance(k, bool):
                raise TypeError("exponents must be integers")
            acc[k] = acc.get(k, 0) + _scalar(c)
        self._terms = {k: _norm(c) for k, c in sorted(acc.items()) if c != 0}
        self._hash = None

    @classmethod
    def _from_clean(cls, terms: Dict[int, Scalar]) -> "LaurentPoly":
        # caller guarantees: int keys, nonzero values
        obj = cls.__new__(cls)
        obj._terms = dict(sorted(terms.items()))
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, c: Scalar) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def monomial(cls, k: int, c: Scalar = 1) -> "LaurentPoly":
        return cls({k: c})

    @classmethod
    def _from_dense(cls, shift: int, dense: list) -> "LaurentPoly":
        return cls._from_clean({shift + i: _norm(c) for i, c in enumerate(dense) if c != 0})

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self) -> Dict[int, Scalar]:
        return dict(self._terms)

    def coeff(self, k: int) -> Scalar:
        return self._terms.get(k, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and 0 in self._terms)

    @property
    def valuation(self) -> int:
        """Lowest exponent present (0 for the zero polynomial)."""
        return next(iter(self._terms)) if self._terms else 0

    @property
    def degree(self) -> int:
        """Highest exponent present (0 for the zero polynomial)."""
        return next(reversed(self._terms)) if self._terms else 0

    def _dense(self) -> list:
        """Coefficients from the valuation upward."""
        if not self._terms:
            return []
        v = self.valuation
        out = [0] * (self.degree - v + 1)
        for k, c in self._terms.items():
            out[k - v] = c
        return out

    # -- arithmetic ---------------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, (int, Rational)) and not isinstance(other, bool):
            return LaurentPoly.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        acc = dict(self._terms)
        for k, c in other._terms.items():
            s = acc.get(k, 0) + c
            if s:
                acc[k] = s
            else:
                acc.pop(k, None)
        return LaurentPoly._from_clean(acc)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._from_clean({k: -c for k, c in self._terms.items()})

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
        acc: Dict[int, Scalar] = {}
        get = acc.get
        for i, a in self._terms.items():
            for j, b in other._terms.items():
                acc[i + j] = get(i + j, 0) + a * b
        return LaurentPoly._from_clean({k: _norm(c) for k, c in acc.items() if c != 0})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials have Laurent inverses")
            (e, c), = self._terms.items()
            return LaurentPoly.monomial(e * k, Fraction(1) / Fraction(c) ** (-k))
        result = LaurentPoly.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``q**k``."""
        return LaurentPoly._from_clean({e + k: c for e, c in self._terms.items()})

    def scale(self, c: Scalar) -> "LaurentPoly":
        c = _scalar(c)
        if c == 0:
            return LaurentPoly()
        return LaurentPoly._from_clean({e: _norm(c * v) for e, v in self._terms.items()})

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    # -- evaluation and rendering -------------------------------------------

    def eval(self, q0: Scalar) -> Fraction:
        """Exact value at ``q = q0``."""
        q0 = Fraction(_scalar(q0))
        if q0 == 0:
            if self._terms and self.valuation < 0:
                raise PoleError("negative power of q evaluated at q = 0")
            return Fraction(self.coeff(0))
        return sum((c * q0 ** k for k, c in self._terms.items()), Fraction(0))

    def _render(self, symbols: Tuple[str, str], signed_exponent: bool) -> str:
        if not self._terms:
            return "0"
        out = ""
        for i, (k, c) in enumerate(self._terms.items()):
            a = abs(c)
            if k == 0:
                body = str(a)
            else:
                if signed_exponent or k > 0:
                    sym, e = symbols[0], k
                else:
                    sym, e = symbols[1], -k
                mono = sym if e == 1 else f"{sym}^{e}"
                body = mono if a == 1 else f"{a}*{mono}"
            if i == 0:
                out = ("-" if c < 0 else "") + body
            else:
                out += (" - " if c < 0 else " + ") + body
        return out

    def __str__(self):
        return self._render(("q", "q"), signed_exponent=True)

    def to_expr(self) -> str:
        """Render in the expression grammar, spelling negative powers ``qinv^k``."""
        return self._render(("q", "qinv"), signed_exponent=False)

    def __repr__(self):
        return f"LaurentPoly({str(self)!r})"


Q = LaurentPoly.monomial(1)
QINV = LaurentPoly.monomial(-1)
_ONE_LP = LaurentPoly.constant(1)


def lp_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a * b


def lp_eval(p: LaurentPoly, q0: Scalar) -> Fraction:
    return p.eval(q0)


# ---------------------------------------------------------------------------
# Rational functions
# ---------------------------------------------------------------------------

def _assemble(shift: int, scale: Fraction, num: List[int], den: List[int]) -> Tuple[LaurentPoly, LaurentPoly]:
    """Build ``q^shift * scale * num / den`` with a monic denominator."""
    lead = den[-1]
    if lead != 1:
        scale = scale / lead
        den_coeffs = [Fraction(c, lead) for c in den]
    else:
        den_coeffs = den
    num_coeffs = num if scale == 1 else [scale * c for c in num]
    return LaurentPoly._from_dense(shift, num_coeffs), LaurentPoly._from_dense(0, den_coeffs)


def _canonical_parts(num: LaurentPoly, den: LaurentPoly) -> Tuple[LaurentPoly, LaurentPoly]:
    if den.is_zero():
        raise ZeroDivisionError("rational function with zero denominator")
    if num.is_zero():
        return LaurentPoly(), _ONE_LP
    # dense parts both have nonzero constant terms, so any q-power lives in shift
    shift = num.valuation - den.valuation
    cn, n = _primitive(num._dense())
    cd, d = _primitive(den._dense())
    if len(d) > 1 and len(n) > 1:
        _, n, d = _zz_gcd(n, d)
    return _assemble(shift, cn / cd, n, d)


class RatFun:
    """Immutable element of Q(q), kept in canonical form."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: Union[LaurentPoly, Scalar] = 0, den: Union[LaurentPoly, Scalar] = 1):
        num = num if isinstance(num, LaurentPoly) else LaurentPoly.constant(num)
        den = den if isinstance(den, LaurentPoly) else LaurentPoly.constant(den)
        self.num, self.den = _canonical_parts(num, den)
        self._hash = None

    @classmethod
    def _raw(cls, num: LaurentPoly, den: LaurentPoly) -> "RatFun":
        obj = cls.__new__(cls)
        obj.num, obj.den, obj._hash = num, den, None
        return obj

    @classmethod
    def coerce(cls, value) -> "RatFun":
        if isinstance(value, RatFun):
            return value
        if isinstance(value, LaurentPoly):
            return cls._raw(value, _ONE_LP)
        if isinstance(value, (int, Rational)) and not isinstance(value, bool):
            return cls._raw(LaurentPoly.constant(value), _ONE_LP)
        raise TypeError(f"cannot interpret {type(value).__name__} as an element of Q(q)")

    @staticmethod
    def _coerce_or_ni(other):
        try:
            return RatFun.coerce(other)
        except TypeError:
            return NotImplemented

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den is _ONE_LP or self.den == _ONE_LP

    def __bool__(self):
        return not self.num.is_zero()

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = self._coerce_or_ni(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        a_poly, b_poly = self.is_polynomial(), other.is_polynomial()
        if a_poly and b_poly:
            return RatFun._raw(self.num + other.num, _ONE_LP)
        if a_poly or b_poly:
            # p + n/d = (p*d + n)/d is already reduced: gcd(p*d + n, d) = gcd(n, d) = 1
            poly, frac = (self, other) if a_poly else (other, self)
            total = poly.num * frac.den + frac.num
            if total.is_zero():
                return ZERO
            return RatFun._raw(total, frac.den)
        if self.den == other.den:
            return RatFun(self.num + other.num, self.den)
        # Henrici: with g = gcd(b, d), only g can share factors with the new numerator
        cb, b = _primitive(self.den._dense())
        cd, d = _primitive(other.den._dense())
        g, b_co, d_co = _zz_gcd(b, d)
        num = (self.num.scale(1 / cb) * LaurentPoly._from_dense(0, d_co)
               + other.num.scale(1 / cd) * LaurentPoly._from_dense(0, b_co))
        if num.is_zero():
            return ZERO
        if len(g) == 1:
            den = LaurentPoly._from_dense(0, b) * LaurentPoly._from_dense(0, d_co)
            shift = num.valuation
            cn, n = _primitive(num._dense())
            return RatFun._raw(*_assemble(shift, cn, n, den._dense()))
        shift = num.valuation
        cn, n = _primitive(num._dense())
        _, n, g_red = _zz_gcd(n, g)
        den = (LaurentPoly._from_dense(0, g_red) * LaurentPoly._from_dense(0, b_co)
               * LaurentPoly._from_dense(0, d_co))
        return RatFun._raw(*_assemble(shift, cn, n, den._dense()))

    __radd__ = __add__

    def __neg__(self):
        return RatFun._raw(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce_or_ni(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce_or_ni(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce_or_ni(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return ZERO
        a_poly, b_poly = self.is_polynomial(), other.is_polynomial()
        if a_poly and b_poly:
            return RatFun._raw(self.num * other.num, _ONE_LP)
        if self.num.is_constant() and other.num.is_constant():
            # c1/d1 * c2/d2: scalar numerators cannot share factors with a denominator
            c = self.num.coeff(0) * other.num.coeff(0)
            return RatFun._raw(LaurentPoly.constant(c), self.den * other.den)
        return RatFun(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def shift(self, k: int) -> "RatFun":
        """Multiply by ``q**k``; the denominator has nonzero constant term, so no gcd is needed."""
        if k == 0 or self.is_zero():
            return self
        return RatFun._raw(self.num.shift(k), self.den)

    def inverse(self) -> "RatFun":
        if self.is_zero():
            raise ZeroDivisionError("inverse of the zero rational function")
        return RatFun(self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce_or_ni(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatFun(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = self._coerce_or_ni(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        # powers of coprime parts stay coprime, and a monic denominator stays monic
        return RatFun._raw(self.num ** k, self.den ** k)

    def __eq__(self, other):
        other = self._coerce_or_ni(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    # -- evaluation and rendering -------------------------------------------

    def eval(self, q0: Scalar) -> Fraction:
        d = self.den.eval(q0)
        if d == 0:
            raise PoleError(f"denominator {self.den} vanishes at q = {q0}")
        return self.num.eval(q0) / d

    def __str__(self):
        if self.is_polynomial():
            return f"({self.num})"
        return f"({self.num})/({self.den})"

    def to_expr(self) -> str:
        if self.is_polynomial():
            return f"({self.num.to_expr()})"
        return f"({self.num.to_expr()})/({self.den.to_expr()})"

    def __repr__(self):
        return f"RatFun({str(self)!r})"


ZERO = RatFun._raw(LaurentPoly(), _ONE_LP)
ONE = RatFun._raw(_ONE_LP, _ONE_LP)


def rf_canonicalize(num: LaurentPoly, den: LaurentPoly) -> RatFun:
    return RatFun(num, den)


_OPS = {
    "add": RatFun.__add__,
    "sub": RatFun.__sub__,
    "mul": RatFun.__mul__,
    "div": RatFun.__truediv__,
}


def rf_arith(a: RatFun, b: RatFun, op: str) -> RatFun:
    try:
        fn = _OPS[op]
    except KeyError:
        raise ValueError(f"unknown operation {op!r}; expected one of {sorted(_OPS)}") from None
    return fn(RatFun.coerce(a), RatFun.coerce(b))


def rf_eval(f: RatFun, q0: Scalar) -> Fraction:
    return RatFun.coerce(f).eval(q0)
