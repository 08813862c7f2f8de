"""Exact finite-order checks of the q-exponential identities.

Each ``check_*`` function builds both sides of one identity, subtracts them
and returns an :class:`IdentityReport`.  ``holds`` is true exactly when the
discrepancy is the zero element; there is no tolerance anywhere.
"""

from __future__ import annotations

import enum
import math
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from .plane import (
    PlaneElement,
    X,
    Y,
    nilpotent_representation,
    normal_order_word,
    pe_eval,
    pe_mul,
    pe_pow,
    q_exp,
)
from .qcomb import eq5_lhs, eq5_rhs, gauss_binomial, q_factorial, qpow_shifted_product
from .ring import LaurentPoly, PoleError, Q, QINV, RatFun

__all__ = [
    "IdentityId",
    "IdentityReport",
    "reversed_argument",
    "check_direct",
    "check_reversed",
    "check_intermediate",
    "check_xpower",
    "check_coeff5",
    "check_qbinom",
    "check_classical_limit",
    "run_check",
    "run_suite",
    "acceptance_config",
    "random_rational_points",
    "numeric_cross_check",
    "matrix_cross_check",
]


class IdentityId(str, enum.Enum):
    DIRECT = "direct"
    REVERSED = "reversed"
    INTERMEDIATE = "intermediate"
    XPOWER = "xpower"
    COEFF5 = "coeff5"
    QBINOM = "qbinom"
    CLASSICAL_LIMIT = "classical_limit"

    def __str__(self):
        return self.value


# checks parameterized by a truncation order
_ORDER_CHECKS = {IdentityId.DIRECT, IdentityId.REVERSED, IdentityId.INTERMEDIATE,
                 IdentityId.QBINOM, IdentityId.CLASSICAL_LIMIT}

Discrepancy = Union[PlaneElement, RatFun]


@dataclass(frozen=True)
class IdentityReport:
    identity_id: IdentityId
    params: Tuple[int, ...]
    holds: bool
    discrepancy: Optional[Discrepancy]
    elapsed: float
    lhs: Optional[Discrepancy] = field(default=None, repr=False, compare=False)
    rhs: Optional[Discrepancy] = field(default=None, repr=False, compare=False)
    error: Optional[str] = None

    @property
    def order(self) -> Optional[int]:
        if self.identity_id in _ORDER_CHECKS and self.params:
            return self.params[0]
        return None

    def to_dict(self) -> Dict[str, Any]:
        """JSON-ready record; every key is always present."""
        return {
            "identity": self.identity_id.value,
            "params": list(self.params),
            "order": self.order,
            "holds": self.holds,
            "discrepancy": None if self.discrepancy is None else _render_discrepancy(self.discrepancy),
            "elapsed_ms": round(self.elapsed * 1000.0, 3),
            "error": self.error,
        }


def _render_discrepancy(d: Discrepancy) -> str:
    if isinstance(d, RatFun):
        return "0" if d.is_zero() else str(d)
    return str(d)


def _report(identity_id, params, lhs, rhs, started) -> IdentityReport:
    diff = lhs - rhs
    return IdentityReport(
        identity_id=IdentityId(identity_id),
        params=tuple(params),
        holds=diff.is_zero(),
        discrepancy=diff,
        elapsed=time.perf_counter() - started,
        lhs=lhs,
        rhs=rhs,
    )


def _order(n) -> int:
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise ValueError(f"order must be a nonnegative integer, got {n!r}")
    return n


def reversed_argument(correction: Optional[RatFun] = None) -> PlaneElement:
    """``x + y + correction * yx`` with ``yx`` normal-ordered to ``q xy``.

    The default correction ``1 - q^-1`` gives ``x + y + (q - 1) xy``.
    """
    if correction is None:
        correction = RatFun.coerce(1 - QINV)
    return X + Y + normal_order_word("yx") * PlaneElement.scalar(correction)


def check_direct(order: int) -> IdentityReport:
    n = _order(order)
    started = time.perf_counter()
    lhs = pe_mul(q_exp(X, n), q_exp(Y, n), n)
    rhs = q_exp(X + Y, n)
    return _report(IdentityId.DIRECT, (n,), lhs, rhs, started)


def check_reversed(order: int, correction: Optional[RatFun] = None) -> IdentityReport:
    """``exp_q(y) exp_q(x)`` against ``exp_q(x + y + correction*yx)``.

    Passing a ``correction`` other than ``1 - q^-1`` is only useful as a
    negative control.
    """
    n = _order(order)
    started = time.perf_counter()
    lhs = pe_mul(q_exp(Y, n), q_exp(X, n), n)
    rhs = q_exp(reversed_argument(correction), n)
    return _report(IdentityId.REVERSED, (n,), lhs, rhs, started)


def check_intermediate(order: int) -> IdentityReport:
    n = _order(order)
    started = time.perf_counter()
    lhs = pe_mul(q_exp(Y, n), q_exp(X, n), n)
    middle = q_exp(PlaneElement.monomial(1, 1, Q - 1), n)
    rhs = pe_mul(pe_mul(q_exp(X, n), middle, n), q_exp(Y, n), n)
    return _report(IdentityId.INTERMEDIATE, (n,), lhs, rhs, started)


def check_xpower(n: int) -> IdentityReport:
    """``x^n`` against its expansion in the products ``(x-1)(x-q)...(x-q^(r-1))``."""
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    started = time.perf_counter()
    lhs = pe_pow(X, n)
    rhs = PlaneElement()
    falling = PlaneElement.scalar(1)
    for r in range(n + 1):
        coeff = RatFun(qpow_shifted_product(n, r), qpow_shifted_product(r, r))
        rhs = rhs + falling * PlaneElement.scalar(coeff)
        falling = pe_mul(falling, X - PlaneElement.scalar(LaurentPoly.monomial(r)))
    return _report(IdentityId.XPOWER, (n,), lhs, rhs, started)


def check_coeff5(m: int, n: int) -> IdentityReport:
    started = time.perf_counter()
    return _report(IdentityId.COEFF5, (m, n), eq5_lhs(m, n), eq5_rhs(m, n), started)


def check_qbinom(n: int) -> IdentityReport:
    n = _order(n)
    started = time.perf_counter()
    lhs = pe_pow(X + Y, n, n)
    rhs = PlaneElement({(r, n - r): gauss_binomial(n, r) for r in range(n + 1)})
    return _report(IdentityId.QBINOM, (n,), lhs, rhs, started)


def check_classical_limit(order: int) -> IdentityReport:
    """At ``q = 1``: ``exp_q(x)`` coefficients become ``1/m!`` and the reversed correction vanishes.

    Both sides are plane elements with rational constant coefficients.
    """
    n = _order(order)
    started = time.perf_counter()
    series = q_exp(X, n)
    correction = reversed_argument() - X - Y
    lhs_terms: Dict[Tuple[int, int], Fraction] = {
        (m, 0): series.coeff(m, 0).eval(1) for m in range(n + 1)
    }
    for key, c in correction.terms.items():
        lhs_terms[key] = lhs_terms.get(key, Fraction(0)) + c.eval(1)
    rhs_terms = {(m, 0): Fraction(1, math.factorial(m)) for m in range(n + 1)}
    return _report(IdentityId.CLASSICAL_LIMIT, (n,), PlaneElement(lhs_terms), PlaneElement(rhs_terms), started)


_DISPATCH: Dict[IdentityId, Callable[..., IdentityReport]] = {
    IdentityId.DIRECT: check_direct,
    IdentityId.REVERSED: check_reversed,
    IdentityId.INTERMEDIATE: check_intermediate,
    IdentityId.XPOWER: check_xpower,
    IdentityId.COEFF5: check_coeff5,
    IdentityId.QBINOM: check_qbinom,
    IdentityId.CLASSICAL_LIMIT: check_classical_limit,
}


def _as_params(params) -> Tuple[int, ...]:
    if isinstance(params, int):
        return (params,)
    return tuple(params)


def run_check(identity_id, params) -> IdentityReport:
    """Run one check; failures become reports instead of exceptions."""
    params = _as_params(params)
    started = time.perf_counter()
    try:
        ident = IdentityId(identity_id)
        return _DISPATCH[ident](*params)
    except Exception as exc:  # noqa: BLE001 - reported, not raised
        try:
            ident = IdentityId(identity_id)
        except ValueError:
            ident = None
        return IdentityReport(
            identity_id=ident,
            params=params,
            holds=False,
            discrepancy=None,
            elapsed=time.perf_counter() - started,
            error=f"{type(exc).__name__}: {exc}",
        )


def run_suite(config: Iterable[Tuple[Any, Any]], max_workers: Optional[int] = None) -> List[IdentityReport]:
    """Run every ``(identity_id, params)`` in ``config``; reports come back in config order."""
    config = list(config)
    if not config:
        return []
    if max_workers == 1:
        return [run_check(i, p) for i, p in config]
    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        return list(pool.map(lambda item: run_check(*item), config))


def acceptance_config(max_order: int = 10, max_mn: int = 15, max_xpower: int = 25,
                      max_intermediate: Optional[int] = None, max_qbinom: Optional[int] = None):
    """The full battery: every identity over its acceptance range."""
    max_intermediate = min(max_order, 8) if max_intermediate is None else max_intermediate
    max_qbinom = max_mn if max_qbinom is None else max_qbinom
    config: List[Tuple[IdentityId, Tuple[int, ...]]] = []
    config += [(IdentityId.DIRECT, (n,)) for n in range(max_order + 1)]
    config += [(IdentityId.REVERSED, (n,)) for n in range(max_order + 1)]
    config += [(IdentityId.INTERMEDIATE, (n,)) for n in range(max_intermediate + 1)]
    config += [(IdentityId.XPOWER, (n,)) for n in range(1, max_xpower + 1)]
    config += [(IdentityId.COEFF5, (m, n)) for m in range(max_mn + 1) for n in range(max_mn + 1)]
    config += [(IdentityId.QBINOM, (n,)) for n in range(max_qbinom + 1)]
    config += [(IdentityId.CLASSICAL_LIMIT, (n,)) for n in range(max_order + 1)]
    return config


# ---------------------------------------------------------------------------
# Oracles
# ---------------------------------------------------------------------------

def _evaluate(value: Discrepancy, q0):
    if isinstance(value, RatFun):
        return value.eval(q0)
    return value.evaluate_coefficients(q0)


def random_rational_points(count: int, rng: random.Random, *values: Discrepancy,
                           bound: int = 9, max_tries: int = 1000) -> List[Fraction]:
    """Distinct random rationals at which every value in ``values`` is finite."""
    points: List[Fraction] = []
    for _ in range(max_tries):
        if len(points) == count:
            break
        q0 = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        if q0 == 0 or q0 in points:
            continue
        try:
            for v in values:
                _evaluate(v, q0)
        except PoleError:
            continue
        points.append(q0)
    if len(points) < count:
        raise RuntimeError("could not find enough non-pole evaluation points")
    return points


def numeric_cross_check(report: IdentityReport, points: Sequence[Fraction]) -> bool:
    """Compare both sides value-by-value after substituting ``q = q0``."""
    if report.lhs is None or report.rhs is None:
        return False
    return all(_evaluate(report.lhs, q0) == _evaluate(report.rhs, q0) for q0 in points)


def matrix_cross_check(identity_id, order: int, q0) -> bool:
    """Re-verify the direct or reversed relation in a nilpotent matrix representation.

    Each exponential is evaluated to a matrix on its own and the products
    are taken as matrix products, so the symbolic product is not involved.
    With ``size = order + 1`` every monomial above the truncation order maps
    to zero, which makes the truncated series exact in this representation.
    """
    ident = IdentityId(identity_id)
    n = _order(order)
    xm, ym = nilpotent_representation(q0, n + 1)

    def ev(elem):
        return pe_eval(elem, q0, xm, ym)

    if ident is IdentityId.DIRECT:
        lhs = ev(q_exp(X, n)).dot(ev(q_exp(Y, n)))
        rhs = ev(q_exp(X + Y, n))
    elif ident is IdentityId.REVERSED:
        lhs = ev(q_exp(Y, n)).dot(ev(q_exp(X, n)))
        rhs = ev(q_exp(reversed_argument(), n))
    else:
        raise ValueError(f"matrix cross-check is defined for direct and reversed, not {ident}")
    return bool(np.array_equal(lhs, rhs))
