"""Exact q-exponential identities on the Manin quantum plane ``xy = q^-1 yx``."""

from .identities import (
    IdentityId,
    IdentityReport,
    check_classical_limit,
    check_coeff5,
    check_direct,
    check_intermediate,
    check_qbinom,
    check_reversed,
    check_xpower,
    run_suite,
)
from .parser import elaborate, parse
from .plane import (
    PlaneElement,
    X,
    Y,
    normal_order_word,
    pe_eval,
    pe_mul,
    pe_pow,
    q_exp,
)
from .qcomb import eq5_lhs, gauss_binomial, q_factorial, q_integer, qpow_shifted_product
from .ring import QINV, LaurentPoly, PoleError, Q, RatFun

__version__ = "0.1.0"
