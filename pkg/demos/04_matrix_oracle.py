"""
Matrix representations as an independent check
===============================================

With X the shift matrix and Y = X diag(1, q^-1, q^-2, ...), both
generators are nilpotent and satisfy XY = q^-1 YX.  Monomials of total
degree >= size vanish, so truncated series multiply exactly as matrices.
"""

from fractions import Fraction

import numpy as np

from qplane.identities import matrix_cross_check, reversed_argument
from qplane.plane import X, Y, nilpotent_representation, pe_eval, q_exp

q0 = Fraction(3, 2)
N = 5
xm, ym = nilpotent_representation(q0, N + 1)
print("X Y == q0^-1 Y X:", np.array_equal(xm.dot(ym) * q0, ym.dot(xm)))

# %%
lhs = pe_eval(q_exp(Y, N), q0, xm, ym).dot(pe_eval(q_exp(X, N), q0, xm, ym))
rhs = pe_eval(q_exp(reversed_argument(), N), q0, xm, ym)
print("exp(Y) exp(X) == exp(X + Y + (q0 - 1) XY):", np.array_equal(lhs, rhs))
print("first row:", [str(v) for v in rhs[0]])

# %%
for q0 in (Fraction(2), Fraction(-5, 3)):
    print(q0, [matrix_cross_check(kind, n, q0) for kind in ("direct", "reversed") for n in (4, 8)])
