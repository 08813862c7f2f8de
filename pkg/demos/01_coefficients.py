"""
Exact coefficients in Q(q)
==========================

Laurent polynomials in q, canonical rational functions, and the
q-integers, q-factorials and Gaussian binomials built from them.
"""

from fractions import Fraction

from qplane.qcomb import eq5_lhs, gauss_binomial, q_factorial, q_integer
from qplane.ring import QINV, LaurentPoly, PoleError, Q, RatFun

# %%
# Laurent polynomials: q and q^-1 live side by side.
p = (1 + Q) * (1 + Q + Q ** 2)
print("[2][3] =", p)
print("q^-1 * (q - 1) =", QINV * (Q - 1))

# %%
# Rational functions are reduced on construction.  Equal values have equal
# representations, so == is a test of mathematical equality.
f = RatFun((Q - 1) * (Q ** 2 - 1), (Q - 1) * (Q - 1))
print("(q-1)(q^2-1)/(q-1)^2 =", f)
print("1/(q-1) + 1 =", RatFun(1, Q - 1) + 1)

# %%
# q-integers and q-factorials reduce to n and n! at q = 1.
for n in range(6):
    print(f"[{n}] = {q_integer(n)!s:<24} [{n}]! at q=1: {q_factorial(n).eval(1)}")

# %%
# Gaussian binomials come back with denominator 1.
print("[4 choose 2] =", gauss_binomial(4, 2))

# %%
# The coefficient identity behind the reversed relation, checked exactly.
for m, n in [(1, 1), (3, 2), (12, 7)]:
    lhs = eq5_lhs(m, n)
    print(f"m={m}, n={n}: sum == 1/([m]![n]!) ->", lhs == RatFun(1, q_factorial(m) * q_factorial(n)))

# %%
# Numbers enter only through evaluation; roots of unity hit poles.
g = RatFun(1, q_factorial(3))
print("1/[3]! at q = 1/2:", g.eval(Fraction(1, 2)))
try:
    g.eval(-1)
except PoleError as exc:
    print("at q = -1:", exc)
