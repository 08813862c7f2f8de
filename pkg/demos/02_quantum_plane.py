"""
Normal ordering on the quantum plane
====================================

Products of x and y are rewritten to x-before-y order with
y^a x^b = q^(ab) x^b y^a.
"""

from qplane.plane import X, Y, normal_order_word, pe_mul, pe_pow, q_exp

# %%
print("y*x       =", pe_mul(Y, X))
print("y^2 * x^3 =", pe_mul(pe_pow(Y, 2), pe_pow(X, 3)))
print("'yxyx'    =", normal_order_word("yxyx"))

# %%
# Powers of x + y have Gaussian binomial coefficients.
for n in range(1, 5):
    print(f"(x+y)^{n} =", pe_pow(X + Y, n))

# %%
# The q-exponential is a series truncated at total degree N.
print("exp_q(x) mod deg > 4 =", q_exp(X, 4))

# %%
# The q-derivative in x maps exp_q(x) to itself, one order lower.
from qplane.plane import q_derivative_x

print("D_q exp_q(x) == exp_q(x):", q_derivative_x(q_exp(X, 6)) == q_exp(X, 5))
