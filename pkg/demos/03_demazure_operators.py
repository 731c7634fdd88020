"""
Demazure elements and the twisted group algebra
===============================================

Sums of scalar multiples of eta_u, with the product twisted by the Weyl
group action.  The Demazure elements X_i, the push-pull elements Y_i and
the projection psi onto translations.
"""
from fada import evaluate, make_context

ctx = make_context("A1")
alg, r, d = ctx.alg, ctx.ring, ctx.datum

X0, X1 = alg.demazure(0), alg.demazure(1)
print("X1      =", alg.format(X1))
print("X1 X0   =", alg.format(X1 * X0))

# quadratic relation X_i^2 = kappa X_i
k = r.kappa((1,))
print("X1^2 - kappa X1 = 0:", (X1 * X1 - k * X1).is_zero())

# psi sends X0 to Z_theta and kills anything ending in a finite X_i
print("psi(X0) == Z_theta:", (alg.psi(X0) - alg.z_elt(d.theta)).is_zero())
print("psi(X0 X1) == 0:", alg.psi(X0 * X1).is_zero())

# expansion in the basis X_{I_u} of canonical words
z = X0 * X1 + r.x(1) * X1
for word, c in alg.expand_in_x_basis(z).items():
    print("  X", list(word), ":", r.format(c))

# %%
# Expressions can also be written as text.
A2 = make_context("A2")
braid = evaluate("X1*X2*X1 - X2*X1*X2", A2.alg)
print("braid relation in A2 holds:", braid.is_zero())
