"""
Functionals on the twisted group algebra
========================================

Functionals on a ball of the affine Weyl group, the two module actions,
the basis dual to Y_{I_w}, and the GKM divisibility conditions.
"""
from fada import DualSpace, format_element, make_context

ctx = make_context("A1", ball=5)
D = DualSpace(ctx.alg, 5)
d, r, alg = ctx.datum, ctx.ring, ctx.alg

# (z . f)(z') = f(z' z)
f = D.f(d.sigma(2), r.x(1))
z, zp = alg.demazure(1), alg.demazure(0)
lhs = D.bullet(z, f)(zp)
print("(z . f)(z') == f(z' z):", r.eq(lhs, f(zp * z)))

# the dual basis and its value at the diagonal
basis = D.dual_basis_y()
for w in d.enumerate_ball(3):
    print(f"  Y*_{format_element(d, w) or 'e':10} at eta_w: {r.format(basis[w](w))}")

# %%
# The dual basis satisfies the GKM conditions; a raw point functional does not.
print("GKM, Y*_(t[1]):", D.gkm_check(basis[d.translation((1,))])["status"])
rep = D.gkm_check(D.f(d.translation((2,))))
print("GKM, f_(t[2]):", rep["status"], [(x["condition"], x["exponent"]) for x in rep["failures"][:2]])

# the strata of the filtration by coset length
for i in range(3):
    print(f"stratum {i}:", [format_element(d, u) or "e" for u in D.filtration_stratum(i)])
