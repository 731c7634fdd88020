"""
The Peterson subalgebra in affine A1
====================================

Elements supported on translations.  Generators s = frak_Y_0 and
t = frak_Y_10, the relation between them, and the coproduct tables in
the frak_Y basis, symbolic and at beta = 0.
"""
from fada import make_context

ctx = make_context("A1")
P, r, alg = ctx.peterson, ctx.ring, ctx.alg

y0, y10 = P.frak_y_sigma(1), P.frak_y_sigma(2)
print("frak_Y_0  =", alg.format(y0))
print("frak_Y_10 =", alg.format(y10))

# the square of frak_Y_0 expands in the frak_Y_{sigma_i}
for i, c in sorted(P.expand_in_frak_y(y0 * y0).items()):
    print(f"  frak_Y_0^2 has frak_Y_sigma_{i} coefficient {r.format(c)}")

# the same relation in the generators s and t
s, t = P.gen_s(), P.gen_t()
print("s^2 =", s * s)
print("frak_Y_010 =", P.to_presentation(P.frak_y_sigma(3)))

# %%
# Coproduct of frak_Y_10 as a table over pairs (i, j) of frak_Y_sigma indices.
for (i, j), c in sorted(P.coproduct_in_frak_y(y10).items()):
    print(f"  ({i},{j}): {r.format(c)}")

print("at beta = 0:")
c0 = make_context("A1", beta=0)
for (i, j), c in sorted(c0.peterson.coproduct_in_frak_y(c0.peterson.frak_y_sigma(2)).items()):
    print(f"  ({i},{j}): {c0.ring.format(c)}")
