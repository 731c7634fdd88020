"""
Scalars in the formal group algebra
===================================

Elements x_lambda for the hyperbolic law F(x, y) = x + y - beta x y, the
Weyl group action on them, and the same ring computed from a truncated
table of coefficients.
"""
from pathlib import Path

from fada import FormalGroupLaw, make_context, make_ring

ctx = make_context("A2")
r = ctx.ring

# x_lambda is built from the simple-root variables by the formal sum
print("x_{a1+a2}  =", r.format(r.x_of((1, 1))))
print("x_{-a1}    =", r.format(r.x_of((-1, 0))))
print("kappa_a1   =", r.format(r.kappa((1, 0))))

# the finite Weyl group permutes the x_alpha
s1 = ctx.datum.s(1).w
print("s1(x_a2)   =", r.format(r.act(s1, r.x(2))))

# x_{2 alpha} is divisible by x_alpha
ok, q = r.divides(r.x_of((2, 0)), (1, 0), 1)
print("x_{2a1}/x_a1 =", r.format(q))

# specializing beta: 0 gives cohomology, 1 gives K-theory
print("kappa at beta = 0:", r.format(r.specialize_beta(r.kappa((1, 0)), 0)))
print("kappa at beta = 1:", r.format(r.specialize_beta(r.kappa((1, 0)), 1)))

# %%
# A law given only by coefficients; scalars become truncated power series
# with denominators drawn from root variables.
law = FormalGroupLaw.from_file(Path(__file__).parent / "data" / "cubic_log.fgl", 6)
t = make_ring(ctx.datum, law)
# the logarithm x + x^3 is odd, so the formal inverse is -x and kappa vanishes
print("table law, x_{-a1} =", t.format(t.x_of((-1, 0))))
print("table law, kappa   =", t.format(t.kappa((1, 0))))
