"""
The affine Weyl group
=====================

Elements are pairs t_lambda w.  Lengths, canonical reduced words, minimal
coset representatives and the Bruhat order, in affine A1 and A2.
"""
from fada import RootDatum, format_element, parse_element

A1 = RootDatum.from_type("A1")
A2 = RootDatum.from_type("A2")

# s0 is a translation times the reflection in the highest root
print("s0 =", format_element(A1, A1.s(0)))
print("s1 s0 =", format_element(A1, A1.mul(A1.s(1), A1.s(0))))

# the alternating elements sigma_i of affine A1
for i in range(-2, 5):
    u = A1.sigma(i)
    word = "".join(map(str, A1.reduced_word(u))) or "-"
    print(f"sigma_{i:<2} = {format_element(A1, u) or 'e':10} length {A1.length(u)}  word {word}")

# %%
# ell_alpha counts the affine inversions over the finite root alpha; the
# length is their sum.
t = parse_element(A2, "t[1,1]")
print("length of t[1,1]:", A2.length(t))
for a in A2.positive_roots:
    print("  ell", a, "=", A2.ell_alpha(t, a))

# minimal coset representatives w_lambda and a Bruhat comparison
w = A2.w_min_coset((1, 0))
print("w_(1,0) =", "".join(map(str, A2.reduced_word(w))))
print("w_(0,0) < w_(1,0):", A2.bruhat_lt(A2.w_min_coset((0, 0)), w))
print("ball of radius 2 in A2 has", len(A2.enumerate_ball(2)), "elements")
