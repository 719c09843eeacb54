"""
The expansion about z = -1
==========================

log xi(1/(1-z)) expanded about z = -1 has b_1 = 0 and b_2 = b_3, and the
Li coefficients follow by a binomial resummation of the b_n.  The same
coefficients also come from Li's recursion with the a_j integrals.
"""

from liforge import PrecisionCtx, a_coeffs, b_coeffs, kn_from_b, li_by_a_recursion, li_by_expansion

ctx = PrecisionCtx()
b = b_coeffs(160, ctx)
mp = ctx.mp
print("b_0       =", mp.nstr(b.b[0], 25))
print("closed    =", mp.nstr(b.b0_closed, 25))
print("b_1       =", mp.nstr(b.b[1], 5))
print("b_2 - b_3 =", mp.nstr(b.b[2] - b.b[3], 5))

ref = li_by_expansion(10, ctx)
fb = kn_from_b(10, b)
rec = li_by_a_recursion(10, a_coeffs(10, ctx))
for r, f, a in zip(ref, fb, rec):
    print(f"k_{r.n:<2d} {mp.nstr(r.value, 15):>18}  from b: {float(f.value - r.value):+.1e}"
          f"  recursion: {float(a.value - r.value):+.1e}")
