"""
Li coefficients four ways
=========================

k_1..k_20 by the Taylor expansion of log xi(1/(1-z)), by the Chebyshev
sum over the first 10^4 zeros, by the integral against N(mu) with a
smooth tail up to 1e8, and (for n <= 3) by closed forms in the Stieltjes
constants.  The percentage columns are relative to the expansion.
"""

from liforge import (
    PrecisionCtx,
    li_by_expansion,
    li_by_integral,
    li_by_sum,
    li_closed_form,
    reference_zeros,
    stieltjes,
)

ctx = PrecisionCtx()
zeros = reference_zeros()

exp_ = li_by_expansion(20, ctx)
sum_ = li_by_sum(20, zeros)
int_ = li_by_integral(20, zeros, 1e8, ctx)

print(f"{'n':>3} {'expansion':>12} {'integral':>12} {'diff %':>9} {'sum':>12} {'diff %':>8}")
for e, i, s in zip(exp_, int_, sum_):
    ev = float(e.value)
    print(
        f"{e.n:>3} {ev:>12.6g} {i.value:>12.6g} {100 * (ev - i.value) / ev:>9.5f}"
        f" {s.value:>12.6g} {100 * (ev - s.value) / ev:>8.4f}"
    )

# The sum misses the zeros above the table; its err_est is the smooth-density
# estimate of that gap, and it is what the integral's tail puts back.
print("sum tail estimate for k_1:", sum_[0].err_est)

# Closed forms for the first three coefficients.
gammas = stieltjes(2, ctx)
for n in (1, 2, 3):
    cf = li_closed_form(n, gammas, ctx)
    print(f"k_{n} closed form - expansion = {float(cf.value - exp_[n - 1].value):.1e}")
