"""
Zeros on the critical line and the counting function
=====================================================

Locate the first zeros of zeta as sign changes of Hardy's Z function,
count them independently with the argument principle, and compare the
count with its smooth average part.
"""

import numpy as np

from liforge import PrecisionCtx, count_zeros, locate_zeros, n_smooth, reference_zeros

ctx = PrecisionCtx(work_digits=30, target_tol=1e-20)

# All zeros below height 50, bisected to 1e-10.
table = locate_zeros(50, ctx)
for j, r in enumerate(table, start=1):
    print(f"mu_{j:<2d} = {r.mu:.10f}   |Z(mu)| = {r.residual:.1e}")

# N(T) from the phase of xi agrees with the number of sign changes.
print("N(50) by the argument principle:", count_zeros(50, ctx))

# The bundled table holds the first 10^4 zeros. The step function N(T)
# wobbles around theta(T)/pi + 1 by a slowly growing amount.
zeros = reference_zeros()
T = np.array([100.0, 1000.0, 5000.0, 9000.0])
for t in T:
    print(f"T = {t:6.0f}: N = {zeros.step_count(t):5d}, smooth part = {n_smooth(t, ctx):9.3f}")
