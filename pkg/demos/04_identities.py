"""
Checking the identities
=======================

The trigonometric integrals behind the Chebyshev formulas, the Hadamard
product converging on xi(2) = pi/6, the Fermi-Dirac Mellin transform, and
the partition function of the zeros.
"""

import math

from liforge import (
    PrecisionCtx,
    check_fermi_dirac,
    check_hadamard,
    partition_function,
    reference_zeros,
    run_all,
)

ctx = PrecisionCtx()
zeros = reference_zeros()

reports = run_all(ctx, zeros)
print(f"{sum(r.passed for r in reports)}/{len(reports)} checks pass")

# The product over zeros approaches xi(2) roughly like 1/(number of zeros).
for n in (100, 1000, 10_000):
    r = check_hadamard(2, zeros.head(n), ctx)
    print(f"{n:>6} zeros: relative error {r.abs_err:.2e}, tail estimate {r.params['tail_estimate']:.2e}")

# Even next to the first zero, where both sides are tiny, they agree.
r = check_fermi_dirac(complex(0.5, zeros.mus[0]), ctx)
print("Fermi-Dirac at 1/2 + i mu_1: relative error", f"{r.abs_err:.1e}")

for beta in (0.1, 1.0, 10.0):
    Z = partition_function(beta, zeros)
    print(f"Z({beta:>4}) = {Z:.6e}, weight of mu_1 = {math.exp(-beta * zeros.mus[0]) / Z:.6f}")
