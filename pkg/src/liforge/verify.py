"""Numerical checks of the standalone identities behind the Li formulas.

Each ``check_*`` returns a :class:`CheckReport`; :func:`run_all` runs the
default grid and returns the reports sorted by name, and
:func:`to_json_lines` serialises them.

    >>> from liforge.verify import check_integral_identity
    >>> check_integral_identity(1, 1).passed
    True
"""

from __future__ import annotations

import json
import math
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import partial

import numpy as np

from .context import PrecisionCtx, default_ctx
from .errors import PrecisionExhausted, TailTooLarge
from .hpcore import _to_mpc, gamma, xi, zeta
from .li import li_by_sum
from .numerics import quad_checked
from .zeros import ZeroTable, reference_zeros

__all__ = [
    "CheckReport",
    "check_integral_identity",
    "check_cos_identities",
    "check_hadamard",
    "check_fermi_dirac",
    "partition_function",
    "check_kn_li_equiv",
    "run_all",
    "to_json_lines",
    "CHECK_NAMES",
]

IDENTITY_TOL = 1e-12


@dataclass(frozen=True)
class CheckReport:
    name: str
    lhs: object
    rhs: object
    abs_err: float
    tol: float
    passed: bool
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.passed != (self.abs_err <= self.tol):
            raise ValueError("passed must equal abs_err <= tol")

    def to_json(self) -> str:
        def enc(v):
            if isinstance(v, (bool, int, str)):
                return v
            c = complex(v)
            return c.real if c.imag == 0 else [c.real, c.imag]

        row = {
            "name": self.name,
            "abs_err": float(self.abs_err),
            "tol": float(self.tol),
            "passed": bool(self.passed),
            "params": {k: enc(v) for k, v in sorted(self.params.items())},
            "lhs": enc(self.lhs),
            "rhs": enc(self.rhs),
        }
        return json.dumps(row, sort_keys=False)


def _report(name, lhs, rhs, err, tol, **params):
    err = float(err)
    return CheckReport(name, lhs, rhs, err, float(tol), err <= tol, params)


def _ctx(ctx):
    return default_ctx() if ctx is None else ctx


# --------------------------------------------------------------------------
# trigonometric integral identities
# --------------------------------------------------------------------------


def check_integral_identity(m: int, n: int, ctx: PrecisionCtx | None = None) -> CheckReport:
    """int_0^{pi/2} cos^n(t) sin(nt) sin(2mt) dt = pi / 2^(n+2) * C(n, m)."""
    if m < 1 or n < 1:
        raise ValueError("check_integral_identity needs m, n >= 1")
    mp = _ctx(ctx).mp
    lhs, _ = quad_checked(
        lambda t: mp.cos(t) ** n * mp.sin(n * t) * mp.sin(2 * m * t),
        [0, mp.pi / 4, mp.pi / 2],
        mp,
        IDENTITY_TOL / 100,
        what=f"integral identity m={m} n={n}",
    )
    rhs = mp.pi / mp.mpf(2) ** (n + 2) * mp.binomial(n, m)
    return _report("integral_identity", lhs, rhs, abs(lhs - rhs), IDENTITY_TOL, m=m, n=n)


def check_cos_identities(
    m: int, n: int, ctx: PrecisionCtx | None = None, which: str = "product"
) -> CheckReport:
    """The two cosine integrals over [0, pi/2].

    ``which="single"``:  int cos^n(t) cos((n+2)t) dt = 0.
    ``which="product"``: int cos^n(t) cos((n+2)t) cos(2mt) dt
    = pi / 2^(n+2) * C(n, m-1) for n > m-2, else 0.
    """
    if n < 0 or m < 1:
        raise ValueError("check_cos_identities needs n >= 0, m >= 1")
    if which not in ("single", "product"):
        raise ValueError(f"which must be 'single' or 'product', got {which!r}")
    mp = _ctx(ctx).mp
    if which == "single":
        f = lambda t: mp.cos(t) ** n * mp.cos((n + 2) * t)  # noqa: E731
        rhs = mp.zero
    else:
        f = lambda t: mp.cos(t) ** n * mp.cos((n + 2) * t) * mp.cos(2 * m * t)  # noqa: E731
        rhs = mp.pi / mp.mpf(2) ** (n + 2) * mp.binomial(n, m - 1) if n > m - 2 else mp.zero
    lhs, _ = quad_checked(
        f, [0, mp.pi / 4, mp.pi / 2], mp, IDENTITY_TOL / 100, what=f"cos identity m={m} n={n}"
    )
    return _report(f"cos_identity_{which}", lhs, rhs, abs(lhs - rhs), IDENTITY_TOL, m=m, n=n)


# --------------------------------------------------------------------------
# Hadamard product
# --------------------------------------------------------------------------


def _hadamard_tail(w, H, mp):
    """Smooth-density estimate of log of the omitted factors above H."""
    if H <= 2 * mp.pi:
        return mp.inf

    def f(mu):
        return mp.log(mu / (2 * mp.pi)) / (2 * mp.pi) * mp.log(1 - w / (mp.mpf(0.25) + mu * mu))

    val, _ = mp.quad(f, [H, 2 * H, 10 * H, mp.inf], error=True)
    return val


def check_hadamard(
    z, zeros: ZeroTable, ctx: PrecisionCtx | None = None, tol: float = 0.01
) -> CheckReport:
    """xi(z) against 1/2 prod_j (1 - z(1-z)/(1/4 + mu_j^2))^alpha_j.

    Each factor pairs a zero with its conjugate, so the product is
    symmetric under z -> 1-z.  ``abs_err`` is the relative error of the
    truncated product; the smooth-density estimate of the omitted tail is
    reported in ``params`` and must itself be below ``tol``.
    """
    ctx = _ctx(ctx)
    mp = ctx.mp
    z = _to_mpc(z, mp)
    w = z * (1 - z)
    log_prod = mp.fsum(
        int(r.alpha) * mp.log(1 - w / (mp.mpf(0.25) + mp.mpf(r.mu) ** 2)) for r in zeros
    )
    rhs = mp.exp(log_prod) / 2
    tail = _hadamard_tail(w, mp.mpf(zeros.max_height), mp) if w != 0 else mp.zero
    tail_rel = float(abs(mp.expm1(tail)))
    if tail_rel > tol:
        raise TailTooLarge(
            f"tail estimate {tail_rel:.3g} exceeds tol {tol:g} at max_height {zeros.max_height}"
        )
    lhs = xi(z, ctx)
    err = abs(lhs - rhs) / abs(lhs)
    return _report(
        "hadamard",
        lhs,
        rhs,
        err,
        tol,
        z=complex(z),
        zeros_used=zeros.zero_count,
        tail_estimate=tail_rel,
    )


# --------------------------------------------------------------------------
# Fermi-Dirac Mellin transform
# --------------------------------------------------------------------------


def _fermi_coeffs(K, mp):
    """Taylor coefficients of 1/(e^x + 1) at 0 from (e^x + 1) f = 1."""
    inv_fact = [1 / mp.factorial(j) for j in range(K + 1)]
    c = [mp.mpf(0.5)]
    for k in range(1, K + 1):
        c.append(-mp.fsum(c[k - j] * inv_fact[j] for j in range(1, k + 1)) / 2)
    return c


def _fermi_integral(z, mp, tol):
    """int_0^inf x^(z-1) / (e^x + 1) dx for Re z > 0.

    [0, a] termwise from the Taylor series (radius pi), which handles the
    x^(z-1) endpoint behaviour exactly; [a, 1] by quadrature; [1, inf)
    with x = e^u, truncated where exp(-x) drops below working precision.
    """
    a = mp.mpf(0.5)
    K = int((mp.dps + 5) * math.log(10) / math.log(2 * math.pi)) + 5
    c = _fermi_coeffs(K, mp)
    head = mp.fsum(c[k] * mp.power(a, z + k) / (z + k) for k in range(K + 1))
    periods = max(1, int(abs(float(z.imag)) * float(mp.log(2)) / (2 * math.pi)) + 1)
    mid_pts = [a + (1 - a) * mp.mpf(i) / (2 * periods) for i in range(2 * periods + 1)]
    mid, e1 = quad_checked(
        lambda x: mp.power(x, z - 1) / (mp.exp(x) + 1), mid_pts, mp, tol, what="Fermi-Dirac [a, 1]"
    )
    # beyond e^umax the integrand is below exp(-e^umax), i.e. under working precision
    umax = mp.log((mp.dps + 10) * math.log(10) + 10 * (abs(float(z.real)) + 1))
    step = mp.mpf(1) if z.imag == 0 else min(mp.mpf(1), mp.pi / abs(z.imag))
    n_seg = int(mp.ceil(umax / step))
    tail_pts = [umax * i / n_seg for i in range(n_seg + 1)]
    tail, e2 = quad_checked(
        lambda u: mp.exp(u * z) / (mp.exp(mp.exp(u)) + 1), tail_pts, mp, tol, what="Fermi-Dirac tail"
    )
    scale = abs(head) + abs(mid) + abs(tail)
    return head + mid + tail, scale


def check_fermi_dirac(z, ctx: PrecisionCtx | None = None, max_extra_digits: int = 80) -> CheckReport:
    """zeta(z) Gamma(z) (1 - 2^(1-z)) = int_0^inf x^(z-1) / (e^x + 1) dx, Re z > 0.

    ``abs_err`` is relative to |LHS|.  Near a zeta zero, or high on the
    critical line, |LHS| is far below the size of the integrand, so the
    comparison is repeated with as many extra digits as that cancellation
    costs; beyond ``max_extra_digits`` :class:`PrecisionExhausted` is raised.
    """
    ctx = _ctx(ctx)
    work = ctx
    while True:
        mp = work.mp
        zz = _to_mpc(z, mp)
        if not zz.real > 0:
            raise ValueError("check_fermi_dirac needs Re(z) > 0")
        if zz == 1:
            lhs = mp.log(2)  # removable: (1 - 2^(1-z)) cancels the pole
        else:
            lhs = zeta(zz, work) * gamma(zz, work) * (1 - mp.power(2, 1 - zz))
        rhs, scale = _fermi_integral(zz, mp, work.tol * 1e3)
        budget = IDENTITY_TOL * abs(lhs) / 100
        if scale * work.tol <= budget:
            break
        extra = work.work_digits - ctx.work_digits + int(mp.log10(scale * work.tol / budget)) + 10
        if extra > max_extra_digits:
            raise PrecisionExhausted(
                f"|LHS| = {mp.nstr(abs(lhs), 3)} needs more than {max_extra_digits} extra digits"
                " to be resolved from the integral"
            )
        work = PrecisionCtx.with_digits(ctx.work_digits + extra)
    err = abs(lhs - rhs) / abs(lhs)
    return _report(
        "fermi_dirac", lhs, rhs, err, IDENTITY_TOL, z=complex(zz), digits_used=work.work_digits
    )


# --------------------------------------------------------------------------
# partition function and the unimodular form of k_n
# --------------------------------------------------------------------------


def partition_function(beta: float, zeros: ZeroTable) -> float:
    """Z(beta) = sum_j alpha_j exp(-beta mu_j) over the table."""
    if not beta > 0:
        raise ValueError("beta must be positive")
    if len(zeros) == 0:
        return 0.0
    return math.fsum(zeros.alphas * np.exp(-beta * zeros.mus))


def check_kn_li_equiv(n: int, zeros: ZeroTable) -> CheckReport:
    """li_by_sum against 2 sum_j alpha_j (1 - cos(n theta_j)), e^{i theta} = 1 - 1/rho."""
    rho = 0.5 + 1j * zeros.mus
    theta = np.angle(1 - 1 / rho)
    rhs = math.fsum(2 * zeros.alphas * (1 - np.cos(n * theta)))
    lhs = li_by_sum(n, zeros)[-1].value
    return _report(
        "kn_li_equiv", lhs, rhs, abs(lhs - rhs), IDENTITY_TOL, n=n, zeros_used=zeros.zero_count
    )


# --------------------------------------------------------------------------
# runner
# --------------------------------------------------------------------------

CHECK_NAMES = (
    "cos_identity_product",
    "cos_identity_single",
    "fermi_dirac",
    "hadamard",
    "integral_identity",
    "kn_li_equiv",
)


def _jobs(zeros):
    """(family, [task]) pairs; each task is a callable taking a PrecisionCtx."""
    yield "integral_identity", [
        partial(check_integral_identity, m, n) for m in range(1, 11) for n in range(1, 11)
    ]
    yield "cos_identity_single", [
        partial(check_cos_identities, 1, n, which="single") for n in range(0, 11)
    ]
    yield "cos_identity_product", [
        partial(check_cos_identities, m, n, which="product")
        for m in range(1, 11)
        for n in range(0, 11)
    ]
    yield "hadamard", [partial(check_hadamard, 2, zeros)]
    yield "fermi_dirac", [partial(check_fermi_dirac, complex(0.5, zeros.mus[0]))]
    yield "kn_li_equiv", [partial(_no_ctx, check_kn_li_equiv, n, zeros) for n in range(1, 21)]


def _no_ctx(f, *args, ctx=None):
    return f(*args)


def run_all(
    ctx: PrecisionCtx | None = None,
    zeros: ZeroTable | None = None,
    only=None,
    workers: int = 1,
) -> list[CheckReport]:
    """Run the default check grid; reports sorted by name then parameters.

    ``only`` restricts to the named families (see :data:`CHECK_NAMES`).
    With ``workers > 1`` the checks run on a thread pool, each thread on its
    own clone of ``ctx`` (mpmath contexts are not thread-safe); the sorted
    output is identical to a serial run.
    """
    ctx = _ctx(ctx)
    zeros = reference_zeros() if zeros is None else zeros
    wanted = set(CHECK_NAMES if only is None else ([only] if isinstance(only, str) else only))
    unknown = wanted - set(CHECK_NAMES)
    if unknown:
        raise ValueError(f"unknown checks: {sorted(unknown)}")
    tasks = [t for name, ts in _jobs(zeros) if name in wanted for t in ts]
    if workers > 1:
        local = threading.local()

        def run(task):
            if not hasattr(local, "ctx"):
                local.ctx = ctx.clone()
            return task(ctx=local.ctx)

        with ThreadPoolExecutor(workers) as pool:
            reports = list(pool.map(run, tasks))
    else:
        reports = [task(ctx=ctx) for task in tasks]
    return sorted(reports, key=_sort_key)


def _sort_key(r: CheckReport):
    def val(v):
        if isinstance(v, complex):
            return (v.real, v.imag)
        return (v, 0.0) if isinstance(v, (int, float)) else (str(v), 0.0)

    return r.name, tuple((k, val(v)) for k, v in sorted(r.params.items()))


def to_json_lines(reports) -> str:
    return "".join(r.to_json() + "\n" for r in reports)
