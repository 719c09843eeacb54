"""Arbitrary-precision log-gamma, zeta, xi and the critical-line phase.

Everything here works on the private mpmath context carried by a
:class:`~liforge.context.PrecisionCtx`; inputs may be Python numbers or
mpmath values from any context and are converted on entry.

    >>> from liforge import PrecisionCtx, xi
    >>> ctx = PrecisionCtx(work_digits=30, target_tol=1e-25)
    >>> print(ctx.mp.nstr(xi(0, ctx).real, 10))
    0.5
"""

from __future__ import annotations

import math

from .context import PrecisionCtx, default_ctx
from .errors import (
    BranchTrackingError,
    NearZeroError,
    PoleError,
    PrecisionExhausted,
)

__all__ = [
    "ComplexHP",
    "ln_gamma",
    "gamma",
    "zeta",
    "zeta_times_sm1",
    "xi",
    "theta_avg",
    "hardy_z",
    "im_log_xi_critical",
]

# ComplexHP is simply the mpc type of the owning context; this alias is for
# annotations only.
ComplexHP = object


def _ctx(ctx):
    return default_ctx() if ctx is None else ctx


def _to_mpc(z, mp):
    if hasattr(z, "_mpc_"):
        return mp.make_mpc(z._mpc_)
    if hasattr(z, "_mpf_"):
        return mp.make_mpc((z._mpf_, mp.zero._mpf_))
    return mp.mpc(z)


def _to_mpf(x, mp):
    if hasattr(x, "_mpf_"):
        return mp.make_mpf(x._mpf_)
    return mp.mpf(x)


def _is_nonpositive_integer(z, mp) -> bool:
    return z.imag == 0 and z.real <= 0 and mp.isint(z.real)


def _finite(z, mp, what):
    if not (mp.isfinite(z.real) and mp.isfinite(z.imag)):
        raise PrecisionExhausted(f"{what} overflowed at working precision")
    return z


# --------------------------------------------------------------------------
# log-gamma
# --------------------------------------------------------------------------


def _stirling(w, mp, eps):
    """Stirling series for log Gamma(w); ``w`` must be far from the origin."""
    total = (w - 0.5) * mp.log(w) - w + mp.log(2 * mp.pi) / 2
    w2 = w * w
    wpow = w
    prev = mp.inf
    for k in range(1, 10_000):
        term = mp.bernoulli(2 * k) / (2 * k * (2 * k - 1) * wpow)
        mag = abs(term)
        total += term
        if mag < eps * abs(total):
            return total
        if mag > prev:
            raise PrecisionExhausted("Stirling series diverged before reaching tolerance")
        prev = mag
        wpow *= w2
    raise PrecisionExhausted("Stirling series did not converge")


def _ln_gamma(z, mp, eps):
    radius = 0.5 * mp.dps + 10
    if abs(z.imag) >= radius:
        shift = max(0, math.ceil(1 - float(z.real)))
    else:
        shift = max(0, math.ceil(radius - float(z.real)))
    if shift == 0:
        return _stirling(z, mp, eps)
    # log of the shift product, with the 2*pi*i branch fixed from the sum of
    # the individual arguments (so the result is the principal log-gamma)
    prod = mp.one
    argsum = 0.0
    zr, zi = float(z.real), float(z.imag)
    for k in range(shift):
        prod *= z + k
        argsum += math.atan2(zi, zr + k)
    logprod = mp.log(prod)
    wraps = round((argsum - float(logprod.imag)) / (2 * math.pi))
    logprod += mp.mpc(0, 2 * mp.pi * wraps)
    return _stirling(z + shift, mp, eps) - logprod


def ln_gamma(z, ctx: PrecisionCtx | None = None):
    """Principal branch of log Gamma(z)."""
    ctx = _ctx(ctx)
    mp = ctx.mp
    z = _to_mpc(z, mp)
    if _is_nonpositive_integer(z, mp):
        raise PoleError(f"Gamma has a pole at {z.real}")
    return _finite(_ln_gamma(z, mp, mp.eps), mp, "ln_gamma")


def gamma(z, ctx: PrecisionCtx | None = None):
    ctx = _ctx(ctx)
    return ctx.mp.exp(ln_gamma(z, ctx))


# --------------------------------------------------------------------------
# zeta
# --------------------------------------------------------------------------


def _em_sum(s, ctx: PrecisionCtx, sm1: bool):
    """Euler-Maclaurin for zeta(s), or (s-1)*zeta(s) when ``sm1`` is set.

    Requires Re(s) > -1 or so; callers reflect first.
    """
    mp = ctx.mp
    tol = ctx.tol
    N = max(ctx.work_digits, int(math.ceil(abs(float(s.imag)))))
    max_terms = 4 * ctx.em_terms + ctx.work_digits
    for _attempt in range(4):
        head = mp.fsum(mp.power(n, -s) for n in range(1, N))
        Ns = mp.power(N, -s)
        tail = Ns / 2
        poch = s
        npow = Ns / N
        scale = abs(head) + 1
        converged = False
        for k in range(1, max_terms + 1):
            term = mp.bernoulli(2 * k) / mp.factorial(2 * k) * poch * npow
            tail += term
            if k >= ctx.em_terms and abs(term) < tol * scale * 1e-3:
                converged = True
                break
            poch *= (s + 2 * k - 1) * (s + 2 * k)
            npow /= N * N
        if converged:
            if sm1:
                return (s - 1) * (head + tail) + N * Ns
            return head + tail + N * Ns / (s - 1)
        N *= 2
    raise PrecisionExhausted("Euler-Maclaurin tail did not reach target_tol")


def zeta_times_sm1(z, ctx: PrecisionCtx | None = None):
    """(z - 1) * zeta(z); entire, equal to 1 at z = 1. Needs Re(z) >= 0."""
    ctx = _ctx(ctx)
    mp = ctx.mp
    z = _to_mpc(z, mp)
    if z.real < 0:
        return (z - 1) * zeta(z, ctx)
    return _finite(_em_sum(z, ctx, sm1=True), mp, "zeta")


def zeta(z, ctx: PrecisionCtx | None = None):
    """Riemann zeta on the whole plane minus z = 1.

    Euler-Maclaurin for Re(z) >= 0, the functional equation for Re(z) < 0.
    """
    ctx = _ctx(ctx)
    mp = ctx.mp
    z = _to_mpc(z, mp)
    if z == 1:
        raise PoleError("zeta has a pole at z = 1")
    if z.real >= 0:
        return _finite(_em_sum(z, ctx, sm1=False), mp, "zeta")
    w = 1 - z
    refl = mp.power(2, z) * mp.power(mp.pi, z - 1) * mp.sinpi(z / 2)
    if refl == 0:
        return mp.mpc(0)
    val = refl * mp.exp(_ln_gamma(w, mp, mp.eps)) * _em_sum(w, ctx, sm1=False)
    return _finite(val, mp, "zeta")


# --------------------------------------------------------------------------
# xi and the critical line
# --------------------------------------------------------------------------


def xi(z, ctx: PrecisionCtx | None = None):
    """Riemann xi(z) = z(z-1)/2 * pi^(-z/2) * Gamma(z/2) * zeta(z).

    The removable singularities are never formed: for Re(z) >= 0 the
    product is arranged as Gamma(z/2 + 1) * pi^(-z/2) * (z-1)zeta(z); for
    Re(z) < 0 the reflected form
    z(z-1)/2 * (4 pi)^(z/2) * Gamma(1-z) / Gamma(1-z/2) * zeta(1-z) is used,
    with z * zeta(1-z) taken as -(w-1)zeta(w), w = 1-z, so that nothing
    blows up as z -> 0 from the left.
    """
    ctx = _ctx(ctx)
    mp = ctx.mp
    eps = mp.eps
    z = _to_mpc(z, mp)
    if z.real >= 0:
        lg = _ln_gamma(z / 2 + 1, mp, eps)
        val = mp.exp(lg - z / 2 * mp.log(mp.pi)) * _em_sum(z, ctx, sm1=True)
    else:
        w = 1 - z
        lg = _ln_gamma(w, mp, eps) - _ln_gamma(1 - z / 2, mp, eps)
        # z(z-1)/2 * zeta(1-z) = (1-z)/2 * [(w-1) zeta(w)], w = 1-z: no pole near z = 0
        val = (1 - z) / 2 * mp.exp(lg + z / 2 * mp.log(4 * mp.pi)) * _em_sum(w, ctx, sm1=True)
    if z.imag == 0:
        val = mp.mpc(val.real, 0)
    return _finite(val, mp, "xi")


def theta_avg(T, ctx: PrecisionCtx | None = None):
    """Average part theta(T) = Im log Gamma(1/4 + iT/2) - (T/2) log pi.

    The principal log-gamma is continuous along this ray, so no explicit
    branch tracking is required; theta(0) = 0.
    """
    ctx = _ctx(ctx)
    mp = ctx.mp
    T = _to_mpf(T, mp)
    if T < 0:
        raise ValueError("theta_avg needs T >= 0")
    if T == 0:
        return mp.zero
    lg = _ln_gamma(mp.mpc(0.25, T / 2), mp, mp.eps)
    return lg.imag - T / 2 * mp.log(mp.pi)


def hardy_z(t, ctx: PrecisionCtx | None = None):
    """Z(t) = exp(i theta(t)) zeta(1/2 + it), real for real t."""
    ctx = _ctx(ctx)
    mp = ctx.mp
    t = _to_mpf(t, mp)
    val = mp.expj(theta_avg(t, ctx)) * _em_sum(mp.mpc(0.5, t), ctx, sm1=False)
    if abs(val.imag) > 100 * ctx.tol * max(1, abs(val)):
        raise PrecisionExhausted(f"Z({mp.nstr(t, 15)}) has imaginary residue {mp.nstr(val.imag, 5)}")
    return val.real


def _track_phase(f, a, b, h0, mp, min_step=1e-14):
    """Continuous argument change of f along the real segment a -> b.

    Steps start at ``h0`` and are halved whenever consecutive samples differ
    in phase by pi/2 or more.
    """
    direction = 1 if b > a else -1
    x = mp.mpf(a)
    fx = f(x)
    phase = mp.zero
    h = mp.mpf(h0)
    while (b - x) * direction > 0:
        step = min(h, abs(b - x))
        while True:
            xn = x + direction * step
            fn = f(xn)
            d = mp.arg(fn / fx)
            if abs(d) < mp.pi / 2:
                break
            step /= 2
            if step < min_step:
                raise BranchTrackingError(
                    f"phase jump unresolved near x={mp.nstr(x, 15)} (step underflow)"
                )
        phase += d
        x, fx = xn, fn
        h = min(2 * step, mp.mpf(h0))
    return phase


def im_log_xi_critical(T, ctx: PrecisionCtx | None = None):
    """Im log xi(1/2 + iT), continued from the real axis.

    xi is real on the critical line, so its phase is only meaningful as a
    continuation.  The continuation runs along the contour 1/2 -> 2 ->
    2 + iT -> 1/2 + iT that encloses the zeros of height below T: the
    Gamma and power factors contribute theta(T) + pi, Re zeta > 0 on
    Re(s) = 2 fixes the branch there, and the remaining horizontal leg is
    tracked numerically on (s-1)zeta(s) to keep clear of the pole.
    Dividing the result by pi gives N(T).
    """
    ctx = _ctx(ctx)
    mp = ctx.mp
    T = _to_mpf(T, mp)
    if T < 0:
        raise ValueError("im_log_xi_critical needs T >= 0")
    if T == 0:
        return mp.zero
    on_line = _em_sum(mp.mpc(0.5, T), ctx, sm1=True)
    if abs(on_line) < ctx.tol:
        raise NearZeroError(f"|xi| below tolerance at T={mp.nstr(T, 20)}")

    def F(sigma):
        if sigma == 0.5:
            return on_line
        return _em_sum(mp.mpc(sigma, T), ctx, sm1=True)

    start = mp.arg(F(mp.mpf(2)))
    swept = _track_phase(F, mp.mpf(2), mp.mpf(0.5), ctx.max_branch_step, mp)
    arg_zeta = start + swept - mp.atan2(T, -0.5)
    return theta_avg(T, ctx) + mp.pi + arg_zeta
