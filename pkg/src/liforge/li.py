"""Li coefficients k_n by independent routes.

* ``sum``         -- Chebyshev sum over a zero table
* ``integral``    -- Chebyshev-U integral against N(mu)
* ``expansion``   -- Taylor coefficients of log xi(1/(1-z)) at 0
* ``a_recursion`` -- k_n = n a_n - sum k_j a_{n-j} from Li's a_j
* ``from_b``      -- binomial resummation of the expansion about z = -1
* ``closed_form`` -- k_1..k_3 from Stieltjes constants
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .chebyshev import cheb_T, cheb_U
from .context import PrecisionCtx, default_ctx
from .errors import (
    CutoffError,
    DivergenceWarning,
    NegativeSummandError,
    PrecisionExhausted,
    RadiusError,
    UnsupportedIndex,
)
from .hpcore import ln_gamma, xi, zeta
from .numerics import quad_checked, taylor_coeffs
from .zeros import ZeroTable, _n_smooth_mp

METHODS = ("expansion", "integral", "sum", "a_recursion", "closed_form", "from_b")
EXPANSION_RADIUS_LIMIT = 0.25

__all__ = [
    "LiResult",
    "Truncation",
    "BSeries",
    "StieltjesSet",
    "li_by_sum",
    "li_by_integral",
    "li_by_expansion",
    "a_coeffs",
    "li_by_a_recursion",
    "b_coeffs",
    "kn_from_b",
    "stieltjes",
    "polygamma",
    "li_closed_form",
]


@dataclass(frozen=True)
class Truncation:
    zeros_used: int | None = None
    cutoff_height: float | None = None
    series_terms: int | None = None


@dataclass(frozen=True)
class LiResult:
    n: int
    value: object
    method: str
    truncation: Truncation = field(default_factory=Truncation)
    err_est: float = 0.0

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        if not math.isfinite(float(self.value)):
            raise ValueError("Li coefficient must be finite")
        if not self.err_est >= 0:
            raise ValueError("err_est must be nonnegative")
        if self.method == "sum" and self.truncation.zeros_used is None:
            raise ValueError("sum results must record zeros_used")
        if self.method == "integral" and self.truncation.cutoff_height is None:
            raise ValueError("integral results must record cutoff_height")


@dataclass(frozen=True)
class BSeries:
    """Coefficients of log xi(1/(1-z)) = sum b_n (z+1)^n."""

    b: tuple
    err: tuple
    radius: float = 1.0
    b0_closed: object = None
    center: int = -1

    def __len__(self):
        return len(self.b)


@dataclass(frozen=True)
class StieltjesSet:
    gamma: tuple
    err: tuple = ()

    def __getitem__(self, n):
        return self.gamma[n]

    def __len__(self):
        return len(self.gamma)


def _nodes(n_terms: int, digits: int, ratio: float) -> int:
    """Node count max(64, 8n), raised so aliasing ~ ratio^-M stays below 10^-digits.

    ``ratio`` is (distance to nearest singularity) / (circle radius).
    """
    alias = math.ceil((digits + 10) * math.log(10) / math.log(ratio)) + n_terms
    return max(64, 8 * n_terms, alias)


def _check_nmax(n_max):
    if int(n_max) != n_max or n_max < 1:
        raise ValueError(f"n_max must be a positive integer, got {n_max!r}")
    return int(n_max)


# --------------------------------------------------------------------------
# zero-table methods
# --------------------------------------------------------------------------


def _cheb_arg(mus):
    return (4 * mus**2 - 1) / (4 * mus**2 + 1)


def _tail_density_bound(m: int, H: float) -> float:
    """Smooth-density estimate of the zeros above H: each summand <= m^2/mu^2."""
    if H <= 2 * math.pi:
        return math.inf
    return m * m * (math.log(H / (2 * math.pi)) + 1) / (2 * math.pi * H)


def li_by_sum(n_max: int, zeros: ZeroTable) -> list[LiResult]:
    """k_m = 2 sum_j alpha_j (1 - T_m((4 mu_j^2 - 1)/(4 mu_j^2 + 1))) over the table.

    ``err_est`` is the smooth-density estimate of the omitted tail (reported,
    not added).
    """
    n_max = _check_nmax(n_max)
    if len(zeros) == 0:
        raise ValueError("li_by_sum needs a nonempty zero table")
    x = _cheb_arg(zeros.mus)
    alpha = zeros.alphas.astype(float)
    out = []
    for m in range(1, n_max + 1):
        summands = 2 * alpha * (1 - cheb_T(m, x))
        if np.any(summands < 0):
            j = int(np.argmin(summands))
            raise NegativeSummandError(
                f"summand {summands[j]!r} < 0 at mu={zeros.mus[j]!r}, m={m}"
            )
        out.append(
            LiResult(
                m,
                math.fsum(summands),
                "sum",
                Truncation(zeros_used=zeros.zero_count, cutoff_height=zeros.max_height),
                _tail_density_bound(m, zeros.max_height),
            )
        )
    return out


def _g(m, x):
    """Antiderivative 2(T_m(x) - 1) of the integral kernel (in mu)."""
    return 2 * (cheb_T(m, x) - 1)


def li_by_integral(
    n_max: int,
    zeros: ZeroTable,
    cutoff: float,
    ctx: PrecisionCtx | None = None,
    tail: str = "smooth",
) -> list[LiResult]:
    """k_m = 32m int_0^inf mu/(4mu^2+1)^2 N(mu) U_{m-1}(...) dmu.

    N is the step function of the table on [0, max_height] (integrated
    exactly with the antiderivative 2(T_m - 1)).  On [max_height, cutoff]
    it is replaced by the average part n_smooth (``tail="smooth"``) or held
    at its last value (``tail="none"``).  Above the last modelled height N
    is frozen, which keeps the integral finite and, for ``tail="none"``,
    reduces the formula exactly to :func:`li_by_sum`.
    """
    n_max = _check_nmax(n_max)
    if tail not in ("smooth", "none"):
        raise ValueError(f"tail must be 'smooth' or 'none', got {tail!r}")
    H = float(zeros.max_height)
    if cutoff < H:
        raise CutoffError(f"cutoff {cutoff} is below the table height {H}")
    NH = zeros.zero_count
    x = _cheb_arg(zeros.mus)
    xH = _cheb_arg(H) if H > 0 else -1.0
    alpha = zeros.alphas.astype(float)
    smooth = tail == "smooth" and cutoff > H

    if smooth:
        ctx = default_ctx() if ctx is None else ctx
        mp = ctx.mp
        cache: dict = {}

        def ns(mu):
            key = mu
            if key not in cache:
                cache[key] = _n_smooth_mp(mu, ctx)
            return cache[key]

        def kernel(u, m):
            mu = mp.exp(u)
            q = 4 * mu * mu + 1
            xm = 1 - 2 / q
            return 32 * m * mu * mu / (q * q) * cheb_U(m - 1, xm) * ns(mu)

        lo, hi = math.log(H), math.log(cutoff)
        inner = [v for v in range(math.ceil(lo), math.floor(hi) + 1) if lo < v < hi]
        pts = [mp.mpf(v) for v in (lo, *inner, hi)]
        n_top = ns(mp.mpf(cutoff))
        mp_cut = mp.mpf(cutoff)
        q_cut = 4 * mp_cut**2 + 1
        x_cut = 1 - 2 / q_cut

    out = []
    for m in range(1, n_max + 1):
        gj = _g(m, x)
        exact = NH * _g(m, xH) - math.fsum(alpha * gj)
        err = 0.0
        if smooth:
            tail_val, qerr = quad_checked(
                lambda u: kernel(u, m), pts, mp, mp.mpf(1e-14) * m * m, what="integral tail"
            )
            beyond = -n_top * 2 * (cheb_T(m, x_cut) - 1)
            total = exact + float(tail_val + beyond)
            err = float(qerr)
        else:
            total = exact - NH * _g(m, xH)
        out.append(
            LiResult(
                m,
                total,
                "integral",
                Truncation(zeros_used=NH, cutoff_height=float(cutoff)),
                err,
            )
        )
    return out


# --------------------------------------------------------------------------
# expansion methods
# --------------------------------------------------------------------------


def _log_phi(ctx):
    mp = ctx.mp

    def f(z):
        v = xi(1 / (1 - z), ctx)
        lv = mp.log(v)
        if abs(lv.imag) >= mp.pi / 2:
            raise PrecisionExhausted("log xi left the principal sheet on the Cauchy circle")
        return lv

    return f


def li_by_expansion(
    n_max: int,
    ctx: PrecisionCtx | None = None,
    radius: float = 0.2,
    nodes: int | None = None,
) -> list[LiResult]:
    """k_n as n times the Taylor coefficients of log xi(1/(1-z)) at z = 0.

    Equivalent to reading k_{n+1} off phi'/phi; the logarithm is expanded
    instead so that no derivative of xi is needed.
    """
    n_max = _check_nmax(n_max)
    ctx = default_ctx() if ctx is None else ctx
    if not 0 < radius < EXPANSION_RADIUS_LIMIT:
        raise RadiusError(f"radius must lie in (0, 1/4), got {radius}")
    # log xi(1/(1-z)) is analytic in the open unit disk (zeros map to |z| = 1)
    M = nodes or _nodes(n_max, ctx.work_digits, 1 / radius)
    c, e = taylor_coeffs(_log_phi(ctx), 0, radius, n_max + 1, ctx.mp, M)
    return [
        LiResult(n, n * c[n].real, "expansion", Truncation(series_terms=M), float(n * e[n]))
        for n in range(1, n_max + 1)
    ]


def a_coeffs(n_max: int, ctx: PrecisionCtx | None = None) -> list:
    """Li's a_1..a_{n_max}: coefficients of 2 xi(1/(1-z)) = 1 + sum a_j z^j.

    a_j = 4 sum_p C(j-1, j-p)/p! int_1^inf F(x) (log(x)/2)^p (1 + (-1)^p x^(-1/2)) dx
    with F = d/dx[x^(3/2) psi'(x)] and psi(x) = sum_n exp(-pi n^2 x).
    """
    n_max = _check_nmax(n_max)
    ctx = default_ctx() if ctx is None else ctx
    mp = ctx.mp
    cutoff = ctx.tol * mp.eps
    cache: dict = {}

    def F(x):
        if x in cache:
            return cache[x]
        total = mp.zero
        n = 1
        while True:
            e = mp.exp(-mp.pi * n * n * x)
            if e < cutoff and n > 1:
                break
            a = mp.pi * n * n
            total += a * mp.sqrt(x) * (a * x - mp.mpf(1.5)) * e
            n += 1
        cache[x] = total
        return total

    pts = [1, 2, 4, 8, 16, 32, mp.inf]
    ints = []
    for p in range(1, n_max + 1):
        sign = (-1) ** p

        def integrand(x, p=p, sign=sign):
            return F(x) * (mp.log(x) / 2) ** p * (1 + sign / mp.sqrt(x))

        val, _ = quad_checked(integrand, pts, mp, ctx.tol * 1e10, what=f"a_j integral p={p}")
        ints.append(val)
    a = []
    for j in range(1, n_max + 1):
        s = mp.fsum(mp.binomial(j - 1, j - p) / mp.factorial(p) * ints[p - 1] for p in range(1, j + 1))
        a.append(4 * s)
    return a


def li_by_a_recursion(n_max: int, a, a_err=None) -> list[LiResult]:
    """k_n = n a_n - sum_{j<n} k_j a_{n-j}, with ``a[j-1] = a_j``."""
    n_max = _check_nmax(n_max)
    if len(a) < n_max:
        raise ValueError(f"need {n_max} coefficients a_j, got {len(a)}")
    if a_err is None:
        a_err = [abs(v) * (v.context.eps if hasattr(v, "context") else 2.2e-16) for v in a]
    k, kerr, out = [], [], []
    for n in range(1, n_max + 1):
        kn = n * a[n - 1] - sum(k[j - 1] * a[n - j - 1] for j in range(1, n))
        en = n * a_err[n - 1] + sum(
            abs(k[j - 1]) * a_err[n - j - 1] + kerr[j - 1] * abs(a[n - j - 1]) for j in range(1, n)
        )
        # k_1..k_{n-1} >= 0 forces a_1..a_{n-1} >= 0 and hence k_n <= n a_n;
        # a violation beyond rounding means the a_j are inconsistent
        if all(v >= 0 for v in k) and kn - n * a[n - 1] > en:
            warnings.warn(f"k_{n} exceeds n*a_n although all earlier k_j >= 0", RuntimeWarning)
        k.append(kn)
        kerr.append(en)
        out.append(LiResult(n, kn, "a_recursion", Truncation(series_terms=n), float(en)))
    return out


def b_coeffs(n_max: int, ctx: PrecisionCtx | None = None, radius: float = 1.0) -> BSeries:
    """b_0..b_{n_max} of log xi(1/(1-z)) expanded about z = -1."""
    if int(n_max) != n_max or n_max < 0:
        raise ValueError("n_max must be a nonnegative integer")
    ctx = default_ctx() if ctx is None else ctx
    if not 0 < radius < 2:
        raise RadiusError(f"radius must lie in (0, 2), got {radius}")
    mp = ctx.mp
    # nearest singularity (first zero, mapped) sits just inside |z + 1| = 2
    M = _nodes(n_max + 1, ctx.work_digits, 1.99 / radius)
    c, e = taylor_coeffs(_log_phi(ctx), -1, radius, n_max + 1, mp, M)
    b0_closed = mp.log(-mp.exp(ln_gamma(0.25, ctx)).real * zeta(0.5, ctx).real / (8 * mp.pi**0.25))
    return BSeries(
        tuple(v.real for v in c), tuple(e), radius=float(radius), b0_closed=b0_closed
    )


def kn_from_b(n_max: int, b: BSeries) -> list[LiResult]:
    """k_n = n sum_{j>=n} C(j, n) b_j, truncated at the end of ``b``."""
    n_max = _check_nmax(n_max)
    L = len(b.b)
    if L <= n_max:
        raise ValueError(f"b-series of length {L} is too short for n_max={n_max}")
    mp = b.b[0].context
    out = []
    for n in range(1, n_max + 1):
        terms = [n * mp.binomial(j, n) * b.b[j] for j in range(n, L)]
        kn = mp.fsum(terms)
        coeff_err = mp.fsum(n * mp.binomial(j, n) * b.err[j] for j in range(n, L))
        last = abs(terms[-1])
        tail = [abs(t) for t in terms[-5:]]
        floor = mp.mpf(10) ** (-mp.dps // 2) * max(1, abs(kn))
        if max(tail) > floor and tail[-1] >= tail[0]:
            warnings.warn(
                f"b-series terms for k_{n} are not decaying at index {L}", DivergenceWarning
            )
        out.append(
            LiResult(n, kn, "from_b", Truncation(series_terms=L), float(10 * last + coeff_err))
        )
    return out


# --------------------------------------------------------------------------
# constants and closed forms
# --------------------------------------------------------------------------


def stieltjes(n_max: int, ctx: PrecisionCtx | None = None, radius: float = 0.5) -> StieltjesSet:
    """gamma_0..gamma_{n_max} from the Laurent expansion of zeta at 1."""
    if int(n_max) != n_max or n_max < 0:
        raise ValueError("n_max must be a nonnegative integer")
    ctx = default_ctx() if ctx is None else ctx
    mp = ctx.mp

    def f(z):
        return zeta(z, ctx) - 1 / (z - 1)

    M = max(64, 8 * (n_max + 1))
    c, e = taylor_coeffs(f, 1, radius, n_max + 1, mp, M)
    gam = tuple((-1) ** n * mp.factorial(n) * c[n].real for n in range(n_max + 1))
    err = tuple(mp.factorial(n) * e[n] for n in range(n_max + 1))
    return StieltjesSet(gam, err)


def polygamma(k: int, z, ctx: PrecisionCtx | None = None):
    """psi_k(z) = (k+1)-th derivative of log Gamma, by a Cauchy integral."""
    ctx = default_ctx() if ctx is None else ctx
    mp = ctx.mp
    z = mp.mpf(z)
    if z <= 0 and mp.isint(z):
        raise ValueError("polygamma has a pole here")
    dist = abs(z - mp.nint(z)) if z < 0.5 else z
    radius = min(mp.mpf(0.5), dist / 2)
    M = _nodes(k + 2, ctx.work_digits, float(dist / radius))
    c, _ = taylor_coeffs(lambda w: ln_gamma(w, ctx), z, radius, k + 2, mp, M)
    return mp.factorial(k + 1) * c[k + 1].real


def li_closed_form(n: int, s: StieltjesSet, ctx: PrecisionCtx | None = None) -> LiResult:
    """k_1, k_2, k_3 in terms of gamma, gamma_1, gamma_2, psi_2(1) and zeta(3)."""
    if n not in (1, 2, 3):
        raise UnsupportedIndex(f"closed form known only for n in {{1, 2, 3}}, got {n}")
    if len(s) < 3:
        raise ValueError("need Stieltjes constants gamma_0..gamma_2")
    ctx = default_ctx() if ctx is None else ctx
    mp = ctx.mp
    g, g1, g2 = (mp.mpf(v) for v in s.gamma[:3])
    L = mp.log(1 / (4 * mp.pi))
    if n == 1:
        val = (2 + g + L) / 2
    elif n == 2:
        val = 1 + g - g**2 + mp.pi**2 / 8 + L - 2 * g1
    else:
        psi2 = polygamma(2, 1, ctx)
        val = (
            1 - 3 * g**2 + g**3 + 3 * mp.pi**2 / 8 + mp.mpf(1.5) * L - psi2 / 16
            - 6 * g1 + g * (mp.mpf(1.5) + 3 * g1) + mp.mpf(1.5) * g2 - zeta(3, ctx).real
        )
    err = sum((float(e) for e in s.err[:3]), 0.0) * 10 if s.err else 0.0
    return LiResult(n, val, "closed_form", Truncation(), err)
