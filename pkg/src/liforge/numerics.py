"""Cauchy-integral Taylor coefficients and checked quadrature."""

from __future__ import annotations

from .errors import QuadratureError


def taylor_coeffs(f, center, radius, n_terms, mp, nodes, offset=False, conj_symmetric=True):
    """Taylor coefficients c_0..c_{n_terms-1} of ``f`` about ``center``.

    Trapezoidal rule for the Cauchy integral on |z - center| = radius with
    ``nodes`` equispaced points (optionally shifted by half a step).  When
    ``f`` is real on the real axis and ``center`` is real, only the upper
    half circle is evaluated.

    Returns ``(coeffs, errs)``; ``errs[n]`` is the difference against the
    rule on every other node plus a rounding floor, as an error estimate.
    """
    M = nodes + (nodes % 2)
    delta = mp.mpf(0.5) if offset else mp.zero
    center, radius = mp.mpf(center), mp.mpf(radius)
    roots = [mp.expjpi(2 * mp.mpf(k) / M) for k in range(M)]
    shift = mp.expjpi(2 * delta / M)
    vals = [None] * M
    if conj_symmetric:
        upper = M // 2 + (0 if offset else 1)
        for j in range(upper):
            vals[j] = f(center + radius * roots[j] * shift)
        for j in range(upper, M):
            mirror = (M - 1 - j) if offset else (M - j)
            vals[j] = mp.conj(vals[mirror])
    else:
        for j in range(M):
            vals[j] = f(center + radius * roots[j] * shift)
    fmax = max(abs(v) for v in vals)
    coeffs, errs = [], []
    for n in range(n_terms):
        rot = mp.expjpi(-2 * delta * n / M)
        full = mp.fsum(vals[j] * mp.conj(roots[(j * n) % M]) for j in range(M)) / M
        half = mp.fsum(vals[j] * mp.conj(roots[(j * n) % M]) for j in range(0, M, 2)) / (M // 2)
        scale = radius**n
        c = full * rot / scale
        coeffs.append(c)
        errs.append(abs(full - half) / scale + 10 * mp.eps * fmax / scale)
    return coeffs, errs


def unwrap_log(vals, mp):
    """Logs of ``vals`` made continuous along the sequence (starting principal)."""
    out = []
    prev = None
    for v in vals:
        lv = mp.log(v)
        if prev is not None:
            k = mp.nint((prev.imag - lv.imag) / (2 * mp.pi))
            lv += mp.mpc(0, 2 * mp.pi * k)
        out.append(lv)
        prev = lv
    return out


def quad_checked(f, points, mp, tol, what="integral"):
    """mpmath tanh-sinh quadrature over consecutive ``points``, raising on failure."""
    val, err = mp.quad(f, points, error=True)
    if not err <= tol:
        raise QuadratureError(f"{what}: error estimate {mp.nstr(err, 3)} exceeds {mp.nstr(tol, 3)}")
    return val, err
