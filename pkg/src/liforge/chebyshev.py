"""Chebyshev polynomials T_n and U_n on [-1, 1] in trigonometric form.

Both functions accept Python floats, numpy arrays or mpmath numbers (the
mpmath branch computes at the precision of the argument's own context).
Double-precision input is evaluated in numpy's extended ``longdouble`` and
rounded once, so the error of n*arccos(x) does not grow visibly with n.
"""

from __future__ import annotations

import numpy as np

from .errors import DomainError


def _check_n(n):
    if int(n) != n or n < 0:
        raise DomainError(f"degree must be a nonnegative integer, got {n!r}")
    return int(n)


def cheb_T(n: int, x):
    """T_n(x) = cos(n arccos x)."""
    n = _check_n(n)
    mp = getattr(x, "context", None)
    if mp is not None:
        if abs(x) > 1:
            raise DomainError(f"|x| > 1: {x}")
        return mp.cos(n * mp.acos(x))
    xa = np.asarray(x, dtype=float)
    if np.any(np.abs(xa) > 1):
        raise DomainError("cheb_T is only defined here for -1 <= x <= 1")
    out = np.cos(n * np.arccos(xa.astype(np.longdouble))).astype(float)
    return float(out) if out.ndim == 0 else out


def cheb_U(n: int, x):
    """U_n(x) = sin((n+1) theta) / sin(theta), x = cos(theta); U_n(+-1) by limit."""
    n = _check_n(n)
    mp = getattr(x, "context", None)
    if mp is not None:
        if abs(x) > 1:
            raise DomainError(f"|x| > 1: {x}")
        if x == 1:
            return mp.mpf(n + 1)
        if x == -1:
            return mp.mpf((-1) ** n * (n + 1))
        # U_n(-x) = (-1)^n U_n(x): keep theta near 0, away from the pi cancellation
        sign = -1 if (x < 0 and n % 2) else 1
        th = mp.acos(abs(x))
        return sign * mp.sin((n + 1) * th) / mp.sin(th)
    xa = np.asarray(x, dtype=float)
    if np.any(np.abs(xa) > 1):
        raise DomainError("cheb_U is only defined here for -1 <= x <= 1")
    # reflect to x >= 0, where sin((n+1) theta) / sin(theta) has no pi cancellation
    sign = np.where((xa < 0) & (n % 2 == 1), -1.0, 1.0)
    th = np.arccos(np.abs(xa).astype(np.longdouble))
    s = np.sin(th)
    with np.errstate(invalid="ignore", divide="ignore"):
        out = sign * (np.sin((n + 1) * th) / s).astype(float)
    out = np.where(xa == 1.0, n + 1.0, out)
    out = np.where(xa == -1.0, (-1.0) ** n * (n + 1), out)
    return float(out) if out.ndim == 0 else out
