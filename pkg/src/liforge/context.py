"""Numeric policy object passed to every high-precision routine."""

from __future__ import annotations

import os
from dataclasses import dataclass, replace
from functools import cached_property

import mpmath

GUARD_DIGITS = 10


@dataclass(frozen=True)
class PrecisionCtx:
    """Working precision and tolerances.

    Each instance owns a private mpmath context (created lazily), so two
    threads holding different ``PrecisionCtx`` objects never share mutable
    precision state. Use :meth:`clone` to hand a context to a worker.
    """

    work_digits: int = 50
    target_tol: float = 1e-40
    em_terms: int = 20
    max_branch_step: float = 0.05

    def __post_init__(self):
        if self.work_digits < 20:
            raise ValueError("work_digits must be >= 20")
        if self.target_tol < 10.0 ** (-self.work_digits + 5):
            raise ValueError("target_tol is below what work_digits can deliver")
        if self.em_terms < 2:
            raise ValueError("em_terms must be >= 2")
        if not self.max_branch_step > 0:
            raise ValueError("max_branch_step must be positive")

    @cached_property
    def mp(self) -> mpmath.ctx_mp.MPContext:
        ctx = mpmath.MPContext()
        ctx.dps = self.work_digits + GUARD_DIGITS
        return ctx

    @property
    def tol(self):
        return self.mp.mpf(self.target_tol)

    def clone(self, **changes) -> "PrecisionCtx":
        return replace(self, **changes)

    @classmethod
    def with_digits(cls, digits: int, **kw) -> "PrecisionCtx":
        """Context at ``digits`` with the tolerance scaled to match."""
        return cls(work_digits=digits, target_tol=10.0 ** (-(digits - 10)), **kw)


def default_ctx() -> PrecisionCtx:
    """Default policy; ``LIFORGE_DIGITS`` in the environment overrides precision."""
    digits = os.environ.get("LIFORGE_DIGITS")
    if digits:
        return PrecisionCtx.with_digits(int(digits))
    return PrecisionCtx()
