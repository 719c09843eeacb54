"""Critical-line zero location, zero tables and the counting function N(T)."""

from __future__ import annotations

import io
import logging
import math
from dataclasses import dataclass
from functools import cached_property
from importlib import resources
from pathlib import Path
from typing import Iterable, TextIO

import numpy as np

from . import __version__, fastlane
from .context import PrecisionCtx, default_ctx
from .errors import (
    AmbiguousCountError,
    MissedZeroError,
    OrderError,
    ParseError,
)
from .hpcore import hardy_z, im_log_xi_critical, theta_avg

log = logging.getLogger(__name__)

CACHE_MAGIC = "# li-forge-cache v1"
MERGE_TOL = 1e-9
FIRST_ZERO_FLOOR = 14.0

__all__ = [
    "ZeroRecord",
    "ZeroTable",
    "count_zeros",
    "locate_zeros",
    "ingest_zero_table",
    "save_table",
    "load_table",
    "n_smooth",
    "reference_zeros",
]


@dataclass(frozen=True)
class ZeroRecord:
    mu: float
    alpha: int = 1
    source: str = "computed"
    residual: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "mu", float(self.mu))
        object.__setattr__(self, "residual", float(self.residual))
        if self.alpha < 1:
            raise ValueError("alpha must be >= 1")
        if not self.mu > 0:
            raise ValueError("ordinate must be positive")
        if self.source not in ("computed", "ingested"):
            raise ValueError(f"unknown source {self.source!r}")


@dataclass(frozen=True)
class ZeroTable:
    """Immutable, strictly increasing list of zero ordinates.

    ``verified_through`` is the height up to which the step sum of the
    multiplicities has been checked against the argument-principle count.
    """

    records: tuple[ZeroRecord, ...] = ()
    max_height: float = 0.0
    verified_through: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "records", tuple(self.records))
        mus = [r.mu for r in self.records]
        if any(b <= a for a, b in zip(mus, mus[1:])):
            raise OrderError("zero table ordinates must be strictly increasing")
        if self.records and self.records[0].mu <= FIRST_ZERO_FLOOR:
            raise ValueError("no zeta zero lies below height 14")
        if self.records and self.max_height < mus[-1]:
            object.__setattr__(self, "max_height", mus[-1])

    def __len__(self):
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    @cached_property
    def mus(self) -> np.ndarray:
        return np.array([r.mu for r in self.records], dtype=float)

    @cached_property
    def alphas(self) -> np.ndarray:
        return np.array([r.alpha for r in self.records], dtype=np.int64)

    @property
    def zero_count(self) -> int:
        """Number of zeros with multiplicity (sum of alpha)."""
        return int(self.alphas.sum())

    def step_count(self, T: float) -> int:
        """N(T) as the step sum over the records with mu <= T."""
        k = int(np.searchsorted(self.mus, T, side="right"))
        return int(self.alphas[:k].sum())

    def head(self, n: int) -> "ZeroTable":
        """Table of the first ``n`` records (max_height = last ordinate kept)."""
        recs = self.records[:n]
        top = recs[-1].mu if recs else 0.0
        return ZeroTable(recs, max_height=top, verified_through=min(self.verified_through, top))

    @classmethod
    def from_ordinates(cls, mus: Iterable[float], source="computed", **kw) -> "ZeroTable":
        return cls(tuple(ZeroRecord(float(m), 1, source) for m in mus), **kw)


# --------------------------------------------------------------------------
# counting
# --------------------------------------------------------------------------


def count_zeros(T, ctx: PrecisionCtx | None = None) -> int:
    """N(T) from the argument principle: round(Im log xi(1/2+iT) / pi)."""
    ctx = default_ctx() if ctx is None else ctx
    if T <= 0:
        raise ValueError("count_zeros needs T > 0")
    val = im_log_xi_critical(T, ctx) / ctx.mp.pi
    n = int(ctx.mp.nint(val))
    if abs(val - n) >= 0.25:
        raise AmbiguousCountError(f"N({T}) rounding residue {float(abs(val - n)):.3f}")
    return n


def n_smooth(T, ctx: PrecisionCtx | None = None) -> float:
    """Average part of N(T): theta(T)/pi + 1."""
    ctx = default_ctx() if ctx is None else ctx
    return float(theta_avg(T, ctx) / ctx.mp.pi + 1)


def _n_smooth_mp(T, ctx: PrecisionCtx):
    return theta_avg(T, ctx) / ctx.mp.pi + 1


# --------------------------------------------------------------------------
# locating
# --------------------------------------------------------------------------


def _scan_grid(a: float, b: float, factor: int) -> np.ndarray:
    """Sample heights in [a, b], ~2*factor points per mean zero gap."""
    pts = [a]
    t = a
    while t < b:
        density = math.log(t / (2 * math.pi)) / (2 * math.pi) if t > 2 * math.pi else 0.0
        h = 1.0 if density <= 0.5 else 1.0 / (2 * density)
        t = min(t + h / factor, b)
        pts.append(t)
    return np.array(pts)


def _brackets(a: float, b: float, factor: int):
    """Sign-change brackets of Z on [a, b] (left ends, right ends, Z(left))."""
    grid = _scan_grid(a, b, factor)
    vals = fastlane.hardy_z(grid)
    sa, sb = np.sign(vals[:-1]), np.sign(vals[1:])
    idx = np.nonzero(sa * sb < 0)[0]
    return grid[idx], grid[idx + 1], vals[idx]


def _bisect_fast(lo, hi, flo, tol):
    lo, hi, flo = lo.copy(), hi.copy(), flo.copy()
    while lo.size and (hi - lo).max() > tol:
        mid = 0.5 * (lo + hi)
        fm = fastlane.hardy_z(mid)
        keep_hi = np.sign(fm) == np.sign(flo)
        lo = np.where(keep_hi, mid, lo)
        flo = np.where(keep_hi, fm, flo)
        hi = np.where(keep_hi, hi, mid)
    return lo, hi


def _bisect_hp(lo, hi, tol, ctx):
    mp = ctx.mp
    lo, hi = mp.mpf(lo), mp.mpf(hi)
    flo = hardy_z(lo, ctx)
    if flo * hardy_z(hi, ctx) > 0:
        return None
    while hi - lo > tol:
        mid = (lo + hi) / 2
        fm = hardy_z(mid, ctx)
        if fm == 0:
            return mid, mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return lo, hi


def locate_zeros(
    T_max: float,
    ctx: PrecisionCtx | None = None,
    *,
    refine_tol: float = 1e-10,
    hp_bisect: bool | None = None,
    max_refine: int = 6,
    block: int = 64,
) -> ZeroTable:
    """All critical-line zero ordinates below ``T_max``.

    Sign changes of Z(t) are bracketed on a grid of about two samples per
    mean zero gap, and the bracket total is checked against
    :func:`count_zeros`.  On a deficit the scan is split into blocks at
    heights between found zeros, each block is counted again, and
    deficient blocks are rescanned at doubled resolution up to
    ``max_refine`` times.  Brackets are then bisected to ``refine_tol``,
    in double precision and, when ``hp_bisect`` (default: T_max <= 200),
    finished with the high-precision Z.
    """
    ctx = default_ctx() if ctx is None else ctx
    if hp_bisect is None:
        hp_bisect = T_max <= 200
    T_max = float(T_max)
    if T_max <= FIRST_ZERO_FLOOR:
        if T_max > 0 and count_zeros(T_max, ctx) != 0:
            raise MissedZeroError(f"nonzero count below {T_max}", interval=(0.0, T_max))
        return ZeroTable((), max_height=max(T_max, 0.0), verified_through=max(T_max, 0.0))

    expected = count_zeros(T_max, ctx)
    lo, hi, flo = _brackets(1.0, T_max, 1)
    if lo.size != expected:
        lo, hi, flo = _repair(lo, hi, flo, T_max, expected, max_refine, block)

    a, b = _bisect_fast(lo, hi, flo, 1e-6 if hp_bisect else refine_tol)
    records = []
    for x, y in zip(a, b):
        res = _bisect_hp(x, y, refine_tol, ctx) if hp_bisect else None
        if res is not None:
            mu = (res[0] + res[1]) / 2
            residual = float(abs(hardy_z(mu, ctx)))
            mu = float(mu)
        else:
            if hp_bisect:
                log.warning("hp sign check failed on [%r, %r]; keeping fast-lane value", x, y)
                x, y = _bisect_fast(np.array([x]), np.array([y]), fastlane.hardy_z([x]), refine_tol)
                x, y = float(x[0]), float(y[0])
            mu = 0.5 * (x + y)
            residual = float(abs(fastlane.hardy_z(mu)[0]))
        records.append(ZeroRecord(mu, 1, "computed", residual))
    return ZeroTable(tuple(records), max_height=T_max, verified_through=T_max)


def _repair(lo, hi, flo, T_max, expected, max_refine, block):
    """Rescan blocks whose bracket count disagrees with the fast count."""
    # block edges sit midway between found brackets, away from known zeros
    cuts = [1.0]
    for i in range(block, lo.size, block):
        cuts.append(0.5 * (hi[i - 1] + lo[i]))
    cuts.append(T_max)
    counts = [0] + [fastlane.count_zeros(c) for c in cuts[1:-1]] + [expected]
    pieces = []
    for (a, b), (na, nb) in zip(zip(cuts, cuts[1:]), zip(counts, counts[1:])):
        sel = (lo >= a) & (hi <= b)
        plo, phi, pf = lo[sel], hi[sel], flo[sel]
        factor = 1
        while plo.size != nb - na:
            if plo.size > nb - na or factor >= 2**max_refine:
                raise MissedZeroError(
                    f"{nb - na} zeros counted in [{a:.6f}, {b:.6f}] but "
                    f"{plo.size} sign changes found (off-line or even-multiplicity zero?)",
                    deficit=(nb - na) - plo.size,
                    interval=(a, b),
                )
            factor *= 2
            log.info("refining [%.3f, %.3f] to factor %d", a, b, factor)
            plo, phi, pf = _brackets(a, b, factor)
        pieces.append((plo, phi, pf))
    return tuple(np.concatenate(p) for p in zip(*pieces))


# --------------------------------------------------------------------------
# text formats
# --------------------------------------------------------------------------


def _parse_lines(lines: Iterable[str], source: str):
    records: list[ZeroRecord] = []
    headers: dict[str, str] = {}
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if "=" in body:
                k, v = body.split("=", 1)
                headers[k.strip()] = v.strip()
            continue
        parts = line.split()
        if len(parts) > 2:
            raise ParseError(f"expected an ordinate, got {line!r}", line=lineno)
        try:
            mu = float(parts[0])
            residual = float(parts[1]) if len(parts) == 2 else 0.0
        except ValueError:
            raise ParseError(f"not a decimal number: {line!r}", line=lineno) from None
        if not (math.isfinite(mu) and mu > 0):
            raise ParseError(f"ordinate must be positive and finite: {line!r}", line=lineno)
        if records and abs(mu - records[-1].mu) <= MERGE_TOL:
            prev = records[-1]
            records[-1] = ZeroRecord(prev.mu, prev.alpha + 1, prev.source, prev.residual)
            continue
        if records and mu < records[-1].mu:
            raise OrderError(f"line {lineno}: ordinate {mu} is below the previous one")
        records.append(ZeroRecord(mu, 1, source, residual))
    return records, headers


def ingest_zero_table(stream: str | TextIO) -> ZeroTable:
    """Read a plain list of ordinates (one per line, '#' comments allowed).

    Consecutive values within 1e-9 merge into one record with a higher
    multiplicity.
    """
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    records, _ = _parse_lines(stream, "ingested")
    top = records[-1].mu if records else 0.0
    return ZeroTable(tuple(records), max_height=top, verified_through=0.0)


def _fmt(x: float) -> str:
    return f"{x:.15g}"


def save_table(t: ZeroTable, path, precision_digits: int | None = None) -> None:
    """Write ``t`` in the cache format (ordinates at 15 significant digits)."""
    sources = {r.source for r in t.records}
    lines = [
        CACHE_MAGIC,
        f"# generator=liforge {__version__}",
        f"# precision={precision_digits if precision_digits is not None else ''}",
        f"# source={sources.pop() if len(sources) == 1 else 'mixed'}",
        f"# max_height={_fmt(t.max_height)}",
        f"# verified_through={_fmt(t.verified_through)}",
    ]
    for r in t.records:
        row = f"{_fmt(r.mu)} {r.residual:.3e}"
        lines.extend([row] * r.alpha)
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_table(path) -> ZeroTable:
    """Inverse of :func:`save_table`; also accepts plain ingest files."""
    with open(path, encoding="utf-8") as fh:
        records, headers = _parse_lines(fh, "computed")
    src = headers.get("source", "ingested")
    if src in ("computed", "ingested"):
        records = [ZeroRecord(r.mu, r.alpha, src, r.residual) for r in records]
    try:
        top = float(headers.get("max_height", records[-1].mu if records else 0.0))
        verified = float(headers.get("verified_through", 0.0))
    except ValueError as exc:
        raise ParseError(f"bad header value: {exc}") from None
    return ZeroTable(tuple(records), max_height=top, verified_through=verified)


def reference_zeros(n: int | None = None) -> ZeroTable:
    """The bundled table of the first 10^4 zeros (computed by :func:`locate_zeros`)."""
    ref = resources.files("liforge.data").joinpath("zeros_1e4.txt")
    with resources.as_file(ref) as p:
        table = load_table(p)
    return table if n is None else table.head(n)
