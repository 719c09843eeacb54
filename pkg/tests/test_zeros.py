import math

import mpmath
import numpy as np
import pytest

import liforge.zeros as zmod
from liforge import (
    MissedZeroError,
    OrderError,
    ParseError,
    ZeroRecord,
    ZeroTable,
    count_zeros,
    ingest_zero_table,
    load_table,
    locate_zeros,
    n_smooth,
    save_table,
)
from liforge import fastlane

FIRST_FOUR_ZEROS = [14.134725142, 21.022039639, 25.010857580, 30.424876126]


# ---------------------------------------------------------------- records


def test_record_and_table_invariants():
    with pytest.raises(ValueError):
        ZeroRecord(14.5, alpha=0)
    with pytest.raises(ValueError):
        ZeroTable((ZeroRecord(13.0),))
    with pytest.raises(OrderError):
        ZeroTable((ZeroRecord(21.0), ZeroRecord(15.0)))
    t = ZeroTable.from_ordinates([14.2, 21.0], max_height=22)
    assert t.zero_count == 2 and t.step_count(20) == 1 and t.max_height == 22


# ---------------------------------------------------------------- counting


@pytest.mark.parametrize("T,n", [(10, 0), (15, 1), (31, 4), (100, 29)])
def test_count_zeros(ctx, T, n):
    assert count_zeros(T, ctx) == n


def test_count_zeros_rejects_nonpositive(ctx):
    with pytest.raises(ValueError):
        count_zeros(0, ctx)


def test_count_jumps_at_table_ordinates(ctx, ref100):
    for j in (1, 2, 10, 29):
        mu = ref100.mus[j - 1]
        assert count_zeros(mu - 1e-8, ctx) == j - 1
        assert count_zeros(mu + 1e-8, ctx) == j


def test_step_count_matches_argument_principle(ctx, ref100):
    for T in np.linspace(12, 100, 23):
        assert ref100.step_count(T) == count_zeros(T, ctx)


def test_fast_count_matches_table(zeros10k):
    for T in (50.5, 1000.5, 5000.5, 9870.0):
        assert fastlane.count_zeros(T) == zeros10k.step_count(T)


def test_asymptotic_envelope(zeros10k):
    Ts = np.linspace(20, 1000, 200)
    dev = [abs(zeros10k.step_count(T) - n_smooth(T)) for T in Ts]
    C = max(d / math.log(T) for d, T in zip(dev, Ts))
    assert C <= 2


def test_n_smooth_examples(ctx, zeros10k):
    assert abs(n_smooth(14.134725142, ctx) - 1) <= 1
    assert abs(n_smooth(1000, ctx) - zeros10k.step_count(1000)) <= 3
    # small-T behaviour is recorded, not asserted against a number
    assert math.isfinite(n_smooth(1e-6, ctx))


# ---------------------------------------------------------------- locating


def test_locate_first_zero(ctx):
    t = locate_zeros(20, ctx)
    assert len(t) == 1 and abs(t.mus[0] - 14.134725142) < 5e-10


def test_locate_first_four(ctx):
    t = locate_zeros(31, ctx)
    assert len(t) == 4
    for got, want in zip(t.mus, FIRST_FOUR_ZEROS):
        assert round(got, 9) == pytest.approx(want, abs=1e-12)
    assert all(r.residual < 1e-9 and r.source == "computed" for r in t)
    assert t.verified_through == 31


def test_locate_below_first_zero(ctx):
    assert len(locate_zeros(14, ctx)) == 0


def test_locate_matches_independent_reference(ctx, ref100):
    t = locate_zeros(100, ctx)
    assert t.zero_count == count_zeros(100, ctx) == len(ref100)
    assert np.max(np.abs(t.mus - ref100.mus)) < 1e-8


def test_missed_zero_is_reported(ctx, monkeypatch):
    # pretend the argument principle sees one zero more than the sign changes
    monkeypatch.setattr(zmod, "count_zeros", lambda T, ctx=None: 5)
    with pytest.raises(MissedZeroError) as e:
        locate_zeros(31, ctx, max_refine=2)
    assert e.value.deficit == 1


# ---------------------------------------------------------------- bundled table


def test_bundled_table_shape(zeros10k):
    assert len(zeros10k) == zeros10k.zero_count == 10_000
    assert zeros10k.verified_through >= zeros10k.mus[-1]
    assert np.all(np.diff(zeros10k.mus) > 0)


@pytest.mark.parametrize("k", [1, 2, 100, 1000, 5000, 10_000])
def test_bundled_table_spot_checks(zeros10k, k):
    with mpmath.workdps(20):
        want = float(mpmath.zetazero(k).imag)
    assert abs(zeros10k.mus[k - 1] - want) < 1e-9


# ---------------------------------------------------------------- text formats


def test_ingest_examples():
    t = ingest_zero_table("14.134725142\n21.022039639\n")
    assert len(t) == 2 and all(r.source == "ingested" for r in t)
    assert len(ingest_zero_table("")) == 0
    m = ingest_zero_table("14.1\n14.1\n")
    assert len(m) == 1 and m.records[0].alpha == 2 and m.zero_count == 2


def test_ingest_comments_and_errors():
    t = ingest_zero_table("# header\n\n14.5\n# mid\n21.0\n")
    assert list(t.mus) == [14.5, 21.0]
    with pytest.raises(ParseError) as e:
        ingest_zero_table("14.5\n21.0\nabc\n")
    assert "line 3" in str(e.value)
    with pytest.raises(OrderError):
        ingest_zero_table("21.0\n14.5\n")


def test_save_four_records(tmp_path, ctx):
    t = locate_zeros(31, ctx)
    p = tmp_path / "four.txt"
    save_table(t, p, precision_digits=50)
    lines = p.read_text().splitlines()
    data = [ln for ln in lines if not ln.startswith("#")]
    assert lines[0] == "# li-forge-cache v1"
    assert "# verified_through=31" in lines
    assert len(data) == 4
    assert load_table(p) == ZeroTable(
        tuple(ZeroRecord(float(f"{r.mu:.15g}"), r.alpha, r.source, float(f"{r.residual:.3e}")) for r in t),
        t.max_height,
        t.verified_through,
    )


def test_round_trip_10k(tmp_path, zeros10k):
    p = tmp_path / "z.txt"
    save_table(zeros10k, p)
    assert load_table(p) == zeros10k


def test_round_trip_keeps_multiplicity(tmp_path):
    t = ZeroTable((ZeroRecord(14.5, 2, "ingested"), ZeroRecord(21.0)), max_height=30)
    p = tmp_path / "m.txt"
    save_table(t, p)
    back = load_table(p)
    assert [r.alpha for r in back] == [2, 1] and back.zero_count == 3


def test_corrupted_line_3(tmp_path, zeros10k):
    p = tmp_path / "bad.txt"
    p.write_text("14.134725142\n21.022039639\n25.0108x\n30.42\n")
    with pytest.raises(ParseError) as e:
        load_table(p)
    assert e.value.line == 3 and "line 3" in str(e.value)
