from pathlib import Path

import pytest

from liforge import PrecisionCtx, li_by_expansion, load_table, reference_zeros

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def ctx():
    return PrecisionCtx()


@pytest.fixture(scope="session")
def zeros10k():
    return reference_zeros()


@pytest.fixture(scope="session")
def ref100():
    """First 29 ordinates from an independent generator (see the file header)."""
    return load_table(DATA / "ref_zeros_100.txt")


@pytest.fixture(scope="session")
def expansion20(ctx):
    return li_by_expansion(20, ctx)


@pytest.fixture(scope="session")
def table1():
    """Printed Table 1 columns keyed by n (values as printed, 6 significant figures)."""
    import csv

    with open(DATA / "table1.csv", newline="") as fh:
        return {int(r["n"]): {k: float(v) for k, v in r.items() if k != "n"} for r in csv.DictReader(fh)}


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for k in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[k])
