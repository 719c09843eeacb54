import io
import json
import subprocess
import sys

import pytest

import liforge.cli as cli
from liforge import CheckReport, save_table
from liforge.cli import CSV_HEADER, main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


@pytest.fixture(scope="module")
def z10k_file(tmp_path_factory, zeros10k):
    p = tmp_path_factory.mktemp("z") / "z10k.txt"
    save_table(zeros10k, p)
    return str(p)


# ---------------------------------------------------------------- zeros / count


def test_zeros_to_31():
    code, out = run("zeros", "--to", "31")
    lines = out.splitlines()
    assert code == 0
    assert [round(float(v), 9) for v in lines[:4]] == [14.134725142, 21.022039639, 25.01085758, 30.424876126]
    assert lines[4].startswith("# count=4 max_ordinate=30.4248761258")


def test_zeros_below_first():
    code, out = run("zeros", "--to", "10")
    assert code == 0 and out.startswith("# count=0")


def test_zeros_ingest_verify(tmp_path):
    src = tmp_path / "ref.txt"
    dst = tmp_path / "cache.txt"
    code, _ = run("zeros", "--ingest", "tests/data/ref_zeros_100.txt", "--verify-to", "100",
                  "--out", str(dst), "--quiet")
    assert code == 0
    assert "# verified_through=100" in dst.read_text().splitlines()
    src.write_text("14.134725142\n21.022039639\n")
    code, _ = run("zeros", "--ingest", str(src), "--verify-to", "31")
    assert code == 1  # two zeros listed, four counted


def test_zeros_ingest_parse_error(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("14.1\n21.0\nxx\n")
    code, _ = run("zeros", "--ingest", str(bad))
    assert code == 1 and "line 3" in capsys.readouterr().err


def test_count():
    code, out = run("count", "100")
    assert code == 0 and out.splitlines()[0] == "N(100) = 29"


def test_env_precision(monkeypatch):
    monkeypatch.setenv("LIFORGE_DIGITS", "25")
    code, out = run("count", "31")
    assert code == 0 and "= 4" in out
    monkeypatch.setenv("LIFORGE_DIGITS", "ten")
    assert run("count", "31")[0] == 2


# ---------------------------------------------------------------- li


def test_li_closed_form_rows():
    code, out = run("li", "--n", "3", "--method", "closed_form")
    rows = out.splitlines()
    assert code == 0 and rows[0] == ",".join(CSV_HEADER)
    vals = [float(r.split(",")[2]) for r in rows[1:]]
    assert [f"{v:.6g}" for v in vals] == ["0.0230957", "0.0923457", "0.207639"]
    assert rows[1].split(",")[2] == "0.023095708966121"  # 15 significant digits


def test_li_sum_from_file(z10k_file):
    code, out = run("li", "--n", "1", "--method", "sum", "--zeros-file", z10k_file)
    row = out.splitlines()[1].split(",")
    assert code == 0
    assert f"{float(row[2]):.6g}" == "0.022961"
    assert row[4] == "10000"


def test_li_ordering_and_json():
    code, out = run("li", "--n", "2", "--method", "expansion,closed_form", "--format", "json")
    rows = [json.loads(x) for x in out.splitlines()]
    assert code == 0
    assert [(r["n"], r["method"]) for r in rows] == [
        (1, "closed_form"), (1, "expansion"), (2, "closed_form"), (2, "expansion")
    ]


def test_li_deterministic(z10k_file):
    argv = ("li", "--n", "5", "--method", "sum", "--method", "expansion", "--zeros-file", z10k_file)
    assert run(*argv) == run(*argv)


@pytest.mark.parametrize(
    "argv",
    [
        ("li", "--n", "0", "--method", "sum", "--zeros-file", "reference"),
        ("li", "--n", "3", "--method", "sum"),
        ("li", "--n", "3", "--method", "magic"),
        ("li", "--n", "4", "--method", "closed_form"),
        ("li", "--n", "3", "--method", "integral", "--zeros-file", "reference", "--cutoff", "100"),
        ("li", "--n", "three", "--method", "sum"),
        ("frobnicate",),
        ("verify", "--only", "nonsense"),
        ("count", "-5"),
        ("zeros",),
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    assert run(*argv)[0] == 2


def test_computational_failure_exit_1(capsys):
    code, _ = run("li", "--n", "1", "--method", "sum", "--zeros-file", "/no/such/file")
    assert code == 1


# ---------------------------------------------------------------- table / verify / constants


def test_table(table1):
    code, out = run("table", "--zeros-file", "reference")
    rows = [r.split(",") for r in out.splitlines()]
    assert code == 0 and len(rows) == 21
    assert rows[0] == ["n", "expansion", "integral", "integral_diff_pct", "sum", "sum_diff_pct"]
    assert f"{float(rows[10][1]):.6g}" == "2.27934"
    assert all(0.58 <= float(r[5]) <= 0.62 for r in rows[1:])


def test_verify_only_fermi_dirac():
    code, out = run("verify", "--only", "fermi_dirac")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 1
    assert json.loads(lines[0])["name"] == "fermi_dirac"


def test_verify_same_verdicts_at_20_digits():
    code50, out50 = run("verify")
    code20, out20 = run("verify", "--digits", "20")

    def verdicts(out):
        # identifying parameters only; diagnostics such as digits_used may differ
        rows = map(json.loads, out.splitlines())
        return [(d["name"], {k: d["params"].get(k) for k in ("m", "n", "z")}, d["passed"]) for d in rows]

    assert code50 == code20 == 0
    assert verdicts(out50) == verdicts(out20)


def test_verify_failure_exit_1(monkeypatch, capsys):
    bad = CheckReport("hadamard", 1.0, 2.0, 0.5, 0.01, False, {})
    monkeypatch.setattr(cli, "run_all", lambda *a, **k: [bad])
    code, _ = run("verify")
    assert code == 1 and "hadamard" in capsys.readouterr().err


def test_constants():
    code, out = run("constants", "--n", "3")
    names = [ln.split()[0] for ln in out.splitlines()]
    assert code == 0
    assert names == [f"gamma_{k}" for k in range(4)] + [f"b_{k}" for k in range(4)] + ["psi_2(1)"]
    assert out.splitlines()[0].split()[1].startswith("0.5772156649")


def test_module_entry_point():
    p = subprocess.run(
        [sys.executable, "-m", "liforge", "zeros", "--to", "22", "--quiet"],
        capture_output=True, text=True, check=False,
    )
    assert p.returncode == 0 and p.stdout.startswith("# count=2")
    p = subprocess.run([sys.executable, "-m", "liforge", "li"], capture_output=True, text=True)
    assert p.returncode == 2
