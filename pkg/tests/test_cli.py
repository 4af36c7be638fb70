import subprocess
import sys

import pytest

from primender.cli import run
from primender.io_export import PINNED_FIRST_100


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_member(capsys):
    code, out, _ = call(capsys, "check", "12")
    assert code == 0 and "member" in out and "(k=1, value=2)" in out


def test_check_non_member_is_informational(capsys):
    code, out, _ = call(capsys, "check", "121")
    assert code == 0 and "not a member" in out


def test_explain(capsys):
    code, out, _ = call(capsys, "explain", "111")
    assert code == 0
    assert "k=2: 111 mod 100 = 11 -> prime" in out
    assert "index (0-based): 56" in out


def test_nth_and_index(capsys):
    code, out, _ = call(capsys, "nth", "99")
    assert code == 0 and "value=185" in out
    code, out, _ = call(capsys, "index", "185")
    assert code == 0 and "index (0-based) 99" in out
    code, out, _ = call(capsys, "index", "4")
    assert code == 0 and "not a member" in out


def test_generate_list_matches_prompt_terms(capsys):
    code, out, _ = call(capsys, "generate", "--count", "100", "--format", "list")
    assert code == 0
    assert out == "".join(f"{v}\n" for v in PINNED_FIRST_100)


def test_generate_formats(capsys, tmp_path):
    code, out, _ = call(capsys, "generate", "--limit", "7", "--format", "bfile")
    assert out == "1 2\n2 3\n3 5\n4 7\n"
    dest = tmp_path / "d.csv"
    code, _, _ = call(capsys, "generate", "--count", "6", "--format", "csv", "-o", str(dest))
    lines = dest.read_text().splitlines()
    assert code == 0 and lines[-1] == "5,12,0,11,1,1"
    code, out, _ = call(capsys, "generate", "--count", "1", "--start", "186")
    assert out == "187\n"


def test_stats_and_histogram(capsys):
    code, out, _ = call(capsys, "stats", "--limit", "185")
    assert code == 0 and "members=100" in out
    code, out, _ = call(capsys, "histogram", "--count", "5")
    assert code == 0 and "4,1" in out and "total=4" in out


def test_verify_all(capsys):
    code, out, _ = call(capsys, "verify", "--property", "all", "--count", "100000")
    assert code == 0
    assert out.count("PASS") == 4


def test_verify_failure_exits_1(capsys, monkeypatch):
    import primender.analysis as analysis

    monkeypatch.setattr(analysis, "MAX_DELTA", 3)
    code, out, _ = call(capsys, "verify", "--property", "max-delta", "--count", "100")
    assert code == 1 and "FAIL" in out and "counterexample" in out


def test_compare(capsys, tmp_path):
    a = tmp_path / "expected.txt"
    b = tmp_path / "result.txt"
    a.write_text("2\n3\n5\n7\n")
    b.write_text("2\n3\n5\n7\n")
    code, out, _ = call(capsys, "compare", str(a), str(b))
    assert code == 0 and "Error Percentage = 0.00%" in out
    b.write_text("3\n2\n5\n")
    code, out, _ = call(capsys, "compare", str(a), str(b), "--json")
    assert code == 1 and "Error Percentage = 25.00%" in out and '"error_percent": "25.00"' in out
    code, _, _ = call(capsys, "compare", str(a), str(b), "--threshold", "30")
    assert code == 0


def test_score(capsys, tmp_path):
    sub = tmp_path / "sub.txt"
    sub.write_text("187\n189\n191\n")
    code, out, _ = call(capsys, "score", str(sub), "--continuation-count", "3")
    assert code == 0 and "Error Percentage = 0.00%" in out
    code, out, _ = call(capsys, "score", str(sub), "--continuation-count", "3", "--from-start")
    assert code == 1 and "100.00%" in out


def test_export(capsys, tmp_path):
    dest = tmp_path / "prompt.txt"
    code, _, _ = call(capsys, "export", "prompt_pack", "-o", str(dest))
    assert code == 0 and "183, 185" in dest.read_text()
    code, out, _ = call(capsys, "export", "pelp_series_csv", "--count", "2")
    assert out == "index,delta,pe_minus_lp\n1,1,0\n"


@pytest.mark.parametrize("argv", [
    [],
    ["frobnicate"],
    ["check"],
    ["check", "0"],
    ["check", "abc"],
    ["nth", "-1"],
    ["generate"],
    ["generate", "--count", "5", "--limit", "5"],
    ["verify", "--property", "nope"],
    ["verify", "--bogus"],
    ["compare", "only-one.txt"],
    ["export", "xlsx"],
    ["check", str(2**64)],
])
def test_usage_errors_exit_2(capsys, argv):
    assert run(argv) == 2


def test_missing_file_exits_2(capsys, tmp_path):
    assert run(["compare", str(tmp_path / "a"), str(tmp_path / "b")]) == 2


@pytest.mark.parametrize("argv", [
    ["generate", "--limit", str(10**9)],
    ["index", str(10**9 + 3)],
])
def test_resource_errors_exit_3(capsys, argv):
    assert run(argv) == 3


def test_help_exits_0(capsys):
    assert run(["--help"]) == 0


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "primender.cli", "check", "111"], capture_output=True, text=True)
    assert proc.returncode == 0 and "(k=2, value=11)" in proc.stdout
