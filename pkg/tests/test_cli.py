import json
import subprocess
import sys

import pytest

from cotor_spin.cli import RunConfig, UsageError, main
from published_tables import ROWS


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def _parse_text_table(text):
    rows = []
    for line in text.splitlines()[1:]:
        rows.append(tuple(None if c == "-" else int(c) for c in line.split()))
    return rows


@pytest.mark.parametrize("lo,hi,name", [(9, 16, "table_9_16.txt"), (17, 32, "table_17_32.txt")])
def test_table_golden(capsys, golden_dir, lo, hi, name):
    code, out, _ = run(capsys, "table", str(lo), str(hi))
    assert code == 0
    assert out == (golden_dir / name).read_text()
    assert _parse_text_table(out) == [r for r in ROWS if lo <= r[0] <= hi]


def test_table_beyond_32(capsys):
    code, out, _ = run(capsys, "table", "33", "40", "--format", "json")
    rows = json.loads(out)
    assert code == 0 and [r["n"] for r in rows] == list(range(33, 41))
    assert all(r["h'"] < r["h"] for r in rows)


def test_table_csv(capsys):
    code, out, _ = run(capsys, "table", "9", "10", "--format", "csv")
    assert out.splitlines() == ["n,s,t,m,m',eps,h',l,h", "9,4,3,,,,4,1,4", "10,4,3,10,13,0,5,1,5"]


def test_analyze(capsys):
    code, out, _ = run(capsys, "analyze", "13")
    assert code == 0 and "v_6 = w13^5" in out and "verdict: collapses" in out
    code, out, _ = run(capsys, "analyze", "17", "--format", "json")
    d = json.loads(out)
    assert d["verdict"] == "does_not_collapse" and d["params"]["h'"] == 5 and d["params"]["h"] == 8
    assert d["first_divergence"] == 32


@pytest.mark.parametrize("argv", [["analyze", "8"], ["table", "20", "10"], ["table", "5", "10"],
                                  ["series", "13", "0"], ["groebner", "17"], ["verify", "3"]])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and "error" in err


def test_argparse_error_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["table"])
    assert exc.value.code == 2


def test_series_diff(capsys):
    assert run(capsys, "series", "16", "64", "diff")[1] == "equal\n"
    assert run(capsys, "series", "17", "64", "diff")[1] == "32\n"


def test_series_both_identical_for_13(capsys):
    code, out, _ = run(capsys, "series", "13", "40", "both", "--format", "json")
    d = json.loads(out)
    assert code == 0 and d["cotor"] == d["quillen"] and len(d["cotor"]) == 41


def test_series_verdict_truncation(capsys):
    code, _, err = run(capsys, "series", "13", "64", "diff", "--verdict")
    assert code == 3 and "2^h'+2" in err
    code, out, _ = run(capsys, "series", "13", "130", "diff", "--verdict")
    assert code == 0 and "collapses" in out


def test_truncation_env(capsys, monkeypatch):
    monkeypatch.setenv("COTOR_SPIN_TRUNCATE", "20")
    _, out, _ = run(capsys, "series", "9", "--format", "json")
    assert json.loads(out)["D"] == 20
    _, out, _ = run(capsys, "series", "9", "--truncate", "25", "--format", "json")
    assert json.loads(out)["D"] == 25


def test_series_csv(capsys):
    _, out, _ = run(capsys, "series", "9", "3", "cotor", "--format", "csv")
    assert out.splitlines() == ["degree,cotor", "0,1", "1,0", "2,0", "3,0"]


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "9", "32")
    assert code == 0 and "24/24" in out


def test_verify_parallel_matches_serial(capsys):
    serial = run(capsys, "verify", "18", "80", "--format", "json")
    par = run(capsys, "verify", "18", "80", "--format", "json", "--jobs", "3")
    assert serial == par and serial[0] == 0


def test_verify_fault_injection(capsys):
    code, out, _ = run(capsys, "verify", "18", "22", "--inject-fault")
    assert code == 1 and "FAIL" in out and "leading monomials" in out


def test_groebner_membership(capsys):
    code, out, _ = run(capsys, "groebner", "13", "--member", "w7", "--member",
                       "w7*w10*w11^3 + w6*w11^4 + w4*w11^3*w13", "--format", "json")
    d = json.loads(out)
    assert code == 0 and d["is_groebner"] and d["coprime_leading_monomials"]
    assert [m["in_ideal"] for m in d["membership"]] == [False, True]


@pytest.mark.parametrize("argv", [["analyze", "22"], ["table", "9", "32"], ["series", "17", "40"],
                                  ["verify", "9", "12"], ["groebner", "22"]])
def test_json_roundtrip(capsys, argv):
    _, out, _ = run(capsys, *argv, "--format", "json")
    assert json.dumps(json.loads(out), indent=2, ensure_ascii=False) + "\n" == out


def test_run_config_validation():
    with pytest.raises(UsageError):
        RunConfig("table", 12, 10).validate()
    with pytest.raises(UsageError):
        RunConfig("series", 12, None, truncate=0).validate()
    RunConfig("table", 9, 9, truncate=1).validate()


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "cotor_spin", "table", "9", "9"],
                       capture_output=True, text=True, check=True)
    assert r.stdout.splitlines()[1].split() == ["9", "4", "3", "-", "-", "-", "4", "1", "4"]
