import json
import subprocess
import sys

import pytest

from mtrees.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_build_edgelist(capsys):
    code, out, err = run(capsys, "build", "--t", "1", "--format", "edgelist")
    assert code == 0
    assert out == "0 1\n0 2\n1 3\n2 3\n"
    assert err == "V=4 E=4\n"


def test_build_summary(capsys):
    code, out, _ = run(capsys, "build", "--t", "3")
    assert (code, out) == (0, "V=16 E=22\n")


def test_build_to_file(capsys, tmp_path):
    path = tmp_path / "m2.json"
    code, out, _ = run(capsys, "build", "--t", "2", "--format", "json", "--out", str(path))
    assert code == 0 and out == "V=8 E=10\n"
    assert json.loads(path.read_text())["hub_pair"] == [0, 4]


def test_build_over_limit(capsys, monkeypatch):
    assert run(capsys, "build", "--t", "99")[0] == 3
    monkeypatch.setenv("MGRAPH_MAX_T", "2")
    assert run(capsys, "build", "--t", "3")[0] == 3


def test_usage_error_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["build", "--t", "x"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2
    assert run(capsys, "count", "--t", "3", "--modulus", "12")[0] == 2
    assert run(capsys, "analyze", "--t", "2", "--t-max", "3")[0] == 2


def test_count_single(capsys):
    assert run(capsys, "count", "--t", "1")[:2] == (0, "4\n")


def test_count_all(capsys):
    code, out, _ = run(capsys, "count", "--t", "2", "--method", "all")
    assert code == 0
    assert out == "56\nrecurrence: 56\nclosed-form: 56\nkirchhoff: 56\nagreement: all 3 methods agree\n"


def test_count_all_json(capsys):
    code, out, _ = run(capsys, "count", "--t", "3", "--method", "all", "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert doc["value"] == "10752" and doc["agree"] and doc["digits"] == 5
    assert set(doc["methods"]) == {"recurrence", "closed-form", "kirchhoff"}


def test_count_modulus(capsys):
    p = 1_000_000_007
    code, out, _ = run(capsys, "count", "--t", "9", "--method", "all", "--modulus", str(p))
    assert code == 0
    from mtrees.counting import s_recurrence

    assert out.splitlines()[0] == str(s_recurrence(9) % p)
    assert out.splitlines()[-1] == "agreement: all 3 methods agree"


def test_count_large_t_reports_digits(capsys):
    code, out, _ = run(capsys, "count", "--t", "30", "--method", "recurrence")
    assert code == 0
    digits = int(out.splitlines()[0].split()[1])
    # 0.657 * 2**31 / ln 10
    assert digits == pytest.approx(0.657 * 2**31 / 2.302585092994046, rel=1e-3)


def test_count_digits_only(capsys):
    assert run(capsys, "count", "--t", "3", "--digits-only")[1] == "digits 5\n"


def test_count_kirchhoff_over_limit(capsys):
    assert run(capsys, "count", "--t", "9", "--method", "kirchhoff")[0] == 3


def test_count_disagreement_exit_4(capsys, monkeypatch):
    import mtrees.cli as cli

    monkeypatch.setattr(cli.kirchhoff, "count_trees", lambda g: 1)
    code, out, _ = run(capsys, "count", "--t", "2", "--method", "all")
    assert code == 4
    assert "DISAGREE" in out


def test_verify_passes(capsys, tmp_path):
    path = tmp_path / "report.json"
    code, _, err = run(capsys, "verify", "--t-max", "6", "--out", str(path))
    doc = json.loads(path.read_text())
    assert code == 0 and doc["passed"]
    ids = [c["id"] for c in doc["checks"]]
    assert "eq11-rationality" in ids
    assert "[FAIL]" not in err


def test_verify_fault_injection(capsys):
    code, out, _ = run(capsys, "verify", "--t-max", "4", "--inject-fault")
    assert code == 1
    failed = {c["id"] for c in json.loads(out)["checks"] if not c["passed"]}
    assert {"triple-agreement", "structure"} <= failed


def test_analyze_json(capsys):
    code, out, _ = run(capsys, "analyze", "--t", "3")
    assert code == 0
    assert json.loads(out)["triangle_count"] == 0


def test_analyze_csv_and_plots(capsys, tmp_path):
    code, out, _ = run(capsys, "analyze", "--t-max", "4", "--format", "csv", "--plot-dir", str(tmp_path))
    lines = out.splitlines()
    assert code == 0 and len(lines) == 5
    assert lines[0].startswith("t,degree_histogram,cumulative_law_ok")
    names = sorted(p.name for p in tmp_path.iterdir())
    assert names == ["degree_law_t1.png", "degree_law_t2.png", "degree_law_t3.png",
                     "degree_law_t4.png", "distance_scaling.png"]
    assert all(p.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n" for p in tmp_path.iterdir())


def test_entropy(capsys):
    code, out, _ = run(capsys, "entropy", "--t", "20")
    value = float(out.splitlines()[0].split("=")[1])
    assert code == 0 and abs(value - 0.657) <= 1e-3


def test_entropy_compare(capsys, tmp_path):
    code, out, _ = run(capsys, "entropy", "--t", "20", "--compare", "--plot-dir", str(tmp_path))
    assert code == 0
    for value in ("0.807", "0.787", "0.721", "0.677"):
        assert value in out
    assert (tmp_path / "entropy_convergence.png").exists()


def test_entropy_json_precision(capsys):
    code, out, _ = run(capsys, "entropy", "--t", "10", "--precision", "40", "--format", "json")
    doc = json.loads(out)
    assert len(doc["h_t"].replace("0.", "", 1)) == 40


def test_outputs_deterministic(capsys, tmp_path):
    first = run(capsys, "analyze", "--t-max", "3", "--format", "csv")[1]
    second = run(capsys, "analyze", "--t-max", "3", "--format", "csv")[1]
    assert first == second
    a, b = tmp_path / "a", tmp_path / "b"
    run(capsys, "entropy", "--t", "8", "--plot-dir", str(a))
    run(capsys, "entropy", "--t", "8", "--plot-dir", str(b))
    assert (a / "entropy_convergence.png").read_bytes() == (b / "entropy_convergence.png").read_bytes()


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "mtrees", "count", "--t", "2"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "56\n"
