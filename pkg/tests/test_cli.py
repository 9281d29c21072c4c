import csv
import json
import subprocess
import sys

import pytest

from ckverify import cli, schubert
from ckverify.report import FAIL, CheckResult, Report


def _run(capsys, *argv):
    code = cli.main(list(argv))
    return code, capsys.readouterr().out


def test_schubert_json(capsys):
    code, out = _run(capsys, "--checks", "schubert", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == 1
    assert doc["summary"] == {"fail": 0, "pass": 1, "skipped-cap": 0, "total": 1}
    (entry,) = doc["checks"]
    assert entry["name"] == "schubert"
    assert entry["values"]["deg_c2Q_on_F"] == 16
    assert "elapsed" not in json.dumps(entry) and "wall" not in json.dumps(entry)


def test_text_output_lists_every_check(capsys):
    code, out = _run(capsys, "--g", "1", "--m-max", "2", "--checks", "all")
    assert code == 0
    for name in ("ck.completeness", "mck", "hyp", "taut.tau.o", "taut-sym", "hilbert", "schubert", "dims"):
        assert name in out
    assert "fp" not in [line.split()[1] for line in out.splitlines() if line.startswith(("PASS", "FAIL"))]


def test_fp_runs_for_genus_two(capsys):
    code, out = _run(capsys, "--g", "2", "--checks", "fp", "--format", "json")
    assert code == 0
    assert json.loads(out)["checks"][0]["values"]["perturbed_nonzero"] is True


def test_cap_skip_exit_code(capsys):
    code, out = _run(capsys, "--g", "2", "--checks", "taut-sym", "--term-cap", "100", "--format", "json")
    assert code == 2
    doc = json.loads(out)
    assert doc["checks"][0]["status"] == "skipped-cap"
    code, _ = _run(capsys, "--g", "2", "--checks", "taut-sym", "--term-cap", "100", "--strict-caps")
    assert code == 1


def test_failure_exit_code(capsys, monkeypatch):
    def broken():
        return Report([CheckResult("schubert", {"grassmannian": [2, 6]}, FAIL, {"deg_c2Q_on_F": 15})])

    monkeypatch.setattr(schubert, "fano_degree_check", broken)
    code, out = _run(capsys, "--checks", "schubert")
    assert code == 1
    assert out.startswith("FAIL")


@pytest.mark.parametrize(
    "argv",
    [
        ["--bogus"],
        ["--checks", "nope"],
        ["--g", "0"],
        ["--g", "x"],
        ["--m-max", "0"],
        ["--term-cap", "-1"],
        ["--workers", "0"],
        ["--format", "yaml"],
    ],
)
def test_usage_errors(argv, capsys):
    with pytest.raises(SystemExit) as info:
        cli.main(argv)
    assert info.value.code == 64


def test_hilbert_csv(tmp_path, capsys):
    path = tmp_path / "h.csv"
    code, _ = _run(capsys, "--g", "1", "--m-max", "2", "--checks", "hilbert", "--hilbert-csv", str(path))
    assert code == 0
    rows = list(csv.DictReader(path.open()))
    assert {(r["g"], r["m"]) for r in rows} == {("1", "1"), ("1", "2")}
    assert all(r["image"] == r["abstract"] for r in rows)
    assert [r["image"] for r in rows if r["m"] == "2"] == ["1", "3", "1"]


def test_timings_flag_adds_wall_time(capsys):
    _, plain = _run(capsys, "--checks", "dims", "--g", "1", "--format", "json")
    _, timed = _run(capsys, "--checks", "dims", "--g", "1", "--format", "json", "--timings")
    assert plain != timed
    assert json.loads(plain)["checks"][0]["values"] == json.loads(timed)["checks"][0]["values"]


def test_plan_is_deterministic_and_sorted():
    config = cli.RunConfig(g_values=[2, 1, 2], m_max=2, checks=["hilbert", "fp", "schubert"])
    cells = cli.plan(config)
    assert cells == [
        ("hilbert", 1, 1, config.term_cap),
        ("hilbert", 1, 2, config.term_cap),
        ("hilbert", 2, 1, config.term_cap),
        ("hilbert", 2, 2, config.term_cap),
        ("fp", 2, 0, config.term_cap),
        ("schubert", 0, 0, config.term_cap),
    ]


def test_workers_do_not_change_output():
    base = cli.RunConfig(g_values=[1, 2], m_max=2, checks=list(cli.ALL_CHECKS))
    a, code_a = cli.run(base)
    b, code_b = cli.run(cli.RunConfig(g_values=[1, 2], m_max=2, checks=list(cli.ALL_CHECKS), workers=3))
    assert code_a == code_b == 0
    assert a.to_json() == b.to_json()


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "ckverify", "--checks", "dims", "--g", "2"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "r=41" in proc.stdout
