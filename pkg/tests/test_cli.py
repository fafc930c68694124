import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from polymodels.cli import main
from polymodels.groups import series_from_closed_form

SCHEMA = json.loads(resources.files("polymodels").joinpath("schemas/report.schema.json").read_text())


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def validate(payload):
    jsonschema.validate(payload, SCHEMA)


def test_verify_writes_report(tmp_path, capsys):
    path = tmp_path / "r.json"
    code, _, _ = run(["verify", "--model", "omega1", "--n", "3", "--json", str(path)], capsys)
    assert code == 0
    report = json.loads(path.read_text())
    validate(report)
    boundary = next(c for c in report["checks"] if c["name"] == "boundary")
    assert boundary["witness"][0]["multipliers"] == {"t1": "-6 * t1", "t2": "-18 * t2"}


def test_verify_is_byte_reproducible(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for p in (a, b):
        assert run(["verify", "--model", "omega12", "--deterministic", "--samples", "500",
                    "--json", str(p)], capsys)[0] == 0
    assert a.read_bytes() == b.read_bytes()
    validate(json.loads(a.read_text()))


def test_molien_cornulier(capsys):
    code, out, _ = run(["molien", "--group", "cornulier", "--p", "3", "--terms", "12"], capsys)
    assert code == 0
    data = json.loads(out)
    validate(data)
    assert data["coefficients"] == series_from_closed_form([0, 3, 5, 5, 6, 6, 8, 11], [2, 4, 6, 3], 12)


def test_verify_all_table(tmp_path, capsys):
    path = tmp_path / "s.json"
    code, out, _ = run(["verify-all", "--deterministic", "--jobs", "2", "--json", str(path)], capsys)
    assert code == 0
    rows = json.loads(path.read_text())["rows"]
    validate(json.loads(path.read_text()))
    assert [r["model"] for r in rows][:2] == ["omega1", "omega2"] and len(rows) == 16
    assert all(r["verdict"] == "PASS" for r in rows)
    assert out.splitlines()[0].split()[:3] == ["model", "group", "theta1"]


@pytest.mark.parametrize("argv,kind", [
    (["model", "--model", "omega22"], "model"),
    (["catalog", "dump", "--model", "omega5", "--n", "2"], "model"),
    (["covers", "--n", "2"], "covers"),
    (["cornulier"], "cornulier"),
    (["spectrum", "--model", "omega11", "--degree", "6"], "spectrum"),
])
def test_outputs_validate(argv, kind, capsys):
    code, out, _ = run(argv, capsys)
    assert code == 0
    data = json.loads(out)
    assert data["kind"] == kind
    validate(data)


def test_render_outputs(tmp_path, capsys):
    stem = tmp_path / "o11"
    code, _, _ = run(["render", "--model", "omega11", "--grid", "128", "--out", str(stem),
                      "--json", str(tmp_path / "r.json")], capsys)
    assert code == 0
    assert (tmp_path / "o11.svg").exists() and (tmp_path / "o11.csv").exists()
    validate(json.loads((tmp_path / "r.json").read_text()))


def test_failure_exit_code_lists_checks(capsys, monkeypatch):
    from polymodels.modelcheck import report

    real = report.run_model

    def broken(m, cap=8):
        r = real(m, cap)
        r.checks[3].passed = False
        return r

    monkeypatch.setattr(report, "run_model", broken)
    code, _, err = run(["verify", "--model", "omega1", "--n", "2"], capsys)
    assert code == 1 and "boundary" in err


@pytest.mark.parametrize("argv", [
    ["verify", "--model", "omega99"],
    ["verify"],
    ["verify", "--model", "omega1"],
    ["molien", "--group", "Q8"],
])
def test_usage_errors(argv, capsys):
    code, _, err = run(argv, capsys)
    assert code == 2 and "error" in err


@pytest.mark.parametrize("argv", [["verify", "--bogus"], ["frobnicate"]])
def test_parser_rejects_unknown_input(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_io_error(tmp_path, capsys):
    blocker = tmp_path / "file"
    blocker.write_text("")
    code, _, err = run(["cornulier", "--json", str(blocker / "x.json")], capsys)
    assert code == 3 and "I/O" in err


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "polymodels.cli", "cornulier"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["passed"]

