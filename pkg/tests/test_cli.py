import csv
import json

import pytest

from gencs.cli import KERNEL_COLUMNS, TABULATE_COLUMNS, run


def test_families(capsys):
    assert run(["families"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert sorted(data) == ["bessel", "disc", "laguerre", "logdisc", "power"]
    assert "alpha" in data["laguerre"]["parameters"]


def test_verify_logdisc(tmp_path):
    out = tmp_path / "r.json"
    assert run(["verify", "--family", "logdisc", "--M", "48", "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert rep["summary"]["all_passed"]
    assert all(c["passed"] for c in rep["checks"] if not c["informational"])
    assert rep["config"]["seed"] == 42 and rep["config"]["M"] == 48


def test_verify_laguerre_positivity_informational(tmp_path):
    out = tmp_path / "l.json"
    assert run(["verify", "--family", "laguerre", "--alpha", "2", "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    pos = [c for c in rep["checks"] if c["name"] == "positivity"][0]
    assert pos["informational"]
    assert pos["diagnostics"]["negative_indices"]


@pytest.mark.parametrize(
    "argv,needle",
    [
        (["verify", "--family", "disc", "--alpha", "2"], "alpha"),
        (["verify", "--family", "nope"], "nope"),
        (["verify", "--family", "disc", "--M", "4"], "M"),
        (["tabulate", "--family", "disc", "--r", "2"], "r"),
        (["frobnicate"], "invalid choice"),
    ],
)
def test_usage_errors(argv, needle, capsys):
    assert run(argv) == 2
    assert needle in capsys.readouterr().err


def test_bad_config_file(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text('{"family": "disc", "M": 4}')
    assert run(["verify", "--config", str(cfg)]) == 2
    assert "M" in capsys.readouterr().err


def test_failing_check_exit_code(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text('{"family": "disc", "check_tols": {"kernel_hermiticity": 1e-300}, "grids": {"pairs": 5}}')
    assert run(["verify", "--config", str(cfg), "--out", str(tmp_path / "r.json")]) == 1


def test_tabulate_columns(tmp_path):
    out = tmp_path / "t.csv"
    assert run(["tabulate", "--family", "laguerre", "--r", "1", "5", "--out", str(out)]) == 0
    rows = list(csv.reader(out.open()))
    assert rows[0] == TABULATE_COLUMNS
    assert len(rows) == 3
    assert rows[1][3] == "nan"  # modulus normalization diverges


def test_kernel_table(tmp_path):
    out = tmp_path / "k.csv"
    assert run(["kernel", "--family", "disc", "--r", "0.5", "--theta", "0", "1", "--out", str(out)]) == 0
    rows = list(csv.reader(out.open()))
    assert rows[0] == KERNEL_COLUMNS and len(rows) == 5


def test_algebra_json(tmp_path):
    out = tmp_path / "a.json"
    assert run(["algebra", "--family", "logdisc", "--out", str(out)]) == 0
    names = [c["name"] for c in json.loads(out.read_text())["checks"]]
    assert names == ["commutators", "su11", "eigenstate_su11", "nogo_annihilator"]
