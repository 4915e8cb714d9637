import json
import subprocess
import sys

import pytest

from shimbound.cli import main
from shimbound.config import CONFIG_ENV
from shimbound.field import load_card
from shimbound.quadratic import build_card
from shimbound.schemas import validate_certificate_json, validate_report_json


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize(
    "argv,code",
    [
        (["weil", "--n", "2"], 0),
        (["weil", "--n", "0"], 1),
        (["bound", "--quadratic", "-5"], 0),
        (["bound", "--quadratic", "12"], 1),
        (["bound", "--quadratic", "-5", "--A1", "1"], 1),
        (["quaternion", "--disc", "6", "--quadratic", "-5"], 0),
        (["quaternion", "--disc", "30"], 1),
        (["quaternion", "--disc", "4"], 1),
        (["certify", "--quadratic", "-1", "--disc", "6", "--list-limit", "100"], 2),
        (["certify", "--quadratic", "-5", "--disc", "30"], 1),
        (["bogus"], 1),
        (["bound"], 1),
        (["bound", "--quadratic", "-5", "--card", "x.json"], 1),
        (["bound", "--card", "/nonexistent/card.json"], 1),
        (["exceptional", "--quadratic", "-5", "--list-limit", "100", "--test-prime", "9"], 1),
    ],
)
def test_exit_codes(capsys, argv, code):
    try:
        got = main(argv)
    except SystemExit as exc:  # argument parsing errors
        got = exc.code
    assert got == code


def test_weil_lists_traces_and_flags_one_plus_i(capsys):
    code, out, _ = run(capsys, "weil", "--n", "2")
    data = json.loads(out)
    assert code == 0
    assert data["traces"] == ["-2", "-1", "0", "1", "2"]
    flagged = {(r["a"], r["root"]) for r in data["flagged"]}
    assert ("-2", "upper") in flagged
    row = next(r for r in data["weil_numbers"] if r["a"] == "-2" and r["root"] == "upper")
    assert row["beta12"] == "-64" and row["beta24"] == "4096"


def test_exceptional_membership(capsys, tmp_path):
    path = tmp_path / "report.json"
    code, _, err = run(capsys, "exceptional", "--quadratic", "-5", "--test-prime", "7",
                       "--list-limit", "2000", "-o", str(path))
    assert code == 0
    data = json.loads(path.read_text(encoding="utf-8"))
    validate_report_json(data)
    m = data["membership"][0]
    assert m["p"] == "7" and m["member"] is True and m["sources"] == ["N0"]
    assert "p = 7: member = true (N0)" in err
    assert data["config"]["list_limit"] == "2000"


def test_certify_example(capsys, tmp_path):
    path = tmp_path / "cert.json"
    code, _, err = run(capsys, "certify", "--quadratic", "-5", "--disc", "6", "--A1", "40",
                       "--list-limit", "2000", "--text", "-o", str(path))
    assert code == 0
    data = json.loads(path.read_text(encoding="utf-8"))
    validate_certificate_json(data)
    assert data["hypotheses"]["admissible_q"]["q"] == "7"
    assert data["branch"] == 2
    assert "CERTIFIED with q = 7" in err


def test_refused_certificate_still_written(capsys, tmp_path):
    path = tmp_path / "cert.json"
    code, _, _ = run(capsys, "certify", "--quadratic", "-1", "--disc", "6", "--list-limit", "100", "-o", str(path))
    assert code == 2
    data = json.loads(path.read_text(encoding="utf-8"))
    validate_certificate_json(data)
    assert data["status"] == "refused" and data["refusal_reasons"]


def test_emit_card_round_trip(capsys, tmp_path):
    for D in (-5, 10, -23):
        path = tmp_path / f"card{D}.json"
        code, out, _ = run(capsys, "invariants", "--quadratic", str(D), "--emit-card", str(path))
        assert code == 0
        assert load_card(path) == build_card(D)
        assert json.loads(out)["field"]["class_number"] == build_card(D).class_number
        code, out2, _ = run(capsys, "bound", "--card", str(path))
        code3, out3, _ = run(capsys, "bound", "--quadratic", str(D))
        assert code == code3 == 0
        assert json.loads(out2)["bounds"] == json.loads(out3)["bounds"]


def test_malformed_card(capsys, tmp_path):
    path = tmp_path / "bad.json"
    card = json.loads(json.dumps(__import__("shimbound.field", fromlist=["x"]).card_to_dict(build_card(-5))))
    del card["mult_table"]
    path.write_text(json.dumps(card))
    code, _, err = run(capsys, "bound", "--card", str(path))
    assert code == 1
    assert "mult_table" in err
    path.write_text("{not json")
    assert run(capsys, "bound", "--card", str(path))[0] == 1


def test_config_from_environment(capsys, tmp_path, monkeypatch):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"A1": "30", "list_limit": 500}))
    monkeypatch.setenv(CONFIG_ENV, str(cfg))
    code, out, _ = run(capsys, "bound", "--quadratic", "-5")
    assert code == 0
    data = json.loads(out)
    assert data["config"]["A1"] == "30" and data["config"]["list_limit"] == "500"
    # explicit flags win over the file
    code, out, _ = run(capsys, "bound", "--quadratic", "-5", "--A1", "50")
    assert json.loads(out)["config"]["A1"] == "50"
    cfg.write_text(json.dumps({"no_such_key": 1}))
    assert run(capsys, "bound", "--quadratic", "-5")[0] == 1


def test_no_floats_in_output(capsys):
    def walk(x):
        if isinstance(x, float):
            raise AssertionError(x)
        if isinstance(x, dict):
            for v in x.values():
                walk(v)
        if isinstance(x, list):
            for v in x:
                walk(v)

    for argv in (["bound", "--quadratic", "10"], ["weil", "--n", "3"], ["invariants", "--quadratic", "2"]):
        walk(json.loads(run(capsys, *argv)[1]))


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "shimbound", "--version"], capture_output=True, text=True)
    assert res.returncode == 0 and "shimbound" in res.stdout
    res = subprocess.run([sys.executable, "-m", "shimbound", "quaternion", "--disc", "30"], capture_output=True, text=True)
    assert res.returncode == 1 and "odd number" in res.stderr
