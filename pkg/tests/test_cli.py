import json
import subprocess
import sys

import pytest

from a4witt.cli import main


def run(capsys, *argv):
    try:
        code = main(list(argv))
    except SystemExit as exc:
        code = exc.code
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


def strip_timing(report):
    return {k: v for k, v in report.items() if k != "elapsed_ms"}


def test_galois_query(capsys):
    code, rep, _ = run(capsys, "galois", "[1,0,0,8,12]")
    assert code == 0
    assert rep["result"]["label"] == "A4"
    assert rep["result"]["certificate"]["disc"] == "331776"


def test_galois_reducible_shape(capsys):
    code, rep, _ = run(capsys, "galois", "X^4 - 1")
    assert rep["result"]["label"] == {"label": "Reducible", "shape": [1, 1, 2]}


def test_embeddable_false(capsys):
    code, rep, _ = run(capsys, "embeddable", "--U", "1", "--V", "1")
    assert code == 1
    assert rep["result"]["embeddable"] is False
    assert rep["result"]["class"] == ["2", "real"]


def test_embeddable_true_with_negative_rationals(capsys):
    code, rep, _ = run(capsys, "embeddable", "--U", "-12/5", "--V", "-463/162")
    assert code == 0
    assert rep["result"]["class"] == []
    assert rep["result"]["real_roots"] == "4"


def test_resolvent_query(capsys):
    code, rep, _ = run(capsys, "resolvent", "[1,1,1,1,1]")
    assert code == 0
    assert rep["result"]["b"] == ["-5", "-15", "-5", "0"]
    assert rep["result"]["c"] == ["1", "3", "1", "0"]


def test_traceform_query(capsys):
    code, rep, _ = run(capsys, "traceform", "x^4 - 2")
    assert code == 0
    res = rep["result"]
    assert res["gram"][1] == ["0", "0", "0", "8"]
    assert res["signature"] == "2"
    assert res["witt"]["convention"] == "HASSE"


def test_specialize_and_param(capsys):
    code, rep, _ = run(capsys, "specialize", "--U", "1", "--V", "1")
    assert code == 0
    assert rep["result"]["quartic"] == ["1", "-4", "38", "-4", "33"]
    assert rep["result"]["label"] == "A4"
    code, rep, _ = run(capsys, "param", "--A", "1", "--B", "1", "--C", "1", "--D", "1", "--E", "1", "--sign", "-")
    assert code == 0
    assert (rep["result"]["U"], rep["result"]["V"]) == ("-12/5", "-463/162")
    code, rep, _ = run(capsys, "param", "--A", "1", "--B", "1", "--C", "1", "--D", "1", "--E", "1", "--sign", "+")
    assert code == 1
    assert (rep["result"]["U"], rep["result"]["V"]) == ("-15/4", "137/81")


@pytest.mark.parametrize("argv", [
    ("verify", "bogus"),
    ("galois", "[1,x,3]"),
    ("galois", "[1,2,3]"),
    ("embeddable", "--U", "1/0", "--V", "1"),
    ("embeddable", "--U", "3", "--V", "1"),
    ("param", "--A", "1", "--B", "1", "--C", "1", "--D", "0", "--E", "1"),
    ("traceform", "[1,0,0,0,0]"),
])
def test_input_errors_exit_2(capsys, argv):
    code, rep, err = run(capsys, *argv)
    assert code == 2
    assert rep is None and err


def test_parse_error_is_position_annotated(capsys):
    _, _, err = run(capsys, "galois", "x^4 + + 1")
    assert "position 6" in err and "^" in err


def test_verify_prop2(capsys):
    code, rep, err = run(capsys, "verify", "prop2", "--seed", "7", "--samples", "20")
    assert code == 0
    assert rep["seed"] == "7"
    assert {c["status"] for c in rep["claims"]} == {"pass"}
    assert "prop2.pencil_disc" in {c["claim"] for c in rep["claims"]}
    assert "seed 7" in err


def test_verify_is_deterministic(capsys):
    _, first, _ = run(capsys, "verify", "all", "--seed", "7", "--samples", "20")
    _, second, _ = run(capsys, "verify", "all", "--seed", "7", "--samples", "20")
    assert strip_timing(first) == strip_timing(second)
    claims = {c["claim"] for c in first["claims"]}
    assert {"traceform.witt_calibration", "criterion.sign_calibration"} <= claims


def test_calibrate(capsys):
    code, rep, _ = run(capsys, "calibrate", "--samples", "30")
    assert code == 0
    assert rep["result"] == {"convention": "HASSE", "sign": "-"}
    assert rep["seed"] == str(0xA4)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "a4witt", "galois", "[1,0,0,1,1]"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["label"] == "S4"
