import json
import subprocess
import sys

import pytest

from rank3hecke.cli import main

C2_FLAGS = ["--m-sr", "0", "--m-st", "0", "--m-rt", "2", "--w-r", "1", "--w-s", "5", "--w-t", "2"]
C4_FLAGS = ["--m-sr", "5", "--m-st", "4", "--w-r", "2", "--w-s", "2", "--w-t", "1"]


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_bound(capsys):
    code, out, _ = run(capsys, "bound", *C2_FLAGS)
    assert code == 0 and json.loads(out)["N"] == 5


def test_mult_quadratic(capsys):
    code, out, _ = run(capsys, "mult", "s", "s", *C4_FLAGS)
    js = json.loads(out)
    assert code == 0
    assert js["text"] == "(1*v^2 + -1*v^-2)*T_s + (1*v^0)*T_e"
    assert js["product"] == [{"w": "s", "coeff": "1*v^2 + -1*v^-2"}, {"w": "", "coeff": "1*v^0"}]


def test_classify_g2(capsys):
    code, out, _ = run(capsys, "classify", "--m-sr", "6", "--m-st", "3", "--m-rt", "2",
                       "--w-r", "1", "--w-s", "1", "--w-t", "1")
    assert code == 0 and json.loads(out)["case"]["kind"] == "AFFINE_SPECIAL"
    assert "G2" in json.loads(out)["case"]["note"]


def test_elements_echo_normal_forms(capsys):
    code, out, _ = run(capsys, "f", "srsrs", "e", "rsrsr", *C4_FLAGS)
    js = json.loads(out)
    assert (js["x"], js["y"], js["z"]) == ("rsrsr", "", "rsrsr")
    assert js["f"] == "1*v^0"


def test_json_sorted_and_reparses(capsys):
    _, out, _ = run(capsys, "ball", *C4_FLAGS, "--max-len", "2")
    js = json.loads(out)
    assert out.strip() == json.dumps(js, sort_keys=True, indent=2)
    assert js["counts"] == [1, 3, 5]


@pytest.mark.parametrize("argv", [
    ["mult", "sx", "s", *C4_FLAGS],
    ["bound", "--m-sr", "3", "--m-st", "2", "--w-r", "1", "--w-s", "2"],
    ["bound", "--m-sr", "1", "--m-st", "2"],
    ["bound"],
    ["nosuchcommand"],
])
def test_invalid_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err


def test_odd_bond_message_names_bond(capsys):
    _, _, err = run(capsys, "bound", "--m-sr", "3", "--m-st", "2", "--w-r", "1", "--w-s", "2")
    assert "m_sr=3" in err


def test_config_file_and_override(capsys, tmp_path):
    p = tmp_path / "c.json"
    p.write_text(json.dumps({"bonds": {"m_sr": 0, "m_st": 0, "m_rt": 2},
                             "weights": {"r": 1, "s": 5, "t": 2}}))
    _, out, _ = run(capsys, "bound", "--config", str(p))
    assert json.loads(out)["N"] == 5
    _, out, _ = run(capsys, "bound", "--config", str(p), "--w-s", "1")
    assert json.loads(out)["N"] == 3


def test_kl_commands(capsys):
    _, out, _ = run(capsys, "cw", "s", *C2_FLAGS)
    assert json.loads(out)["text"] == "(1*v^0)*T_s + (1*v^-5)*T_e"
    _, out, _ = run(capsys, "h", "s", "s", "s", *C2_FLAGS)
    assert json.loads(out)["h"] == "1*v^5 + 1*v^-5"
    _, out, _ = run(capsys, "afn", "rs", *C2_FLAGS, "--max-len", "3")
    assert json.loads(out)["a_truncated"] == 5


def test_lambda_and_cells(capsys, tmp_path):
    _, out, _ = run(capsys, "lambda", *C2_FLAGS, "--max-len", "2")
    assert json.loads(out)["lambda"] == ["s", "rs", "sr", "st", "ts"]
    edges = tmp_path / "e.txt"
    code, out, _ = run(capsys, "cells", *C2_FLAGS, "--max-len", "2", "--edges", str(edges))
    assert code == 0 and "e r LR" in edges.read_text().splitlines()


def test_verify_exit_codes(capsys):
    code, out, _ = run(capsys, "verify", *C4_FLAGS, "--max-len", "3")
    assert code == 0 and json.loads(out)["pass"]


def test_lemmas_exit_codes(capsys):
    code, out, _ = run(capsys, "lemmas", "5", *C4_FLAGS, "--word-ball", "5", "--hecke-ball", "4")
    assert code == 0
    assert [s["status"] for s in json.loads(out)["suites"]] == ["PASS"] * 3
    code, out, _ = run(capsys, "lemmas", "6", *C4_FLAGS, "--pretty")
    assert code == 0 and "NOT_APPLICABLE" in out


def test_campaign_failure_exit(capsys, tmp_path, monkeypatch):
    from rank3hecke import campaign
    p = tmp_path / "b.json"
    p.write_text(json.dumps({"radii": {"bound": 2, "word": 3, "hecke": 2, "lambda": 2,
                                       "witness": 2, "cells": 2},
                             "bonds": {"m_sr": 0, "m_st": 0, "m_rt": 2},
                             "weights": {"r": 1, "s": 5, "t": 2}}))
    code, out, _ = run(capsys, "campaign", "--config", str(p), "--compact")
    assert code == 0 and json.loads(out)["summary"]["pass"]
    real = campaign.run_config
    monkeypatch.setattr(campaign, "run_config",
                        lambda e, r, **kw: real(e, r, **{**kw, "bound_hook": lambda S, N: N - 1}))
    code, out, _ = run(capsys, "campaign", "--config", str(p))
    assert code == 1


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "rank3hecke", "bound", *C2_FLAGS, "--pretty"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.strip() == "N = 5"
