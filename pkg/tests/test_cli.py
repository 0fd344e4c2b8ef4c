import json
import shutil
import subprocess

import jsonschema
import pytest

from unital_lab import cli, serial
from unital_lab.onan import verify_onan, verify_triple_onan
from unital_lab.unital import Unital


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    doc = json.loads(out.out) if out.out.strip() else None
    return code, doc, out.err


def test_unital_q3_conic(capsys):
    code, doc, _ = run(capsys, "unital", "--q", "3", "--a", "conic")
    assert code == 0
    assert doc["points"] == 28
    assert doc["line_profile"] == {"1": 28, "4": 63}
    serial.ctx_from_header(doc["ctx"])


def test_unital_q7_square(capsys):
    code, doc, _ = run(capsys, "unital", "--q", "7", "--a", "square", "--b", "auto")
    assert code == 0 and doc["points"] == 344


def test_unital_classical_flag(capsys):
    code, doc, _ = run(capsys, "unital", "--q", "7", "--a", "0", "--b", "auto")
    assert code == 0 and doc["params"]["classical"]


def test_prime_power_q(capsys):
    code, doc, _ = run(capsys, "unital", "--q", "3^2", "--a", "conic")
    assert code == 0 and doc["points"] == 730
    assert doc["ctx"]["exp"] == 2


@pytest.mark.parametrize("q,method", [(7, "conic"), (11, "q3asq"), (9, "asq14"), (13, "asq14")])
def test_construct_roundtrip(capsys, q, method):
    code, doc, _ = run(capsys, "construct", "--q", str(q), "--method", method)
    assert code == 0 and doc["verified"] and doc["bm_special"]
    jsonschema.validate(doc, serial.CONFIG_SCHEMA)
    ctx, a, b, cfg = serial.config_from_dict(json.loads(json.dumps(doc)))
    U = Unital.from_params(ctx, a, b)
    v = verify_triple_onan(U, cfg.points)
    assert v and v.bm_special
    tp = serial.params_from_dict(ctx, doc["params"])
    assert (tp.a, tp.b) == (a, b)


def test_construct_fengli(capsys):
    code, doc, _ = run(capsys, "construct", "--q", "7", "--method", "fengli")
    assert code == 0
    assert doc["extends"] is False and doc["count"] == 6
    for item in doc["onans"]:
        ctx, a, b, onan = serial.onan_from_dict(item)
        assert verify_onan(Unital.from_params(ctx, a, b), onan.lines)
        assert item["diagonals_in_unital"] == [False, False, False]


def test_search_conic_q5(capsys):
    code, doc, _ = run(capsys, "search", "--q", "5", "--a", "conic")
    assert code == 0 and doc["count"] == 0


def test_search_configs_roundtrip(capsys, tmp_path):
    path = tmp_path / "s.json"
    code, _, _ = run(capsys, "search", "--q", "5", "--a", "square", "--configs", "--out", str(path))
    doc = json.loads(path.read_text())
    assert code == 0 and doc["count"] == len(doc["configs"]) == 80
    for item in doc["configs"][:10]:
        ctx, a, b, cfg = serial.config_from_dict(item)
        assert verify_triple_onan(Unital.from_params(ctx, a, b), cfg.points)


def test_count(capsys):
    code, doc, _ = run(capsys, "count", "--q", "7", "--character", "nonsquare")
    assert code == 0 and doc["count"] == 288 and doc["total"] == 343 * 288
    code, doc, _ = run(capsys, "count", "--q", "7", "--character", "square")
    assert code == 0 and doc["count"] == 216 and len(doc["b_values"]) == 2


def test_cyclotomic(capsys):
    code, doc, _ = run(capsys, "cyclotomic", "--q", "7", "--order", "2")
    assert code == 0 and doc["multiset"] == [1, 1, 1, 2] and doc["violations"] == []
    code, doc, _ = run(capsys, "cyclotomic", "--q", "13", "--order", "4")
    assert code == 0 and doc["n_formula"] == doc["n_direct"] == 4


def test_equiv(capsys):
    code, doc, _ = run(capsys, "equiv", "--q", "5")
    assert code == 0 and doc["classes"] == 3
    code, doc, _ = run(capsys, "equiv", "--q", "7", "--a", "1", "--b", "0,2", "--with", "1", "0,5")
    assert code == 0 and doc["equivalent"] and doc["witness"]["tau"] in (0, 1)
    code, doc, _ = run(capsys, "equiv", "--q", "7", "--a", "1", "--b", "0,2", "--with", "6,2", "0,0")
    assert code == 0 and not doc["equivalent"] and doc["witness"] is None


def test_points(capsys):
    code, doc, _ = run(capsys, "points", "--q", "7", "--a", "square")
    assert code == 0
    assert doc["configs"] == 216 and doc["f_in_unital"] and doc["e_closed_form"]


# -- exit codes --

@pytest.mark.parametrize("argv", [
    ["unital", "--q", "4"],
    ["unital", "--q", "15"],
    ["unital", "--q", "3", "--a", "1", "--b", "0,1"],
    ["search", "--q", "5", "--a", "0", "--b", "0,1"],
    ["construct", "--q", "5", "--method", "conic"],
    ["construct", "--q", "3", "--method", "q3asq"],
    ["cyclotomic", "--q", "7", "--order", "4"],
    ["unital", "--q", "5", "--a", "9,9"],
])
def test_invalid_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("error:")


def test_cap_exit_4(capsys, monkeypatch):
    monkeypatch.setenv("UNITAL_LAB_MAX_ORDER", "100")
    code, _, err = run(capsys, "unital", "--q", "11")
    assert code == 4 and "error" in err
    monkeypatch.setenv("UNITAL_LAB_MAX_ORDER", "200")
    assert run(capsys, "unital", "--q", "11")[0] == 0


def test_invariant_exit_3(capsys, monkeypatch):
    def broken(ctx, order):
        tab = real(ctx, order)
        tab.matrix[0, 0] += 1
        return tab

    real = cli.construct.cyclotomic
    monkeypatch.setattr(cli.construct, "cyclotomic", broken)
    code, doc, err = run(capsys, "cyclotomic", "--q", "7", "--order", "2")
    assert code == 3 and "invariant violation" in err
    assert doc["violations"]


@pytest.mark.skipif(shutil.which("unital-lab") is None, reason="console script not installed")
def test_console_script():
    out = subprocess.run(["unital-lab", "equiv", "--q", "3"], capture_output=True, text=True, check=True)
    assert json.loads(out.stdout)["classes"] == 2
