import json
import subprocess
import sys

import pytest

from wmn_lab import cli
from wmn_lab.glrep import NotRealizable


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr().out
    return code, out


def test_parse_weight():
    assert cli.parse_weight("omega:1", 2, 2) == (1, 0, 0, 0)
    assert cli.parse_weight("theta:2", 2, 2) == (1, 1, -1, -3)
    assert cli.parse_weight("zero", 2, 2) == (0, 0, 0, 0)
    assert cli.parse_weight("(-2,-2, 3,2)", 2, 2) == (-2, -2, 3, 2)
    for bad in ("(1,2)", "omega", "(a,b,c,d)"):
        with pytest.raises(cli.UsageError):
            cli.parse_weight(bad, 2, 2)


def test_check_algebra(capsys):
    code, out = run(["check-algebra", "--m", "1", "--n", "1", "--degree", "2"], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["status"] == "pass"
    for key in ("m", "n", "N", "seed", "tool-version", "command", "schema_version"):
        assert key in rep
    assert rep["command"] == "check-algebra" and rep["N"] == 2


def test_degree_zero(capsys):
    assert run(["check-algebra", "--degree", "0"], capsys)[0] == 0


def test_usage_errors(capsys):
    assert cli.main(["check-algebra", "--bogus"]) == 64
    assert cli.main(["nonsense"]) == 64
    assert cli.main(["irreducibility", "--lambda", "(0,1,0,0)"]) == 64      # not dominant
    assert cli.main(["complex", "--family", "I"]) == 64
    assert cli.main(["characters"]) == 64
    assert cli.main(["complex", "--family", "I", "--k", "1", "--degree", "0"]) == 64
    capsys.readouterr()


def test_data_error(capsys, monkeypatch):
    monkeypatch.setenv("WMN_LAB_JOBS", "lots")
    assert cli.main(["semi-infinite", "--m", "1", "--n", "1"]) == 65
    monkeypatch.delenv("WMN_LAB_JOBS")
    capsys.readouterr()

    def boom(*a, **k):
        raise NotRealizable("no realization in the search box")
    monkeypatch.setattr("wmn_lab.mixed.construct_L0", boom)
    code, out = run(["irreducibility", "--lambda", "(5,0,0,0)", "--degree", "1"], capsys)
    assert code == 65 and json.loads(out)["status"] == "data-error"


def test_complex_commands(capsys):
    code, out = run(["complex", "--family", "II", "--q", "m", "--m", "1", "--n", "2", "--degree", "3"], capsys)
    h = json.loads(out)["result"]["homology"]
    assert code == 0 and h["total_homology"] == 1 and not any(h["classes"][0]["weight"])
    code, out = run(["complex", "--family", "I", "--k", "1", "--degree", "3"], capsys)
    assert code == 0 and json.loads(out)["result"]["homology"]["total_homology"] == 0


def test_irreducibility_verdicts(capsys):
    code, out = run(["irreducibility", "--lambda", "(2,0,0,0)", "--degree", "3"], capsys)
    assert code == 0
    assert json.loads(out)["result"]["verdict"] == "irreducible (consistent with non-exceptional)"
    code, out = run(["irreducibility", "--lambda", "omega:1", "--degree", "3"], capsys)
    res = json.loads(out)["result"]
    assert code == 0 and res["verdict"].startswith("reducible; proper submodule witness emitted")
    assert res["irreducibility"]["witness"]["submodule_dim"] < res["irreducibility"]["full_dim"]


def test_characters_verdicts(capsys):
    code, out = run(["characters", "--lambda", "theta:1", "--degree", "3"], capsys)
    assert code == 0 and json.loads(out)["result"]["verdict"] == "match"
    # the printed omega formula disagrees with the block ranks; the corrected one agrees
    code, out = run(["characters", "--lambda", "omega:1", "--degree", "3"], capsys)
    res = json.loads(out)["result"]
    assert code == 2 and res["corrected_formula"]["match"] and not res["formula"]["match"]


def test_tilting(capsys):
    code, out = run(["tilting", "--lambda", "(-2,-2,3,2)", "--degree", "3"], capsys)
    res = json.loads(out)["result"]
    assert code == 0 and res["case"] == 3 and len(res["delta_column"]) == 2
    assert all(res["checks"].values())


def test_semi_infinite_and_skryabin(capsys):
    code, out = run(["semi-infinite", "--m", "2", "--n", "2"], capsys)
    assert code == 0 and json.loads(out)["result"]["exceptions"] == []
    code, out = run(["skryabin", "--degree", "3", "--box", "3"], capsys)
    assert code == 0 and json.loads(out)["result"]["failed_cases"] == 0


def test_text_and_out(tmp_path, capsys):
    path = tmp_path / "r.txt"
    assert cli.main(["semi-infinite", "--m", "1", "--n", "1", "--format", "text", "--out", str(path)]) == 0
    assert capsys.readouterr().out == ""
    assert path.read_text().startswith("wmn-lab ")


def test_jobs_do_not_change_report(capsys):
    argv = ["characters", "--lambda", "omega:2", "--degree", "2", "--seed", "5"]
    _, a = run(argv + ["--jobs", "1"], capsys)
    _, b = run(argv + ["--jobs", "2"], capsys)
    assert a == b


def test_console_script_bytes_identical(tmp_path):
    outs = []
    for i in range(2):
        p = tmp_path / f"{i}.json"
        subprocess.run([sys.executable, "-m", "wmn_lab.cli", "skryabin", "--degree", "2",
                        "--box", "2", "--seed", "7", "--out", str(p)], check=True)
        outs.append(p.read_bytes())
    assert outs[0] == outs[1]
