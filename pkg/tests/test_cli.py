import json
import subprocess
import sys

import pytest

from genorbit import cli
from genorbit.cli import InputError, JobSpec, execute, main, run

M48 = {"ring": {"ring": "Z"}, "generators": 2, "relations": [["4", "0"], ["0", "8"]]}
M48_MOD8 = {"ring": {"ring": "Zmod", "n": 8}, "generators": 2, "relations": [["4", "0"], ["0", "0"]]}


def call(argv, capsys):
    code = main(argv)
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_jobspec_roundtrip():
    job = JobSpec("classify", {"ring": "Z"}, {"module": M48, "n": 2}, {"group": "sl", "budget": 10})
    assert JobSpec.loads(job.dumps()) == job
    assert JobSpec.from_json(json.loads(job.dumps())).to_json() == job.to_json()
    with pytest.raises(InputError):
        JobSpec("nope", {"ring": "Z"})
    with pytest.raises(InputError):
        JobSpec.from_json({"schema": 2, "command": "mu", "ring": {"ring": "Z"}})
    with pytest.raises(InputError):
        JobSpec.from_json({"command": "mu"})


def test_snf_example(capsys):
    code, out, _ = call(["snf", "--ring", '{"ring": "Z"}', "--matrix", "[[2,4],[6,8]]"], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["schema"] == 1
    assert rep["result"]["invariant_factors"] == ["2", "4"]


def test_classify_example(capsys, tmp_path):
    f = tmp_path / "m.json"
    f.write_text(json.dumps(M48_MOD8))
    code, out, _ = call(["classify", "--module", str(f), "--n", "2", "--group", "sl"], capsys)
    res = json.loads(out)["result"]
    assert code == 0 and res["shape"] == "UnitClasses" and res["count"] == 2
    code, out, _ = call(["orbits", "--module", str(f), "--n", "2"], capsys)
    assert code == 0 and json.loads(out)["result"]["orbit_count"] == 2


def test_empty_relations_file_gives_free_module(capsys, tmp_path):
    f = tmp_path / "free.json"
    f.write_text(json.dumps({"generators": 3, "relations": []}))
    code, out, _ = call(["mu", "--ring", "Z", "--module", str(f)], capsys)
    assert code == 0 and json.loads(out)["result"]["mu"] == 3


def test_other_commands(capsys):
    mod = json.dumps(M48)
    code, out, _ = call(["decompose", "--module", mod], capsys)
    assert code == 0 and json.loads(out)["result"]["chain"] == ["4", "8"]
    code, out, _ = call(["fitt", "1", "--module", mod], capsys)
    assert json.loads(out)["result"]["generator"] and json.loads(out)["result"]["minors_agree"] is True
    code, out, _ = call(["detinv", "--module", mod, "--vector", '[["3","0"],["0","1"]]'], capsys)
    assert json.loads(out)["result"]["value"] == "3"
    code, out, _ = call(["canon", "--module", mod, "--vector", '[["1","1"],["0","1"]]', "--group", "e"], capsys)
    res = json.loads(out)["result"]
    assert code == 0 and res["has_diag_letters"] is False
    assert all(letter["op"] == "add" for letter in res["witness"])
    code, out, _ = call(["equiv", "--module", mod, "--vector", '[["1","0"],["0","1"]]',
                         "--other", '[["3","0"],["0","1"]]', "--group", "gl"], capsys)
    assert json.loads(out)["result"]["equivalent"] is True
    code, out, _ = call(["equiv", "--module", mod, "--vector", '[["1","0"],["0","1"]]',
                         "--other", '[["3","0"],["0","1"]]'], capsys)
    assert json.loads(out)["result"]["equivalent"] is False


def test_verify_and_exit_codes(capsys, monkeypatch):
    mod = json.dumps(M48_MOD8)
    code, out, _ = call(["verify", "--module", mod, "--ideal", '"2"', "--n", "3"], capsys)
    res = json.loads(out)["result"]
    assert code == 0 and res["ok"] and res["det_bijection"]["orbit_count"] == 2
    code, _, err = call(["mu", "--module", "/nonexistent.json"], capsys)
    assert code == 1 and json.loads(err)["error"]["kind"] == "input"
    code, _, err = call(["detinv", "--module", mod, "--vector", '[["2","0"],["0","1"]]'], capsys)
    assert code == 1
    code, _, err = call(["orbits", "--module", mod, "--n", "4", "--budget", "100"], capsys)
    assert code == 1 and json.loads(err)["error"]["kind"] == "budget"
    code, _, err = call(["orbits", "--module", json.dumps(M48), "--n", "2"], capsys)
    assert code == 1
    monkeypatch.setattr(cli, "verify_lifting", lambda *a, **k: {"ok": False})
    code, out, _ = call(["verify", "--module", mod, "--ideal", '"2"'], capsys)
    assert code == 2 and json.loads(out)["result"]["ok"] is False


def test_deterministic_reports(tmp_path):
    job = JobSpec("canon", {"ring": "Z"}, {"module": M48, "vector": [["1", "1"], ["0", "1"]]},
                  {"group": "sl"})
    assert run(job) == run(job)
    path = tmp_path / "job.json"
    path.write_text(job.dumps())
    outs = []
    for name in ("a.json", "b.json"):
        target = tmp_path / name
        r = subprocess.run([sys.executable, "-m", "genorbit", "run", str(path), "--out", str(target)],
                           capture_output=True, text=True)
        assert r.returncode == 0, r.stderr
        outs.append(target.read_bytes())
    assert outs[0] == outs[1]
    code, report = execute(job)
    assert json.loads(outs[0]) == report


def test_missing_inputs():
    code, text = run(JobSpec("mu", {"ring": "Z"}, {}))
    assert code == 1 and "module" in json.loads(text)["error"]["message"]
    code, text = run(JobSpec("snf", {"ring": "Z"}, {}))
    assert code == 1
