import json
import subprocess
import sys

import pytest

from inducedforest import cli
from inducedforest.experiment import ExperimentResult
from inducedforest.generators import complete, cycle, path, petersen
from inducedforest.graph_io import parse_graph6, serialize_edgelist, serialize_graph6


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, g in [("c5", cycle(5)), ("pet", petersen()), ("k5", complete(5)), ("p3", path(3))]:
        p = tmp_path / f"{name}.g6"
        p.write_bytes(serialize_graph6(g) + b"\n")
        out[name] = str(p)
    el = tmp_path / "c5.txt"
    el.write_text(serialize_edgelist(cycle(5)))
    out["c5_el"] = str(el)
    return out


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    return code, json.loads(capsys.readouterr().out)


def test_bounds(capsys, files):
    code, out = run(capsys, "bounds", files["c5_el"])
    assert code == 0 and out["n"] == 5
    tf = next(e for e in out["entries"] if e["id"] == "tf_potential")
    assert (tf["num"], tf["den"]) == (15, 4)


def test_exact(capsys, files):
    code, out = run(capsys, "exact", files["pet"])
    assert code == 0 and out["optimum"] == 7 and out["complete"]
    code, out = run(capsys, "exact", files["c5"], "--k", "1")
    assert out["optimum"] == 3 and out["target"] == "linear_1"


def test_exact_budget_exit_code(capsys, tmp_path):
    from conftest import random_graph
    import random

    p = tmp_path / "big.g6"
    p.write_bytes(serialize_graph6(random_graph(random.Random(1), 30, 0.3)))
    code, out = run(capsys, "exact", p, "--budget", "3")
    assert code == 3 and not out["complete"]


def test_construct(capsys, files):
    code, out = run(capsys, "construct", files["pet"], "--method", "tf", "--trace")
    assert out["size"] >= 7 and out["floor_met"] and out["trace"]
    code, out = run(capsys, "construct", files["k5"], "--method", "kq:6")
    assert out["size"] == 2 and out["floor_met"]
    code, out = run(capsys, "construct", files["p3"], "--method", "k4", "--regularize")
    assert out["size"] == 3 and out["copies"] == 2


def test_search(capsys, files):
    code, out = run(capsys, "search", files["c5"], "--variant", "k4", "--order-seed", "3")
    assert out["size"] == 4 and out["certificates"]["passed"]
    code, out = run(capsys, "search", files["pet"], "--variant", "a3", "--full-radius")
    assert out["size"] >= 5 and out["counting_bound"]["holds"]


def test_regularize(capsys, files):
    code, out = run(capsys, "regularize", files["p3"])
    assert out["copies"] == 2 and set(parse_graph6(out["graph6"]).degree) == {2}


def test_verify(capsys, files):
    code, out = run(capsys, "verify", files["c5"], "--set", "0,1,2,3")
    assert code == 0 and out["forest"] and out["trees"][0]["diameter"] == 3
    code, out = run(capsys, "verify", files["c5"], "--set", "0,1,2,3,4")
    assert code == 1 and not out["forest"]
    code, out = run(capsys, "verify", files["c5"], "--set", "0,1,2,3", "--k", "2")
    assert code == 1 and not out["linear_k_forest"]


def test_convert(capsys, files, tmp_path):
    target = tmp_path / "c5.out.g6"
    code, _ = run(capsys, "convert", files["c5_el"], target)
    assert parse_graph6(target.read_bytes().strip()) == cycle(5)
    back = tmp_path / "back.txt"
    run(capsys, "convert", target, back, "--to", "edgelist")
    assert back.read_text() == serialize_edgelist(cycle(5))


def test_experiment_and_strict(capsys, tmp_path, monkeypatch):
    cfg = tmp_path / "c.ini"
    cfg.write_text("[experiment]\nmethods = a3\n[family k]\nfamily = named\nids = complete:4 cycle:6\n")
    csv_path = tmp_path / "rows.csv"
    code, out = run(capsys, "experiment", "--config", cfg, "--strict", "--csv", csv_path)
    assert code == 0 and out["summary"]["graphs"] == 2
    assert csv_path.read_text().startswith("graph,")

    def failing(_cfg):
        return ExperimentResult([], [], {"violations": [{"graph": "x", "row": "bound", "name": "y"}]})

    monkeypatch.setattr(cli, "run_experiment", failing)
    assert cli.main(["experiment", "--config", str(cfg), "--strict"]) == 1
    capsys.readouterr()
    assert cli.main(["experiment", "--config", str(cfg)]) == 0


def test_errors_go_to_stderr(capsys, tmp_path):
    bad = tmp_path / "bad.g6"
    bad.write_bytes(b"B\n")
    assert cli.main(["bounds", str(bad)]) == 2
    assert "error" in capsys.readouterr().err
    assert cli.main(["search", str(bad), "--variant", "k9"]) == 2


def test_module_entry_point(files):
    proc = subprocess.run([sys.executable, "-m", "inducedforest", "exact", files["c5"]], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["optimum"] == 4
