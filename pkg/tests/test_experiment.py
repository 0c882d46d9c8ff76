import csv
import io
import json

import pytest

from inducedforest.experiment import COLUMNS, ExperimentConfig, csv_cell, run_experiment

CONFIG = """
[experiment]
exact_cap = 16
methods = tf k4 kq a3 pipeline

[family cat]
family = named
ids = petersen complete_bipartite:3,4 cycle:7

[family sparse]
family = gnp
n = 9
count = 4
seed = 5
p = 0.3
"""


def load(text, **over):
    cfg = ExperimentConfig.from_text(text)
    for k, v in over.items():
        setattr(cfg, k, v)
    return cfg


def test_config_parsing(tmp_path):
    cfg = load(CONFIG)
    assert cfg.exact_cap == 16 and cfg.workers == 1
    assert [f.label for f in cfg.families] == ["cat", "sparse"]
    assert cfg.families[1].spec.params == {"p": "0.3"}
    with pytest.raises(ValueError):
        ExperimentConfig.from_text("[experiment]\nexact_cap = 3\n")
    with pytest.raises(ValueError):
        ExperimentConfig.from_text("[family x]\nfamily = lattice\n")
    with pytest.raises(ValueError):
        ExperimentConfig.from_text("[experiment]\nmethods = magic\n[family x]\nfamily = named\nids = petersen\n")
    path = tmp_path / "c.ini"
    path.write_text(CONFIG.replace("methods", "json = o.json\nmethods"))
    assert ExperimentConfig.load(path).json_path == tmp_path / "o.json"


def test_csv_matches_json():
    res = run_experiment(load(CONFIG), write=False)
    parsed = list(csv.reader(io.StringIO(res.to_csv())))
    assert tuple(parsed[0]) == COLUMNS
    body = json.loads(res.to_json())["records"]
    assert len(parsed) - 1 == len(body)
    for line, row in zip(parsed[1:], body):
        assert line == [csv_cell(row[c]) for c in COLUMNS]


def test_reproducible_and_pool_independent(tmp_path):
    a = run_experiment(load(CONFIG), write=False).to_json()
    b = run_experiment(load(CONFIG, workers=2), write=False).to_json()
    assert a == b
    cfg = load(CONFIG, json_path=tmp_path / "x.json", csv_path=tmp_path / "x.csv")
    run_experiment(cfg)
    assert (tmp_path / "x.json").read_text() == a


def test_summary_and_rows():
    res = run_experiment(load(CONFIG), write=False)
    assert res.passed and res.summary["graphs"] == 7
    rows = [r for r in res.rows if r["graph"] == "petersen"]
    kinds = {(r["row"], r["name"]) for r in rows}
    assert ("exact", "a") in kinds and ("method", "tf") in kinds and ("method", "k4") in kinds
    ex = next(r for r in rows if r["row"] == "exact" and r["name"] == "a")
    assert ex["size"] == 7
    amt = next(r for r in rows if r["name"] == "amt_triangle_free")
    assert amt["value"] == "25/4" and amt["exact_slack"] == 0
    assert all(r["ms"] is None for r in res.rows)


def test_runtimes_opt_in():
    res = run_experiment(load(CONFIG, runtimes=True, methods=("a3",)), write=False)
    assert any(r["ms"] is not None for r in res.rows if r["row"] == "method")


def test_clique_family_is_sharp():
    ids = " ".join(f"complete:{n}" for n in range(2, 13))
    res = run_experiment(load(f"[experiment]\nmethods = pipeline\n[family k]\nfamily = named\nids = {ids}\n"), write=False)
    rows = [r for r in res.rows if r["name"] == "clique_degree"]
    assert len(rows) == 11 and all(r["exact_slack"] == 0 for r in rows)


def test_quartic_triangle_free_family():
    text = """
[experiment]
methods = tf
[family q]
family = random_regular
n = 10
count = 10
seed = 4
d = 4
triangle_free = true
"""
    res = run_experiment(load(text), write=False)
    exact = [r["size"] for r in res.rows if r["row"] == "exact" and r["name"] == "a"]
    assert len(exact) == 10 and min(exact) >= 6
    assert res.passed


def test_exhaustive_family_has_no_violations():
    blocks = "".join(f"[family e{n}]\nfamily = exhaustive_small\nn = {n}\n" for n in range(1, 6))
    res = run_experiment(load("[experiment]\nmethods = \n" + blocks), write=False)
    assert res.summary["graphs"] == 1 + 2 + 4 + 11 + 34
    assert res.passed and res.summary["exact_incomplete"] == 0
