import csv
import io
import json

import numpy as np
import pytest

from credal_communities import report as rpt
from credal_communities.cli import run
from credal_communities.data import karate_path
from credal_communities.export import export_dot
from credal_communities.graph import parse_edge_list
from credal_communities.modularity import evidential_modularity
from credal_communities.pipeline import SweepConfig, detect

KARATE = str(karate_path())


@pytest.fixture(scope="module")
def karate_json(tmp_path_factory):
    out = tmp_path_factory.mktemp("cli")
    paths = {k: out / f"k.{k}" for k in ("json", "csv", "dot", "emb")}
    code = run(["detect", "--input", KARATE, "--cmin", "2", "--cmax", "4", "--seed", "42",
                "--output", str(paths["json"]), "--emit-curve", str(paths["csv"]),
                "--dot", str(paths["dot"]), "--embedding-out", str(paths["emb"]), "--baselines"])
    assert code == 0
    return paths


def test_report_layout(karate_json):
    doc = json.loads(karate_json["json"].read_text())
    assert set(doc) == {"config", "graph_summary", "per_c", "best_c", "baselines"}
    assert doc["graph_summary"]["n"] == 34 and doc["graph_summary"]["total_weight"] == 156.0
    assert doc["config"]["seed"] == 42 and doc["config"]["max_card"] == "full"
    entry = doc["per_c"][1]
    assert entry["c"] == 3
    assert list(entry["masses"]) == ["{}", "{1}", "{2}", "{3}", "{1,2}", "{1,3}", "{2,3}", "{1,2,3}"]
    assert all(len(v) == 34 for v in entry["masses"].values())
    assert {b["c"] for b in doc["baselines"]} == {2, 3, 4}
    assert set(doc["baselines"][0]) == {"c", "cm", "fcm"}


def test_report_round_trip(karate_json, karate):
    text = karate_json["json"].read_text()
    doc = rpt.loads(text)
    assert rpt.dumps(doc) == text
    for entry in doc["per_c"]:
        p = rpt.partition_from_report(entry)
        assert evidential_modularity(karate, p) == pytest.approx(entry["Q_e"], abs=1e-12)


def test_floats_survive_serialisation(karate):
    rep = detect(karate, SweepConfig(c_min=2, c_max=3))
    doc = rpt.build_report(karate, rep, {})
    back = rpt.loads(rpt.dumps(doc))
    for r, entry in zip(rep.per_c, back["per_c"]):
        assert entry["Q_e"] == r.q_evidential
        m = np.column_stack([entry["masses"][s] for s in entry["focal_sets"]])
        assert m.tobytes() == r.partition.masses.tobytes()


def test_curve_csv(karate_json):
    rows = list(csv.reader(io.StringIO(karate_json["csv"].read_text())))
    assert rows[0] == ["c", "Q_e", "Q_h", "Q_fuzzy"]
    assert [int(r[0]) for r in rows[1:]] == [2, 3, 4]


def test_embedding_csv(karate_json):
    rows = list(csv.reader(io.StringIO(karate_json["emb"].read_text())))
    assert len(rows) == 35 and rows[1][0] == "1"


def test_dot_file(karate_json):
    dot = karate_json["dot"].read_text()
    assert dot.startswith('graph "communities" {')
    assert dot.count(" -- ") == 78


def test_dot_styles_and_determinism(karate):
    rep = detect(karate, SweepConfig(c_min=3, c_max=3))
    r = rep.best
    dot = export_dot(karate, r)
    assert dot == export_dot(karate, r)
    for i in np.flatnonzero(r.hard_credal.imprecise):
        assert f'"{karate.node_labels[i]}" [style="wedged"' in dot


def test_dot_hard_partition_has_no_wedges():
    g = parse_edge_list("1 2\n2 3\n1 3\n4 5\n5 6\n4 6\n3 4\n")
    rep = detect(g, SweepConfig(c_min=2, c_max=2))
    assert not rep.best.hard_credal.imprecise.any()
    assert "wedged" not in export_dot(g, rep.best)


def test_dot_node_order_and_outliers(karate):
    from dataclasses import replace

    r = detect(karate, SweepConfig(c_min=2, c_max=2)).best
    flagged = replace(r, outliers=np.arange(34) == 4)
    dot = export_dot(karate, flagged)
    assert 'shape="box"' in dot and dot.count('outlier="true"') == 1
    order = [int(line.split('"')[1]) for line in dot.splitlines() if line.startswith('  "') and "--" not in line]
    assert order == list(range(1, 35))


def test_missing_input(tmp_path, capsys):
    missing = tmp_path / "absent.gml"
    assert run(["detect", "--input", str(missing)]) == 1
    assert str(missing) in capsys.readouterr().err


def test_unknown_flag(capsys):
    assert run(["detect", "--input", KARATE, "--bogus"]) == 1
    assert "--bogus" in capsys.readouterr().err


@pytest.mark.parametrize("argv, needle", [
    (["--beta", "1"], "beta"),
    (["--cmax", "12"], "max_card"),
    (["--cmax", "40", "--max-card", "2"], "n-1"),
    (["--max-card", "x"], "max-card"),
    (["--fcm-lambda", "2"], "threshold"),
])
def test_validation_errors_exit_1(argv, needle, capsys):
    assert run(["detect", "--input", KARATE] + argv) == 1
    assert needle in capsys.readouterr().err


def test_bad_file_exit_1(tmp_path, capsys):
    p = tmp_path / "bad.txt"
    p.write_text("1 2\n3\n")
    assert run(["detect", "--input", str(p)]) == 1
    err = capsys.readouterr().err
    assert "bad.txt" in err and "line 2" in err


def test_numeric_failure_exit_2(monkeypatch, capsys):
    from credal_communities import pipeline
    from credal_communities.errors import DegeneratePartitionError

    def boom(*a, **k):
        raise DegeneratePartitionError("collapsed", cluster=0)

    monkeypatch.setattr(pipeline, "ecm_cluster", boom)
    assert run(["detect", "--input", KARATE, "--cmax", "3"]) == 2
    err = capsys.readouterr().err
    assert "c=2" in err and "collapsed" in err


def test_stdout_report(capsys):
    assert run(["detect", "--input", KARATE, "--cmax", "3", "--format", "gml"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["best_c"] in (2, 3)


def test_edge_list_input(tmp_path, capsys):
    p = tmp_path / "g.edges"
    p.write_text("a b\nb c\na c\nd e\ne f\nd f\nc d\n")
    assert run(["detect", "--input", str(p), "--cmax", "3", "--pl-normalized"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["graph_summary"]["nodes"] == ["a", "b", "c", "d", "e", "f"]
    assert doc["config"]["pl_normalized"] is True
