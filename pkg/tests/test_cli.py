import json
import subprocess
import sys

import pytest

from gmle.cli import main


def run(argv, capsys):
    code = main([str(a) for a in argv])
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_partition(data_dir, capsys):
    code, d = run(["partition", "--graph", data_dir / "mixed.json"], capsys)
    assert code == 0
    assert d["U"] == [1, 2] and d["W"] == [3, 4]


def test_score_equations_from_data(data_dir, capsys):
    code, d = run(["score-equations", "--graph", data_dir / "cycle4.json", "--data", data_dir / "cycle4_U.csv"], capsys)
    assert code == 0
    assert d["dimension"] == 0 and d["degree"] == 5
    assert len(d["generators"]) == 14
    assert "1312002*k_(3,4)^2 - 387081*k_(1,2) + 109860*k_(1,4) + 1972025*k_(2,3) - 898518*k_(3,4) - 291556" in d["generators"]


def test_cols_are_samples_changes_the_ideal(data_dir, capsys):
    base = ["score-equations", "--graph", data_dir / "cycle4.json", "--data", data_dir / "cycle4_U.csv"]
    _, rows = run(base, capsys)
    _, cols = run(base + ["--cols-are-samples"], capsys)
    assert rows["generators"] != cols["generators"]
    assert any(g.startswith("1208385*k_(3,4)^2 - 2169761*k_(1,2)") for g in cols["generators"])


def test_solve(data_dir, capsys):
    code, d = run(["solve", "--graph", data_dir / "mixed.json", "--cov", data_dir / "mixed_S.json"], capsys)
    assert code == 0 and d["degree"] == 5 and len(d["solutions"]) == 5
    assert sum(s["isReal"] for s in d["solutions"]) == 3


def test_mle(data_dir, capsys):
    code, d = run(["mle", "--graph", data_dir / "mixed.json", "--cov", data_dir / "mixed_S.json"], capsys)
    assert code == 0
    assert d["maxLogLik"] == pytest.approx(9.36624, abs=5e-5)
    assert sorted(c["classification"] for c in d["criticalPoints"]) == ["LocalMax", "LocalMax", "Saddle"]


def test_ml_degree(data_dir, capsys):
    code, d = run(["ml-degree", "--graph", data_dir / "cycle4.json", "--seed", 3], capsys)
    assert code == 0 and d == {"mlDegree": 5, "seed": 3}


def test_check_pd(tmp_path, capsys):
    good, bad = tmp_path / "good.json", tmp_path / "bad.json"
    good.write_text("[[2, 1], [1, 2]]")
    bad.write_text('[["1", "2"], ["2", "1"]]')
    code, d = run(["check-pd", "--matrix", good], capsys)
    assert code == 0 and d["positiveDefinite"] and d["minEigenvalue"] == pytest.approx(1.0)
    code, d = run(["check-pd", "--matrix", bad], capsys)
    assert code == 0 and not d["positiveDefinite"] and d["minEigenvalue"] == pytest.approx(-1.0)


def test_output_file(data_dir, tmp_path, capsys):
    out = tmp_path / "p.json"
    assert main(["partition", "--graph", str(data_dir / "cycle4.json"), "--output", str(out)]) == 0
    assert capsys.readouterr().out == ""
    assert json.loads(out.read_text())["U"] == [1, 2, 3, 4]


def test_positive_dimensional_exit_2(data_dir, capsys):
    code, d = run(["ml-degree", "--graph", data_dir / "multiedge.json", "--seed", 7], capsys)
    assert code == 2
    assert d["error"] == "positive-dimensional" and (d["dim"], d["degree"]) == (1, 2)


def test_partition_infeasible_exit_2(tmp_path, capsys):
    g = tmp_path / "g.json"
    g.write_text(json.dumps({"vertices": [1, 2, 3], "undirected": [[1, 2]], "bidirected": [[2, 3]]}))
    code, d = run(["partition", "--graph", g], capsys)
    assert code == 2 and d["error"] == "partition-infeasible" and d["vertex"] == 2


def test_ordering_exit_1(data_dir, capsys):
    code, d = run(["partition", "--graph", data_dir / "mixed_bad_order.json"], capsys)
    assert code == 1 and d["error"] == "ordering"


@pytest.mark.parametrize(
    "content, kind",
    [
        ('{"vertices": [1, 2], "undirected": [[1, 1]]}', "GraphError"),
        ("not json", "io"),
    ],
)
def test_malformed_graph_exit_1(tmp_path, capsys, content, kind):
    g = tmp_path / "g.json"
    g.write_text(content)
    code, d = run(["partition", "--graph", g], capsys)
    assert code == 1 and d["error"] == kind


def test_missing_and_conflicting_inputs(data_dir, capsys):
    code, d = run(["mle", "--graph", data_dir / "cycle4.json"], capsys)
    assert code == 1 and d["error"] == "UsageError"
    code, d = run(
        ["mle", "--graph", data_dir / "cycle4.json", "--cov", data_dir / "cycle4_S.json", "--data", data_dir / "cycle4_U.csv"],
        capsys,
    )
    assert code == 1 and d["error"] == "UsageError"


def test_asymmetric_covariance_exit_1(data_dir, tmp_path, capsys):
    S = tmp_path / "S.json"
    S.write_text('[[1, "1/2", 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]')
    code, d = run(["score-equations", "--graph", data_dir / "cycle4.json", "--cov", S], capsys)
    assert code == 1 and d["error"] == "InputError"


def test_missing_file_exit_1(tmp_path, capsys):
    code, d = run(["partition", "--graph", tmp_path / "absent.json"], capsys)
    assert code == 1 and d["error"] == "io"


def test_byte_identical_runs(data_dir):
    cmd = [sys.executable, "-m", "gmle.cli", "mle", "--graph", str(data_dir / "mixed.json"), "--cov", str(data_dir / "mixed_S.json")]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and json.loads(a)["mlDegree"] == 5
