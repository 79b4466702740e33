import csv
import io
import json
import math
import subprocess
import sys

import pytest

from catassoc import bst as B
from catassoc import cli
from catassoc import stg as S
from catassoc.caterpillar import Caterpillar

from oracles import bst_distances


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_bounds_path(capsys):
    code, out, _ = run(capsys, "bounds", "-c", '{"legs": [0, 0, 0]}')
    assert code == 0
    rep = json.loads(out)
    assert rep["H"] == 0 and rep["H_prime"] == 1
    assert rep["envelope"] == {"lower": 2, "upper": 3}
    assert rep["wilber_lb"] == 0


def test_bounds_uniform(capsys):
    code, out, _ = run(capsys, "bounds", "-c", '{"legs": [1, 1, 1, 1]}')
    rep = json.loads(out)
    assert code == 0 and rep["H"] == 2.0
    assert rep["wilber_lb"] >= math.ceil(0.25 * 2 * 4)
    assert rep["wilber_lb"] <= rep["trace_len"] <= rep["upper_len"]


@pytest.mark.parametrize("arg", ['{"legs": []}', '{"nolegs": 1}', "{not json", "missing.json"])
def test_bounds_usage_errors(capsys, arg):
    code, _, err = run(capsys, "bounds", "-c", arg)
    assert code == 2 and "error" in err


def test_unknown_subcommand(capsys):
    with pytest.raises(SystemExit) as info:
        cli.main(["frobnicate"])
    assert info.value.code == 2


def pair_file(tmp_path, t1, t2):
    p = tmp_path / "pair.json"
    p.write_text(json.dumps({"source": t1.to_json(), "target": t2.to_json()}))
    return str(p)


def test_transform_identical(capsys, tmp_path, sample_tree):
    code, out, _ = run(capsys, "transform", "--in", pair_file(tmp_path, sample_tree, sample_tree))
    data = json.loads(out)
    assert code == 0 and data["verified"]
    assert data["length"] == sum(data["phase_lengths"].values())


def test_transform_sample_to_file(capsys, tmp_path, sample_graph, sample_bst, sample_pi):
    a, b = S.build_A(sample_graph, sample_bst, sample_pi), S.build_B(sample_graph, sample_bst)
    out_path = tmp_path / "trace.json"
    code, out, _ = run(capsys, "transform", "--in", pair_file(tmp_path, a, b), "--out", str(out_path))
    assert code == 0 and out == ""
    data = json.loads(out_path.read_text())
    t = a
    for p, c in data["rotations"]:
        t = S.rotate(t, (p, c))
    assert t == b


def test_transform_mismatch(capsys, tmp_path):
    t1 = S.build_B(Caterpillar((1,)), B.balanced(1))
    t2 = S.build_B(Caterpillar((0, 0)), B.balanced(2))
    code, _, err = run(capsys, "transform", "--in", pair_file(tmp_path, t1, t2))
    assert code == 2 and "differ" in err


def test_transform_bad_pair(capsys):
    code, _, _ = run(capsys, "transform", "--in", '{"source": {}}')
    assert code == 2


def test_worst_case(capsys):
    code, out, _ = run(capsys, "worst-case", "-w", "[1, 1, 1, 1]")
    data = json.loads(out)
    assert code == 0 and data["ratio"] >= 0.25 and sorted(data["sigma"]) == [1, 2, 3, 4]
    code, out, _ = run(capsys, "worst-case", "-w", "[5]")
    assert json.loads(out)["LambdaPrime"] == 5
    for bad in ("[]", "[0, 0]", "[-1, 2]", '"x"'):
        assert run(capsys, "worst-case", "-w", bad)[0] == 2


def test_oracle_commands(capsys, tmp_path):
    code, out, _ = run(capsys, "oracle", "diameter", "-c", '{"legs": [0, 0, 0]}')
    data = json.loads(out)
    assert code == 0 and data["diameter"] == 2 and data["nodes"] == 5 and data["edges"] == 5
    g = Caterpillar((0, 0))
    a, b = S.build_B(g, B.left_path(2)), S.build_B(g, B.right_path(2))
    code, out, _ = run(capsys, "oracle", "distance", "--in", pair_file(tmp_path, a, b))
    assert code == 0 and json.loads(out) == {"distance": 1}
    assert run(capsys, "oracle", "diameter")[0] == 2
    assert run(capsys, "--budget", "10", "oracle", "diameter", "-c", '{"legs": [1, 1, 1]}')[0] == 2
    assert run(capsys, "oracle", "diameter", "-c", '{"legs": [1, 1, 1]}', "--budget", "10")[0] == 2


def parse_rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_experiment_path_oracle_column(capsys):
    code, out, _ = run(capsys, "experiment", "-f", "path", "-n", "3", "4", "5", "6", "7")
    assert code == 0
    rows = parse_rows(out)
    assert [int(r["n"]) for r in rows] == [3, 4, 5, 6, 7]
    for r in rows:
        n = int(r["n"])
        dist = bst_distances(n)
        want = max(max(d.values()) for d in dist.values())
        assert int(r["oracle_diam"]) == want
        assert int(r["wilber_lb"]) <= want <= int(r["upper_len"])


def test_experiment_header_and_sandwich(capsys):
    code, out, err = run(capsys, "experiment", "-f", "uniform", "heavy", "geometric", "random", "-n", "2", "3")
    assert code == 0
    assert out.splitlines()[0] == ",".join(cli.CSV_FIELDS)
    for r in parse_rows(out):
        lb, up = int(r["wilber_lb"]), int(r["upper_len"])
        assert lb <= int(r["trace_len"]) <= up
        if r["oracle_diam"]:
            assert lb <= int(r["oracle_diam"]) <= up


def test_experiment_budget_warning(capsys):
    code, out, err = run(capsys, "experiment", "-f", "uniform", "-n", "4", "--budget", "100")
    assert code == 0 and "warning" in err
    assert parse_rows(out)[0]["oracle_diam"] == ""


def test_experiment_reproducible_and_parallel(capsys, tmp_path):
    argv = ["experiment", "-f", "random", "uniform", "-n", "2", "3", "4", "--seed", "11"]
    a = run(capsys, *argv)[1]
    b = run(capsys, *argv)[1]
    c = run(capsys, *argv, "--jobs", "3")[1]
    assert a == b == c
    out = tmp_path / "rows.csv"
    assert run(capsys, *argv, "--out", str(out))[0] == 0
    assert out.read_text() == a


def test_experiment_usage_errors(capsys):
    assert run(capsys, "experiment", "-f", "nonsense")[0] == 2
    assert run(capsys, "experiment", "-n", "0")[0] == 2


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "catassoc", "bounds", "-c", '{"legs": [1]}'],
        capture_output=True, text=True, check=False,
    )
    assert res.returncode == 0 and json.loads(res.stdout)["m"] == 1
