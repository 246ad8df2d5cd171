import json

import pytest

from wisopt.cli import EXIT_CODES, RunConfig, CliError, main
from wisopt.formats import dump_instance, load_instance
from wisopt.verify import brute_force_solve


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    assert code == 0, err
    return json.loads(out)


def fields(text):
    return dict(line.split(" = ", 1) for line in text.strip().splitlines())


def test_frobenius_3_5(capsys):
    code, out, _ = run(capsys, "frobenius", "3", "5")
    assert code == 0
    f = fields(out)
    assert f["F"] == "7" and f["G"] == "{1,2,4,7}" and f["schur_bound"] == "8"


def test_frobenius_trivial_and_sylvester(capsys):
    doc = run_json(capsys, "frobenius", "1")
    assert doc["frobenius"] == 0 and doc["gaps"] == []
    assert run_json(capsys, "frobenius", "7", "11")["frobenius"] == 59


def test_frobenius_not_primitive(capsys):
    code, out, err = run(capsys, "frobenius", "4", "6")
    assert code == EXIT_CODES["value"] and out == ""
    assert err.strip() == "error: value: tuple not primitive"


def test_gapset_non_saturated(capsys):
    doc = run_json(capsys, "gapset", "3", "5", "--lam", "3", "4")
    assert doc["saturated"] is False and doc["missing"] == [12, 17]
    assert run_json(capsys, "gapset", "3", "5", "--lam", "5", "5")["saturated"] is True


@pytest.mark.parametrize("solver,rank", [("naive", 2), ("main", 0)])
def test_solve_example_3_1(capsys, solver, rank):
    code, out, _ = run(capsys, "solve", "--family", "example_3_1", "--m", "2",
                       "--solver", solver, "--verify")
    assert code == 0
    assert fields(out)["rank"] == str(rank)


def test_solve_json_report(capsys):
    doc = run_json(capsys, "solve", "--family", "example_3_1", "--m", "2", "--verify")
    assert doc["certificate"]["rank"] == 0
    assert doc["report"]["stats"]["linear_queries"] <= doc["report"]["query_budget"]


def test_solve_trivial_system(capsys, tmp_path):
    path = tmp_path / "zero.json"
    path.write_text(json.dumps({
        "n": 3, "tuple": [2, 3], "weights": [2, 3, 2],
        "system": {"kind": "explicit", "points": ["000"]},
        "objective": {"kind": "table", "values": [4, 0, 0, 0, 0, 0, 0, 0]}}))
    doc = run_json(capsys, "solve", "--instance", str(path), "--verify")
    assert doc["report"]["support"] == [] and doc["report"]["weight"] == 0
    assert doc["certificate"]["rank"] == 0


@pytest.mark.parametrize("family,m,solver,threshold", [
    ("lower_bound", 2, "main", 4), ("lower_bound", 3, "main", 15),
    ("membership", 2, "exhaustive", 6)])
def test_adversary_thresholds(capsys, family, m, solver, threshold):
    code, out, _ = run(capsys, "adversary", "--family", family, "--m", str(m), "--solver", solver)
    assert code == 0
    f = fields(out)
    assert f["threshold"] == str(threshold) and int(f["queries"]) > 0
    if family == "membership":
        assert f["surviving_y"] == "0" and f["queries"] == "6"


def test_adversary_budget_fooled(capsys):
    doc = run_json(capsys, "adversary", "--family", "lower_bound", "--m", "2",
                   "--solver", "budget:3")
    assert doc["surviving_y"] >= 1 and doc["fooled"] is True


def test_adversary_cap(capsys):
    code, _, err = run(capsys, "adversary", "--family", "lower_bound", "--m", "9")
    assert code == EXIT_CODES["value"] and "cap" in err


def test_gen_round_trip(capsys, tmp_path):
    for seed in range(5):
        path = tmp_path / f"inst{seed}.json"
        assert main(["gen", "--tuple", "2", "3", "--n", "9", "--seed", str(seed),
                     "--out", str(path)]) == 0
        inst = load_instance(path)
        again = tmp_path / "again.json"
        dump_instance(inst, again)
        assert brute_force_solve(load_instance(again)).image == brute_force_solve(inst).image
        assert load_instance(again).system.image(inst.weights) == inst.system.image(inst.weights)


def test_gen_is_seeded(capsys):
    _, a, _ = run(capsys, "gen", "--tuple", "3", "5", "--seed", "4")
    _, b, _ = run(capsys, "gen", "--tuple", "3", "5", "--seed", "4")
    assert a == b and json.loads(a)["tuple"] == [3, 5]


@pytest.mark.parametrize("doc,field", [
    ({"tuple": [2, 3]}, "n"),
    ({"n": 2, "tuple": [2, 3], "weights": [2, 3],
      "system": {"kind": "explicit", "points": ["012"]},
      "objective": {"kind": "table", "values": [0] * 6}}, "system.points"),
    ({"n": 2, "tuple": [2, 3], "weights": [2, 3],
      "system": {"kind": "explicit", "points": ["11"]},
      "objective": {"kind": "table", "values": [0, 1]}}, "objective.values"),
])
def test_malformed_instance_names_field(capsys, tmp_path, doc, field):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    code, _, err = run(capsys, "solve", "--instance", str(path))
    assert code == EXIT_CODES["format"]
    assert err.startswith("error: format: ") and field in err and err.count("\n") == 1


def test_invalid_json_file(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    code, _, err = run(capsys, "solve", "--instance", str(path))
    assert code == EXIT_CODES["format"]


def test_usage_errors(capsys):
    assert run(capsys, "solve")[0] == EXIT_CODES["usage"]
    assert run(capsys, "solve", "--family", "example_3_1")[0] == EXIT_CODES["usage"]
    code, _, err = run(capsys, "bogus")
    assert code == EXIT_CODES["usage"] and err.startswith("error: usage:")
    with pytest.raises(CliError):
        RunConfig("solve", instance="x.json", family="example_3_1")


def test_tuple_must_cover_weights(capsys):
    code, _, err = run(capsys, "solve", "--family", "example_3_1", "--m", "1", "--tuple", "2", "3")
    assert code == EXIT_CODES["value"]


def test_verify_sweep(capsys):
    doc = run_json(capsys, "verify", "--tuple", "2", "3", "--n", "8", "--count", "10", "--seed", "1")
    assert doc["count"] == 10 and doc["failures"] == 0 and doc["max_rank"] <= 1
