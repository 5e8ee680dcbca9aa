from __future__ import annotations

import json

import pytest

from phidelta.cli import EXIT_INPUT, EXIT_OK, EXIT_VACUOUS, main

Z12 = '{"type":"zmod","n":12}'
Z80 = '{"type":"zmod","n":80}'


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check_text(capsys):
    code, out, _ = run(capsys, "check", "--ring", Z12, "--ideal", '{"gens":[4]}', "--delta", "radical")
    assert code == EXIT_OK and "witnesses: [1]" in out


def test_check_counterexample_json(capsys):
    code, out, _ = run(capsys, "check", "--ring", Z12, "--ideal", '{"gens":[4]}', "--format", "json")
    doc = json.loads(out)
    assert code == EXIT_OK and doc["witnesses"] == []
    cx = doc["counterexample"]
    assert (cx["a"], cx["b"], cx["ab"]) == (2, 2, 4)


def test_check_weakly_example(capsys):
    code, out, _ = run(capsys, "check", "--ring", Z80, "--ideal", '{"gens":[20]}', "--phi", "zero",
                       "--delta", "radical", "--s", '{"gens":[5]}', "--format", "json")
    doc = json.loads(out)
    assert doc["witnesses"] == [5, 25, 45, 65] and doc["mult_set"] == {"gens": [5]}


def test_check_saturate(capsys):
    code, out, _ = run(capsys, "check", "--ring", Z12, "--ideal", '{"gens":[0]}', "--phi", '{"power":2}',
                       "--delta", "radical", "--s", '{"gens":[5]}', "--saturate", "--format", "json")
    doc = json.loads(out)
    assert doc["saturated"] and doc["witnesses"] == [1, 5, 7, 11]


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "--ring", Z80, "--phi", "zero", "--delta", "radical",
                       "--s", '{"gens":[5]}', "--format", "json")
    rows = {tuple(r["members"][:2]): r for r in json.loads(out)["ideals"]}
    assert code == EXIT_OK
    assert rows[(0, 20)]["witnesses"] == [5, 25, 45, 65]
    code, out, _ = run(capsys, "enumerate", "--ring", Z12)
    assert "proper ideals disjoint from S" in out


@pytest.mark.parametrize("argv,fragment", [
    (["check", "--ring", Z12, "--ideal", '{"gens":[1]}'], "ideal not proper"),
    (["check", "--ring", Z12, "--ideal", '{"gens":[2]}', "--s", '{"gens":[2]}'], "ideal meets S"),
    (["check", "--ring", '{"type":"zmod","n":1}', "--ideal", '{"gens":[0]}'], "error:"),
    (["check", "--ring", Z12, "--ideal", '{"gens":[4]}', "--delta", "nonsense"], "error:"),
    (["check", "--ring", "{oops", "--ideal", "x"], "not valid JSON"),
    (["verify", "/nonexistent/config.json"], "cannot read"),
    (["hunt", "--budget", "0"], "budget"),
])
def test_input_errors(capsys, argv, fragment):
    code, _, err = run(capsys, *argv)
    assert code == EXIT_INPUT and fragment in err


def test_usage_error_is_input_error(capsys):
    assert run(capsys, "frobnicate")[0] == EXIT_INPUT
    assert run(capsys, "check")[0] == EXIT_INPUT


def test_verify_config_file(tmp_path, capsys):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"rings": [{"type": "zmod", "n": 12}], "theorems": ["colon_characterization"]}))
    code, out, _ = run(capsys, "verify", str(path), "--format", "json")
    doc = json.loads(out)
    assert code == EXIT_OK and doc["summary"]["violations"] == 0
    path.write_text(json.dumps({"rings": [], "products": [[{"type": "zmod", "n": 4}, {"type": "zmod", "n": 3}]],
                                "theorems": ["product_weakly"]}))
    assert run(capsys, "verify", str(path))[0] == EXIT_VACUOUS


def test_hunt_json_is_reproducible(capsys):
    argv = ["hunt", "--seed", "5", "--budget", "3", "--max-order", "10", "--format", "json"]
    first, second = run(capsys, *argv)[1], run(capsys, *argv)[1]
    assert first == second and json.loads(first)["hunt"]["seed"] == 5
