import json

import pytest

from src.cli.main import main
from src.core import config
from src.core.kripke import chain_model, model_to_json
from src.core.proof_kernel import premise, proof_to_json, syllogism, weakening_conj, weakening_disj
from src.core.formula import var


def run(capsys, *argv):
    status = main(list(argv))
    captured = capsys.readouterr()
    document = json.loads(captured.out) if captured.out.strip() else None
    return status, document, captured.err


@pytest.fixture
def chain_file(tmp_path):
    path = tmp_path / "chain.json"
    path.write_text(json.dumps(model_to_json(chain_model(2, [[1]]))))
    return str(path)


def test_parse_and_encode(capsys):
    status, doc, _ = run(capsys, "parse", "p0 & p1 | p2")
    assert status == config.EXIT_POSITIVE
    assert doc["formula"] == "p0 & p1 | p2" and doc["depth"] == 2
    status, doc, _ = run(capsys, "encode", "bot & bot")
    assert doc == {"formula": "bot & bot", "code": 10}


def test_decode(capsys):
    assert run(capsys, "decode", "10")[1]["formula"] == "bot & bot"
    status, doc, _ = run(capsys, "decode", "1")
    assert status == config.EXIT_NEGATIVE and doc["formula"] is None


def test_universe(capsys):
    status, doc, _ = run(capsys, "universe", "0", "1")
    assert status == config.EXIT_POSITIVE
    assert doc["size"] == 4
    assert doc["formulas"][0] == "bot"


def test_bad_formula_is_a_usage_error(capsys):
    status, doc, err = run(capsys, "parse", "p0 &")
    assert status == config.EXIT_USAGE
    assert doc is None
    assert err.startswith("[iplkit] parse:")


def test_check_proof(capsys, tmp_path):
    good = tmp_path / "good.json"
    good.write_text(json.dumps(proof_to_json(syllogism(weakening_conj(var(0), var(1)),
                                                       weakening_disj(var(0), var(2))))))
    status, doc, _ = run(capsys, "check-proof", str(good))
    assert status == config.EXIT_POSITIVE
    assert doc == {"valid": True, "conclusion": "p0 & p1 -> p0 | p2", "size": 3}

    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(proof_to_json(premise(var(0)))))
    status, doc, _ = run(capsys, "check-proof", str(bad))
    assert status == config.EXIT_NEGATIVE
    assert doc["valid"] is False and doc["path"] == []
    assert run(capsys, "check-proof", str(bad), "--gamma", "p0")[0] == config.EXIT_POSITIVE


def test_eval(capsys, chain_file):
    status, doc, _ = run(capsys, "eval", chain_file, "0", "p0 | ~p0")
    assert status == config.EXIT_NEGATIVE and doc["forced"] is False
    assert run(capsys, "eval", chain_file, "1", "p0")[0] == config.EXIT_POSITIVE


def test_valid(capsys):
    status, doc, _ = run(capsys, "valid", "p0 -> p0", "--show-proof")
    assert status == config.EXIT_POSITIVE
    assert doc["status"] == "provable" and "proof" in doc
    status, doc, _ = run(capsys, "valid", "p0 | ~p0")
    assert status == config.EXIT_NEGATIVE
    assert doc["status"] == "refuted" and doc["world"] == 0
    assert run(capsys, "valid", "p1", "--gamma", "p0, p0 -> p1")[0] == config.EXIT_POSITIVE


def test_valid_in_one_model(capsys, chain_file):
    status, doc, _ = run(capsys, "valid", "p0 | ~p0", "--model", chain_file)
    assert status == config.EXIT_NEGATIVE
    assert doc["refuting_worlds"] == [0]


def test_valid_reports_unknown(capsys, monkeypatch):
    monkeypatch.setenv(config.BUDGET_ENV, "1")
    status, doc, _ = run(capsys, "valid", "~~p0 -> p0")
    assert status == config.EXIT_UNKNOWN
    assert doc["status"] == "unknown"


def test_countermodel(capsys):
    status, doc, _ = run(capsys, "countermodel", "p0 | ~p0", "--max-worlds", "2")
    assert status == config.EXIT_NEGATIVE
    assert doc["countermodel"] == {"worlds": 2, "rel": [[0, 1]], "vars": 1, "val": {"p0": [1]}}
    status, doc, _ = run(capsys, "countermodel", "p0 -> p0")
    assert status == config.EXIT_UNKNOWN and doc["countermodel"] is None


def test_countermodel_takes_an_explicit_zero_bound_literally(capsys, monkeypatch):
    monkeypatch.setenv(config.BUDGET_ENV, "2")
    status, doc, err = run(capsys, "countermodel", "p0 | ~p0", "--max-worlds", "0")
    assert status == config.EXIT_USAGE and doc is None
    assert "max_worlds must be at least 1" in err
    status, doc, _ = run(capsys, "countermodel", "p0 | ~p0")
    assert status == config.EXIT_NEGATIVE and doc["countermodel"]["worlds"] == 2


def test_algebra_commands(capsys):
    status, doc, _ = run(capsys, "alg-eval", "C3", "p0=a", "p0 | ~p0")
    assert status == config.EXIT_NEGATIVE and doc["value"] == "a"
    assert run(capsys, "alg-valid", "C2", "p0 | ~p0")[0] == config.EXIT_POSITIVE
    status, doc, _ = run(capsys, "alg-valid", "C3", "p0 | ~p0")
    assert status == config.EXIT_NEGATIVE and doc["assignment"] == {"p0": "a"}


def test_filter_commands(capsys):
    doc = run(capsys, "filters", "C3")[1]
    assert [f["elements"] for f in doc["filters"]] == [["1"], ["a", "1"], ["0", "a", "1"]]
    assert run(capsys, "prime-filters", "B4")[1]["prime_filters"] == [["p", "1"], ["q", "1"]]
    assert run(capsys, "super-prime", "B4", "--avoid", "p")[1]["prime_filter"] == ["q", "1"]


def test_unknown_algebra_is_a_usage_error(capsys):
    status, _, err = run(capsys, "filters", "NoSuchAlgebra")
    assert status == config.EXIT_USAGE
    assert "[iplkit] filters" in err


def test_bridge(capsys, chain_file):
    status, doc, _ = run(capsys, "bridge", "k2a", chain_file)
    assert status == config.EXIT_POSITIVE
    assert doc["labels"] == ["{}", "{w1}", "{w0,w1}"]
    doc = run(capsys, "bridge", "a2k", "C3", "p0=a")[1]
    assert doc["worlds"] == 2 and doc["val"] == {"p0": [1]}
    assert doc["filters"] == [["1"], ["a", "1"]]


def test_saturate_pair(capsys):
    status, doc, _ = run(capsys, "saturate-pair", "--left", "p0", "--right", "p1", "--depth", "0", "--trace")
    assert status == config.EXIT_POSITIVE
    assert doc["pair"] == {"left": ["p0"], "right": ["bot", "p1"]}
    assert len(doc["trace"]) == 4
    status, doc, _ = run(capsys, "saturate-pair", "--left", "p0", "--right", "p0")
    assert status == config.EXIT_NEGATIVE
    assert doc["witness"] == {"left": ["p0"], "right": ["p0"]}


def test_quotient(capsys):
    doc = run(capsys, "quotient", "--depth", "1")[1]
    assert doc["representatives"] == ["bot", "bot -> bot"]


def test_harness(capsys):
    status, doc, _ = run(capsys, "harness", "--vars", "1", "--depth", "1")
    assert status == config.EXIT_POSITIVE and doc["ok"] is True


def test_logs(capsys):
    run(capsys, "parse", "p0")
    doc = run(capsys, "logs", "-n", "1")[1]
    assert doc[0]["message"] == "CLI command finished"
    assert doc[0]["command"] == "parse"
