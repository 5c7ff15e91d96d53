"""Command line surface: golden payloads, exit codes, determinism."""

import io
import json
import subprocess
import sys

import pytest

from padicmetrics.cli import main
from padicmetrics.fixtures import four_point_space, legs_three_space

ZIGZAG = json.dumps(
    {
        "kind": "piecewise_linear",
        "points": [["0", "0"], ["1", "1"], ["3/2", "1/2"], ["2", "7/8"],
                   ["3", "1/8"], ["7/2", "1/2"]],
        "tail": {"constant": "1/2"},
    }
)


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


@pytest.fixture()
def space_file(tmp_path):
    path = tmp_path / "four.json"
    path.write_text(json.dumps(four_point_space().to_json_dict()))
    return str(path)


@pytest.fixture()
def family_file(tmp_path):
    path = tmp_path / "family.json"
    path.write_text(json.dumps({"spaces": [four_point_space().to_json_dict()]}))
    return str(path)


@pytest.fixture()
def chain_file(tmp_path):
    rows = [["0", "1", "2"], ["1", "0", "2"], ["2", "2", "0"]]
    path = tmp_path / "chain.json"
    path.write_text(json.dumps({"spaces": [{"points": ["a", "b", "c"], "d": rows}]}))
    return str(path)


# ----------------------------------------------------------------- golden --


def test_abs_golden_bytes(capsys):
    code, out = run(capsys, "padic", "abs", "--p", "3", "--x", "25/18")
    assert code == 0
    assert out == '{\n  "value": "9"\n}\n'


def test_ord_is_a_json_integer(capsys):
    code, payload = run_json(capsys, "padic", "ord", "--p", "3", "--x", "25/18")
    assert code == 0
    assert payload == {"value": -2}


def test_dist_and_digits(capsys):
    code, payload = run_json(capsys, "padic", "dist", "--p", "3", "--x=1/2", "--y=1/3")
    assert code == 0 and payload == {"value": "3"}
    code, payload = run_json(capsys, "padic", "digits", "--p", "3", "--x", "17", "--high", "2")
    assert code == 0
    assert payload == {"p": 3, "low": 0, "digits": [2, 2, 1]}


def test_classify_band_verdict_golden(capsys):
    code, payload = run_json(
        capsys, "fn", "classify", "--p", "2", "--spec", '{"kind":"reciprocal"}'
    )
    assert code == 1
    assert payload == {
        "passed": False,
        "reason": "band",
        "window": {"lo": -16, "hi": 16},
        "witness": {
            "m": -2,
            "n": 0,
            "triple": ["2", "-2", "1"],
            "images": ["1", "1", "4"],
        },
    }


def test_classify_is_byte_deterministic(capsys):
    args = ("fn", "classify", "--p", "2", "--spec", '{"kind":"reciprocal"}')
    _, first = run(capsys, *args)
    _, second = run(capsys, *args)
    assert first == second


def test_classify_survey_mode(capsys):
    code, payload = run_json(capsys, "fn", "classify", "--spec", ZIGZAG)
    assert code == 0
    assert set(payload) == {
        "kind", "samples", "metric", "ultrametric", "ultra_to_metric", "sufficient",
    }
    assert payload["kind"] == "piecewise_linear"
    assert payload["ultrametric"]["passed"] is False


def test_window_flag(capsys):
    code, payload = run_json(
        capsys, "fn", "padic-check", "--spec", ZIGZAG, "--p", "3", "--window=-2:2"
    )
    assert code == 1
    assert payload["window"] == {"lo": -2, "hi": 2}
    assert payload["witness"]["images"] == ["1/8", "1/8", "1"]
    assert payload["witness"]["triple"] == ["1", "-1", "1/3"]


def test_witness_verb(capsys):
    code, payload = run_json(capsys, "fn", "witness", "--p", "3", "--m", "0", "--n=-1")
    assert code == 0
    assert payload == {"triple": ["3", "-3", "1"], "distances": ["1", "1", "1/3"]}


def test_fn_eval_inline_and_file(capsys, tmp_path):
    code, payload = run_json(capsys, "fn", "eval", "--spec", ZIGZAG, "--x", "3")
    assert code == 0 and payload == {"value": "1/8"}
    spec_path = tmp_path / "zig.json"
    spec_path.write_text(ZIGZAG)
    code, payload = run_json(capsys, "fn", "eval", "--spec", str(spec_path), "--x", "2")
    assert code == 0 and payload == {"value": "7/8"}


def test_euclid_exit_code(capsys):
    code, payload = run_json(capsys, "fn", "euclid", "--spec", ZIGZAG)
    assert code == 1
    assert payload["witness"]["points"] == ["3/4", "23/8", "29/8"]


def test_extend_rejects_non_preserving(capsys):
    code, payload = run_json(capsys, "fn", "extend", "--spec", ZIGZAG, "--p", "3")
    assert code == 2
    assert payload["error"] == "not_preserving"


# ------------------------------------------------------------------ space --


def test_space_validate_ok(capsys, space_file):
    code, payload = run_json(capsys, "space", "validate", "--file", space_file)
    assert code == 0
    assert payload == {"points": 4, "valid": True}


def test_space_validate_violation(capsys, tmp_path):
    rows = [["0", "1", "4"], ["1", "0", "2"], ["4", "2", "0"]]
    path = tmp_path / "metric_only.json"
    path.write_text(json.dumps({"points": ["a", "b", "c"], "d": rows}))
    code, payload = run_json(capsys, "space", "validate", "--file", str(path))
    assert code == 1
    assert payload["valid"] is False
    assert payload["witness"] == {"i": 0, "j": 2, "k": 1, "sides": ["4", "1", "2"]}


def test_space_validate_structural_error(capsys, tmp_path):
    rows = [["0", "1"], ["2", "0"]]
    path = tmp_path / "asym.json"
    path.write_text(json.dumps({"points": ["a", "b"], "d": rows}))
    code, payload = run_json(capsys, "space", "validate", "--file", str(path))
    assert code == 2
    assert payload["error"] == "asymmetric"


def test_space_file_from_stdin(capsys, monkeypatch):
    doc = json.dumps(four_point_space().to_json_dict())
    monkeypatch.setattr(sys, "stdin", io.StringIO(doc))
    code, payload = run_json(capsys, "space", "range", "--file", "-")
    assert code == 0
    assert payload == {"range": ["0", "1", "2", "3"]}


def test_space_isometry(capsys, space_file, tmp_path):
    other = tmp_path / "legs.json"
    other.write_text(json.dumps(legs_three_space().to_json_dict()))
    code, payload = run_json(
        capsys, "space", "isometry", "--file", space_file, "--to", str(other)
    )
    assert code == 0
    assert payload["found"] is True
    assert payload["map"] == [2, 0, 3, 1]
    assert payload["labels"] == {"x1": "y3", "x2": "y1", "x3": "y4", "x4": "y2"}


def test_space_embed_dim(capsys, space_file):
    code, payload = run_json(capsys, "space", "embed-dim", "--file", space_file)
    assert code == 0
    assert payload == {"dimension": 3, "gram_rank": 3}


def test_space_apply_failure_carries_witness(capsys, space_file):
    code, payload = run_json(
        capsys, "space", "apply", "--file", space_file, "--spec", '{"kind":"reciprocal"}'
    )
    assert code == 1
    assert payload["valid"] is False
    assert "witness" in payload


# ------------------------------------------------------------------ class --


def test_class_poset_golden(capsys, family_file):
    code, payload = run_json(capsys, "class", "poset", "--file", family_file)
    assert code == 0
    assert payload == {
        "ground": ["0", "1", "2", "3"],
        "pairs": [["0", "1"], ["0", "2"], ["0", "3"], ["1", "3"], ["2", "3"]],
        "total": False,
    }


def test_class_counterexample_and_chain_rejection(capsys, family_file, chain_file):
    code, payload = run_json(capsys, "class", "counterexample", "--file", family_file)
    assert code == 0
    assert payload == {
        "kind": "tabulated",
        "table": [["0", "0"], ["1", "2"], ["2", "1"], ["3", "2"]],
    }
    code, payload = run_json(capsys, "class", "counterexample", "--file", chain_file)
    assert code == 2
    assert payload["error"] == "totally_ordered"


def test_class_check_exit_codes(capsys, family_file):
    level_swap = json.dumps(
        {
            "kind": "piecewise_linear",
            "points": [["0", "0"], ["1", "2"], ["2", "1"], ["3", "3"]],
            "tail": {"constant": "3"},
        }
    )
    code, payload = run_json(
        capsys, "class", "check", "--file", family_file, "--spec", level_swap
    )
    assert code == 0 and payload["passed"] is True
    code, payload = run_json(
        capsys, "class", "check", "--file", family_file, "--spec", ZIGZAG
    )
    assert code == 1 and payload["passed"] is False
    assert payload["order_witness"]["kind"] == "pair"


# ----------------------------------------------------------------- errors --


def test_malformed_spec_is_an_input_error(capsys):
    code, payload = run_json(capsys, "fn", "eval", "--spec", "{broken", "--x", "1")
    assert code == 2
    assert payload["error"] == "invalid_input"


def test_non_prime_modulus(capsys):
    code, payload = run_json(capsys, "padic", "abs", "--p", "6", "--x", "2")
    assert code == 2
    assert payload["error"] == "not_prime"


def test_usage_error_exit_code(capsys):
    assert main(["padic", "nope"]) == 2
    assert main([]) == 2
    capsys.readouterr()


# --------------------------------------------------------------- examples --


def test_examples_reproduce_names_the_known_failure(capsys):
    code, payload = run_json(capsys, "examples", "reproduce")
    assert code == 1
    assert payload["total"] == 26
    assert payload["failed"] == 1
    failing = [f["name"] for f in payload["fixtures"] if not f["passed"]]
    assert failing == ["zigzag-euclid-grid"]


# ------------------------------------------------------------ entry point --


def test_console_script_is_wired():
    proc = subprocess.run(
        ["padicmetrics", "padic", "abs", "--p", "3", "--x", "25/18"],
        capture_output=True,
        text=True,
        timeout=60,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout) == {"value": "9"}
