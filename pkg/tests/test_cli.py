import io
import json
import subprocess
import sys

import jsonschema
import pytest

from poincare_orbits.cli import main
from poincare_orbits.documents import DocumentError, load_schema, point_from_doc

CASE1 = {"M": {"l": [0, 0, 3], "g": [0, 0, 0]}, "P": [0, 0, 0, 2]}
CASE2 = {"M": {"l": [0, 0, 0], "g": [0, 0, 0]}, "P": [0, 0, 0, 3]}
REST = {"M": {"l": [0, 0, 0], "g": [0, 0, 0]}, "P": [0, 0, 0, 1]}
SPACELIKE = {"M": {"l": [0, 0, 0], "g": [0, 0, 0]}, "P": [1, 0, 0, 0]}


def run(monkeypatch, capsys, argv, stdin=""):
    monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def validator():
    return jsonschema.Draft202012Validator(load_schema("report"))


def test_invariants_example(monkeypatch, capsys):
    code, out, _ = run(monkeypatch, capsys, ["invariants"], json.dumps(CASE1))
    assert code == 0
    assert json.loads(out) == {"C1": 4, "C2": -36, "W": [0, 0, 6, 0]}


def test_classify_example(monkeypatch, capsys, validator):
    code, out, _ = run(monkeypatch, capsys, ["classify"], json.dumps(CASE2))
    doc = json.loads(out)
    assert code == 0
    assert doc["class"] == "massive-spinless" and doc["mu"] == 3 and doc["labels"] == {"energy": "+"}
    assert "representative" not in doc and "witness" not in doc
    validator.validate(doc)


def test_act_time_reversal(monkeypatch, capsys):
    code, out, _ = run(monkeypatch, capsys, ["act", "--element", '{"involution":"time"}'], json.dumps(REST))
    assert code == 0
    assert json.loads(out)["P"] == [0, 0, 0, -1]


def test_act_element_file(monkeypatch, capsys, tmp_path):
    element = tmp_path / "g.json"
    element.write_text(json.dumps({"S": [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]], "C": [1, 0, 0, 0]}))
    code, out, _ = run(monkeypatch, capsys, ["act", "--element", str(element)], json.dumps(REST))
    assert code == 0
    assert json.loads(out)["M"]["g"] == [1, 0, 0]


def test_act_rejects_non_lorentz(monkeypatch, capsys):
    bad = json.dumps({"S": [[2, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]], "C": [0, 0, 0, 0]})
    code, _, err = run(monkeypatch, capsys, ["act", "--element", bad], json.dumps(REST))
    assert code == 1
    assert json.loads(err)["error"] == "malformed-input"


def test_normal_form_full_report(monkeypatch, capsys, validator):
    code, out, _ = run(monkeypatch, capsys, ["normal-form"], json.dumps(CASE1))
    doc = json.loads(out)
    assert code == 0
    validator.validate(doc)
    assert doc["class"] == "massive-spinning" and doc["beta"] == 3 and doc["mu"] == 2
    assert doc["labels"] == {"energy": "+", "spin": "+"}
    assert doc["residual"] == 0
    assert doc["cvk_label"] == "∇₃⁺(0),2 + Δ₀⁻(i·3, IP) + Δ₀⁻(0)"


def test_normal_form_out_of_catalog_exit_code(monkeypatch, capsys, validator):
    code, out, _ = run(monkeypatch, capsys, ["normal-form"], json.dumps(SPACELIKE))
    assert code == 2
    doc = json.loads(out)
    validator.validate(doc)
    assert doc["reason"] == "spacelike-momentum"
    code, _, _ = run(monkeypatch, capsys, ["classify"], json.dumps(SPACELIKE))
    assert code == 0


@pytest.mark.parametrize(
    "text",
    ["{not json", '{"P": [0, 0, 1]}', '{"M": {"l": [0, 0, 0]}, "P": [0, 0, 0, 1]}', '{"M": {"l": [0,0,0], "g": [0,0,0]}, "P": [0,0,"x",1]}'],
)
def test_malformed_input(monkeypatch, capsys, text):
    code, out, err = run(monkeypatch, capsys, ["classify"], text)
    assert code == 1 and out == ""
    assert set(json.loads(err)) == {"error", "message"}


def test_matrix_input_validated(monkeypatch, capsys):
    m = [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]]
    code, out, _ = run(monkeypatch, capsys, ["classify"], json.dumps({"M_matrix": m, "P": [0, 0, 0, 2]}))
    assert code == 0 and json.loads(out)["beta"] == 1
    m[0][3] = 1.0  # boost entry without its symmetric partner
    code, _, err = run(monkeypatch, capsys, ["classify"], json.dumps({"M_matrix": m, "P": [0, 0, 0, 2]}))
    assert code == 1
    assert "entry (0, 3)" in json.loads(err)["message"] or "entry (3, 0)" in json.loads(err)["message"]


def test_unknown_flag(monkeypatch, capsys):
    code, _, err = run(monkeypatch, capsys, ["classify", "--frobnicate"], json.dumps(REST))
    assert code == 1
    assert json.loads(err)["error"] == "usage"


def test_help_states_conventions(capsys):
    with pytest.raises(SystemExit) as info:
        main(["--help"])
    assert info.value.code == 0
    out = capsys.readouterr().out
    assert "(x, y, z, t)" in out and "diag(-1, -1, -1, 1)" in out


def test_ndjson_batch_preserves_order(monkeypatch, capsys):
    lines = "\n".join(json.dumps(d) for d in (CASE1, SPACELIKE, CASE2)) + "\n"
    code, out, _ = run(monkeypatch, capsys, ["classify"], lines)
    assert code == 0
    classes = [json.loads(line)["class"] for line in out.splitlines()]
    assert classes == ["massive-spinning", "out-of-catalog", "massive-spinless"]


def test_parallel_batch_matches_serial(monkeypatch, capsys):
    code, sampled, _ = run(monkeypatch, capsys, ["sample", "--class", "massive-spinning", "--mu", "2", "--beta", "1",
                                                "--count", "12", "--seed", "5"])
    assert code == 0
    _, serial, _ = run(monkeypatch, capsys, ["normal-form"], sampled)
    _, parallel, _ = run(monkeypatch, capsys, ["normal-form", "--parallel", "3"], sampled)
    assert json.loads(serial) == json.loads(parallel)


@pytest.mark.parametrize(
    "args, expected",
    [
        (["--class", "massive-spinning", "--mu", "2", "--beta", "1", "--energy", "-"],
         {"class": "massive-spinning", "mu": 2, "beta": 1, "labels": {"energy": "-", "spin": "-"}}),
        (["--class", "massive-spinless", "--mu", "3"], {"class": "massive-spinless", "mu": 3, "labels": {"energy": "+"}}),
        (["--class", "massless-helicity", "--beta", "2", "--energy", "-", "--helicity", "-"],
         {"class": "massless-helicity", "beta": 2, "labels": {"energy": "-", "helicity": "-"}}),
    ],
)
def test_sample_then_classify_round_trip(monkeypatch, capsys, validator, args, expected):
    code, sampled, _ = run(monkeypatch, capsys, ["sample", "--count", "20", "--seed", "9"] + args)
    assert code == 0
    points = json.loads(sampled)
    for p in points:
        jsonschema.validate(p, load_schema("point"))
    code, out, _ = run(monkeypatch, capsys, ["classify"], sampled)
    reports = json.loads(out)
    assert code == 0 and len(reports) == 20
    for rep in reports:
        validator.validate(rep)
        assert rep["class"] == expected["class"]
        assert rep["labels"] == expected["labels"]
        for key in ("mu", "beta"):
            if key in expected:
                assert rep[key] == pytest.approx(expected[key], rel=1e-6)


def test_sample_argument_errors(monkeypatch, capsys):
    code, _, err = run(monkeypatch, capsys, ["sample", "--class", "massive-spinless"])
    assert code == 1 and "--mu" in json.loads(err)["message"]
    code, _, _ = run(monkeypatch, capsys, ["sample", "--class", "massive-spinless", "--mu", "1", "--helicity", "+"])
    assert code == 1


def test_every_report_shape_validates(monkeypatch, capsys, validator):
    docs = [
        CASE1, CASE2, SPACELIKE,
        {"M": {"l": [1, 0, 0], "g": [0, 0, 0]}, "P": [0.7071067811865476, 0, 0, 0.7071067811865476]},
        {"M": {"l": [0, 0, 0], "g": [0, 1, 0]}, "P": [0.7071067811865476, 0, 0, 0.7071067811865476]},
        {"M": {"l": [0, 0, 0], "g": [0, 0, 0]}, "P": [1, 0, 0, 1]},
        {"M": {"l": [0, 0, 0], "g": [0, 0, 0]}, "P": [0, 0, 0, 0]},
    ]
    for command in ("classify", "normal-form"):
        _, out, _ = run(monkeypatch, capsys, [command], json.dumps(docs))
        for rep in json.loads(out):
            validator.validate(rep)


def test_schema_rejects_inconsistent_report(validator):
    bad = {"class": "massive-spinless", "mu": 1, "beta": 1, "labels": {"energy": "+"}, "casimirs": [1, 0],
           "marginal": False, "cvk_label": "x"}
    with pytest.raises(jsonschema.ValidationError):
        validator.validate(bad)


def test_point_document_rejects_both_forms():
    with pytest.raises(DocumentError):
        point_from_doc({"M": {"l": [0, 0, 0], "g": [0, 0, 0]}, "M_matrix": [[0] * 4] * 4, "P": [0, 0, 0, 1]})
    with pytest.raises(DocumentError):
        point_from_doc({"M": {"l": [True, 0, 0], "g": [0, 0, 0]}, "P": [0, 0, 0, 1]})


def test_module_entry_point(tmp_path):
    src = tmp_path / "p.json"
    src.write_text(json.dumps(CASE2))
    proc = subprocess.run([sys.executable, "-m", "poincare_orbits", "classify", "--input", str(src)],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["class"] == "massive-spinless"
