import json
import logging
import math
import re
from pathlib import Path

import pytest

from residuum import cli
from residuum.cli import EXIT_CHECK_FAILED, EXIT_NUMERICAL, EXIT_OK, EXIT_VALIDATION, main
from residuum.models.results import VerificationReport
from residuum.storage import ReportStore

NUMBER_TEXT = r"(?:\d+(?:\.\d+)?(?:e-?\d+)?|nan|inf)"
COMPLEX_TEXT = re.compile(rf"^(?P<re>-?{NUMBER_TEXT})(?P<im>[+-]{NUMBER_TEXT})i$")


@pytest.fixture(autouse=True)
def reset_logging():
    yield
    for handler in logging.root.handlers[:]:
        logging.root.removeHandler(handler)
        handler.close()


def as_complex(text: str) -> complex:
    match = COMPLEX_TEXT.match(text)
    assert match, text
    return complex(float(match["re"]), float(match["im"]))


def last_error(err: str) -> dict:
    return json.loads(err.strip().splitlines()[-1])["error"]


def test_winding_output_is_exact(capsys):
    assert main(["winding", "--contour", "circle:0,0,1", "--point", "0,0"]) == EXIT_OK
    assert capsys.readouterr().out == '{"value":"0+6.283185307179586e0i","kind":"Interior","winding":1}\n'


def test_winding_several_points(capsys):
    code = main(["winding", "--contour", "square:0,0,2", "--point", "0,0", "--point=3,0", "--point", "1,1"])
    assert code == EXIT_OK
    document = json.loads(capsys.readouterr().out)
    assert [item["kind"] for item in document] == ["Interior", "Exterior", "BoundaryInteriorArc"]
    assert as_complex(document[2]["value"]) == pytest.approx(1j * math.pi / 2)


def test_improper_logarithm(capsys):
    assert main(["improper", "--F", "log(z)", "--a", "-1", "--b", "1", "--sing", "0"]) == EXIT_OK
    document = json.loads(capsys.readouterr().out)
    assert abs(as_complex(document["vt"]) + 1j * math.pi) <= 1e-8
    assert document["vp"]["kind"] == "finite"


def test_output_is_byte_identical_across_runs(capsys):
    argv = ["residue", "-e", "exp(z)/z", "--point", "0,0"]
    main(argv)
    first = capsys.readouterr().out
    main(argv)
    assert capsys.readouterr().out == first
    assert abs(as_complex(json.loads(first)["res"]) - 1) <= 1e-8


def test_residue_csv(capsys):
    assert main(["residue", "-e", "1/z", "--point", "0,0", "--format", "csv"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "step,param,value_re,value_im,err_estimate"
    assert len(lines) > 3


def test_residue_by_sectors(capsys):
    argv = ["residue", "-e", "exp(z)/(z-1)", "--point", "1,0", "--method", "sectors", "--sectors", "angles:0.3,2,4"]
    assert main(argv) == EXIT_OK
    document = json.loads(capsys.readouterr().out)
    assert len(document["per_sector"]) == 3
    assert abs(as_complex(document["res"]) - math.e) <= 1e-6
    # -conj(z - 1) exp(z) / (z - 1) turns with the ray
    assert document["res_star"] is None
    assert all(limit["a_zbar"] is None for limit in document["per_sector"])


def test_residue_by_sectors_as_text(capsys):
    argv = ["residue", "-e", "1/z", "--point", "0,0", "--method", "sectors", "--sectors", "angles:0", "--format", "text"]
    assert main(argv) == EXIT_OK
    out = capsys.readouterr().out
    assert "res_star" in out
    assert "nan" not in out


@pytest.mark.parametrize(
    "text, value",
    [
        ("1e0-2e-1i", 1 - 0.2j),
        ("-3.5e-4+1e0i", -3.5e-4 + 1j),
        ("0+6.283185307179586e0i", 6.283185307179586j),
        ("2.718281828459045e0+0i", complex(math.e, 0)),
    ],
)
def test_complex_text_parsing(text, value):
    assert as_complex(text) == value


def test_integrate_area(capsys):
    assert main(["integrate", "-e", "conj(z)", "--domain", "disc:0,0,1", "--format", "text"]) == EXIT_OK
    assert "value" in capsys.readouterr().out


def test_bad_expression_is_a_validation_error(capsys):
    assert main(["integrate", "-e", "z + * 2", "--contour", "circle:0,0,1"]) == EXIT_VALIDATION
    captured = capsys.readouterr()
    assert captured.out == ""
    assert last_error(captured.err)["code"] == "expr_syntax"


def test_missing_inputs(capsys):
    assert main(["winding", "--contour", "circle:0,0,1"]) == EXIT_VALIDATION
    assert last_error(capsys.readouterr().err)["field"] == "points"
    assert main(["integrate", "-e", "z"]) == EXIT_VALIDATION
    assert main(["winding", "--contour", "blob:1,2", "--point", "0,0"]) == EXIT_VALIDATION


def test_pydantic_validation_error(capsys):
    assert main(["winding", "--contour", "circle:0,0,-1", "--point", "0,0"]) == EXIT_VALIDATION
    assert main(["residue", "-e", "1/z", "--point", "0,0", "--schedule", "0.1,2,8"]) == EXIT_VALIDATION
    assert last_error(capsys.readouterr().err)["code"] == "validation_error"


def test_usage_error_exits_with_validation_code(capsys):
    assert main(["winding", "--no-such-flag"]) == EXIT_VALIDATION
    assert last_error(capsys.readouterr().err)["field"] == "arguments"


def test_numerical_failure(capsys):
    assert main(["integrate", "-e", "1/(z-1)", "--contour", "square:0,0,2"]) == EXIT_NUMERICAL
    assert capsys.readouterr().out == ""


def test_config_file_with_flag_override(tmp_path, capsys):
    config = tmp_path / "job.json"
    config.write_text(json.dumps({"command": "improper", "expression": "log(z)", "a": -1, "b": 5, "sing": [0]}))
    out = tmp_path / "reports" / "improper.json"
    assert main(["improper", "--config", str(config), "--b", "2", "--out", str(out)]) == EXIT_OK
    assert capsys.readouterr().out == ""
    document = json.loads(out.read_text())
    assert abs(as_complex(document["vt"]) - complex(math.log(2), -math.pi)) <= 1e-8


def test_config_file_for_another_command(tmp_path, capsys):
    config = tmp_path / "job.json"
    config.write_text(json.dumps({"command": "winding"}))
    assert main(["improper", "--config", str(config)]) == EXIT_VALIDATION
    assert last_error(capsys.readouterr().err)["field"] == "command"
    assert main(["improper", "--config", str(tmp_path / "missing.json")]) == EXIT_VALIDATION


def test_verify_stores_history(tmp_path, capsys):
    db = tmp_path / "history.db"
    argv = ["verify", "--check", "boundary:simple_pole", "--check", "improper:log:a=1,b=2", "--history-db", str(db)]
    assert main(argv) == EXIT_OK
    document = json.loads(capsys.readouterr().out)
    assert [report["name"] for report in document] == ["boundary:simple_pole", "improper:log:a=1,b=2"]
    assert all(report["pass"] for report in document)
    runs = ReportStore(str(db)).list_runs()
    assert len(runs) == 1
    assert runs[0]["passed"] == 2


def test_failing_check_sets_exit_code(monkeypatch, capsys):
    failing = VerificationReport.build("broken", 1 + 0j, 0j, 1e-6, {})
    monkeypatch.setattr(cli, "run_checks", lambda suite, names: [failing])
    assert main(["verify", "--format", "text"]) == EXIT_CHECK_FAILED
    assert "0 passed, 1 failed" in capsys.readouterr().out


def test_config_schema_lists_every_command():
    from residuum.models.config import JobConfig

    schema = JobConfig.model_json_schema()
    assert schema["properties"]["command"]["enum"] == ["winding", "integrate", "residue", "improper", "verify"]
    assert "command" in schema["required"]


def test_committed_schema_matches_the_model():
    from residuum.models.config import JobConfig

    committed = json.loads((Path(__file__).parent.parent / "docs" / "schema.json").read_text())
    schema = JobConfig.model_json_schema()
    assert committed["title"] == schema["title"]
    assert committed["required"] == schema["required"]
    assert set(committed["properties"]) == set(schema["properties"])
    assert committed["properties"]["command"]["enum"] == schema["properties"]["command"]["enum"]
    for name in ("measure", "convention", "method", "format", "suite"):
        assert committed["properties"][name]["default"] == schema["properties"][name]["default"]
    assert set(committed["$defs"]) <= set(schema["$defs"]) | {"Complex"}
