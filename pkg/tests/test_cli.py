import json

import pytest

from crooked import EXIT_BAD_INPUT, EXIT_CHECK_FAILED, EXIT_OK, main, parse_tolerances

STANDARD_CONFIG = {"q0": [0, 0, 0, 0, 1], "qinf": [0, 0, 0, 1, 0], "q1": [0, 1, 1, 0, 0], "q2": [0, 1, -1, 0, 0]}
INVARIANT_ONLY_CONFIG = {"q0": [0, 1, 1, 0, 0], "qinf": [0, 1, -1, 0, 0],
                         "q1": [1, 0, 0, 2, 0.5], "q2": [1, 0, 0, 0.5, 2]}
# the standard plane translated by (0.5, 0.3, 0.1)
TRANSLATED_CONFIG = {"q0": [0.5, 0.3, 0.1, 0.33, 1], "qinf": [0, 0, 0, 1, 0],
                     "q1": [0, 1, 1, 0.4, 0], "q2": [0, -1, 1, -0.8, 0]}


@pytest.fixture
def write_json(tmp_path):
    def write(name, data):
        path = tmp_path / name
        path.write_text(json.dumps(data), encoding="utf-8")
        return str(path)

    return write


def test_parse_tolerances():
    assert parse_tolerances(["exp_oracle=1e-6", "period = 2e-10"]) == {"exp_oracle": 1e-6, "period": 2e-10}
    assert parse_tolerances(None) == {}
    with pytest.raises(ValueError):
        parse_tolerances(["exp_oracle"])
    with pytest.raises(ValueError):
        parse_tolerances(["exp_oracle=tight"])


def test_verify_prints_report(capsys):
    assert main(["verify", "sl2", "--samples", "32", "--seed", "4"]) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["suite"] == "sl2"
    assert report["passed"] is True
    assert report["seed"] == 4


def test_verify_all_passes(capsys):
    assert main(["verify", "all", "--samples", "1000", "--seed", "42"]) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    failed = [check["check"] for check in report["checks"] if check["failures"] or check["error"]]
    assert report["passed"] is True, failed


def test_verify_failure_exit_code(capsys):
    assert main(["verify", "sl2", "--samples", "64", "--tol", "exp_oracle=1e-30"]) == EXIT_CHECK_FAILED
    assert json.loads(capsys.readouterr().out)["passed"] is False


def test_verify_bad_input():
    assert main(["verify", "bogus"]) == EXIT_BAD_INPUT
    assert main(["verify", "sl2", "--tol", "bogus=1e-3"]) == EXIT_BAD_INPUT
    assert main(["verify", "sl2", "--samples", "0"]) == EXIT_BAD_INPUT
    assert main(["verify", "sl2", "--samples", "many"]) == EXIT_BAD_INPUT


def test_usage_errors():
    assert main([]) == EXIT_BAD_INPUT
    assert main(["frobnicate"]) == EXIT_BAD_INPUT
    assert main(["--help"]) == EXIT_OK


def test_membership_e3(write_json, capsys):
    plane = write_json("plane.json", {"vertex": [0, 0, 0], "spine_dir": [1, 0, 0]})
    points = write_json("points.json", [[0, 1, 2], [3, 2, 2], [1, 2, 3]])
    assert main(["membership", plane, points]) == EXIT_OK
    assert capsys.readouterr().out.split() == ["StemInterior", "Wing1", "Outside"]


def test_membership_ads(write_json, capsys):
    plane = write_json("plane.json", {"g": [[1, 0], [0, 1]], "s": [[1, 0], [0, -1]]})
    points = write_json("points.json", {"points": [[[1, 1], [0, 1]], [[2, 1], [1, 1]]]})
    assert main(["membership", plane, points]) == EXIT_OK
    assert capsys.readouterr().out.split() == ["Hinge1", "Outside"]


def test_membership_surface(write_json, capsys):
    cfg = write_json("cfg.json", STANDARD_CONFIG)
    points = write_json("points.json", [[0, 0, 0, 1, 0], [0, 1, 2, -3, 1]])
    assert main(["membership", cfg, points]) == EXIT_OK
    assert capsys.readouterr().out.split() == ["Covertex", "StemT1"]


def test_membership_bad_input(write_json, tmp_path):
    plane = write_json("plane.json", {"vertex": [0, 0, 0], "spine_dir": [1, 0, 0]})
    broken = tmp_path / "broken.json"
    broken.write_text("[[0, 1,", encoding="utf-8")
    assert main(["membership", plane, str(broken)]) == EXIT_BAD_INPUT
    assert main(["membership", plane, str(tmp_path / "missing.json")]) == EXIT_BAD_INPUT
    timelike = write_json("timelike.json", {"vertex": [0, 0, 0], "spine_dir": [0, 0, 1]})
    points = write_json("points.json", [[0, 1, 2]])
    assert main(["membership", timelike, points]) == EXIT_BAD_INPUT


@pytest.mark.parametrize("config, expected", [
    (STANDARD_CONFIG, "adapted"),
    (INVARIANT_ONLY_CONFIG, "invariant-only"),
    (TRANSLATED_CONFIG, "neither"),
])
def test_adapted(write_json, capsys, config, expected):
    assert main(["adapted", write_json("cfg.json", config)]) == EXIT_OK
    assert capsys.readouterr().out.strip() == expected


def test_adapted_rejects_degenerate_configuration(write_json):
    cfg = write_json("cfg.json", {**STANDARD_CONFIG, "qinf": [0, 1, 1, 0, 0]})
    assert main(["adapted", cfg]) == EXIT_BAD_INPUT


def test_export_mesh(write_json, tmp_path):
    plane = write_json("plane.json", {"vertex": [0, 0, 0], "spine_dir": [1, 0, 0]})
    out = tmp_path / "plane.obj"
    assert main(["export-mesh", plane, "--resolution", "3", "--out", str(out)]) == EXIT_OK
    assert out.read_text(encoding="utf-8").startswith("# crooked plane mesh")
    assert main(["export-mesh", plane, "--resolution", "1", "--out", str(out)]) == EXIT_BAD_INPUT
