import json

import pytest
from pydantic import ValidationError

from configs.tool_config import SUITES
from tools import verify_tool
from tools.verify_checks import CHECKS, Tally, checks_for
from tools.verify_tool import (
    RunConfig,
    VerifyTool,
    main_theorem_instances,
    main_theorem_per_stratum,
    main_theorem_random_points,
)


def test_run_config_validation():
    assert RunConfig().resolved_tolerances()["exp_oracle"] == 1e-11
    assert RunConfig(tolerances={"exp_oracle": 1e-6}).resolved_tolerances()["exp_oracle"] == 1e-6
    with pytest.raises(ValidationError):
        RunConfig(tolerances={"bogus": 1e-3})
    with pytest.raises(ValidationError):
        RunConfig(tolerances={"exp_oracle": 0.0})
    with pytest.raises(ValidationError):
        RunConfig(samples=0)


def test_main_theorem_scaling():
    assert main_theorem_instances(10000) == 100
    assert main_theorem_instances(50) == 1
    assert main_theorem_instances(10 ** 6) == 100
    assert main_theorem_per_stratum(10000) == 1000
    assert main_theorem_per_stratum(50) == 10
    assert main_theorem_random_points(10000) == 10000
    assert main_theorem_random_points(50) == 50
    assert main_theorem_random_points(10 ** 7) == 10000


def test_every_suite_has_checks():
    for suite in SUITES:
        assert checks_for(suite)
    assert len(checks_for("all")) == len(CHECKS)
    names = [(spec.suite, spec.name) for spec in CHECKS]
    assert len(names) == len(set(names))


def test_tally():
    tally = Tally()
    assert tally.record(1e-12, 1e-9)
    assert not tally.record(float("nan"), 1e-9)
    other = Tally()
    other.record_match(False)
    tally.merge(other)
    assert (tally.samples, tally.failures) == (3, 2)
    assert tally.max_residual == float("inf")


@pytest.mark.parametrize("suite", SUITES)
def test_suite_passes(suite):
    report = VerifyTool().run(suite, RunConfig(seed=3, samples=64))
    failed = [(r.check, r.failures, r.max_residual, r.error) for r in report.checks if not r.passed]
    assert report.passed, failed
    assert {r.suite for r in report.checks} == {suite}


def test_reports_are_deterministic():
    config = RunConfig(seed=11, samples=40)
    first = VerifyTool().run("crooked", config).to_json()
    second = VerifyTool().run("crooked", config).to_json()
    assert first == second


def test_check_sees_the_same_stream_in_any_suite():
    config = RunConfig(seed=5, samples=40)
    alone = VerifyTool().run("core", config)
    everything = VerifyTool().run("all", config)
    by_name = {(r.suite, r.check): r for r in everything.checks}
    for result in alone.checks:
        assert by_name[("core", result.check)] == result


def test_unknown_suite():
    with pytest.raises(ValueError):
        VerifyTool().run("bogus")


def test_tight_tolerance_fails_the_check():
    report = VerifyTool().run("sl2", RunConfig(samples=200, tolerances={"exp_oracle": 1e-30}))
    assert not report.passed
    result = next(r for r in report.checks if r.check == "exp_oracle")
    assert result.failures > 0
    assert result.samples == 200


def test_report_written_to_file(tmp_path):
    out = tmp_path / "report.json"
    report = VerifyTool().run("core", RunConfig(samples=16, out=str(out)))
    assert out.read_text(encoding="utf-8") == report.to_json()
    data = json.loads(report.to_json())
    assert list(data) == sorted(data)
    assert data["suite"] == "core"


def test_crashing_shard_is_reported(monkeypatch):
    def boom(*args, **kwargs):
        raise RuntimeError("shard exploded")

    monkeypatch.setattr(verify_tool, "run_shard", boom)
    report = VerifyTool().run("sl2", RunConfig(samples=8))
    assert not report.passed
    assert all(r.error == "RuntimeError: shard exploded" for r in report.checks)
