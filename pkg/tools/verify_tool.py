# Verification suites for the crooked-plane geometry
import asyncio
import functools
import json
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Dict, List, Optional, Type, Union

import numpy as np
from pydantic import BaseModel, Field, field_validator

from configs.global_config import NUM_THREADS
from configs.logger_config import get_logger
from configs.tool_config import (
    CHECK_TOLERANCES,
    DEFAULT_SAMPLES,
    DEFAULT_SEED,
    MAIN_THEOREM_MAX_INSTANCES,
    MAIN_THEOREM_MAX_PER_STRATUM,
    MAIN_THEOREM_RANDOM_POINTS,
    SHARD_COUNT,
    SUITES,
)
from tools.verify_checks import CHECKS, CheckContext, CheckSpec, Tally, checks_for

logger = get_logger("tools.verify_tool")


class RunConfig(BaseModel):
    seed: int = Field(default=DEFAULT_SEED, description="Root seed; every check and shard derives its own stream from it")
    samples: int = Field(default=DEFAULT_SAMPLES, ge=1, description="Samples per sampled check; also scales the Main Theorem instance counts")
    tolerances: Dict[str, float] = Field(
        default_factory=dict,
        description="Overrides of the residual thresholds in CHECK_TOLERANCES, by name"
    )
    out: Optional[str] = Field(default=None, description="Path the JSON report is written to")

    @field_validator("tolerances")
    @classmethod
    def _known_and_positive(cls, v: Dict[str, float]) -> Dict[str, float]:
        for name, value in v.items():
            if name not in CHECK_TOLERANCES:
                raise ValueError(f"unknown tolerance '{name}', expected one of {sorted(CHECK_TOLERANCES)}")
            if not value > 0:
                raise ValueError(f"tolerance '{name}' must be positive, got {value}")
        return v

    def resolved_tolerances(self) -> Dict[str, float]:
        return {**CHECK_TOLERANCES, **self.tolerances}


class CheckResult(BaseModel):
    check: str
    suite: str
    samples: int
    failures: int
    max_residual: float
    error: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.failures == 0 and self.error is None


class VerifyReport(BaseModel):
    suite: str
    seed: int
    samples: int
    passed: bool
    checks: List[CheckResult]

    def to_json(self) -> str:
        return json.dumps(self.model_dump(), indent=2, sort_keys=True) + "\n"


def main_theorem_instances(samples: int) -> int:
    return min(MAIN_THEOREM_MAX_INSTANCES, max(1, samples // 100))


def main_theorem_per_stratum(samples: int) -> int:
    return min(MAIN_THEOREM_MAX_PER_STRATUM, max(10, samples // 10))


def main_theorem_random_points(samples: int) -> int:
    return min(MAIN_THEOREM_RANDOM_POINTS, max(10, samples))


def _split(count: int, shards: int) -> List[int]:
    return [count // shards + (1 if k < count % shards else 0) for k in range(shards)]


def _shard_counts(spec: CheckSpec, samples: int) -> List[int]:
    if spec.scale == "fixed":
        return [1]
    if spec.scale == "instances":
        return _split(main_theorem_instances(samples), SHARD_COUNT)
    return _split(samples, SHARD_COUNT)


def run_shard(check_index: int, seed_seq: np.random.SeedSequence, count: int, ctx: CheckContext) -> Tally:
    """Worker: one shard of one check, on its own generator."""
    spec = CHECKS[check_index]
    return spec.fn(np.random.default_rng(seed_seq), count, ctx)


def write_report(report: VerifyReport, path: Union[str, Path]) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(report.to_json())


class VerifyTool:
    name: str = "crooked_verify"
    description: str = (
        "Runs the sampled verification suites of the crooked-plane library: projective core, sl(2,R), "
        "AdS geometry, crooked planes, the Einstein embedding and the Main Theorem correspondences. "
        "Returns one result per check with its sample count, failures and maximum residual."
    )
    args_schema: Type[BaseModel] = RunConfig

    def run(self, suite: str, config: Optional[RunConfig] = None) -> VerifyReport:
        return asyncio.run(self.arun(suite, config))

    async def arun(self, suite: str, config: Optional[RunConfig] = None) -> VerifyReport:
        config = config or RunConfig()
        if suite != "all" and suite not in SUITES:
            logger.error(f"Unknown suite '{suite}'")
            raise ValueError(f"unknown suite '{suite}', expected one of {SUITES + ['all']}")

        specs = checks_for(suite)
        ctx = CheckContext(
            tolerances=config.resolved_tolerances(),
            per_stratum=main_theorem_per_stratum(config.samples),
            random_points=main_theorem_random_points(config.samples),
        )
        # one child per registered check, so a check sees the same stream whichever suite runs it
        check_seeds = np.random.SeedSequence(config.seed).spawn(len(CHECKS))
        logger.info(f"Running suite '{suite}': {len(specs)} checks, seed {config.seed}, "
                    f"{config.samples} samples, {NUM_THREADS} threads")

        semaphore = asyncio.Semaphore(NUM_THREADS)
        loop = asyncio.get_running_loop()

        with ThreadPoolExecutor(max_workers=NUM_THREADS) as executor:
            async def run_single_shard(check_index: int, seed_seq: np.random.SeedSequence, count: int):
                async with semaphore:
                    return await loop.run_in_executor(
                        executor, functools.partial(run_shard, check_index, seed_seq, count, ctx))

            async def run_single_check(spec: CheckSpec) -> CheckResult:
                check_index = CHECKS.index(spec)
                counts = _shard_counts(spec, config.samples)
                shard_seeds = check_seeds[check_index].spawn(len(counts))
                tasks = [run_single_shard(check_index, seq, count)
                         for seq, count in zip(shard_seeds, counts) if count > 0]
                outcomes = await asyncio.gather(*tasks, return_exceptions=True)

                merged = Tally()
                for outcome in outcomes:
                    if isinstance(outcome, BaseException):
                        logger.exception(f"Check {spec.suite}/{spec.name} crashed: {outcome}", exc_info=outcome)
                        return CheckResult(check=spec.name, suite=spec.suite, samples=merged.samples,
                                           failures=merged.failures, max_residual=merged.max_residual,
                                           error=f"{type(outcome).__name__}: {outcome}")
                    merged.merge(outcome)

                if merged.failures:
                    logger.warning(f"Check {spec.suite}/{spec.name}: {merged.failures}/{merged.samples} failures, "
                                   f"max residual {merged.max_residual:.3e}")
                else:
                    logger.info(f"Check {spec.suite}/{spec.name} passed on {merged.samples} samples")
                return CheckResult(check=spec.name, suite=spec.suite, samples=merged.samples,
                                   failures=merged.failures, max_residual=merged.max_residual)

            results = await asyncio.gather(*[run_single_check(spec) for spec in specs])

        report = VerifyReport(suite=suite, seed=config.seed, samples=config.samples,
                              passed=all(r.passed for r in results), checks=list(results))
        if config.out:
            write_report(report, config.out)
            logger.info(f"Report written to {config.out}")
        return report


if __name__ == "__main__":
    verify_tool = VerifyTool()
    print(verify_tool.run("sl2", RunConfig(samples=200)).to_json())
