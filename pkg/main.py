#!/usr/bin/env python3
"""
CoPart command line.

Usage:
    python main.py generate   --arch AR-I --periods WD --profiles SD-B --out data
    python main.py solve      data/tasksets/AR-I+WD+SD-B/1.00_000.json --algo comp
    python main.py experiment --arch AR-I --periods WD --profiles SD-B --algo comp,case,ia3
    python main.py verify     --instances 200 --policy npfp
    python main.py serve

Exit codes: 0 on success, 1 when verification finds violations, 2 on
configuration errors.
"""
import argparse
import sys
from pathlib import Path
from typing import List, Optional

BACKEND_DIR = Path(__file__).parent / "backend"
sys.path.insert(0, str(BACKEND_DIR))

import orjson  # noqa: E402
from dotenv import load_dotenv  # noqa: E402
from loguru import logger  # noqa: E402
from pydantic import ValidationError  # noqa: E402

from app.core.config import settings  # noqa: E402
from app.core.exceptions import ConfigurationError, PreconditionViolation  # noqa: E402
from app.core.logging import setup_logging  # noqa: E402
from app.models import (  # noqa: E402
    AlgorithmName,
    Architecture,
    PeriodSet,
    Policy,
    ProfileSet,
    ScenarioConfig,
)

EXIT_OK = 0
EXIT_VIOLATIONS = 1
EXIT_CONFIG = 2


def parse_algorithms(values: Optional[List[str]], default: List[AlgorithmName]) -> List[AlgorithmName]:
    """--algo may repeat and each value may be a comma list"""
    if not values:
        return list(default)
    names = [name.strip().lower() for value in values for name in value.split(",") if name.strip()]
    try:
        return [AlgorithmName(name) for name in names]
    except ValueError:
        raise ConfigurationError(f"unknown algorithm in {names}; choose from {[a.value for a in AlgorithmName]}")


def load_scenario(args: argparse.Namespace) -> ScenarioConfig:
    """Scenario from --scenario or the preset flags, with command-line overrides"""
    if getattr(args, "scenario", None):
        path = Path(args.scenario)
        if not path.exists():
            raise ConfigurationError(f"scenario file {path} not found")
        document = orjson.loads(path.read_bytes())
    else:
        document = {
            "architecture": args.arch,
            "period_set": args.periods,
            "profile_set": args.profiles,
            "rng_seed": settings.DEFAULT_SEED,
            "sets_per_point": settings.SETS_PER_POINT,
            "tasks_per_set": settings.TASKS_PER_SET,
            "ticks_per_ms": settings.TICKS_PER_MS,
        }
    if getattr(args, "seed", None) is not None:
        document["rng_seed"] = args.seed
    if getattr(args, "sets_per_point", None) is not None:
        document["sets_per_point"] = args.sets_per_point
    if getattr(args, "policy", None):
        document["policy"] = args.policy
    return ScenarioConfig.model_validate(document)


def cmd_generate(args: argparse.Namespace) -> int:
    from app.generator import gen_scenario_instances
    from app.repositories import TaskSetRepository

    config = load_scenario(args)
    repository = TaskSetRepository(args.out)
    count = 0
    for instance in gen_scenario_instances(config):
        repository.save(instance.task_set, config.scenario_id, instance.u_tar, instance.set_index)
        count += 1
    logger.info(f"💾 Stored {count} task sets under {repository.root / config.scenario_id}")
    return EXIT_OK


def cmd_solve(args: argparse.Namespace) -> int:
    import time

    from app.analysis import get_test
    from app.allocators import get_allocator, minimize_cache
    from app.core.exceptions import AllocationTimeout
    from app.models import AllocationResult
    from app.repositories import TaskSetRepository

    path = Path(args.taskset)
    if not path.exists():
        raise ConfigurationError(f"task-set file {path} not found")
    task_set = TaskSetRepository.load_file(path)
    algorithm = parse_algorithms(args.algo, [AlgorithmName.COMP])[0]
    if algorithm == AlgorithmName.BOTH:
        raise ConfigurationError("'both' is a report row, pick comp or case")
    policy = Policy(args.policy)
    test = get_test(policy)
    timeout_s = settings.TIMEOUT_S if args.timeout_s is None else args.timeout_s
    deadline = time.monotonic() + timeout_s if timeout_s else None
    try:
        result = get_allocator(algorithm).allocate(task_set, test, deadline=deadline)
    except AllocationTimeout:
        result = AllocationResult(algorithm=algorithm, policy=policy, timed_out=True)
    if args.minimize and result.solution is not None:
        result = result.model_copy(update={"solution": minimize_cache(result.solution, task_set, test)})
    sys.stdout.buffer.write(
        orjson.dumps(result.model_dump(mode="json"), option=orjson.OPT_INDENT_2 | orjson.OPT_APPEND_NEWLINE)
    )
    return EXIT_OK


def cmd_experiment(args: argparse.Namespace) -> int:
    from app.harness import run_all_scenarios, run_experiment

    algorithms = parse_algorithms(args.algo, list(AlgorithmName))
    if args.all:
        overrides = {"rng_seed": args.seed if args.seed is not None else settings.DEFAULT_SEED,
                     "sets_per_point": args.sets_per_point or settings.SETS_PER_POINT}
        summaries = run_all_scenarios(
            Policy(args.policy), algorithms, out_dir=args.out, timeout_s=args.timeout_s, jobs=args.jobs, **overrides
        )
        for scenario_id, summary in summaries.items():
            logger.info(f"📊 {scenario_id}: {summary.counts}")
        return EXIT_OK

    config = load_scenario(args)
    out_dir = Path(args.out) / config.scenario_id / config.policy.value if args.out else None
    summary = run_experiment(config, algorithms, out_dir=out_dir, timeout_s=args.timeout_s, jobs=args.jobs)
    logger.info(f"📊 {summary.scenario_id}: {summary.counts} (mean mu_save {summary.mu_save_mean})")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    from app.analysis import get_test
    from app.oracle import exhaustive_search, run_oracle_suite
    from app.repositories import TaskSetRepository

    policy = Policy(args.policy)
    if args.taskset:
        verdict = exhaustive_search(TaskSetRepository.load_file(args.taskset), get_test(policy))
        sys.stdout.buffer.write(
            orjson.dumps(verdict.model_dump(mode="json"), option=orjson.OPT_INDENT_2 | orjson.OPT_APPEND_NEWLINE)
        )
        return EXIT_OK

    algorithms = [a for a in parse_algorithms(args.algo, list(AlgorithmName)) if a != AlgorithmName.BOTH]
    seed = args.seed if args.seed is not None else 0
    report = run_oracle_suite(instances=args.instances, seed=seed, policy=policy, algorithms=algorithms)
    for violation in report.violations:
        logger.error(f"❌ {violation}")
    if not report.passed:
        logger.error(f"❌ {len(report.violations)} violations in {report.instances} instances")
        return EXIT_VIOLATIONS
    logger.info(
        f"✅ {report.instances} instances, {report.oracle_schedulable} feasible, "
        f"allocator hits {report.schedulable}"
    )
    return EXIT_OK


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    uvicorn.run(
        "app_main:app",
        app_dir=str(BACKEND_DIR),
        host=args.host or settings.HOST,
        port=args.port or settings.PORT,
        reload=settings.DEBUG,
        log_level=settings.LOG_LEVEL.lower(),
    )
    return EXIT_OK


def _add_scenario_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--scenario", help="Scenario JSON file (ScenarioConfig fields)")
    parser.add_argument("--arch", default=Architecture.AR_I.value, choices=[a.value for a in Architecture])
    parser.add_argument("--periods", default=PeriodSet.WD.value, choices=[p.value for p in PeriodSet])
    parser.add_argument("--profiles", default=ProfileSet.SD_B.value, choices=[p.value for p in ProfileSet])
    parser.add_argument("--seed", type=int, help="Master seed (u64)")
    parser.add_argument("--sets-per-point", type=int, help="Task sets per target utilization")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="copart", description=settings.APP_DESCRIPTION)
    parser.add_argument("--log-level", help="Override LOG_LEVEL")
    sub = parser.add_subparsers(dest="command", required=True)
    policies = [p.value for p in Policy]

    generate = sub.add_parser("generate", help="Write a scenario's task sets to the repository")
    _add_scenario_flags(generate)
    generate.add_argument("--out", default=settings.DATA_DIR, help="Repository root")
    generate.set_defaults(func=cmd_generate)

    solve = sub.add_parser("solve", help="Allocate one task set and print the result as JSON")
    solve.add_argument("taskset", help="Task-set JSON file")
    solve.add_argument("--algo", action="append", help="comp|case|ia3|pdpa|cam")
    solve.add_argument("--policy", default=Policy.NPFP.value, choices=policies)
    solve.add_argument("--timeout-s", type=float)
    solve.add_argument("--minimize", action="store_true", help="Hand back unneeded partitions")
    solve.set_defaults(func=cmd_solve)

    experiment = sub.add_parser("experiment", help="Run a scenario batch and write CSVs and a summary")
    _add_scenario_flags(experiment)
    experiment.add_argument("--all", action="store_true", help="Run all twelve scenarios")
    experiment.add_argument("--algo", action="append", help="Repeatable, comma lists allowed")
    experiment.add_argument("--policy", default=Policy.NPFP.value, choices=policies)
    experiment.add_argument("--out", help="Output root (default OUTPUT_DIR)")
    experiment.add_argument("--timeout-s", type=float)
    experiment.add_argument("--jobs", type=int)
    experiment.set_defaults(func=cmd_experiment)

    verify = sub.add_parser("verify", help="Check the allocators against exhaustive search")
    verify.add_argument("--instances", type=int, default=200)
    verify.add_argument("--seed", type=int)
    verify.add_argument("--policy", default=Policy.NPFP.value, choices=policies)
    verify.add_argument("--algo", action="append")
    verify.add_argument("--taskset", help="Only search this task set and print the verdict")
    verify.set_defaults(func=cmd_verify)

    serve = sub.add_parser("serve", help="Start the HTTP service")
    serve.add_argument("--host")
    serve.add_argument("--port", type=int)
    serve.set_defaults(func=cmd_serve)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    load_dotenv()
    args = build_parser().parse_args(argv)
    setup_logging(args.log_level)
    try:
        return args.func(args)
    except (ConfigurationError, ValidationError, PreconditionViolation) as e:
        logger.error(f"❌ Configuration error: {e}")
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
