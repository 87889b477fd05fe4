"""
Pydantic models for CoPart.
Defines problem instances, allocation results, scenarios and experiment records.
"""
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple
from enum import Enum

import orjson
from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.core.config import settings


class Policy(str, Enum):
    """Uniprocessor scheduling policies"""
    NPFP = "npfp"      # Non-preemptive fixed priority (rate monotonic)
    NPEDF = "npedf"    # Non-preemptive earliest deadline first
    PEDF = "pedf"      # Preemptive earliest deadline first


class SortCriterion(str, Enum):
    """Task sorting criteria of the packing layer"""
    COMP = "comp"      # Period ascending
    CASE = "case"      # Cache sensitivity potential ascending


class AlgorithmName(str, Enum):
    """Allocation algorithms known to the harness"""
    COMP = "comp"
    CASE = "case"
    IA3 = "ia3"
    PDPA = "pdpa"
    CAM = "cam"
    BOTH = "both"      # Combined row: COMP or CASE schedulable


PROPOSED_ALGORITHMS = (AlgorithmName.COMP, AlgorithmName.CASE)
BASELINE_ALGORITHMS = (AlgorithmName.IA3, AlgorithmName.PDPA, AlgorithmName.CAM)


class PeriodSet(str, Enum):
    """Period collections used for task-set synthesis"""
    WD = "WD"          # Wide: {5, 10, 20, 40, 60, 80, 100} ms
    SH = "SH"          # Short: {10, 15, 20, 25} ms, base utilization capped


class ProfileSet(str, Enum):
    """Slowdown profile collections"""
    SD_B = "SD-B"      # Benchmark curves
    SD_S1 = "SD-S1"    # Synthetic, mild
    SD_S2 = "SD-S2"    # Synthetic, steep


class Architecture(str, Enum):
    """Reference cache configurations"""
    AR_I = "AR-I"      # 4 cores, 16 x 64 KB
    AR_II = "AR-II"    # 4 cores, 32 x 64 KB


class CurveKind(str, Enum):
    """Origin of a slowdown curve"""
    SYNTHETIC = "synthetic"
    BENCHMARK = "benchmark"


_FROZEN = ConfigDict(frozen=True)


def _dumps(document: Any) -> bytes:
    return orjson.dumps(document, option=orjson.OPT_INDENT_2 | orjson.OPT_SORT_KEYS | orjson.OPT_APPEND_NEWLINE)


# Problem instance
class ExecProfile(BaseModel):
    """Execution time in ticks indexed by granted partitions: eps[mu - 1]"""
    model_config = _FROZEN

    eps: Tuple[int, ...] = Field(..., min_length=1, description="Execution times, one per partition count")
    clamped: bool = Field(default=False, description="Monotone clamp raised some small-cache entries")

    @model_validator(mode="before")
    @classmethod
    def _clamp_monotone(cls, data: Any) -> Any:
        if not isinstance(data, dict) or "eps" not in data:
            return data
        raw = [int(v) for v in data["eps"]]
        if not raw:
            return data
        if raw[-1] < 1:
            raise ValueError("execution time at full cache must be at least one tick")
        fixed = list(raw)
        # running maximum from the large-cache end
        for k in range(len(fixed) - 2, -1, -1):
            if fixed[k] < fixed[k + 1]:
                fixed[k] = fixed[k + 1]
        return {**data, "eps": tuple(fixed), "clamped": bool(data.get("clamped", False)) or fixed != raw}

    @property
    def n_partitions(self) -> int:
        return len(self.eps)

    def at(self, mu: int) -> int:
        return self.eps[mu - 1]


class Task(BaseModel):
    """Sporadic task with implicit deadline and cache-dependent execution time"""
    model_config = _FROZEN

    id: int = Field(..., ge=0, description="Dense identifier within its task set")
    period: int = Field(..., gt=0, description="Minimum inter-arrival time in ticks, also the relative deadline")
    profile: ExecProfile

    def exec_at(self, mu: int) -> int:
        """Execution time with mu granted partitions"""
        return self.profile.eps[mu - 1]


class PlatformConfig(BaseModel):
    """Cores and equally sized shared-cache partitions"""
    model_config = _FROZEN

    n_cores: int = Field(..., ge=1, description="Number of cores")
    n_partitions: int = Field(..., ge=1, description="Number of cache partitions")
    partition_kb: int = Field(default=64, ge=1, description="Partition size in KB")

    @property
    def total_cache_kb(self) -> int:
        return self.n_partitions * self.partition_kb

    @classmethod
    def for_architecture(cls, architecture: "Architecture") -> "PlatformConfig":
        if architecture == Architecture.AR_I:
            return cls(n_cores=4, n_partitions=16)
        return cls(n_cores=4, n_partitions=32)


def _task_entry(task: Task) -> Dict[str, Any]:
    entry: Dict[str, Any] = {"id": task.id, "period": task.period, "eps": list(task.profile.eps)}
    if task.profile.clamped:
        entry["clamped"] = True
    return entry


class TaskSet(BaseModel):
    """Problem instance: tasks plus the platform they are allocated on"""
    model_config = _FROZEN

    tick_ns: int = Field(default_factory=lambda: settings.TICK_NS, ge=1, description="Real-time length of one tick in ns")
    tasks: Tuple[Task, ...]
    platform: PlatformConfig

    @model_validator(mode="after")
    def _check_instance(self) -> "TaskSet":
        ids = sorted(task.id for task in self.tasks)
        if ids != list(range(len(self.tasks))):
            raise ValueError(f"task ids must be unique and dense 0..n-1, got {ids}")
        for task in self.tasks:
            if task.profile.n_partitions != self.platform.n_partitions:
                raise ValueError(
                    f"task {task.id} has {task.profile.n_partitions} profile entries, "
                    f"platform has {self.platform.n_partitions} partitions"
                )
        return self

    @property
    def n_tasks(self) -> int:
        return len(self.tasks)

    def task(self, task_id: int) -> Task:
        for task in self.tasks:
            if task.id == task_id:
                return task
        raise KeyError(task_id)

    def by_id(self) -> Dict[int, Task]:
        return {task.id: task for task in self.tasks}

    def total_base_utilization(self) -> Fraction:
        """Sum of full-cache utilizations"""
        return sum((Fraction(t.profile.eps[-1], t.period) for t in self.tasks), Fraction(0))

    def to_document(self) -> Dict[str, Any]:
        return {
            "tick_ns": self.tick_ns,
            "n_cores": self.platform.n_cores,
            "n_partitions": self.platform.n_partitions,
            "partition_kb": self.platform.partition_kb,
            "tasks": [
                _task_entry(task) for task in self.tasks
            ],
        }

    @classmethod
    def from_document(cls, document: Dict[str, Any]) -> "TaskSet":
        platform = PlatformConfig(
            n_cores=document["n_cores"],
            n_partitions=document["n_partitions"],
            partition_kb=document.get("partition_kb", 64),
        )
        tasks = tuple(
            Task(id=entry["id"], period=entry["period"], profile=ExecProfile(eps=entry["eps"], clamped=entry.get("clamped", False)))
            for entry in document["tasks"]
        )
        return cls(tick_ns=document.get("tick_ns", settings.TICK_NS), tasks=tasks, platform=platform)

    def to_json(self) -> bytes:
        return _dumps(self.to_document())

    @classmethod
    def from_json(cls, raw: bytes) -> "TaskSet":
        return cls.from_document(orjson.loads(raw))


# Allocation results
class Solution(BaseModel):
    """Complete allocation: per-core task ids and partition grants"""
    model_config = _FROZEN

    task_alloc: Tuple[Tuple[int, ...], ...] = Field(..., description="Task ids per core")
    cache_part: Tuple[int, ...] = Field(..., description="Partitions per core, 0 for unused cores")
    total_cache_used: int = Field(..., ge=0)

    @model_validator(mode="after")
    def _check_solution(self) -> "Solution":
        if len(self.task_alloc) != len(self.cache_part):
            raise ValueError("task_alloc and cache_part must have one entry per core")
        if self.total_cache_used != sum(self.cache_part):
            raise ValueError("total_cache_used must equal the sum of cache_part")
        for tasks, mu in zip(self.task_alloc, self.cache_part):
            if tasks and mu < 1:
                raise ValueError("a core hosting tasks needs at least one partition")
        return self

    @classmethod
    def build(cls, task_alloc: List[List[int]], cache_part: List[int], n_cores: int) -> "Solution":
        """Normalize per-core lists and pad unused cores"""
        alloc = [tuple(sorted(ids)) for ids in task_alloc]
        part = [mu if alloc[j] else 0 for j, mu in enumerate(cache_part)]
        alloc += [()] * (n_cores - len(alloc))
        part += [0] * (n_cores - len(part))
        return cls(task_alloc=tuple(alloc), cache_part=tuple(part), total_cache_used=sum(part))

    def core_of(self, task_id: int) -> int:
        for j, ids in enumerate(self.task_alloc):
            if task_id in ids:
                return j
        raise KeyError(task_id)


class AllocationResult(BaseModel):
    """Outcome of one allocator run; solution is None when nothing was found"""
    model_config = _FROZEN

    algorithm: AlgorithmName
    policy: Policy
    solution: Optional[Solution] = None
    best_rem_sched_demand: Optional[float] = Field(default=None, description="Lowest unallocated demand reached")
    timed_out: bool = False
    error: Optional[str] = None
    alloc_calls: int = Field(default=0, ge=0)
    frontier_sizes: Tuple[int, ...] = Field(default=(), description="Frontier size after pruning per depth")

    @property
    def schedulable(self) -> bool:
        return self.solution is not None

    @property
    def max_frontier(self) -> int:
        return max(self.frontier_sizes, default=0)


# Generator inputs
class SlowdownCurve(BaseModel):
    """Slowdown relative to full cache as a function of cache amount"""
    model_config = _FROZEN

    kind: CurveKind
    name: str
    alpha: Optional[float] = Field(default=None, ge=0, description="Decay rate of a synthetic curve")
    samples: Tuple[Tuple[float, float], ...] = Field(default=(), description="(cache_kb, slowdown) pairs")

    @model_validator(mode="after")
    def _check_curve(self) -> "SlowdownCurve":
        if self.kind == CurveKind.SYNTHETIC and self.alpha is None:
            raise ValueError("synthetic curves need alpha")
        if self.kind == CurveKind.BENCHMARK and len(self.samples) < 1:
            raise ValueError("benchmark curves need at least one sample")
        return self


DEFAULT_U_TAR_GRID = tuple(round(1.0 + 0.1 * k, 10) for k in range(31))


class ScenarioConfig(BaseModel):
    """Batch experiment description"""
    model_config = _FROZEN

    architecture: Optional[Architecture] = Architecture.AR_I
    platform: PlatformConfig = Field(default_factory=lambda: PlatformConfig.for_architecture(Architecture.AR_I))
    period_set: PeriodSet = PeriodSet.WD
    profile_set: ProfileSet = ProfileSet.SD_B
    u_tar_grid: Tuple[float, ...] = DEFAULT_U_TAR_GRID
    sets_per_point: int = Field(default=20, ge=1)
    tasks_per_set: int = Field(default=40, ge=1)
    ticks_per_ms: int = Field(default=1000, ge=1)
    rng_seed: int = Field(default=42, ge=0, lt=2**64)
    policy: Policy = Policy.NPFP

    @model_validator(mode="before")
    @classmethod
    def _platform_from_architecture(cls, data: Any) -> Any:
        if isinstance(data, dict) and "platform" not in data and data.get("architecture"):
            data = {**data, "platform": PlatformConfig.for_architecture(Architecture(data["architecture"]))}
        return data

    @model_validator(mode="after")
    def _check_grid(self) -> "ScenarioConfig":
        for u_tar in self.u_tar_grid:
            if not 0 < u_tar <= self.platform.n_cores:
                raise ValueError(f"u_tar {u_tar} outside (0, {self.platform.n_cores}]")
        return self

    @property
    def scenario_id(self) -> str:
        if self.architecture is not None:
            arch = self.architecture.value
        else:
            arch = f"{self.platform.n_cores}C{self.platform.n_partitions}P"
        return f"{arch}+{self.period_set.value}+{self.profile_set.value}"

    @classmethod
    def preset(cls, architecture: Architecture, period_set: PeriodSet, profile_set: ProfileSet, **overrides: Any) -> "ScenarioConfig":
        return cls(architecture=architecture, period_set=period_set, profile_set=profile_set, **overrides)


# Experiment records
class ExperimentRecord(BaseModel):
    """One task set run through one algorithm"""
    model_config = _FROZEN

    scenario_id: str
    u_tar: float
    set_index: int = Field(..., ge=0)
    algorithm: AlgorithmName
    policy: Policy
    n_partitions: int = Field(..., ge=1)
    schedulable: bool
    total_cache_used: Optional[int] = Field(default=None, ge=0)
    timed_out: bool = False
    error: bool = False
    runtime_ms: float = Field(..., ge=0)

    @model_validator(mode="after")
    def _cache_iff_schedulable(self) -> "ExperimentRecord":
        if (self.total_cache_used is not None) != self.schedulable:
            raise ValueError("total_cache_used must be present exactly when schedulable")
        return self


class CacheSaveRecord(BaseModel):
    """Partitions saved by the proposed schemes against the best minimized baseline"""
    model_config = _FROZEN

    scenario_id: str
    u_tar: float
    set_index: int = Field(..., ge=0)
    mu_prop: int = Field(..., ge=0)
    mu_base: int = Field(..., ge=0)
    mu_save: int

    @model_validator(mode="after")
    def _check_saving(self) -> "CacheSaveRecord":
        if self.mu_save != self.mu_base - self.mu_prop:
            raise ValueError("mu_save must equal mu_base - mu_prop")
        return self


class RatioRow(BaseModel):
    """Schedulability ratio of one algorithm at one target utilization"""
    u_tar: float
    algorithm: AlgorithmName
    schedulable: int = Field(..., ge=0)
    total: int = Field(..., ge=0)
    ratio_pct: float = Field(..., ge=0, le=100)


class RuntimeStat(BaseModel):
    """Wall-clock statistics grouped by algorithm, policy and partition count"""
    algorithm: AlgorithmName
    policy: Policy
    n_partitions: int
    count: int = Field(..., ge=1)
    avg_ms: float = Field(..., ge=0)
    max_ms: float = Field(..., ge=0)


class ExperimentSummary(BaseModel):
    """Aggregates of one scenario run"""
    scenario_id: str
    policy: Policy
    n_records: int = 0
    n_task_sets: int = 0
    counts: Dict[str, int] = Field(default_factory=dict, description="Schedulable task sets per algorithm")
    timeouts: Dict[str, int] = Field(default_factory=dict)
    errors: Dict[str, int] = Field(default_factory=dict)
    ratios: List[RatioRow] = Field(default_factory=list)
    mu_save_histogram: Dict[int, int] = Field(default_factory=dict)
    mu_save_mean: Optional[float] = None
    runtime: List[RuntimeStat] = Field(default_factory=list)


# Oracle
class OracleVerdict(BaseModel):
    """Ground truth from exhaustive enumeration"""
    model_config = _FROZEN

    exists_schedulable: bool
    witness: Optional[Solution] = None
    explored: int = Field(..., ge=0, description="(partition, split) pairs examined")

    @model_validator(mode="after")
    def _witness_iff_schedulable(self) -> "OracleVerdict":
        if (self.witness is not None) != self.exists_schedulable:
            raise ValueError("witness must be present exactly when a schedulable solution exists")
        return self


class OracleSuiteReport(BaseModel):
    """Soundness check of every allocator against exhaustive truth"""
    policy: Policy
    instances: int = 0
    oracle_schedulable: int = 0
    schedulable: Dict[str, int] = Field(default_factory=dict)
    violations: List[str] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations


# Service schemas
class CoreTaskIn(BaseModel):
    """One task of a single-core query"""
    period: int = Field(..., gt=0)
    exec: int = Field(..., gt=0, description="Execution time under the core's grant")
    task_id: Optional[int] = Field(default=None, ge=0, description="Defaults to the list position")


class CoreRequest(BaseModel):
    tasks: List[CoreTaskIn] = Field(..., min_length=1)
    policy: Policy = Policy.NPFP


class SolveRequest(BaseModel):
    task_set: Dict[str, Any] = Field(..., description="Task-set document as written by the generate command")
    algorithm: AlgorithmName = AlgorithmName.COMP
    policy: Policy = Policy.NPFP
    timeout_s: Optional[float] = Field(default=None, gt=0)
    minimize: bool = Field(default=False, description="Hand back partitions the solution does not need")


class VerifyRequest(BaseModel):
    task_set: Dict[str, Any]
    policy: Policy = Policy.NPFP
