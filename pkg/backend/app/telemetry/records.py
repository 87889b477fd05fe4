"""
Experiment output: per-run records, cache savings and the scenario summary.
Rows are written sorted so identical runs give identical files apart from
the runtime column, which is kept last.
"""
import csv
import os
from pathlib import Path
from typing import Iterable, List, Union

import orjson
from loguru import logger

from app.models import AlgorithmName, CacheSaveRecord, ExperimentRecord, ExperimentSummary

RECORD_FIELDS = [
    "scenario_id",
    "u_tar",
    "set_index",
    "algorithm",
    "policy",
    "n_partitions",
    "schedulable",
    "total_cache_used",
    "timed_out",
    "error",
    "runtime_ms",
]
CACHE_SAVE_FIELDS = ["scenario_id", "u_tar", "set_index", "mu_prop", "mu_base", "mu_save"]

ALGORITHM_ORDER = {name: k for k, name in enumerate(AlgorithmName)}


def record_sort_key(record: ExperimentRecord):
    return (record.u_tar, record.set_index, ALGORITHM_ORDER[record.algorithm])


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if hasattr(value, "value"):
        return value.value
    return str(value)


def _flag(text: str) -> bool:
    return text == "true"


class RecordSink:
    """Owns one experiment output directory"""

    def __init__(self, out_dir: Union[str, Path]):
        self.out_dir = Path(out_dir)
        self.records_file = self.out_dir / "records.csv"
        self.cache_save_file = self.out_dir / "cache_save.csv"
        self.summary_file = self.out_dir / "summary.json"
        self._ensure_out_dir()

    def _ensure_out_dir(self):
        """Ensure output directory exists"""
        os.makedirs(self.out_dir, exist_ok=True)

    def write_records(self, records: Iterable[ExperimentRecord]) -> Path:
        rows = sorted(records, key=record_sort_key)
        with open(self.records_file, "w", encoding="utf-8", newline="") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(RECORD_FIELDS)
            for record in rows:
                values = [_cell(getattr(record, name)) for name in RECORD_FIELDS[:-1]]
                writer.writerow(values + [f"{record.runtime_ms:.3f}"])
        logger.info(f"💾 Wrote {len(rows)} records to {self.records_file}")
        return self.records_file

    def write_cache_saves(self, saves: Iterable[CacheSaveRecord]) -> Path:
        rows = sorted(saves, key=lambda s: (s.u_tar, s.set_index))
        with open(self.cache_save_file, "w", encoding="utf-8", newline="") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(CACHE_SAVE_FIELDS)
            for save in rows:
                writer.writerow([_cell(getattr(save, name)) for name in CACHE_SAVE_FIELDS])
        logger.info(f"💾 Wrote {len(rows)} cache-save rows to {self.cache_save_file}")
        return self.cache_save_file

    def write_summary(self, summary: ExperimentSummary) -> Path:
        payload = orjson.dumps(
            summary.model_dump(mode="json"),
            option=orjson.OPT_INDENT_2 | orjson.OPT_SORT_KEYS | orjson.OPT_APPEND_NEWLINE | orjson.OPT_NON_STR_KEYS,
        )
        with open(self.summary_file, "wb") as f:
            f.write(payload)
        return self.summary_file

    def load_records(self) -> List[ExperimentRecord]:
        """Parse records.csv back into records"""
        with open(self.records_file, "r", encoding="utf-8", newline="") as f:
            return [
                ExperimentRecord(
                    scenario_id=row["scenario_id"],
                    u_tar=float(row["u_tar"]),
                    set_index=int(row["set_index"]),
                    algorithm=row["algorithm"],
                    policy=row["policy"],
                    n_partitions=int(row["n_partitions"]),
                    schedulable=_flag(row["schedulable"]),
                    total_cache_used=int(row["total_cache_used"]) if row["total_cache_used"] else None,
                    timed_out=_flag(row["timed_out"]),
                    error=_flag(row["error"]),
                    runtime_ms=float(row["runtime_ms"]),
                )
                for row in csv.DictReader(f)
            ]

    def load_cache_saves(self) -> List[CacheSaveRecord]:
        with open(self.cache_save_file, "r", encoding="utf-8", newline="") as f:
            return [
                CacheSaveRecord(
                    scenario_id=row["scenario_id"],
                    u_tar=float(row["u_tar"]),
                    set_index=int(row["set_index"]),
                    mu_prop=int(row["mu_prop"]),
                    mu_base=int(row["mu_base"]),
                    mu_save=int(row["mu_save"]),
                )
                for row in csv.DictReader(f)
            ]

    def load_summary(self) -> ExperimentSummary:
        with open(self.summary_file, "rb") as f:
            return ExperimentSummary.model_validate(orjson.loads(f.read()))
