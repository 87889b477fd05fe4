"""
Task-set repository for data persistence.
One JSON document per task set, grouped by scenario.
"""
import os
from pathlib import Path
from typing import List, Optional, Union

import orjson
from loguru import logger

from app.models import TaskSet
from app.core.config import settings


class TaskSetRepository:
    """JSON-file task-set store under DATA_DIR/tasksets/<scenario_id>/"""

    def __init__(self, data_dir: Optional[Union[str, Path]] = None):
        self.data_dir = Path(data_dir if data_dir is not None else settings.DATA_DIR)
        self.root = self.data_dir / "tasksets"
        self._ensure_data_dir()

    def _ensure_data_dir(self):
        """Ensure the repository root exists"""
        os.makedirs(self.root, exist_ok=True)

    @staticmethod
    def taskset_id(u_tar: float, set_index: int) -> str:
        return f"{u_tar:.2f}_{set_index:03d}"

    def path_for(self, scenario_id: str, taskset_id: str) -> Path:
        return self.root / scenario_id / f"{taskset_id}.json"

    def _write(self, path: Path, payload: bytes):
        """Write to a temp file next to the target, then rename over it"""
        path.parent.mkdir(parents=True, exist_ok=True)
        temp_file = path.with_suffix(".json.tmp")
        try:
            with open(temp_file, "wb") as f:
                f.write(payload)
            os.replace(temp_file, path)
        except Exception as e:
            logger.error(f"❌ Failed to save task set {path}: {e}")
            if temp_file.exists():
                os.remove(temp_file)
            raise

    def save(self, task_set: TaskSet, scenario_id: str, u_tar: float, set_index: int) -> Path:
        """Store a generated task set and return its file"""
        path = self.path_for(scenario_id, self.taskset_id(u_tar, set_index))
        self._write(path, task_set.to_json())
        logger.debug(f"💾 Saved task set {path}")
        return path

    def save_file(self, task_set: TaskSet, path: Union[str, Path]) -> Path:
        path = Path(path)
        self._write(path, task_set.to_json())
        return path

    @staticmethod
    def load_file(path: Union[str, Path]) -> TaskSet:
        """Read any task-set document"""
        with open(path, "rb") as f:
            return TaskSet.from_json(f.read())

    def load(self, scenario_id: str, taskset_id: str) -> TaskSet:
        return self.load_file(self.path_for(scenario_id, taskset_id))

    def list_scenarios(self) -> List[str]:
        return sorted(p.name for p in self.root.iterdir() if p.is_dir())

    def list_ids(self, scenario_id: str) -> List[str]:
        directory = self.root / scenario_id
        if not directory.exists():
            return []
        return sorted(p.stem for p in directory.glob("*.json"))

    def count(self, scenario_id: Optional[str] = None) -> int:
        scenarios = [scenario_id] if scenario_id else self.list_scenarios()
        return sum(len(self.list_ids(s)) for s in scenarios)

    def delete(self, scenario_id: str, taskset_id: str) -> bool:
        path = self.path_for(scenario_id, taskset_id)
        if not path.exists():
            return False
        os.remove(path)
        logger.info(f"🗑️ Deleted task set {scenario_id}/{taskset_id}")
        return True
