"""JSON file-based run records for experiment commands"""

import json
import time
from pathlib import Path
from threading import RLock
from typing import Any, Dict, List, Optional, Union

FINISHED_STATUSES = ("success", "failed")


class RunRecordStore:
    """File-based record store, one JSON file per run under <dir>/runs"""

    def __init__(self, data_dir: Union[str, Path] = "./data"):
        self.data_dir = Path(data_dir)
        self.data_dir.mkdir(parents=True, exist_ok=True)
        self.runs_dir = self.data_dir / "runs"
        self.runs_dir.mkdir(exist_ok=True)
        self._lock = RLock()

    def _run_file(self, run_id: str) -> Path:
        return self.runs_dir / f"{run_id}.json"

    @staticmethod
    def _empty_record(run_id: str) -> Dict[str, Any]:
        return {
            "id": run_id,
            "command": None,
            "status": "pending",
            "started": None,
            "finished": None,
            "seed": None,
            "config": {},
            "output": None,
            "rows": {},
        }

    def _load_run_data(self, run_id: str) -> Dict[str, Any]:
        run_file = self._run_file(run_id)
        if not run_file.exists():
            return self._empty_record(run_id)
        try:
            with open(run_file, "r") as f:
                return json.load(f)
        except (json.JSONDecodeError, IOError):
            # Corrupted record reads as a fresh one
            return self._empty_record(run_id)

    def _save_run_data(self, run_id: str, data: Dict[str, Any]) -> None:
        run_file = self._run_file(run_id)
        with self._lock:
            temp_file = run_file.with_suffix(".tmp")
            try:
                with open(temp_file, "w") as f:
                    json.dump(data, f, indent=2, default=str)
                temp_file.replace(run_file)
            except Exception:
                if temp_file.exists():
                    temp_file.unlink()
                raise

    def init_run(
        self,
        run_id: str,
        command: str,
        config: Dict[str, Any],
        seed: Optional[int] = None,
    ) -> None:
        data = self._empty_record(run_id)
        data.update(
            command=command,
            status="running",
            started=time.time(),
            seed=seed,
            config=config,
        )
        self._save_run_data(run_id, data)

    def set_run_status(self, run_id: str, status: str) -> None:
        with self._lock:
            data = self._load_run_data(run_id)
            data["status"] = status
            if status in FINISHED_STATUSES:
                data["finished"] = time.time()
            self._save_run_data(run_id, data)

    def set_output(self, run_id: str, path: Union[str, Path, None]) -> None:
        with self._lock:
            data = self._load_run_data(run_id)
            data["output"] = None if path is None else str(path)
            self._save_run_data(run_id, data)

    def upsert_row(self, run_id: str, name: str, **kwargs) -> None:
        """Insert or update the state of one row; None values are ignored"""
        with self._lock:
            data = self._load_run_data(run_id)
            row = data["rows"].setdefault(name, {})
            for key, value in kwargs.items():
                if value is not None:
                    row[key] = value
            self._save_run_data(run_id, data)

    def get_row(self, run_id: str, name: str) -> Optional[Dict[str, Any]]:
        return self._load_run_data(run_id)["rows"].get(name)

    def get_run_info(self, run_id: str) -> Dict[str, Any]:
        return self._load_run_data(run_id)

    def list_runs(self, status: Optional[str] = None) -> List[Dict[str, Any]]:
        """All runs, newest first, optionally filtered by status"""
        runs = []
        for run_file in self.runs_dir.glob("*.json"):
            try:
                with open(run_file, "r") as f:
                    data = json.load(f)
            except (json.JSONDecodeError, IOError):
                continue
            if status is None or data.get("status") == status:
                runs.append(data)
        runs.sort(key=lambda x: x.get("started") or 0, reverse=True)
        return runs

    def delete_run(self, run_id: str) -> bool:
        run_file = self._run_file(run_id)
        if run_file.exists():
            run_file.unlink()
            return True
        return False
