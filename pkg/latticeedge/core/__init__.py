"""Execution machinery for experiment grids"""

from .runner import ExperimentRunner, RowOutcome, run_rows
from .task_spec import RowTask

__all__ = ["ExperimentRunner", "RowOutcome", "RowTask", "run_rows"]
