"""Concurrent runner for independent experiment rows"""

import asyncio
import logging
import time
import traceback
import uuid
from dataclasses import dataclass
from typing import Any, List, Optional, Sequence

from ..config import worker_cap
from ..errors import OracleInfeasibleError
from ..storage.json_store import RunRecordStore
from .task_spec import RowTask

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RowOutcome:
    index: int
    name: str
    status: str
    value: Any = None
    error: Optional[str] = None


class ExperimentRunner:
    """Run row tasks with a process-wide concurrency cap.

    Outcomes come back ordered by row index whatever the completion order.
    An infeasible oracle marks its row ``infeasible`` and the run goes on;
    any other exception marks the run failed and propagates.
    """

    def __init__(self, max_workers: Optional[int] = None):
        self.max_workers = worker_cap(max_workers)

    async def _run_row(
        self,
        task: RowTask,
        semaphore: asyncio.Semaphore,
        store: Optional[RunRecordStore],
        run_id: str,
    ) -> RowOutcome:
        async with semaphore:
            if store is not None:
                store.upsert_row(
                    run_id,
                    task.name,
                    index=task.index,
                    status="running",
                    started=time.time(),
                    tags=sorted(task.tags) or None,
                    description=task.description or None,
                )
            try:
                value = await asyncio.to_thread(task.fn)
            except OracleInfeasibleError as e:
                logger.debug("row %d infeasible: %s", task.index, e)
                outcome = RowOutcome(task.index, task.name, "infeasible", error=str(e))
            except Exception as e:
                if store is not None:
                    store.upsert_row(
                        run_id,
                        task.name,
                        status="failed",
                        error="".join(
                            traceback.format_exception(type(e), e, e.__traceback__)
                        ),
                        finished=time.time(),
                    )
                raise
            else:
                outcome = RowOutcome(task.index, task.name, "success", value=value)

            if store is not None:
                store.upsert_row(
                    run_id,
                    task.name,
                    status=outcome.status,
                    error=outcome.error,
                    finished=time.time(),
                )
            return outcome

    async def run(
        self,
        tasks: Sequence[RowTask],
        run_id: Optional[str] = None,
        store: Optional[RunRecordStore] = None,
    ) -> List[RowOutcome]:
        if len({task.index for task in tasks}) != len(tasks):
            raise ValueError("row task indices must be unique")
        run_id = run_id or f"run_{uuid.uuid4().hex[:8]}"
        semaphore = asyncio.Semaphore(self.max_workers)
        started = time.perf_counter()
        try:
            outcomes = await asyncio.gather(
                *[self._run_row(task, semaphore, store, run_id) for task in tasks]
            )
        except Exception:
            if store is not None:
                store.set_run_status(run_id, "failed")
            raise
        logger.debug(
            "%d rows on %d workers in %.3fs",
            len(tasks),
            self.max_workers,
            time.perf_counter() - started,
        )
        return sorted(outcomes, key=lambda outcome: outcome.index)


def run_rows(
    tasks: Sequence[RowTask],
    max_workers: Optional[int] = None,
    run_id: Optional[str] = None,
    store: Optional[RunRecordStore] = None,
) -> List[RowOutcome]:
    """Synchronous entry point around ExperimentRunner.run"""
    runner = ExperimentRunner(max_workers)
    return asyncio.run(runner.run(tasks, run_id=run_id, store=store))
