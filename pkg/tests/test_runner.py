import threading
import time

import pytest

from latticeedge.core import ExperimentRunner, RowTask, run_rows
from latticeedge.errors import OracleInfeasibleError
from latticeedge.storage import RunRecordStore


def test_row_task_default_name():
    task = RowTask(fn=lambda: 1, index=7)
    assert task.name == "row_00007"
    assert repr(task) == "RowTask(index=7, name='row_00007')"
    assert task.tags == set()


def test_row_tags_and_description_reach_the_record(tmp_path):
    store = RunRecordStore(tmp_path)
    store.init_run("r0", "simulate pvals", {})
    tagged = RowTask(
        fn=lambda: 3, index=0, tags={"oracle", "pvals"}, description="third row"
    )
    run_rows([tagged, RowTask(fn=lambda: 4, index=1)], run_id="r0", store=store)

    row = store.get_row("r0", "row_00000")
    assert row["tags"] == ["oracle", "pvals"]
    assert row["description"] == "third row"
    assert "tags" not in store.get_row("r0", "row_00001")


@pytest.mark.asyncio
async def test_runner_returns_outcomes_in_index_order():
    def slow(value, delay):
        def fn():
            time.sleep(delay)
            return value

        return fn

    tasks = [
        RowTask(fn=slow("late", 0.05), index=0),
        RowTask(fn=slow("early", 0.0), index=1),
        RowTask(fn=slow("middle", 0.02), index=2),
    ]
    outcomes = await ExperimentRunner(max_workers=3).run(tasks)

    assert [o.index for o in outcomes] == [0, 1, 2]
    assert [o.value for o in outcomes] == ["late", "early", "middle"]
    assert all(o.status == "success" for o in outcomes)


@pytest.mark.asyncio
async def test_runner_respects_worker_cap():
    active = 0
    peak = 0
    lock = threading.Lock()

    def fn():
        nonlocal active, peak
        with lock:
            active += 1
            peak = max(peak, active)
        time.sleep(0.02)
        with lock:
            active -= 1

    tasks = [RowTask(fn=fn, index=i) for i in range(8)]
    await ExperimentRunner(max_workers=2).run(tasks)
    assert peak <= 2


def test_runner_reads_worker_cap_from_environment(monkeypatch):
    monkeypatch.setenv("LE_THREADS", "3")
    assert ExperimentRunner().max_workers == 3


def test_infeasible_rows_do_not_stop_the_run(tmp_path):
    def infeasible():
        raise OracleInfeasibleError(100, 10)

    store = RunRecordStore(tmp_path)
    store.init_run("r1", "simulate pvals", {})
    outcomes = run_rows(
        [RowTask(fn=infeasible, index=0), RowTask(fn=lambda: 5, index=1)],
        max_workers=2,
        run_id="r1",
        store=store,
    )

    assert [o.status for o in outcomes] == ["infeasible", "success"]
    assert "100 atoms" in outcomes[0].error
    assert store.get_row("r1", "row_00000")["status"] == "infeasible"
    assert store.get_row("r1", "row_00001")["status"] == "success"


def test_failing_row_fails_the_run(tmp_path):
    def broken():
        raise ValueError("boom")

    store = RunRecordStore(tmp_path)
    store.init_run("r2", "simulate coverage", {})
    with pytest.raises(ValueError, match="boom"):
        run_rows([RowTask(fn=broken, index=0)], run_id="r2", store=store)

    assert store.get_run_info("r2")["status"] == "failed"
    row = store.get_row("r2", "row_00000")
    assert row["status"] == "failed"
    assert "boom" in row["error"]


def test_duplicate_indices_are_rejected():
    tasks = [RowTask(fn=lambda: 1, index=0), RowTask(fn=lambda: 2, index=0)]
    with pytest.raises(ValueError, match="unique"):
        run_rows(tasks)
