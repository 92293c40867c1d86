import time

import pytest

from workflows.coordinator import CheckCoordinator, run_checks


def _slow(value, seconds=0.05):
    def task():
        time.sleep(seconds)
        return value

    return task


def _failing():
    raise ValueError("boom")


def test_results_come_back_by_name():
    results = run_checks({"b": _slow(2, 0.1), "a": _slow(1)}, jobs=2)
    assert results == {"b": 2, "a": 1}
    assert list(results) == ["b", "a"]


def test_single_job_runs_inline():
    assert run_checks({"x": lambda: 42}, jobs=1) == {"x": 42}


def test_failure_is_raised_after_all_tasks():
    finished = []

    def record():
        finished.append(True)
        return True

    with pytest.raises(ValueError):
        run_checks({"bad": _failing, "good": record}, jobs=2)
    assert finished == [True]


@pytest.mark.asyncio
async def test_execute_reports_outcomes():
    coordinator = CheckCoordinator(jobs=2)
    outcomes = await coordinator.execute({"ok": _slow("done"), "bad": _failing})
    assert [outcome.name for outcome in outcomes] == ["ok", "bad"]
    assert outcomes[0].ok and outcomes[0].value == "done"
    assert not outcomes[1].ok
    assert isinstance(outcomes[1].error, ValueError)
