"""
Check Coordinator
Runs independent bounded checks side by side, at most ``jobs`` at a time
"""

import asyncio
from dataclasses import dataclass
from datetime import datetime
from typing import Any, Callable, Dict, List, Optional

from config.settings import settings
from utils.logger import get_logger

logger = get_logger(__name__)


@dataclass
class TaskOutcome:
    name: str
    value: Any = None
    error: Optional[BaseException] = None
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return self.error is None


class CheckCoordinator:
    """Schedules named zero-argument callables on worker threads.

    Results come back in submission order, whatever order the workers finish in.
    """

    def __init__(self, jobs: Optional[int] = None) -> None:
        self.jobs = max(1, jobs or settings.JOBS)

    async def _run_one(self, name: str, task: Callable[[], Any], gate: asyncio.Semaphore) -> TaskOutcome:
        async with gate:
            start = datetime.now()
            if self.jobs == 1:
                value = task()
            else:
                value = await asyncio.to_thread(task)
            seconds = (datetime.now() - start).total_seconds()
            logger.debug(f"{name}: done in {seconds:.2f}s")
            return TaskOutcome(name, value, seconds=seconds)

    async def execute(self, tasks: Dict[str, Callable[[], Any]]) -> List[TaskOutcome]:
        gate = asyncio.Semaphore(self.jobs)
        names = list(tasks)
        logger.debug(f"running {len(names)} checks with {self.jobs} workers")
        results = await asyncio.gather(
            *(self._run_one(name, tasks[name], gate) for name in names),
            return_exceptions=True,
        )
        outcomes = []
        for name, result in zip(names, results):
            if isinstance(result, BaseException):
                logger.debug(f"{name}: failed with {result!r}")
                outcomes.append(TaskOutcome(name, error=result))
            else:
                outcomes.append(result)
        return outcomes

    def run(self, tasks: Dict[str, Callable[[], Any]]) -> Dict[str, Any]:
        """Values by task name; the first failure is raised once every task has finished."""
        outcomes = asyncio.run(self.execute(tasks))
        for outcome in outcomes:
            if not outcome.ok:
                raise outcome.error
        return {outcome.name: outcome.value for outcome in outcomes}


def run_checks(tasks: Dict[str, Callable[[], Any]], jobs: Optional[int] = None) -> Dict[str, Any]:
    return CheckCoordinator(jobs).run(tasks)
