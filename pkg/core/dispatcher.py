from __future__ import annotations

import asyncio
import logging
from concurrent.futures import Executor, ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Generic, Optional, Sequence, TypeVar

_log = logging.getLogger("histlab.dispatcher")

R = TypeVar("R")


@dataclass
class JobOutcome(Generic[R]):
    """Result slot for one job; exactly one of result/error is set."""

    index: int
    result: Optional[R] = None
    error: Optional[BaseException] = None

    @property
    def ok(self) -> bool:
        return self.error is None


@dataclass
class JobDispatcher:
    """Runs independent jobs on a worker pool and returns outcomes in job order.

    workers == 1 runs every job inline on the event loop thread, which keeps
    tracebacks and breakpoints usable. Otherwise jobs go to a process pool
    through `workers` queue consumers.
    """

    workers: int = 1
    _executor: Optional[Executor] = field(default=None, repr=False)

    async def run(
        self,
        func: Callable[..., R],
        jobs: Sequence[tuple[Any, ...]],
        *,
        stop_when: Optional[Callable[[R], bool]] = None,
    ) -> list[JobOutcome[R]]:
        """Run func(*job) for every job.

        stop_when is applied to results in job order, also on the pooled
        path, and outcomes end at the first result it accepts. Pooled jobs
        already running past that point finish but are dropped; queued ones
        never start.
        """
        if self.workers <= 1 or len(jobs) <= 1:
            return self._run_inline(func, jobs, stop_when)

        outcomes: list[JobOutcome[R]] = [JobOutcome(i) for i in range(len(jobs))]
        finished = [False] * len(jobs)
        stop_index: Optional[int] = None
        checked = 0

        def _advance() -> None:
            nonlocal stop_index, checked
            while stop_index is None and checked < len(jobs) and finished[checked]:
                outcome = outcomes[checked]
                if stop_when is not None and outcome.ok and stop_when(outcome.result):  # type: ignore[arg-type]
                    stop_index = checked
                    _log.debug("stopping after job %d of %d", checked, len(jobs))
                checked += 1

        queue: asyncio.Queue[int] = asyncio.Queue()
        for i in range(len(jobs)):
            queue.put_nowait(i)

        loop = asyncio.get_running_loop()
        own_executor = self._executor is None
        executor = self._executor or ProcessPoolExecutor(max_workers=self.workers)

        async def _worker(worker_id: int) -> None:
            while True:
                try:
                    i = queue.get_nowait()
                except asyncio.QueueEmpty:
                    return
                if stop_index is not None and i > stop_index:
                    queue.task_done()
                    continue
                try:
                    outcomes[i].result = await loop.run_in_executor(executor, func, *jobs[i])
                except Exception as exc:
                    _log.warning("job %d failed on worker %d: %s", i, worker_id, exc)
                    outcomes[i].error = exc
                finally:
                    finished[i] = True
                    _advance()
                    queue.task_done()

        try:
            await asyncio.gather(*(_worker(w) for w in range(min(self.workers, len(jobs)))))
        finally:
            if own_executor:
                executor.shutdown(wait=True)
        return outcomes if stop_index is None else outcomes[: stop_index + 1]

    def run_sync(
        self,
        func: Callable[..., R],
        jobs: Sequence[tuple[Any, ...]],
        *,
        stop_when: Optional[Callable[[R], bool]] = None,
    ) -> list[JobOutcome[R]]:
        if self.workers <= 1 or len(jobs) <= 1:
            return self._run_inline(func, jobs, stop_when)
        return asyncio.run(self.run(func, jobs, stop_when=stop_when))

    def _run_inline(
        self,
        func: Callable[..., R],
        jobs: Sequence[tuple[Any, ...]],
        stop_when: Optional[Callable[[R], bool]],
    ) -> list[JobOutcome[R]]:
        outcomes: list[JobOutcome[R]] = []
        for i, job in enumerate(jobs):
            outcome: JobOutcome[R] = JobOutcome(i)
            outcomes.append(outcome)
            try:
                outcome.result = func(*job)
            except Exception as exc:
                _log.exception("job %d failed", i)
                outcome.error = exc
                continue
            if stop_when is not None and stop_when(outcome.result):  # type: ignore[arg-type]
                _log.debug("stopping after job %d of %d", i, len(jobs))
                break
        return outcomes
