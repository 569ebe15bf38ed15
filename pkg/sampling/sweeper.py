import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Optional, TypeVar

from config.settings import DEFAULT_JOBS
from models.errors import InvalidConfig, NoHorizontalTangent, PoleAtPoint
from sampling.grid import Chart, GridSpec

log = logging.getLogger(__name__)

T = TypeVar("T")

PointFn = Callable[[Chart, complex], T]

# Point-local failures: the point is dropped, the sweep goes on.
SKIPPABLE = (PoleAtPoint, NoHorizontalTangent)


class GridSweeper:
    """Evaluates a function at every grid point on a bounded worker pool.

    Results come back in grid order whatever the number of workers, so any
    reduction over them is deterministic.
    """

    def __init__(self, jobs: int = DEFAULT_JOBS):
        if jobs < 1:
            raise InvalidConfig(f"jobs must be at least 1, got {jobs}")
        self.jobs = jobs
        self.skipped = 0

    def _guarded(self, fn: PointFn) -> Callable[[tuple[Chart, complex]], Optional[T]]:
        def run(point: tuple[Chart, complex]) -> Optional[T]:
            chart, z = point
            try:
                return fn(chart, z)
            except SKIPPABLE as e:
                log.debug("GridSweeper: skipping chart %s z=%s (%s: %s)", chart.value, z, e.kind, e.detail)
                return None
        return run

    def map(self, fn: PointFn, points: list[tuple[Chart, complex]]) -> list[Optional[T]]:
        run = self._guarded(fn)
        if self.jobs == 1:
            results = [run(p) for p in points]
        else:
            with ThreadPoolExecutor(max_workers=self.jobs, thread_name_prefix="sweep") as pool:
                results = list(pool.map(run, points))
        self.skipped = sum(r is None for r in results)
        return results

    def sweep(self, fn: PointFn, grid: GridSpec) -> list[tuple[Chart, complex, T]]:
        """(chart, z, fn(chart, z)) for every grid point that did not have to be skipped."""
        points = grid.points()
        log.info("GridSweeper: %d points on %d chart(s), %d worker(s)", len(points), len(grid.charts), self.jobs)
        results = self.map(fn, points)
        if self.skipped:
            log.info("GridSweeper: skipped %d of %d points", self.skipped, len(points))
        return [(chart, z, r) for (chart, z), r in zip(points, results) if r is not None]
