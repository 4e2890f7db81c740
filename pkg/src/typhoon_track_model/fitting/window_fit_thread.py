#
# Created on Sat Oct 17 2026
#
# Copyright (c) 2026
#
"""Typhoon Track Model

This module contains the WindowFitThread class, which fits a share of the three-point
windows of a track.

The WindowFitThread class is a subclass of threading.Thread. Each thread receives the
start indices it is responsible for and writes its results into the shared result list
at those indices, so the output order does not depend on thread scheduling.

The class includes the following methods:

- __init__: Initializes the thread with the plane track, its window indices and the
  fitting settings.
- run: Fits every assigned window and stores the FitResult.
"""
import logging
import queue
import threading

from typhoon_track_model.data_classes.fit_result import FitConfig, FitResult, WindowPoint
from typhoon_track_model.data_classes.track import PlaneTrack
from typhoon_track_model.exceptions import ModelDomainError
from typhoon_track_model.fitting.three_point_fit import find_b0

logger: logging.Logger = logging.getLogger(__name__)


class WindowFitThread(threading.Thread):
    """
    Thread that fits the three-point windows starting at the given indices.
    """

    def __init__(
        self,
        worker_index: int,
        plane: PlaneTrack,
        starts: list[int],
        l: float,
        config: FitConfig,
        results: list[FitResult | None],
        ex_queue: queue.Queue | None = None,
    ) -> None:
        """
        Initializes the WindowFitThread.

        Args:
            worker_index (int): Index of the worker, for logging.
            plane (PlaneTrack): Track positions in the local plane.
            starts (list[int]): Window start indices handled by this thread.
            l (float): Coriolis parameter in 1/s.
            config (FitConfig): Search settings.
            results (list[FitResult | None]): Shared output, one slot per window.
            ex_queue (queue.Queue | None): Optional queue for exceptions.
        """
        super().__init__()
        self.worker_index: int = worker_index
        self.plane: PlaneTrack = plane
        self.starts: list[int] = starts
        self.l: float = l
        self.config: FitConfig = config
        self.results: list[FitResult | None] = results
        self.ex_queue: queue.Queue | None = ex_queue
        self.name = f"WindowFitThread-{self.worker_index}"

    def _anchor(self, index: int) -> WindowPoint:
        x1, x2 = self.plane.xy[index]
        return WindowPoint(t=float(self.plane.times[index]), x1=float(x1), x2=float(x2))

    def run(self) -> None:
        """
        Fits every assigned window. A degenerate window becomes a rejected result;
        any other exception is handed to ex_queue when one is given.
        """
        # pylint: disable=broad-exception-caught
        try:
            for start in self.starts:
                p0, p1, p2 = (self._anchor(start + k) for k in range(3))
                try:
                    self.results[start] = find_b0(p0, p1, p2, self.l, self.config, start)
                except ModelDomainError as e:
                    logger.warning(f"{self.name}: window {start} not fitted: {e}")
                    self.results[start] = FitResult(
                        v0=None,
                        mn=None,
                        b0=None,
                        b01=None,
                        b02=None,
                        accepted=False,
                        epsilon_used=self.config.epsilon,
                        l=self.l,
                        window=[p0, p1, p2],
                        start_index=start,
                        message=f"rejected: {e}",
                    )
        except Exception as e:
            if self.ex_queue is not None:
                self.ex_queue.put(e)
                return
            else:
                raise e
