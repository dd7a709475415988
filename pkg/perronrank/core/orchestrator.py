from concurrent.futures import ThreadPoolExecutor
from typing import Optional
import asyncio

from perronrank.core.config import settings
from perronrank.models.lab import TrialConfig, SweepTable
from perronrank.models.solver import SolverConfig
from perronrank.services.recovery_lab import aggregate, run_trial
from perronrank.utils.logging import get_logger

logger = get_logger(__name__)


class LabOrchestrator:
    """
    Runs the trials of a k sweep concurrently on a thread pool.

    Each trial depends on (config, index) only and aggregation sorts by index,
    so the table equals the sequential ``k_sweep`` result for any worker count.
    """

    def __init__(self, max_workers: Optional[int] = None):
        """Initialize the orchestrator with a default pool size."""
        self.logger = get_logger("orchestrator")
        self.max_workers = max_workers or settings.max_workers

    async def run_sweep(
        self,
        cfg: TrialConfig,
        max_workers: Optional[int] = None,
        keep_trials: bool = False,
        solver: Optional[SolverConfig] = None
    ) -> SweepTable:
        """
        Execute all trials of ``cfg`` and aggregate them.

        Args:
            cfg: Trial configuration
            max_workers: Pool size override
            keep_trials: Keep per-trial metric values in every cell
            solver: Solver configuration override

        Returns:
            SweepTable: Same table as the sequential sweep
        """
        workers = max_workers or self.max_workers
        self.logger.info("sweep started", trials=cfg.trials, workers=workers)

        loop = asyncio.get_running_loop()
        with ThreadPoolExecutor(max_workers=workers) as executor:
            results = await asyncio.gather(*[
                loop.run_in_executor(executor, run_trial, cfg, index, solver)
                for index in range(cfg.trials)
            ])

        table = aggregate(cfg, results, keep_trials)
        self.logger.info("sweep finished", trials=cfg.trials, cells=len(table.cells))
        return table


# Global orchestrator instance
lab_orchestrator = LabOrchestrator()
