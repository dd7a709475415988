import pytest

from perronrank.core.orchestrator import LabOrchestrator, lab_orchestrator
from perronrank.models.lab import NoiseModel, TrialConfig
from perronrank.services.recovery_lab import aggregate, k_sweep, run_trial


def _config() -> TrialConfig:
    return TrialConfig(
        n=4,
        noise=NoiseModel.lognormal_free(0.4),
        k_grid=["0", "0.5", "3", "inf"],
        trials=12,
        base_seed=5,
    )


@pytest.mark.asyncio
@pytest.mark.parametrize("workers", [1, 3, 8])
async def test_parallel_sweep_equals_sequential(workers):
    cfg = _config()
    table = await lab_orchestrator.run_sweep(cfg, max_workers=workers, keep_trials=True)
    assert table == k_sweep(cfg, keep_trials=True)


@pytest.mark.asyncio
async def test_default_pool_size():
    orchestrator = LabOrchestrator(max_workers=2)
    assert orchestrator.max_workers == 2
    table = await orchestrator.run_sweep(_config())
    assert table.trials == 12


def test_aggregation_ignores_completion_order():
    cfg = _config()
    results = [run_trial(cfg, index) for index in range(cfg.trials)]
    assert aggregate(cfg, list(reversed(results))) == aggregate(cfg, results)
    with pytest.raises(ValueError):
        aggregate(cfg, results[:-1])
