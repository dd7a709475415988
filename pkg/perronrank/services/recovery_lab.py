"""
Score recovery experiments: noisy observations of a true score are ranked
with V~_k over a grid of k and scored against the truth.

Trial t draws everything from derive_seed(base_seed, t); the trial's seed
sequence is split into a noise stream and a truth stream so that changing the
true score never changes the noise.
"""
import math
from typing import Dict, Iterable, List, Optional, Sequence, Union

import numpy as np

from perronrank.core.comparison import score_differences
from perronrank.core.exceptions import (
    MissingObjectiveException, NoConvergenceException, NonUniqueTropicalException,
)
from perronrank.models.comparison import AdditiveMatrix, AdditiveScore
from perronrank.models.lab import (
    BestK, IndependenceReport, KOutcome, NoiseModel, Objective, SweepCell, SweepTable,
    TrialConfig, TrialResult, TrialStatus,
)
from perronrank.models.solver import SolverConfig
from perronrank.services.perron_engine import perron_engine
from perronrank.utils.helpers import derive_seed, mean_and_stderr
from perronrank.utils.logging import get_logger

logger = get_logger(__name__)

SeedLike = Union[int, np.random.SeedSequence]


def generate_observation(s: AdditiveScore, noise: NoiseModel, seed: SeedLike) -> AdditiveMatrix:
    """A = [s_i - s_j] + E, E drawn from ``noise``."""
    rng = np.random.default_rng(seed)
    entries = score_differences(s.entries) + noise.sample(rng, s.n)
    return AdditiveMatrix(entries=entries, skew=noise.is_skew)


def kendall_distance(estimated: np.ndarray, truth: np.ndarray) -> float:
    """Fraction of discordant pairs; a pair tied in exactly one vector counts one half."""
    n = len(truth)
    upper = np.triu_indices(n, k=1)
    est = np.sign(estimated[:, None] - estimated[None, :])[upper]
    tru = np.sign(truth[:, None] - truth[None, :])[upper]
    discordant = np.where(
        (est == 0) & (tru == 0),
        0.0,
        np.where((est == 0) | (tru == 0), 0.5, (est != tru).astype(float))
    )
    return float(np.sum(discordant)) / len(discordant)


def _single_argmax(values: np.ndarray) -> Optional[int]:
    top = np.flatnonzero(values == np.max(values))
    return int(top[0]) if top.size == 1 else None


def top_one_accuracy(estimated: np.ndarray, truth: np.ndarray) -> float:
    """1 when both vectors have the same unique maximizer, otherwise 0."""
    best_est = _single_argmax(estimated)
    best_true = _single_argmax(truth)
    return 1.0 if best_est is not None and best_est == best_true else 0.0


def evaluate_objectives(
    estimated: AdditiveScore,
    truth: AdditiveScore,
    objectives: Iterable[Objective]
) -> Dict[Objective, float]:
    """Kendall discordance, l2 distance and top-one accuracy of an estimate."""
    if estimated.n != truth.n:
        raise ValueError(f"dimension mismatch: {estimated.n} != {truth.n}")
    est, tru = estimated.entries, truth.entries
    metrics: Dict[Objective, float] = {}
    for objective in objectives:
        if objective == Objective.KENDALL_TAU:
            metrics[objective] = kendall_distance(est, tru)
        elif objective == Objective.L2_ADDITIVE:
            metrics[objective] = float(np.linalg.norm(est - tru))
        else:
            metrics[objective] = top_one_accuracy(est, tru)
    return metrics


def trial_streams(cfg: TrialConfig, index: int):
    """(trial seed, noise seed sequence, truth seed sequence) of trial ``index``."""
    trial_seed = derive_seed(cfg.base_seed, index)
    noise_seq, truth_seq = np.random.SeedSequence(trial_seed).spawn(2)
    return trial_seed, noise_seq, truth_seq


def trial_truth(cfg: TrialConfig, truth_seq: SeedLike) -> AdditiveScore:
    if cfg.true_score is not None:
        return AdditiveScore.centered(cfg.true_score)
    rng = np.random.default_rng(truth_seq)
    return AdditiveScore.centered(cfg.score_scale * rng.standard_normal(cfg.n))


def run_trial(cfg: TrialConfig, index: int, solver: Optional[SolverConfig] = None) -> TrialResult:
    """
    One observation ranked at every grid point (paired design).

    Non-unique tropical eigenvectors are marked excluded and solver
    failures failed; neither aborts the trial.
    """
    trial_seed, noise_seq, truth_seq = trial_streams(cfg, index)
    truth = trial_truth(cfg, truth_seq)
    A = generate_observation(truth, cfg.noise, noise_seq)

    outcomes: List[KOutcome] = []
    for k in cfg.k_grid:
        try:
            estimate = perron_engine.perron_family_score(A, k, solver)
        except NonUniqueTropicalException:
            logger.warning("trial excluded: tropical eigenvector not unique", trial=index, k=k.label)
            outcomes.append(KOutcome(k=k, status=TrialStatus.EXCLUDED))
            continue
        except NoConvergenceException as e:
            logger.warning("trial failed", trial=index, k=k.label, **e.details)
            outcomes.append(KOutcome(k=k, status=TrialStatus.FAILED))
            continue
        outcomes.append(KOutcome(k=k, metrics=evaluate_objectives(estimate, truth, cfg.objectives)))
    return TrialResult(index=index, seed=trial_seed, outcomes=outcomes)


def aggregate(cfg: TrialConfig, results: Sequence[TrialResult], keep_trials: bool = False) -> SweepTable:
    """Fold trial results into a SweepTable; independent of the order of ``results``."""
    ordered = sorted(results, key=lambda result: result.index)
    if [result.index for result in ordered] != list(range(cfg.trials)):
        raise ValueError("results must cover trial indices 0..trials-1 exactly once")

    cells: List[SweepCell] = []
    for position, k in enumerate(cfg.k_grid):
        column = [result.outcomes[position] for result in ordered]
        excluded = sum(1 for outcome in column if outcome.status == TrialStatus.EXCLUDED)
        failed = [
            result.index for result, outcome in zip(ordered, column)
            if outcome.status == TrialStatus.FAILED
        ]
        for objective in cfg.objectives:
            per_trial = [
                outcome.metrics[objective] if outcome.status == TrialStatus.OK else None
                for outcome in column
            ]
            values = [value for value in per_trial if value is not None]
            mean, stderr = mean_and_stderr(values)
            cells.append(SweepCell(
                k=k,
                objective=objective,
                mean=None if math.isnan(mean) else mean,
                stderr=None if math.isnan(stderr) else stderr,
                count=len(values),
                excluded=excluded,
                failed_trials=failed,
                trial_values=per_trial if keep_trials else None,
            ))
    return SweepTable(trials=cfg.trials, base_seed=cfg.base_seed, cells=cells)


def k_sweep(cfg: TrialConfig, keep_trials: bool = False, solver: Optional[SolverConfig] = None) -> SweepTable:
    """Run every trial sequentially and aggregate per (k, objective)."""
    logger.info("k sweep started", n=cfg.n, trials=cfg.trials, grid=[k.label for k in cfg.k_grid])
    results = [run_trial(cfg, index, solver) for index in range(cfg.trials)]
    return aggregate(cfg, results, keep_trials)


def best_k(table: SweepTable, objective: Objective) -> BestK:
    """
    Grid point with the best mean for ``objective``; ties go to the smallest k.

    Args:
        table: Sweep table to search
        objective: Objective to optimize (minimized unless higher is better)

    Returns:
        BestK: Winner plus every grid point whose mean is within one standard
        error of the winner's
    """
    cells = [cell for cell in table.cells_for(objective) if cell.mean is not None]
    if not cells:
        raise MissingObjectiveException(objective.value)

    sign = -1.0 if objective.higher_is_better else 1.0
    best = min(cells, key=lambda cell: (sign * cell.mean, cell.k.sort_key()))
    stderr = best.stderr or 0.0
    close = sorted(
        (cell.k for cell in cells if abs(cell.mean - best.mean) <= stderr),
        key=lambda k: k.sort_key()
    )
    others = [k.label for k in close if k != best.k]
    note = (
        f"k={best.k.label} is best for {objective.value}"
        + (f"; within one standard error: {', '.join(others)}" if others else "; clearly separated")
    )
    return BestK(objective=objective, k=best.k, mean=best.mean, stderr=stderr, within_one_se=close, note=note)


def _has_ties(score: AdditiveScore) -> bool:
    return np.unique(score.entries).size < score.n


def score_independence_check(
    cfg: TrialConfig,
    alt_scores: Sequence[AdditiveScore],
    tolerance: float = 1e-9,
    solver: Optional[SolverConfig] = None
) -> IndependenceReport:
    """
    Rerun the sweep with the same noise seeds under several true scores.

    Best k must coincide per objective (truths with tied entries are
    skipped for the rank objectives); with skew noise the paired l2 losses
    must agree within ``tolerance``.
    """
    if len(alt_scores) < 2:
        raise ValueError("at least two true scores are required")
    for score in alt_scores:
        if score.n != cfg.n:
            raise ValueError(f"score dimension {score.n} does not match n = {cfg.n}")

    sweeps = [
        k_sweep(cfg.model_copy(update={"true_score": score.entries.tolist()}), True, solver)
        for score in alt_scores
    ]
    tied = [i for i, score in enumerate(alt_scores) if _has_ties(score)]

    best: Dict[str, List[str]] = {}
    coincide: Dict[str, bool] = {}
    for objective in cfg.objectives:
        labels = []
        for table in sweeps:
            try:
                labels.append(best_k(table, objective).k.label)
            except MissingObjectiveException:
                labels.append("none")
        best[objective.value] = labels
        compared = [
            label for i, label in enumerate(labels)
            if objective == Objective.L2_ADDITIVE or i not in tied
        ]
        coincide[objective.value] = len(set(compared)) <= 1

    report = IndependenceReport(best_k=best, coincide=coincide, tied_scores=tied, tolerance=tolerance, sweeps=sweeps)
    if Objective.L2_ADDITIVE not in cfg.objectives or not cfg.noise.is_skew:
        return report

    discrepancy = 0.0
    reference = sweeps[0]
    for table in sweeps[1:]:
        for k in cfg.k_grid:
            base_values = reference.cell(k, Objective.L2_ADDITIVE).trial_values
            other_values = table.cell(k, Objective.L2_ADDITIVE).trial_values
            for a, b in zip(base_values, other_values):
                if a is not None and b is not None:
                    discrepancy = max(discrepancy, abs(a - b))

    logger.info("score independence checked", max_l2_discrepancy=discrepancy, coincide=coincide)
    return report.model_copy(update={
        "l2_checked": True,
        "l2_identical": discrepancy <= tolerance,
        "max_l2_discrepancy": discrepancy,
    })
