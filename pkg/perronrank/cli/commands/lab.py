import argparse
import asyncio
import json
from pathlib import Path

from pydantic import ValidationError

from perronrank.cli.common import (
    add_output_flags, add_solver_flags, as_validation_exception, emit_json, parse_floats,
    parse_k, parse_k_list, solver_config,
)
from perronrank.core.config import get_settings
from perronrank.core.exceptions import MissingObjectiveException, ValidationException
from perronrank.core.orchestrator import lab_orchestrator
from perronrank.models.lab import NoiseKind, NoiseModel, Objective, SweepTable, TrialConfig
from perronrank.services.recovery_lab import best_k, k_sweep
from perronrank.utils.helpers import format_float
from perronrank.utils.logging import get_logger
from perronrank.utils.matrix_io import sweep_table_csv, write_output

logger = get_logger(__name__)


def _add_trial_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", default=None, help="JSON TrialConfig file (overrides the flags below)")
    parser.add_argument("--n", type=int, default=5)
    parser.add_argument("--noise", choices=[kind.value for kind in NoiseKind], default=NoiseKind.LOGNORMAL_SKEW.value)
    parser.add_argument("--sigma", type=float, default=0.5, help="noise scale (sigma or delta)")
    parser.add_argument("--k-grid", default=None, help="comma separated k values (default from settings)")
    parser.add_argument("--trials", type=int, default=100)
    parser.add_argument("--seed", type=int, default=None, help="base seed (default RANK_SEED)")
    parser.add_argument("--objectives", default=None, help="comma separated objectives (default all)")
    parser.add_argument("--true-score", default=None, help="comma separated truth (default random per trial)")
    parser.add_argument("--score-scale", type=float, default=1.0, help="std of the random truth")
    parser.add_argument("--workers", type=int, default=None, help="run trials on a thread pool of this size")
    add_solver_flags(parser)
    add_output_flags(parser)


def register(subparsers) -> None:
    sweep = subparsers.add_parser("sweep", help="score recovery table over a k grid")
    _add_trial_flags(sweep)
    sweep.set_defaults(handler=handle_sweep)

    recover = subparsers.add_parser("recover", help="k sweep plus the best k per objective")
    _add_trial_flags(recover)
    recover.set_defaults(handler=handle_recover)


def trial_config(args: argparse.Namespace) -> TrialConfig:
    """TrialConfig from --config or from the individual flags; validated before any trial runs."""
    try:
        if args.config:
            path = Path(args.config)
            if not path.exists():
                raise ValidationException("config", f"file not found: {path}")
            return TrialConfig.model_validate_json(path.read_text())

        defaults = get_settings()
        objectives = None
        if args.objectives:
            try:
                objectives = [Objective(item.strip()) for item in args.objectives.split(",") if item.strip()]
            except ValueError:
                raise ValidationException("objectives", f"unknown objective in '{args.objectives}'")
        fields = dict(
            n=args.n,
            noise=NoiseModel(kind=NoiseKind(args.noise), scale=args.sigma),
            k_grid=parse_k_list(args.k_grid) if args.k_grid else [parse_k(label) for label in defaults.k_grid_labels()],
            trials=args.trials,
            base_seed=defaults.seed if args.seed is None else args.seed,
            score_scale=args.score_scale,
            true_score=parse_floats(args.true_score, "true-score") if args.true_score else None,
        )
        if objectives:
            fields["objectives"] = objectives
        return TrialConfig(**fields)
    except ValidationError as e:
        raise as_validation_exception(e)


def run_table(args: argparse.Namespace, cfg: TrialConfig) -> SweepTable:
    solver = solver_config(args)
    if args.workers is not None:
        if args.workers < 1:
            raise ValidationException("workers", "must be at least 1")
        return asyncio.run(lab_orchestrator.run_sweep(cfg, args.workers, solver=solver))
    return k_sweep(cfg, solver=solver)


def handle_sweep(args: argparse.Namespace) -> int:
    cfg = trial_config(args)
    table = run_table(args, cfg)
    if args.output == "csv":
        write_output(sweep_table_csv(table), args.out)
    else:
        emit_json(table.model_dump(mode="json", exclude_none=True), args.out)
    return 0


def handle_recover(args: argparse.Namespace) -> int:
    cfg = trial_config(args)
    table = run_table(args, cfg)

    winners = []
    for objective in cfg.objectives:
        try:
            winners.append(best_k(table, objective))
        except MissingObjectiveException as e:
            logger.warning("no data for objective", **e.details)

    if args.output == "csv":
        lines = ["objective,best_k,mean,stderr,within_one_se"]
        for winner in winners:
            close = " ".join(k.label for k in winner.within_one_se)
            lines.append(
                f"{winner.objective.value},{winner.k.label},"
                f"{format_float(winner.mean)},{format_float(winner.stderr)},{close}"
            )
        write_output("\n".join(lines) + "\n", args.out)
        return 0

    emit_json({
        "config": json.loads(cfg.model_dump_json()),
        "table": table.model_dump(mode="json", exclude_none=True),
        "best_k": [
            {
                "objective": winner.objective.value,
                "k": winner.k.label,
                "mean": winner.mean,
                "stderr": winner.stderr,
                "within_one_se": [k.label for k in winner.within_one_se],
                "note": winner.note,
            }
            for winner in winners
        ],
    }, args.out)
    return 0
