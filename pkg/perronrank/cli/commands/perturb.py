import argparse

from perronrank.cli.common import add_solver_flags, emit_json, solver_config
from perronrank.core.config import settings
from perronrank.core.exceptions import ValidationException
from perronrank.services.perturbation import perturbation_analyzer
from perronrank.utils.logging import get_logger

logger = get_logger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("perturb-check", help="Monte-Carlo check of the perturbation bound")
    parser.add_argument("--n", type=int, default=5)
    parser.add_argument("--sigma", type=float, default=0.05, help="skew log-normal noise scale")
    parser.add_argument("--kappa", type=float, default=1.0)
    parser.add_argument("--trials", type=int, default=100)
    parser.add_argument("--seed", type=int, default=None, help="base seed (default RANK_SEED)")
    add_solver_flags(parser)
    parser.add_argument("--out", default=None, help="artifact path (standard output when omitted)")
    parser.set_defaults(handler=handle)


def handle(args: argparse.Namespace) -> int:
    if args.n < 2:
        raise ValidationException("n", "must be at least 2")
    if args.sigma <= 0:
        raise ValidationException("sigma", "must be positive")
    if args.kappa < 1:
        raise ValidationException("kappa", "must be at least 1")
    if args.trials < 1:
        raise ValidationException("trials", "must be at least 1")
    seed = settings.seed if args.seed is None else args.seed

    summary = perturbation_analyzer.monte_carlo_check(
        args.n, args.sigma, args.kappa, args.trials, seed, solver_config(args)
    )
    emit_json(summary.model_dump(mode="json"), args.out)
    status = 0
    if summary.unconverged_seeds:
        logger.error("perron solver did not converge", unconverged_seeds=summary.unconverged_seeds)
        status = 1
    if summary.failed_seeds:
        logger.error("perturbation bound failed", failed_seeds=summary.failed_seeds)
        status = 1
    return status
