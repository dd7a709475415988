import argparse
import math

import numpy as np

from perronrank.cli.common import add_output_flags, add_solver_flags, emit_json, parse_k, solver_config
from perronrank.core.comparison import log_map
from perronrank.models.comparison import AdditiveMatrix, AdditiveScore
from perronrank.services.perron_engine import perron_engine
from perronrank.services.tropical_rank import max_cycle_mean
from perronrank.utils.helpers import format_float
from perronrank.utils.logging import get_logger
from perronrank.utils.matrix_io import load_comparison, score_payload, write_output

logger = get_logger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("rank", help="score one comparison matrix")
    parser.add_argument("--input", required=True, help="matrix file (CSV or JSON)")
    parser.add_argument("--kind", choices=["mult", "add"], default=None, help="matrix kind (required for CSV)")
    parser.add_argument("--k", default="1", help="0, inf or a positive number")
    parser.add_argument("--all", action="store_true", help="report HodgeRank, V_k and Tropical Rank together")
    add_solver_flags(parser)
    add_output_flags(parser)
    parser.set_defaults(handler=handle)


def _eigenvalue(k: float, log_lambda: float):
    exponent = k * log_lambda
    return math.exp(exponent) if exponent <= 700 else None


def _csv(columns) -> str:
    names = list(columns)
    lines = ["i," + ",".join(names)]
    n = len(next(iter(columns.values())))
    for i in range(n):
        fields = []
        for name in names:
            values = columns[name]
            fields.append("" if values is None else format_float(values[i]))
        lines.append(f"{i}," + ",".join(fields))
    return "\n".join(lines) + "\n"


def handle(args: argparse.Namespace) -> int:
    k = parse_k(args.k)
    cfg = solver_config(args)
    comparison = load_comparison(args.input, args.kind)
    A = comparison if isinstance(comparison, AdditiveMatrix) else log_map(comparison)
    reciprocal = comparison.skew if isinstance(comparison, AdditiveMatrix) else comparison.is_reciprocal()
    if not reciprocal:
        logger.info("input is not reciprocal", kind=args.kind)

    if args.all:
        limits = perron_engine.rank_all_limits(A, k, cfg)
        if args.output == "csv":
            write_output(_csv({
                "hodge": limits.hodge.entries,
                "perron": limits.perron.entries,
                "tropical": limits.tropical.entries if limits.tropical is not None else None,
            }), args.out)
            return 0
        emit_json({
            "k": k.label,
            "hodge": score_payload(limits.hodge),
            "perron": score_payload(limits.perron),
            "tropical": score_payload(limits.tropical) if limits.tropical is not None else None,
            "tropical_unique": limits.tropical_unique,
            "reciprocal": reciprocal,
            "log_lambda": limits.log_lambda,
        }, args.out)
        return 0

    payload = {"k": k.label, "reciprocal": reciprocal}
    if k.is_finite:
        result = perron_engine.log_perron_score(A, k.value, cfg)
        score: AdditiveScore = result.score
        payload.update({
            "log_lambda": result.log_lambda,
            "eigenvalue": _eigenvalue(k.value, result.log_lambda),
            "iterations": result.iterations,
            "residual": result.residual,
        })
    else:
        score = perron_engine.perron_family_score(A, k, cfg)
        if k.is_infinity:
            payload["max_cycle_mean"] = max_cycle_mean(A)

    if args.output == "csv":
        write_output(_csv({"score": score.entries}), args.out)
        return 0
    payload["score"] = score_payload(score)
    payload["multiplicative"] = score_payload(score.to_projective())
    logger.debug("rank computed", k=k.label, n=int(np.size(score.entries)))
    emit_json(payload, args.out)
    return 0
