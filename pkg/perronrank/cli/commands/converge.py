import argparse

from perronrank.cli.common import add_output_flags, add_solver_flags, emit_json, parse_floats, solver_config
from perronrank.core.comparison import log_map
from perronrank.core.exceptions import OverflowRiskException, ValidationException
from perronrank.models.comparison import AdditiveMatrix
from perronrank.services.convergence import convergence_ladder, hodge_first_order_gap
from perronrank.utils.helpers import format_float
from perronrank.utils.matrix_io import load_comparison, score_payload, write_output

DEFAULT_LADDER = "1e-3,1e-2,1e-1,1,10,30,100,300"


def register(subparsers) -> None:
    parser = subparsers.add_parser("converge", help="distance of V_k to the HodgeRank and Tropical limits")
    parser.add_argument("--input", required=True, help="matrix file (CSV or JSON)")
    parser.add_argument("--kind", choices=["mult", "add"], default=None)
    parser.add_argument("--k-ladder", default=DEFAULT_LADDER, help="comma separated positive k values")
    parser.add_argument("--linearization", action="store_true", help="add the first-order gap for each k")
    add_solver_flags(parser)
    add_output_flags(parser)
    parser.set_defaults(handler=handle)


def _cell(value) -> str:
    return "" if value is None else format_float(value)


def handle(args: argparse.Namespace) -> int:
    ladder = parse_floats(args.k_ladder, "k-ladder")
    if any(k <= 0 for k in ladder):
        raise ValidationException("k-ladder", "every k must be positive")
    cfg = solver_config(args)
    comparison = load_comparison(args.input, args.kind)
    A = comparison if isinstance(comparison, AdditiveMatrix) else log_map(comparison)

    rows = convergence_ladder(A, ladder, cfg)
    gaps = {}
    if args.linearization:
        for k in ladder:
            try:
                gaps[k] = hodge_first_order_gap(A, k)
            except OverflowRiskException:
                gaps[k] = None

    if args.output == "csv":
        header = "k,hodge_error,tropical_error,hodge_ratio,tropical_ratio"
        if args.linearization:
            header += ",norm_Xi,rho,hodge_gap"
        lines = [header]
        for k, row in zip(ladder, rows):
            fields = [format_float(k), _cell(row.hodge_error), _cell(row.tropical_error),
                      _cell(row.hodge_ratio), _cell(row.tropical_ratio)]
            if args.linearization:
                gap = gaps[k]
                fields += [_cell(gap and gap.norm_Xi), _cell(gap and gap.rho), _cell(gap and gap.hodge_gap)]
            lines.append(",".join(fields))
        write_output("\n".join(lines) + "\n", args.out)
        return 0

    payload = []
    for k, row in zip(ladder, rows):
        entry = row.model_dump(mode="json", exclude={"score", "k"})
        entry["k"] = k
        entry["score"] = score_payload(row.score)
        if args.linearization:
            gap = gaps[k]
            entry["linearization"] = None if gap is None else gap.model_dump(mode="json", exclude={"estimate"})
        payload.append(entry)
    emit_json({"rows": payload}, args.out)
    return 0
