import argparse

import numpy as np

from perronrank.cli.common import (
    add_output_flags, add_solver_flags, emit_json, parse_floats, parse_k, solver_config,
)
from perronrank.core.comparison import log_map, normalize_projective
from perronrank.core.config import settings
from perronrank.core.exceptions import ValidationException
from perronrank.models.comparison import AdditiveMatrix
from perronrank.models.fiber import FiberCertificate
from perronrank.services.fiber_geometry import (
    fiber_decompose, kalman_sample, sample_zero_fiber, zero_fiber_certificate,
)
from perronrank.utils.matrix_io import load_comparison, render_matrix, score_payload, write_output


def register(subparsers) -> None:
    fiber = subparsers.add_parser("fiber", help="fiber decomposition certificate of a matrix at k")
    fiber.add_argument("--input", required=True, help="matrix file (CSV or JSON)")
    fiber.add_argument("--kind", choices=["mult", "add"], default=None)
    fiber.add_argument("--k", default="1", help="0, inf or a positive number")
    fiber.add_argument("--zero-only", action="store_true", help="only test membership of the zero fiber")
    fiber.add_argument("--membership-tol", type=float, default=None, help="zero-fiber tolerance")
    add_solver_flags(fiber)
    fiber.add_argument("--out", default=None, help="artifact path (standard output when omitted)")
    fiber.set_defaults(handler=handle_fiber)

    kalman = subparsers.add_parser("sample-kalman", help="random matrix with a prescribed Perron pair")
    kalman.add_argument("--w", required=True, help="comma separated positive Perron vector")
    kalman.add_argument("--lambda", dest="eigenvalue", type=float, required=True, help="Perron eigenvalue")
    kalman.add_argument("--seed", type=int, default=None, help="seed (default RANK_SEED)")
    add_output_flags(kalman)
    kalman.set_defaults(handler=handle_sample_kalman)

    zero = subparsers.add_parser("sample-fiber", help="random element of the zero fiber at k")
    zero.add_argument("--n", type=int, required=True)
    zero.add_argument("--k", default="1", help="0, inf or a positive number")
    zero.add_argument("--c", type=float, default=0.0, help="coefficient of the all-ones summand")
    zero.add_argument("--zeros-per-row", type=int, default=1, help="zero entries per row at k = inf")
    zero.add_argument("--seed", type=int, default=None, help="seed (default RANK_SEED)")
    add_output_flags(zero)
    zero.set_defaults(handler=handle_sample_fiber)


def certificate_payload(certificate: FiberCertificate, A: AdditiveMatrix) -> dict:
    return {
        "k": certificate.k.label,
        "score": score_payload(certificate.score),
        "c": certificate.c,
        "rows": certificate.row_components.tolist(),
        "max_defect": certificate.max_defect,
        "reconstruction_defect": float(np.max(np.abs(certificate.reconstruct() - A.entries))),
    }


def handle_fiber(args: argparse.Namespace) -> int:
    k = parse_k(args.k)
    if args.membership_tol is not None and args.membership_tol <= 0:
        raise ValidationException("membership-tol", "must be positive")
    cfg = solver_config(args)
    comparison = load_comparison(args.input, args.kind)
    A = comparison if isinstance(comparison, AdditiveMatrix) else log_map(comparison)

    if args.zero_only:
        certificate = zero_fiber_certificate(A, k, args.membership_tol)
    else:
        certificate = fiber_decompose(A, k, cfg)
    emit_json(certificate_payload(certificate, A), args.out)
    return 0


def _seed(args: argparse.Namespace) -> int:
    return settings.seed if args.seed is None else args.seed


def handle_sample_kalman(args: argparse.Namespace) -> int:
    values = parse_floats(args.w, "w")
    if len(values) < 2:
        raise ValidationException("w", "needs at least two entries")
    if any(v <= 0 for v in values):
        raise ValidationException("w", "entries must be positive")
    if args.eigenvalue <= 0:
        raise ValidationException("lambda", "must be positive")

    X = kalman_sample(normalize_projective(values), args.eigenvalue, _seed(args))
    write_output(render_matrix(X.entries, "multiplicative", args.output), args.out)
    return 0


def handle_sample_fiber(args: argparse.Namespace) -> int:
    if args.n < 2:
        raise ValidationException("n", "must be at least 2")
    k = parse_k(args.k)
    if k.is_infinity and not 1 <= args.zeros_per_row <= args.n:
        raise ValidationException("zeros-per-row", f"must lie in [1, {args.n}]")

    A = sample_zero_fiber(args.n, k, _seed(args), args.c, args.zeros_per_row)
    write_output(render_matrix(A.entries, "additive", args.output), args.out)
    return 0
