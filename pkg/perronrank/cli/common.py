"""Flag helpers shared by the subcommand modules."""
import argparse
import json
from typing import Any, List, Optional

from pydantic import ValidationError

from perronrank.core.exceptions import ValidationException
from perronrank.models.comparison import KParameter
from perronrank.models.solver import SolverConfig
from perronrank.utils.helpers import parse_float_list
from perronrank.utils.matrix_io import write_output


def parse_k(text: str) -> KParameter:
    try:
        return KParameter.parse(text)
    except ValueError:
        raise ValidationException("k", f"'{text}' is not 0, inf or a positive number")


def parse_k_list(text: str, field_name: str = "k-grid") -> List[KParameter]:
    labels = [item.strip() for item in text.split(",") if item.strip()]
    if not labels:
        raise ValidationException(field_name, "at least one k is required")
    try:
        return [KParameter.parse(label) for label in labels]
    except ValueError:
        raise ValidationException(field_name, f"'{text}' is not a list of k values")


def parse_floats(text: str, field_name: str) -> List[float]:
    try:
        values = parse_float_list(text)
    except ValueError:
        raise ValidationException(field_name, f"'{text}' is not a comma separated list of numbers")
    if not values:
        raise ValidationException(field_name, "at least one value is required")
    return values


def add_solver_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--tol", type=float, default=None, help="solver tolerance (default from settings)")
    parser.add_argument("--max-iter", type=int, default=None, help="solver iteration budget")


def add_output_flags(parser: argparse.ArgumentParser, formats=("json", "csv")) -> None:
    parser.add_argument("--output", choices=formats, default=formats[0], help="artifact format")
    parser.add_argument("--out", default=None, help="artifact path (standard output when omitted)")


def solver_config(args: argparse.Namespace) -> SolverConfig:
    base = SolverConfig.from_settings()
    updates = {}
    if args.tol is not None:
        updates["tol"] = args.tol
    if args.max_iter is not None:
        updates["max_iter"] = args.max_iter
    if not updates:
        return base
    try:
        return SolverConfig(**{**base.model_dump(), **updates})
    except ValidationError as e:
        raise as_validation_exception(e)


def as_validation_exception(error: ValidationError) -> ValidationException:
    """First pydantic error as a flag-level ValidationException."""
    first = error.errors()[0]
    field_name = ".".join(str(part) for part in first.get("loc", ())) or "input"
    return ValidationException(field_name.replace("_", "-"), first.get("msg", str(error)))


def emit_json(payload: Any, path: Optional[str] = None) -> None:
    write_output(json.dumps(payload, indent=2) + "\n", path)
