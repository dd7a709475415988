"""
Matrix, score and table files.

Matrices are CSV (n rows of n fields, no header) or JSON
{"n": int, "entries": [[...]], "kind": "multiplicative" | "additive"}.
Floats are written with 17 significant digits so reads are bit-exact.
"""
import csv
import io
import json
import sys
from pathlib import Path
from typing import Any, Dict, Optional, Tuple, Union

import numpy as np

from perronrank.core.exceptions import ValidationException
from perronrank.models.comparison import AdditiveMatrix, AdditiveScore, PositiveMatrix, ProjectiveScore
from perronrank.models.lab import SweepTable
from perronrank.utils.helpers import format_float

KIND_ALIASES = {
    "mult": "multiplicative",
    "multiplicative": "multiplicative",
    "add": "additive",
    "additive": "additive",
}


def normalize_kind(kind: str) -> str:
    try:
        return KIND_ALIASES[kind.strip().lower()]
    except KeyError:
        raise ValidationException("kind", f"unknown matrix kind '{kind}' (expected mult or add)")


def _parse_csv(text: str) -> np.ndarray:
    rows = [row for row in csv.reader(io.StringIO(text)) if any(field.strip() for field in row)]
    try:
        return np.array([[float(field) for field in row] for row in rows], dtype=float)
    except ValueError as e:
        raise ValidationException("input", f"malformed CSV matrix: {e}")


def read_matrix(path: Union[str, Path]) -> Tuple[np.ndarray, Optional[str]]:
    """Entries and the declared kind (None for CSV)."""
    path = Path(path)
    if not path.exists():
        raise ValidationException("input", f"file not found: {path}")
    text = path.read_text()

    if path.suffix.lower() == ".json":
        try:
            payload = json.loads(text)
            entries = np.array(payload["entries"], dtype=float)
        except (ValueError, KeyError, TypeError) as e:
            raise ValidationException("input", f"malformed JSON matrix: {e}")
        kind = payload.get("kind")
        if "n" in payload and entries.ndim == 2 and payload["n"] != entries.shape[0]:
            raise ValidationException("input", f"declared n={payload['n']} but {entries.shape[0]} rows")
        return entries, normalize_kind(kind) if kind else None

    entries = _parse_csv(text)
    return entries, None


def load_comparison(path: Union[str, Path], kind: Optional[str] = None) -> Union[PositiveMatrix, AdditiveMatrix]:
    """Read a matrix file as a PositiveMatrix (multiplicative) or AdditiveMatrix."""
    entries, declared = read_matrix(path)
    resolved = normalize_kind(kind) if kind else declared
    if resolved is None:
        raise ValidationException("kind", "CSV input requires --kind mult or add")
    if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
        raise ValidationException("input", f"matrix must be square, got shape {entries.shape}")
    try:
        if resolved == "multiplicative":
            return PositiveMatrix(entries=entries)
        return AdditiveMatrix.from_entries(entries)
    except ValueError as e:
        raise ValidationException("input", str(e))


def matrix_to_csv(entries: np.ndarray) -> str:
    return "".join(",".join(format_float(x) for x in row) + "\n" for row in np.asarray(entries))


def matrix_to_json(entries: np.ndarray, kind: str) -> Dict[str, Any]:
    array = np.asarray(entries, dtype=float)
    return {"n": int(array.shape[0]), "entries": array.tolist(), "kind": normalize_kind(kind)}


def render_matrix(entries: np.ndarray, kind: str, output_format: str = "json") -> str:
    if output_format == "csv":
        return matrix_to_csv(entries)
    return json.dumps(matrix_to_json(entries, kind), indent=2) + "\n"


def score_payload(score: Union[AdditiveScore, ProjectiveScore]) -> Dict[str, Any]:
    """{"normalization": "sum0" | "gm1", "entries": [...]}."""
    normalization = "sum0" if isinstance(score, AdditiveScore) else "gm1"
    return {"normalization": normalization, "entries": score.entries.tolist()}


def sweep_table_csv(table: SweepTable) -> str:
    """Columns k, objective, mean, stderr, trials, excluded."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["k", "objective", "mean", "stderr", "trials", "excluded"])
    for cell in table.cells:
        writer.writerow([
            cell.k.label,
            cell.objective.value,
            "" if cell.mean is None else format_float(cell.mean),
            "" if cell.stderr is None else format_float(cell.stderr),
            table.trials,
            cell.excluded,
        ])
    return out.getvalue()


def write_output(text: str, path: Optional[Union[str, Path]] = None) -> None:
    """Write an artifact to ``path``, or to standard output when no path is given."""
    if path is None:
        sys.stdout.write(text)
        return
    Path(path).write_text(text)
