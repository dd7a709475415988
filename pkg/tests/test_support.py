import json

import pytest

from perronrank.core.config import Settings, get_settings, settings
from perronrank.core.exceptions import NoConvergenceException, ValidationException
from perronrank.models.command import CommandSpec
from perronrank.models.response import ErrorResponse
from perronrank.utils.helpers import derive_seed, format_float, mean_and_stderr
from perronrank.utils.logging import get_logger, setup_logging


def test_settings_read_prefixed_environment(monkeypatch):
    monkeypatch.setenv("RANK_SEED", "17")
    monkeypatch.setenv("RANK_SOLVER_TOL", "1e-10")
    configured = Settings()
    assert configured.seed == 17
    assert configured.solver_tol == 1e-10
    assert configured.k_grid_labels()[0] == "0"
    assert configured.k_grid_labels()[-1] == "inf"
    assert get_settings() is settings


def test_error_response_from_exception():
    response = ErrorResponse.from_exception(NoConvergenceException("log_perron", 10, 0.5))
    payload = json.loads(response.model_dump_json())
    assert payload["success"] is False
    assert payload["error_code"] == "NO_CONVERGENCE"
    assert payload["details"] == {"solver": "log_perron", "iterations": 10, "residual": 0.5}


def test_validation_exception_names_the_field():
    error = ValidationException("k", "must be positive")
    assert error.details["field_name"] == "k"
    assert "'k'" in error.message


def test_seed_derivation_depends_on_base_and_index_only():
    assert derive_seed(1, 2) == derive_seed(1, 2)
    assert len({derive_seed(0, index) for index in range(1000)}) == 1000
    assert derive_seed(0, 1) != derive_seed(1, 0)


def test_number_helpers():
    assert float(format_float(0.1)) == 0.1
    assert format_float(float("inf")) == "inf"
    assert mean_and_stderr([2.0]) == (2.0, 0.0)
    mean, stderr = mean_and_stderr([1.0, 3.0])
    assert mean == 2.0
    assert stderr == pytest.approx(1.0)


def test_json_logs_go_to_stderr(capsys):
    setup_logging(level="INFO", json_output=True)
    get_logger("perronrank.tests").info("log check", value=3)
    captured = capsys.readouterr()
    assert captured.out == ""
    record = json.loads(captured.err.strip().splitlines()[-1])
    assert record["event"] == "log check"
    assert record["value"] == 3
    assert record["level"] == "info"
    setup_logging()


def test_command_spec():
    spec = CommandSpec(subcommand="rank", flags={"k": "1"})
    assert spec.input_path is None
    with pytest.raises(ValueError):
        CommandSpec(subcommand="")
