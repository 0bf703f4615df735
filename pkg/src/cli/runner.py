from .commands import COMMANDS
from .config import RunConfig
from .schemas import SCHEMA_VERSION, ERROR_SCHEMA, validate_report
from src.fock import PolynomialParseError
from src.multop import NormComputationError
from src.functionals import TruncationOverflowError
from src.cauchy import TailBoundError
from fractions import Fraction
from typing import Dict, NamedTuple

from jsonschema import Draft7Validator

import numpy as np
import logging
import json
import math

CSV_FLOAT_FORMAT = "%.17g"

PARSE_ERRORS = (PolynomialParseError, ValueError, OSError)
NUMERICAL_ERRORS = (NormComputationError, TruncationOverflowError, TailBoundError)


class RunResult(NamedTuple):
    exit_code: int
    output: str


def to_native(value):
    """JSON-ready copy: numpy scalars unboxed, rationals as floats, complex as [re, im], non-finite floats as null."""
    if isinstance(value, dict):
        return {str(k): to_native(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_native(v) for v in value]
    if isinstance(value, np.ndarray):
        return [to_native(v) for v in value.tolist()]
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, Fraction):
        value = float(value)
    if isinstance(value, complex):
        return [to_native(value.real), to_native(value.imag)]
    if isinstance(value, float):
        return value if math.isfinite(value) else None
    raise TypeError(f"Cannot serialize value of type {type(value)}")


def _dump(report: Dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True, allow_nan=False) + "\n"


def _config_summary(config: RunConfig) -> Dict:
    summary = config.to_dict()
    for key in ("out", "verbose", "validate"):
        del summary[key]
    return to_native(summary)


def _error_result(config: RunConfig, error: Exception, exit_code: int) -> RunResult:
    logging.error(f"{config.command} failed: {type(error).__name__}: {error}")
    trace = getattr(error, "trace", None)
    if trace:
        logging.error(f"Iteration trace tail: {trace[-5:]}")

    report = {
        "command": config.command,
        "schema_version": SCHEMA_VERSION,
        "config": _config_summary(config),
        "error": type(error).__name__,
        "message": str(error),
        "exit_code": exit_code,
    }
    Draft7Validator(ERROR_SCHEMA).validate(report)
    return RunResult(exit_code, _dump(report))


def run(config: RunConfig) -> RunResult:
    """Runs one subcommand; exit code 1 on input errors, 2 on numerical failures, 0 on success."""
    logging.info(f"Run {config.command} with d={config.d}, seed={config.seed}")
    try:
        report, table = COMMANDS[config.command](config)
    except NUMERICAL_ERRORS as e:
        return _error_result(config, e, 2)
    except PARSE_ERRORS as e:
        return _error_result(config, e, 1)

    if config.format == "csv":
        if table is None:
            raise ValueError(f"Command {config.command} has no tabular output")
        return RunResult(0, table.to_csv(index=False, float_format=CSV_FLOAT_FORMAT))

    report = to_native(report)
    report.update({"command": config.command, "schema_version": SCHEMA_VERSION, "config": _config_summary(config)})
    if config.validate:
        validate_report(config.command, report)
    return RunResult(0, _dump(report))


def write_result(result: RunResult, out: str = None):
    if out is None:
        print(result.output, end="")
        return
    with open(out, "w") as f:
        f.write(result.output)
