from .config import RunConfig, SUBCOMMANDS, FORMATS, build_parser, config_from_args
from .schemas import SCHEMA_VERSION, REPORT_SCHEMAS, ERROR_SCHEMA, schema_for, validate_report
from .commands import COMMANDS
from .runner import RunResult, CSV_FLOAT_FORMAT, to_native, run, write_result
