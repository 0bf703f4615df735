from jsonschema import Draft7Validator
from typing import Dict

SCHEMA_VERSION = "1.0"

_NUMBER = {"type": "number"}
_NULLABLE_NUMBER = {"type": ["number", "null"]}
_INTEGER = {"type": "integer"}
_COMPLEX = {"type": "array", "items": _NUMBER, "minItems": 2, "maxItems": 2}

_POLYNOMIAL = {
    "type": "object",
    "required": ["d", "terms"],
    "properties": {
        "d": _INTEGER,
        "terms": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["alpha", "re", "im"],
                "properties": {"alpha": {"type": "array", "items": _INTEGER}, "re": _NUMBER, "im": _NUMBER},
            },
        },
    },
}


def _rows(columns: Dict) -> Dict:
    return {
        "type": "array",
        "items": {"type": "object", "required": sorted(columns), "properties": columns},
    }


def _report(properties: Dict) -> Dict:
    required = ["command", "schema_version"] + sorted(properties)
    merged = {"command": {"type": "string"}, "schema_version": {"const": SCHEMA_VERSION}, "config": {"type": "object"}}
    merged.update(properties)
    return {"$schema": "http://json-schema.org/draft-07/schema#", "type": "object", "required": required, "properties": merged}


REPORT_SCHEMAS = {
    "norm": _report({
        "polynomial": {"type": "string"},
        "estimate": {
            "type": "object",
            "required": ["value", "sweep", "converged", "tolerance"],
            "properties": {"value": _NUMBER, "converged": {"type": "boolean"}, "tolerance": _NUMBER},
        },
        "rows": _rows({"N": _INTEGER, "value": _NUMBER}),
    }),
    "gap": _report({
        "polynomial": {"type": "string"},
        "mult_norm": _NUMBER,
        "sup_norm": _NUMBER,
        "ratio": _NUMBER,
        "n_samples": _INTEGER,
        "degree": _INTEGER,
    }),
    "cesaro": _report({
        "rows": _rows({"n": _INTEGER, "truncation": _INTEGER, "norm": _NUMBER}),
        "max_norm": _NUMBER,
        "split": {"type": "object", "required": ["head_norm", "tail_norm", "tail_bound", "combined_bound"]},
    }),
    "weights": _report({
        "monotonicity": {"type": "object", "required": ["passed", "n_checked", "violations"]},
        "alpha_monotone_in_m": {"type": "boolean"},
        "stirling": {"type": "object", "required": ["c1", "k", "m"]},
        "rows": _rows({"k": _INTEGER, "m": _INTEGER, "j": _INTEGER, "squared": _NUMBER, "weight": _NUMBER}),
    }),
    "peak": _report({
        "polynomial_degree": _INTEGER,
        "target": {"type": "object", "required": ["kind", "d", "M"]},
        "value_on_target": _COMPLEX,
        "max_off_target": _NUMBER,
        "margin": _NUMBER,
        "mult_norm": _NUMBER,
        "n_points": _INTEGER,
        "exclusion_radius": _NUMBER,
        "tail_bound": _NUMBER,
    }),
    "supk": _report({
        "g": {"type": "string"},
        "f": {"type": "string"},
        "best_norm": _NUMBER,
        "rows": _rows({
            "n": _INTEGER, "power_norm": _NUMBER, "cesaro_norm": _NUMBER, "best_norm": _NUMBER, "target": _NUMBER,
        }),
    }),
    "witness": _report({
        "mode": {"enum": ["singular", "henkin"]},
        "functional": {"type": "object", "required": ["kind"]},
        "rows": _rows({"n": _INTEGER, "value": _NUMBER}),
    }),
    "expose": _report({
        "polynomial": _POLYNOMIAL,
        "scale": _NUMBER,
        "extremal": {
            "type": "object",
            "required": ["truncation", "top_eigenvalue", "gap", "dimension", "status", "sup_norm"],
            "properties": {"status": {"enum": ["ok", "inconclusive", "degenerate"]}, "dimension": _INTEGER},
        },
        "functional": {"type": ["object", "null"]},
        "value": {"anyOf": [_COMPLEX, {"type": "null"}]},
    }),
    "valskii": _report({
        "max_rate": _NULLABLE_NUMBER,
        "rows": _rows({
            "functional": {"type": "string"},
            "polynomial": {"type": "string"},
            "r": _NUMBER,
            "truncation": _INTEGER,
            "tail_bound": _NUMBER,
            "error": _NUMBER,
            "rate": _NUMBER,
        }),
    }),
    "sigma": _report({
        "passed": {"type": "boolean"},
        "rows": _rows({
            "d": _INTEGER,
            "alpha": {"type": "string"},
            "beta": {"type": "string"},
            "closed_form": _NUMBER,
            "mc_mean_re": _NUMBER,
            "mc_stderr_re": _NUMBER,
            "z_score": _NULLABLE_NUMBER,
            "passed": {"type": "boolean"},
        }),
    }),
    "fock-check": _report({
        "deviation": _NUMBER,
        "reproducing_defect": _NUMBER,
        "compression": {"type": "array", "items": {"type": "object", "required": ["letter", "max_deviation"]}},
        "rows": _rows({"trial": _INTEGER, "defect": _NUMBER}),
    }),
}

ERROR_SCHEMA = _report({
    "error": {"type": "string"},
    "message": {"type": "string"},
    "exit_code": {"enum": [1, 2]},
})


def schema_for(command: str) -> Dict:
    if command not in REPORT_SCHEMAS:
        raise ValueError(f"No report schema for command {command!r}")
    return REPORT_SCHEMAS[command]


def validate_report(command: str, report: Dict):
    """Raises jsonschema.ValidationError on the first violation of the command's schema."""
    Draft7Validator(schema_for(command)).validate(report)
