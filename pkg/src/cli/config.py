from argparse import ArgumentParser
from typing import Dict, List

import logging
import yaml

SUBCOMMANDS = ["norm", "gap", "cesaro", "weights", "peak", "supk", "witness", "expose", "valskii", "sigma", "fock-check"]
FORMATS = ["json", "csv"]

MAX_DIMENSION = 8
MAX_TRUNCATION = 64
MAX_N = 256

DEFAULTS = {
    "command": None,
    "d": 2,
    "poly": None,
    "json": None,
    "N": None,
    "n_max": None,
    "tol": 1e-9,
    "seed": 0,
    "format": "json",
    "out": None,
    "zeta": None,
    "M": 30,
    "m": 1,
    "target": "point",
    "mode": "singular",
    "w": None,
    "g": None,
    "radii": [0.9, 0.99, 0.999],
    "samples": 2 ** 20,
    "validate": True,
    "verbose": False,
}


class RunConfig(object):
    """Settings of one CLI run: defaults, then an optional YAML preset, then explicit flags."""

    def __init__(self, **kwargs):
        unknown = set(kwargs) - set(DEFAULTS)
        if unknown:
            raise ValueError(f"Unknown configuration keys: {sorted(unknown)}")

        values = dict(DEFAULTS)
        values.update(kwargs)
        for key, value in values.items():
            setattr(self, key, value)
        self._check()

    def _check(self):
        if self.command not in SUBCOMMANDS:
            raise ValueError(f"Unknown subcommand: {self.command!r}, expected one of {SUBCOMMANDS}")
        if self.format not in FORMATS:
            raise ValueError(f"Unknown output format: {self.format!r}")
        if not 1 <= self.d <= MAX_DIMENSION:
            raise ValueError(f"Dimension must lie in 1..{MAX_DIMENSION}, got {self.d}")
        if self.tol <= 0:
            raise ValueError(f"Tolerance must be positive, got {self.tol}")
        if self.N is not None and not 0 <= self.N <= MAX_TRUNCATION:
            raise ValueError(f"Truncation N must lie in 0..{MAX_TRUNCATION}, got {self.N}")
        if self.n_max is not None and not 1 <= self.n_max <= MAX_N:
            raise ValueError(f"n_max must lie in 1..{MAX_N}, got {self.n_max}")
        if self.M < 1:
            raise ValueError(f"Series length M must be at least 1, got {self.M}")
        if self.samples < 1:
            raise ValueError(f"Sample count must be at least 1, got {self.samples}")

    @classmethod
    def from_yaml(cls, path: str, **overrides):
        with open(path, "r") as f:
            preset = yaml.load(f, Loader=yaml.FullLoader) or {}
        preset.update(overrides)
        return cls(**preset)

    def to_dict(self) -> Dict:
        return {key: getattr(self, key) for key in DEFAULTS}


def _point(text: str) -> List[complex]:
    try:
        return [complex(value.strip().replace(" ", "")) for value in text.split(",")]
    except ValueError:
        raise ValueError(f"Cannot read point {text!r}, expected comma separated complex numbers")


def _radii(text: str) -> List[float]:
    return [float(value) for value in text.split(",")]


class _ArgumentParser(ArgumentParser):

    def error(self, message: str):
        raise ValueError(f"Invalid arguments: {message}")


def build_parser() -> ArgumentParser:
    parser = _ArgumentParser(description="Numerical experiments in the Drury-Arveson space")
    parser.add_argument("command", type=str, choices=SUBCOMMANDS)
    parser.add_argument("--d", type=int, dest="d", default=None)
    parser.add_argument("--poly", type=str, dest="poly", default=None)
    parser.add_argument("--json", type=str, dest="json", default=None)
    parser.add_argument("--N", type=int, dest="N", default=None)
    parser.add_argument("--n-max", type=int, dest="n_max", default=None)
    parser.add_argument("--tol", type=float, dest="tol", default=None)
    parser.add_argument("--seed", type=int, dest="seed", default=None)
    parser.add_argument("--format", type=str, dest="format", choices=FORMATS, default=None)
    parser.add_argument("--out", type=str, dest="out", default=None)
    parser.add_argument("--zeta", type=_point, dest="zeta", default=None)
    parser.add_argument("--M", type=int, dest="M", default=None)
    parser.add_argument("--m", type=int, dest="m", default=None)
    parser.add_argument("--target", type=str, dest="target", choices=["point", "roots"], default=None)
    parser.add_argument("--mode", type=str, dest="mode", choices=["singular", "henkin"], default=None)
    parser.add_argument("--w", type=_point, dest="w", default=None)
    parser.add_argument("--g", type=str, dest="g", default=None)
    parser.add_argument("--radii", type=_radii, dest="radii", default=None)
    parser.add_argument("--samples", type=int, dest="samples", default=None)
    parser.add_argument("--no-validate", dest="validate", action="store_false", default=None)
    parser.add_argument("--exp_file", type=str, dest="exp_file", default=None)
    parser.add_argument("--verbose", dest="verbose", action="store_true", default=None)
    return parser


def config_from_args(argv: List[str] = None) -> RunConfig:
    args = vars(build_parser().parse_args(argv))
    exp_file = args.pop("exp_file")
    explicit = {key: value for key, value in args.items() if value is not None}

    if exp_file:
        logging.info(f"Load preset from {exp_file}")
        return RunConfig.from_yaml(exp_file, **explicit)
    return RunConfig(**explicit)
