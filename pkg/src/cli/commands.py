from .config import RunConfig
from src.fock import (
    Polynomial,
    PolynomialParseError,
    parse_polynomial,
    format_polynomial,
    polynomial_to_dict,
    load_polynomial_json,
    compression_check,
    reproducing_suite,
)
from src.multop import SamplingConfig, multiplier_norm, norm_gap_report, truncated_multiplier_norm
from src.shiftlab import (
    WeightTable,
    cesaro_sweep,
    cesaro_split_norms,
    weight_monotonicity_check,
    alpha_monotone_in_m,
    stirling_constant,
)
from src.peaklab import PeakSpec, peak_polynomial, peak_verify, grid_dump, supnorm_on_K_powers
from src.functionals import (
    AtomicMeasure,
    VectorPair,
    functional_from_dict,
    singular_witness,
    henkin_decay,
    kernel_pair_functional,
    extremal_subspace,
    exposed_functional,
)
from src.cauchy import default_battery, valskii_convergence_table, validate_sigma_integrals
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

import pandas as pd
import json

CommandResult = Tuple[Dict, Optional[pd.DataFrame]]

NORM_TRUNCATION = 8
GAP_TRUNCATION = 4
CESARO_N_MAX = 64
WEIGHT_TABLE = (4, 12, 8)
MONOTONICITY_GRID = (8, 50, 20)
SUPK_N_MAX = 32
WITNESS_N_MAX = 20
HENKIN_TRUNCATION = 4
EXPOSE_TRUNCATION = 12
SIGMA_MAX_DEGREE = 6
FOCK_TRUNCATION = 4
REPRODUCING_TRIALS = 50


def _pick(value, default):
    return default if value is None else value


def _load_json(path: str) -> Dict:
    with open(path, "r") as f:
        try:
            return json.load(f)
        except json.JSONDecodeError as e:
            raise PolynomialParseError(f"File {path} is not valid JSON: {e}")


def _polynomial(config: RunConfig, text: str = None, default: str = None) -> Polynomial:
    text = _pick(text, config.poly)
    if text is not None:
        return parse_polynomial(text, d=config.d)
    if config.json is not None:
        return load_polynomial_json(config.json)
    if default is not None:
        return parse_polynomial(default, d=config.d)
    raise PolynomialParseError(f"Command {config.command} needs --poly or --json")


def _exact(value):
    """Real coordinates become exact binary rationals."""
    value = complex(value)
    if value.imag == 0:
        return Fraction(value.real)
    return value


def _point(config: RunConfig, values: List = None) -> List:
    if values is None:
        return [Fraction(1)] + [Fraction(0)] * (config.d - 1)
    if len(values) != config.d:
        raise ValueError(f"Point {values} has {len(values)} coordinates, expected d={config.d}")
    return [_exact(v) for v in values]


def _samples(config: RunConfig) -> SamplingConfig:
    return SamplingConfig(seed=config.seed)


def _norm(config: RunConfig) -> CommandResult:
    p = _polynomial(config)
    estimate = multiplier_norm(p, _pick(config.N, NORM_TRUNCATION), tol=config.tol)
    table = pd.DataFrame(estimate.sweep, columns=["N", "value"])
    report = {
        "polynomial": format_polynomial(p),
        "estimate": estimate.to_dict(),
        "rows": table.to_dict(orient="records"),
    }
    return report, table


def _gap(config: RunConfig) -> CommandResult:
    p = _polynomial(config)
    gap = norm_gap_report(p, _pick(config.N, GAP_TRUNCATION), samples=_samples(config), tol=config.tol)
    report = {"polynomial": format_polynomial(p)}
    report.update(gap.to_dict())
    return report, pd.DataFrame([report])


def _cesaro(config: RunConfig) -> CommandResult:
    n_max = _pick(config.n_max, CESARO_N_MAX)
    n_values, n = [], 1
    while n <= n_max:
        n_values.append(n)
        n *= 2

    table = cesaro_sweep(n_values, verbose=config.verbose)
    report = {
        "rows": table.to_dict(orient="records"),
        "max_norm": float(table["norm"].max()),
        "split": cesaro_split_norms(n_values[-1]),
    }
    return report, table


def _weights(config: RunConfig) -> CommandResult:
    k_max, m_max, j_max = WEIGHT_TABLE
    table = WeightTable(range(1, k_max + 1), range(m_max + 1), range(j_max + 1)).to_frame()

    k_check, m_check, j_check = MONOTONICITY_GRID
    k_check = _pick(config.n_max, k_check)
    c1, k_arg, m_arg = stirling_constant()
    report = {
        "monotonicity": weight_monotonicity_check(k_check, m_check, j_check).to_dict(),
        "alpha_monotone_in_m": alpha_monotone_in_m(k_check, m_check),
        "stirling": {"c1": c1, "k": k_arg, "m": m_arg},
        "rows": table.to_dict(orient="records"),
    }
    return report, table


def _peak_spec(config: RunConfig) -> PeakSpec:
    if config.target == "roots":
        return PeakSpec.roots_of_unity(config.m, d=config.d, series_length=config.M)
    zeta = [complex(z) for z in _point(config, config.zeta)]
    return PeakSpec.point(zeta, series_length=config.M)


def _peak(config: RunConfig) -> CommandResult:
    spec = _peak_spec(config)
    p = peak_polynomial(spec)
    samples = _samples(config)
    result = peak_verify(p, spec, grid=samples)

    report = {"polynomial_degree": p.degree, "target": spec.to_dict()}
    report.update(result.to_dict())
    return report, grid_dump(p, spec, grid=samples)


def _supk(config: RunConfig) -> CommandResult:
    g = _polynomial(config, text=_pick(config.g, "z2"))
    f = _polynomial(config, default="(1+z1)/2")
    zeta = [complex(z) for z in _point(config, config.zeta)]
    table = supnorm_on_K_powers(g, f, zeta, _pick(config.n_max, SUPK_N_MAX), truncation=config.N)
    report = {
        "g": format_polynomial(g),
        "f": format_polynomial(f),
        "best_norm": float(table["best_norm"].iloc[-1]),
        "rows": table.to_dict(orient="records"),
    }
    return report, table


def _witness(config: RunConfig) -> CommandResult:
    n_max = _pick(config.n_max, WITNESS_N_MAX)
    phi = functional_from_dict(_load_json(config.json)) if config.json else None

    if config.mode == "singular":
        if phi is None:
            phi = AtomicMeasure([(1, _point(config, config.zeta))])
        if not isinstance(phi, AtomicMeasure):
            raise ValueError("Singular witnesses need an atomic measure")
        table = singular_witness(phi, n_max)
    else:
        if phi is None:
            w = _point(config, _pick(config.w, [0.5] + [0] * (config.d - 1)))
            phi = kernel_pair_functional(w, _pick(config.N, HENKIN_TRUNCATION), n_max)
        if not isinstance(phi, VectorPair):
            raise ValueError("Decay tables need a vector functional")
        zeta = None if config.zeta is None else _point(config, config.zeta)
        table = henkin_decay(phi, n_max, zeta=zeta).table

    report = {"mode": config.mode, "functional": phi.to_dict(), "rows": table.to_dict(orient="records")}
    return report, table


def _expose(config: RunConfig) -> CommandResult:
    f = _polynomial(config, default="z1*z2")
    truncation = _pick(config.N, EXPOSE_TRUNCATION)
    scale = truncated_multiplier_norm(f, truncation, method="dense")
    if scale == 0:
        raise ValueError("The zero polynomial has no extremal subspace")
    f = f / scale

    result = extremal_subspace(f, truncation, tol=config.tol, samples=_samples(config))
    functional, value = None, None
    if result.dimension:
        phi = exposed_functional(f, result.eigenvectors[0])
        functional = phi.to_dict()
        value = complex(phi.evaluate(f))
        value = [value.real, value.imag]

    report = {
        "polynomial": polynomial_to_dict(f),
        "scale": scale,
        "extremal": result.to_dict(),
        "functional": functional,
        "value": value,
    }
    table = pd.DataFrame({"eigenvalue": result.eigenvalues})
    return report, table


def _valskii(config: RunConfig) -> CommandResult:
    functionals, polynomials = default_battery(config.d)
    if config.json:
        functionals = [("input", functional_from_dict(_load_json(config.json)))]
    if config.poly:
        polynomials = [_polynomial(config)]

    table = valskii_convergence_table(functionals, polynomials, radii=config.radii, tol=config.tol)
    report = {
        "max_rate": float(table["rate"].max()) if len(table) else None,
        "rows": table.to_dict(orient="records"),
    }
    return report, table


def _sigma(config: RunConfig) -> CommandResult:
    table = validate_sigma_integrals(
        d_max=config.d,
        max_degree=_pick(config.N, SIGMA_MAX_DEGREE),
        n_samples=config.samples,
        seed=config.seed,
        verbose=config.verbose,
    )
    report = {"passed": bool(table["passed"].all()), "rows": table.to_dict(orient="records")}
    return report, table


def _fock_check(config: RunConfig) -> CommandResult:
    truncation = _pick(config.N, FOCK_TRUNCATION)
    compression = [compression_check(config.d, letter, truncation) for letter in range(1, config.d + 1)]
    table = reproducing_suite(config.d, truncation, REPRODUCING_TRIALS, seed=config.seed)
    report = {
        "deviation": max(float(c.max_deviation) for c in compression),
        "reproducing_defect": float(table["defect"].max()),
        "compression": [c.to_dict() for c in compression],
        "rows": table.to_dict(orient="records"),
    }
    return report, table


COMMANDS: Dict[str, Callable[[RunConfig], CommandResult]] = {
    "norm": _norm,
    "gap": _gap,
    "cesaro": _cesaro,
    "weights": _weights,
    "peak": _peak,
    "supk": _supk,
    "witness": _witness,
    "expose": _expose,
    "valskii": _valskii,
    "sigma": _sigma,
    "fock-check": _fock_check,
}
