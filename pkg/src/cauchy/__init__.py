from .kernel import kernel_weight, cauchy_coefficient, cauchy_coeffs, dilate, kernel_tail_bound

from .quadrature import (
    SigmaIntegralTable,
    MONTE_CARLO_SAMPLES,
    Z_THRESHOLD,
    sigma_integral,
    monte_carlo_sigma,
    validation_pairs,
    validate_sigma_integrals,
)

from .valskii import (
    TailBoundError,
    ValskiiValue,
    VALSKII_TOLERANCE,
    DEFAULT_RADII,
    valskii_approximant,
    cauchy_integral,
    default_battery,
    valskii_convergence_table,
)
