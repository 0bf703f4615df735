from .rotation import check_unitary, check_unit_vector, householder_unitary, linear_forms, rotation_pullback

from .peaking import (
    PeakSpec,
    PeakReport,
    POINT,
    BALANCED_CIRCLE,
    ROOTS_OF_UNITY,
    EXCLUSION_RADIUS,
    DEFAULT_SERIES_LENGTH,
    geometric_peak_series,
    peak_polynomial,
    circle_peak,
    balanced_circle_points,
    peak_verify,
    grid_dump,
    peak_separation,
    supnorm_on_K_powers,
)
