from .weights import (
    ShiftWeight,
    WeightTable,
    MonotonicityReport,
    alpha_weight,
    beta_weight,
    alpha_weight_array,
    weight_monotonicity_check,
    alpha_monotone_in_m,
    stirling_ratio,
    stirling_constant,
)

from .cesaro import (
    CesaroRecord,
    cesaro_chain_matrix,
    cesaro_operator_norm,
    cesaro_sweep,
    cesaro_split_norms,
)
