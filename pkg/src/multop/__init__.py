from .parallel import worker_count, parallel_map, THREADS_ENV
from .block_operator import BlockOperator, mult_matrix, gram_blocks_exact

from .sphere_sampling import (
    SamplingConfig,
    sphere_grid,
    max_modulus,
    refine_point,
    sup_norm,
)

from .norms import (
    NormComputationError,
    NormEstimate,
    GapReport,
    NORM_TOLERANCE,
    MAX_ITERATIONS,
    power_iteration,
    block_norms,
    op_norm,
    dense_norm,
    multiplier_norm,
    truncated_multiplier_norm,
    multiplier_norm_bound,
    norm_gap_report,
    gap_scaling_table,
)
