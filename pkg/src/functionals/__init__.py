from .functional import (
    TruncationOverflowError,
    Functional,
    VectorPair,
    AtomicMeasure,
    eval_functional,
    functional_norm_bounds,
    functional_from_dict,
)

from .witnesses import (
    DecayReport,
    rotated_powers,
    singular_witness,
    henkin_decay,
    kernel_pair_functional,
)

from .extremal import (
    ExtremalResult,
    OK,
    INCONCLUSIVE,
    DEGENERATE,
    extremal_subspace,
    exposed_functional,
    explore_extremal_dimensions,
)
