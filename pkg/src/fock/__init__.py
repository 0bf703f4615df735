from .multi_index import (
    MultiIndex,
    check_dimension,
    check_multi_index,
    degree,
    count_multiindices,
    enum_multiindices,
    enum_multiindices_up_to,
    basis_index,
    degree_offsets,
    alpha_factorial,
    multinomial,
    monomial_norm_sq,
    add_indices,
    unit_index,
)

from .polynomial import Polynomial, Scalar, normalize_scalar, is_exact, sum_polynomials

from .fock_vector import (
    FockVector,
    inner_product,
    norm,
    kernel_vector,
    evaluate,
    reproducing_defect,
    random_rational_polynomial,
    random_rational_point,
    reproducing_suite,
)

from .full_fock import (
    Word,
    FullFockVector,
    CompressionReport,
    MAX_WORD_LENGTH,
    MAX_FULL_FOCK_DIMENSION,
    words_of,
    symmetric_image,
    symmetric_embedding,
    compression_check,
)

from .serialization import (
    PolynomialParseError,
    MAX_POWER_DEGREE,
    parse_polynomial,
    format_polynomial,
    polynomial_to_dict,
    polynomial_from_dict,
    load_polynomial_json,
)
