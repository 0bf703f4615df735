import pytest
import numpy as np
import math

from fractions import Fraction

from src.fock import Polynomial, monomial_norm_sq, sum_polynomials
from src.multop import mult_matrix, op_norm
from src.shiftlab import (
    WeightTable,
    alpha_weight,
    beta_weight,
    alpha_weight_array,
    weight_monotonicity_check,
    alpha_monotone_in_m,
    stirling_ratio,
    stirling_constant,
    cesaro_chain_matrix,
    cesaro_operator_norm,
    cesaro_sweep,
    cesaro_split_norms,
)


def chain_element_sq(k: int, m: int, j: int) -> Fraction:
    """|<M_{(2 z1 z2)^k} f_{j,m}, f_{j,m+k}>|^2 from the monomial norms."""
    source = (m + j, m)
    target = (m + j + k, m + k)
    return 4 ** k * monomial_norm_sq(target) / monomial_norm_sq(source)


def cesaro_symbol(n: int) -> Polynomial:
    h0 = Polynomial.monomial((1, 1), 2)
    return sum_polynomials(2, [h0 ** k for k in range(1, n + 1)]) / n


class TestWeights:

    def test_examples(self):
        assert alpha_weight(1, 0).squared == 2
        assert alpha_weight(1, 0).value == pytest.approx(math.sqrt(2))
        assert alpha_weight(1, 1).squared == Fraction(4, 3)
        assert beta_weight(1, 0, 0).squared == 2
        assert beta_weight(1, 0, 1).squared == Fraction(4, 3)
        assert beta_weight(2, 0, 0).squared == Fraction(8, 3)

    def test_exact_agreement_with_matrix_elements(self):
        for k in range(1, 5):
            for m in range(13):
                assert alpha_weight(k, m).squared == chain_element_sq(k, m, 0)
                for j in range(9):
                    assert beta_weight(k, m, j).squared == chain_element_sq(k, m, j)

    def test_agreement_with_assembled_operator(self):
        k, m, j = 2, 3, 1
        T = mult_matrix(Polynomial.monomial((k, k), 2 ** k), 2 * m + j)
        block = T.block(2 * k, 2 * m + j)
        # graded lex: z1^a z2^b sits at position b within its degree
        assert block[m + k, m].real == pytest.approx(beta_weight(k, m, j).value)

    def test_log_gamma_array(self):
        k, m = np.meshgrid(np.arange(1, 5), np.arange(20), indexing="ij")
        exact = np.vectorize(lambda a, b: alpha_weight(int(a), int(b)).value)(k, m)
        np.testing.assert_allclose(alpha_weight_array(k, m), exact, rtol=1e-10)

    def test_alpha_decreases_towards_one(self):
        assert alpha_monotone_in_m(8, 200)
        assert 1 < alpha_weight(1, 1000).value < 1.001

    def test_invalid_indices(self):
        with pytest.raises(ValueError):
            alpha_weight(0, 1)
        with pytest.raises(ValueError):
            beta_weight(1, -1, 0)

    def test_table(self):
        table = WeightTable([1, 2], range(4), range(3))
        assert table.alpha_sq(1, 0) == 2
        assert table.beta_sq(2, 3, 1) == beta_weight(2, 3, 1).squared
        frame = table.to_frame()
        assert list(frame.columns) == ["k", "m", "j", "squared", "weight"]
        assert len(frame) == 2 * 4 * 3


class TestMonotonicity:

    def test_full_grid(self):
        report = weight_monotonicity_check(8, 50, 20)
        assert report.passed
        assert report.n_checked == 8 * 51 * 21
        assert report.to_dict()["violations"] == []

    def test_small_grid(self):
        assert beta_weight(1, 0, 1).value < alpha_weight(1, 0).value
        assert weight_monotonicity_check(1, 1, 1).passed

    def test_invalid_bounds(self):
        with pytest.raises(ValueError):
            weight_monotonicity_check(0, 5, 5)


class TestStirling:

    def test_ratio_at_origin(self):
        assert stirling_ratio(1, 0) == pytest.approx(math.sqrt(2) / 2 ** 0.25, abs=1e-5)

    def test_ratio_tends_to_one(self):
        assert stirling_ratio(3, 1000) == pytest.approx(1.0, abs=1e-2)

    def test_empirical_constant(self):
        c1, k, m = stirling_constant()
        assert 1 < c1 < 2
        assert stirling_ratio(k, m) == pytest.approx(c1)


class TestCesaro:

    def test_single_shift(self):
        assert cesaro_operator_norm(1).norm == pytest.approx(math.sqrt(2), abs=1e-9)

    def test_two_terms(self):
        record = cesaro_operator_norm(2)
        assert 1 < record.norm < math.sqrt(2)
        assert record.truncation == 10

    def test_truncation_floor(self):
        with pytest.raises(ValueError):
            cesaro_operator_norm(4, 15)

    def test_chain_matrix_shape(self):
        matrix = cesaro_chain_matrix(3, 12)
        assert matrix.shape == (16, 13)
        assert matrix[1, 0] == pytest.approx(math.sqrt(2) / 3)

    @pytest.mark.parametrize("n", [1, 2, 4, 8, 16])
    def test_stable_in_truncation(self, n):
        short = cesaro_operator_norm(n, 5 * n).norm
        long = cesaro_operator_norm(n, 8 * n).norm
        assert short <= long + 1e-12
        assert long - short < 1e-6

    @pytest.mark.parametrize("n", [1, 2, 4])
    def test_balanced_chain_carries_the_norm(self, n):
        truncation = 5 * n
        full = op_norm(mult_matrix(cesaro_symbol(n), 2 * truncation), method="dense")
        assert full == pytest.approx(cesaro_operator_norm(n, truncation).norm, abs=1e-6)

    def test_empty_sweep(self):
        table = cesaro_sweep([])
        assert table.empty
        assert list(table.columns) == ["n", "truncation", "norm"]

    @pytest.mark.slow
    def test_bounded_sweep(self):
        table = cesaro_sweep([1, 2, 4, 8, 16, 32, 64])
        values = dict(zip(table["n"], table["norm"]))
        assert table["norm"].max() < 3
        assert abs(values[64] - values[32]) < 0.05
        assert values[1] == pytest.approx(math.sqrt(2), abs=1e-9)

    def test_split_bound(self):
        split = cesaro_split_norms(4)
        assert split["head_norm"] <= split["norm"] + 1e-12
        assert split["tail_norm"] <= split["tail_bound"]
        assert split["norm"] <= split["combined_bound"]
