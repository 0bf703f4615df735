import pytest
import numpy as np
import math

from fractions import Fraction

from src.fock import Polynomial, parse_polynomial, enum_multiindices, enum_multiindices_up_to
from src.multop import (
    SamplingConfig,
    NormComputationError,
    THREADS_ENV,
    mult_matrix,
    gram_blocks_exact,
    power_iteration,
    block_norms,
    op_norm,
    dense_norm,
    multiplier_norm,
    truncated_multiplier_norm,
    multiplier_norm_bound,
    norm_gap_report,
    gap_scaling_table,
    sup_norm,
    sphere_grid,
    parallel_map,
    worker_count,
)


def balanced_power(n: int) -> Polynomial:
    return Polynomial.monomial((n, n))


def random_sparse_polynomial(rng: np.random.Generator, d: int, degree: int, n_terms: int = 3, homogeneous: bool = False) -> Polynomial:
    indices = enum_multiindices(d, degree) if homogeneous else enum_multiindices_up_to(d, degree)
    chosen = rng.choice(len(indices), size=min(n_terms, len(indices)), replace=False)
    return Polynomial(d, {indices[i]: complex(rng.normal(), rng.normal()) for i in chosen})


class TestBlockOperator:

    def test_shift_entries(self):
        T = mult_matrix(Polynomial.coordinate(2, 1), 2)
        dense = T.to_dense()
        assert T.shape == (10, 6)
        # z1 * 1 = z1, both of norm 1
        assert dense[1, 0] == pytest.approx(1.0)
        # z1 * z2 = z1 z2, norm ratio sqrt(1/2)
        assert dense[4, 2] == pytest.approx(math.sqrt(0.5))

    def test_restrict_matches_direct_assembly(self):
        p = parse_polynomial("1 + 2*z1*z2 - z2^3", d=2)
        np.testing.assert_allclose(mult_matrix(p, 6).restrict(3).to_dense(), mult_matrix(p, 3).to_dense())

    def test_product_is_multiplication(self):
        p = parse_polynomial("z1 + z2", d=2)
        q = parse_polynomial("z1*z2", d=2)
        left = mult_matrix(p, 4) @ mult_matrix(q, 2)
        direct = mult_matrix(p * q, 2).to_dense()
        np.testing.assert_allclose(left, direct, atol=1e-12)

    def test_homogeneous_gram_is_block_diagonal(self):
        blocks = gram_blocks_exact(parse_polynomial("z1^2 + 3*z1*z2", d=2), 3)
        for (k, kk), rows in blocks.items():
            if k != kk:
                assert all(value == 0 for row in rows for value in row)
        assert blocks[(0, 0)][0][0] == Fraction(1) + 9 * Fraction(1, 2)

    def test_negative_truncation(self):
        with pytest.raises(ValueError):
            mult_matrix(Polynomial.coordinate(2, 1), -1)


class TestPowerIteration:

    def test_dominant_eigenvalue(self):
        assert power_iteration(np.diag([3.0, 1.0, 0.5])) == pytest.approx(3.0, rel=1e-8)

    def test_all_ones_in_kernel(self):
        gram = np.array([[1.0, -1.0], [-1.0, 1.0]])
        assert power_iteration(gram) == pytest.approx(2.0, rel=1e-8)

    def test_no_convergence_carries_trace(self):
        gram = np.diag(np.linspace(1.0, 2.0, 10))
        with pytest.raises(NormComputationError) as error:
            power_iteration(gram, max_iter=1)
        assert len(error.value.trace) == 1

    def test_antisymmetric_symbol_blocks(self):
        p = Polynomial(2, {(1, 0): -0.568, (0, 1): 0.568})
        T = mult_matrix(p, 8)
        expected = math.hypot(0.568, 0.568)
        np.testing.assert_allclose(block_norms(T), expected, rtol=1e-9)
        np.testing.assert_allclose(block_norms(T, method="dense"), expected, rtol=1e-9)

    def test_close_top_eigenvalues(self):
        gram = np.diag([1.0, 1.0 - 1e-6, 0.5, 0.25, 0.1, 0.05])
        rotation, _ = np.linalg.qr(np.random.default_rng(0).normal(size=(6, 6)))
        assert power_iteration(rotation @ gram @ rotation.T) == pytest.approx(1.0, rel=1e-9)


class TestMultiplierNorm:

    @pytest.mark.parametrize("n_max", [0, 1, 3, 6])
    def test_z1z2_at_any_truncation(self, n_max):
        estimate = multiplier_norm(balanced_power(1), n_max)
        assert estimate.value == pytest.approx(1 / math.sqrt(2), abs=1e-9)
        assert estimate.converged

    @pytest.mark.parametrize("n", [2, 4, 8, 16])
    def test_balanced_powers(self, n):
        p = balanced_power(n)
        exact = math.sqrt(math.factorial(n) ** 2 / math.factorial(2 * n))
        estimate = multiplier_norm(p, 4)
        assert estimate.value == pytest.approx(exact, abs=1e-8)
        assert estimate.value == pytest.approx(dense_norm(mult_matrix(p, 4)), abs=1e-8)

    def test_sweep_is_monotone(self):
        p = parse_polynomial("1 + z1 + z1*z2", d=2)
        values = [v for _, v in multiplier_norm(p, 5).sweep]
        assert all(b >= a - 1e-8 for a, b in zip(values, values[1:]))

    def test_power_and_dense_agree(self):
        p = Polynomial(2, {(0, 0): 0.991 + 0.020j, (4, 0): 1.874 + 1.197j, (3, 1): 0.984 - 0.966j})
        T = mult_matrix(p, 6)
        assert op_norm(T, method="power") == pytest.approx(dense_norm(T), rel=1e-9)

    @pytest.mark.parametrize("d", [1, 2, 3])
    def test_power_and_dense_agree_on_random_symbols(self, d):
        rng = np.random.default_rng(d)
        for _ in range(20):
            p = random_sparse_polynomial(rng, d, int(rng.integers(1, 5)))
            T = mult_matrix(p, 4)
            assert op_norm(T) == pytest.approx(dense_norm(T), rel=1e-9)

    def test_submultiplicative(self):
        rng = np.random.default_rng(17)
        for _ in range(10):
            p = random_sparse_polynomial(rng, 2, 2)
            q = random_sparse_polynomial(rng, 2, 2)
            n = 3
            product = truncated_multiplier_norm(p * q, n)
            assert product <= truncated_multiplier_norm(p, n + q.degree) * truncated_multiplier_norm(q, n) * (1 + 1e-6)

    def test_constant_plus_shift_converges_slowly(self):
        estimate = multiplier_norm(parse_polynomial("1 + z1", d=1), 40)
        expected = [2 * math.cos(math.pi / (2 * n + 4)) for n in range(41)]
        np.testing.assert_allclose([v for _, v in estimate.sweep], expected, rtol=1e-8)
        assert not estimate.converged
        assert estimate.value < 2

    def test_bound_exact_on_monomials(self):
        for alpha in [(1, 0), (1, 1), (2, 1), (3, 3)]:
            p = Polynomial.monomial(alpha, 3)
            assert multiplier_norm_bound(p) == pytest.approx(multiplier_norm(p, 4).value, rel=1e-9)

    def test_bound_above_truncations(self):
        rng = np.random.default_rng(19)
        for _ in range(10):
            p = random_sparse_polynomial(rng, 2, 3)
            assert truncated_multiplier_norm(p, 6) <= multiplier_norm_bound(p) * (1 + 1e-9)
        assert multiplier_norm_bound(parse_polynomial("1 + z1", d=2)) == 2

    def test_one_variable_symbol(self):
        assert truncated_multiplier_norm(Polynomial.coordinate(3, 2), 4) == pytest.approx(1.0)

    def test_zero_polynomial(self):
        assert multiplier_norm(Polynomial(2), 3).value == 0.0

    def test_unknown_method(self):
        with pytest.raises(ValueError):
            op_norm(mult_matrix(balanced_power(1), 2), method="lanczos")


class TestSupNorm:

    @pytest.mark.parametrize("n", [1, 2, 4])
    def test_balanced_powers(self, n):
        assert sup_norm(balanced_power(n)) == pytest.approx(2.0 ** -n, abs=1e-9)

    def test_never_exceeds_multiplier_norm(self):
        p = parse_polynomial("z1^2 - z1*z2 + (0,1)*z2^2", d=2)
        assert sup_norm(p) <= truncated_multiplier_norm(p, 6, method="dense") + 1e-9

    def test_homogeneous_corpus_below_multiplier_norm(self):
        rng = np.random.default_rng(23)
        for _ in range(8):
            p = random_sparse_polynomial(rng, 2, int(rng.integers(1, 5)), homogeneous=True)
            assert sup_norm(p) <= multiplier_norm(p, p.degree).value + 1e-6

    def test_grid_on_sphere(self):
        for d in (2, 3):
            points = sphere_grid(d, SamplingConfig(n_random=100, n_kronecker=50))
            np.testing.assert_allclose(np.linalg.norm(points, axis=1), 1.0)

    def test_odd_t_grid(self):
        assert SamplingConfig(n_t=32).n_t == 33


class TestGap:

    def test_squared_balanced_monomial(self):
        report = norm_gap_report(parse_polynomial("(z1*z2)^2", d=2), 4)
        assert report.ratio == pytest.approx(4 / math.sqrt(6), abs=1e-6)
        assert report.to_dict()["degree"] == 4

    @pytest.mark.slow
    def test_scaling_against_reference(self):
        table = gap_scaling_table([2, 4, 8, 16])
        np.testing.assert_allclose(table["mult_norm"], table["exact_mult_norm"], atol=1e-8)
        np.testing.assert_allclose(table["sup_norm"], [2.0 ** -n for n in table["n"]], atol=1e-9)
        assert table["normalized_ratio"].between(0.95, 1.10).all()


class TestParallel:

    def test_threads_keep_order(self, monkeypatch):
        monkeypatch.setenv(THREADS_ENV, "3")
        assert worker_count() == 3
        assert parallel_map(lambda x: x * x, range(10)) == [x * x for x in range(10)]

    def test_invalid_thread_count(self, monkeypatch):
        monkeypatch.setenv(THREADS_ENV, "many")
        with pytest.raises(ValueError):
            worker_count()
