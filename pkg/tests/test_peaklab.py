import pytest
import numpy as np
import math

from fractions import Fraction

from src.fock import Polynomial, parse_polynomial
from src.multop import SamplingConfig, truncated_multiplier_norm
from src.peaklab import (
    PeakSpec,
    householder_unitary,
    rotation_pullback,
    check_unitary,
    peak_polynomial,
    circle_peak,
    balanced_circle_points,
    peak_verify,
    grid_dump,
    supnorm_on_K_powers,
)


def random_unit_vector(rng: np.random.Generator, d: int) -> np.ndarray:
    z = rng.normal(size=d) + 1j * rng.normal(size=d)
    return z / np.linalg.norm(z)


class TestRotation:

    def test_swap(self):
        swap = np.array([[0, 1], [1, 0]])
        image = rotation_pullback(swap, Polynomial.coordinate(2, 1))
        assert complex(image.coefficient((0, 1))) == pytest.approx(1)
        assert image.coefficient((1, 0)) == 0

    def test_diagonal_phase(self):
        theta = 0.3
        U = np.diag([np.exp(1j * theta), 1])
        image = rotation_pullback(U, Polynomial.monomial((2, 0)))
        assert complex(image.coefficient((2, 0))) == pytest.approx(np.exp(-2j * theta))

    def test_constant_is_fixed(self):
        U = householder_unitary([0.6, 0.8j])
        assert complex(rotation_pullback(U, Polynomial.constant(2)).coefficient((0, 0))) == pytest.approx(1)

    def test_householder_maps_e1(self):
        rng = np.random.default_rng(3)
        for d in (2, 3, 4):
            zeta = random_unit_vector(rng, d)
            V = check_unitary(householder_unitary(zeta))
            np.testing.assert_allclose(V[:, 0], zeta, atol=1e-12)

    def test_minus_e1(self):
        np.testing.assert_allclose(householder_unitary([-1, 0, 0]), -np.eye(3))

    def test_non_unitary_rejected(self):
        with pytest.raises(ValueError):
            rotation_pullback(np.array([[1, 1], [0, 1]]), Polynomial.coordinate(2, 1))

    def test_preserves_degree_and_norm(self):
        p = parse_polynomial("z1^3 - 2*z1*z2^2 + (0,1)*z2", d=2)
        U = householder_unitary(random_unit_vector(np.random.default_rng(0), 2))
        image = rotation_pullback(U, p)
        assert {sum(alpha) for alpha, _ in image.items()} <= {1, 3}
        assert truncated_multiplier_norm(image, 4, method="dense") == pytest.approx(
            truncated_multiplier_norm(p, 4, method="dense"), abs=1e-6
        )


class TestPeakPolynomial:

    def test_value_at_target(self):
        g = peak_polynomial(PeakSpec.point([1, 0], series_length=30))
        assert g.evaluate([Fraction(1), Fraction(0)]) == 1 - Fraction(1, 2 ** 30)

    @pytest.mark.parametrize("point", [[0, 0], [0, 1]])
    def test_value_away_from_target(self, point):
        g = peak_polynomial(PeakSpec.point([1, 0], series_length=30))
        assert float(g.evaluate([Fraction(x) for x in point])) == pytest.approx(1 / 3, abs=1e-9)

    def test_verify_e1(self):
        spec = PeakSpec.point([1, 0], series_length=30)
        report = peak_verify(peak_polynomial(spec), spec, exclusion_radius=0.1)
        assert report.value_on_target == pytest.approx(1 - 2.0 ** -30)
        assert report.max_off_target < 1
        assert report.margin > 0
        assert report.mult_norm <= 1 + 1e-6

    def test_constant_without_exclusion(self):
        report = peak_verify(Polynomial.constant(2), PeakSpec.point([1, 0]), exclusion_radius=0)
        assert report.max_off_target == pytest.approx(1.0)
        assert report.margin == pytest.approx(0.0)

    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_rotated_targets(self, seed):
        zeta = random_unit_vector(np.random.default_rng(seed), 2)
        spec = PeakSpec.point(zeta, series_length=8)
        report = peak_verify(peak_polynomial(spec), spec)
        assert abs(report.value_on_target - (1 - 2.0 ** -8)) <= 1e-9
        assert report.mult_norm <= 1 + 1e-6
        assert report.max_off_target < 1

    @pytest.mark.slow
    def test_random_targets_at_full_length(self):
        rng = np.random.default_rng(7)
        for _ in range(10):
            spec = PeakSpec.point(random_unit_vector(rng, 2), series_length=30)
            report = peak_verify(peak_polynomial(spec), spec, exclusion_radius=0.05)
            assert report.n_points >= 10 ** 4
            assert abs(report.value_on_target - (1 - 2.0 ** -30)) <= 1e-9
            assert report.max_off_target < 1
            assert report.mult_norm <= 1 + 1e-6

    def test_roots_of_unity(self):
        spec = PeakSpec.roots_of_unity(3, d=2, series_length=10)
        g = peak_polynomial(spec)
        for root in spec.target_points():
            assert complex(g.evaluate(list(root))) == pytest.approx(1 - 2.0 ** -10)

    def test_invalid_targets(self):
        with pytest.raises(ValueError):
            PeakSpec.point([1, 1])
        with pytest.raises(ValueError):
            PeakSpec.point([1, 0], series_length=0)
        with pytest.raises(ValueError):
            peak_polynomial(PeakSpec.balanced_circle())

    def test_grid_dump(self):
        spec = PeakSpec.point([1, 0], series_length=4)
        table = grid_dump(peak_polynomial(spec), spec, grid=SamplingConfig(n_random=200, n_kronecker=100))
        assert list(table.columns) == ["z1_re", "z1_im", "z2_re", "z2_im", "distance", "modulus", "excluded"]
        assert (table.loc[~table["excluded"], "modulus"] < 1).all()


class TestCirclePeak:

    def test_coefficients(self):
        assert circle_peak(1) == Polynomial.monomial((1, 1), 2)
        h2 = circle_peak(2)
        assert h2.coefficient((1, 1)) == 1
        assert h2.coefficient((2, 2)) == 2
        assert h2.evaluate([Fraction(1), Fraction(0)]) == 0

    @pytest.mark.parametrize("n", [1, 2, 5, 16])
    def test_one_on_circle(self, n):
        h = circle_peak(n)
        for point in balanced_circle_points(100):
            assert abs(complex(h.evaluate(list(point))) - 1) <= 1e-12

    def test_below_one_off_circle(self):
        spec = PeakSpec.balanced_circle()
        report = peak_verify(circle_peak(4), spec)
        assert report.value_on_target == pytest.approx(1.0)
        assert report.max_off_target < 1

    def test_invalid_length(self):
        with pytest.raises(ValueError):
            circle_peak(0)


class TestConvexHullOfPowers:
    f = parse_polynomial("(1 + z1)/2", d=2)

    def test_constant_plateau(self):
        table = supnorm_on_K_powers(Polynomial.constant(2), self.f, [1, 0], 4)
        np.testing.assert_allclose(table["best_norm"], 1.0, atol=1e-6)

    def test_coordinate_plateau(self):
        table = supnorm_on_K_powers(Polynomial.coordinate(2, 1), self.f, [1, 0], 4)
        assert (table["target"] == 1).all()
        np.testing.assert_allclose(table["best_norm"], 1.0, atol=1e-6)

    def test_table_is_non_increasing(self):
        table = supnorm_on_K_powers(Polynomial.coordinate(2, 2), self.f, [1, 0], 8)
        assert list(table["n"]) == [1, 2, 4, 8]
        assert (np.diff(table["best_norm"]) <= 1e-6).all()
        assert (table["best_norm"] >= table["target"] - 1e-6).all()

    @pytest.mark.slow
    def test_decay_towards_zero(self):
        table = supnorm_on_K_powers(Polynomial.coordinate(2, 2), self.f, [1, 0], 32)
        assert table["best_norm"].iloc[-1] < 0.2

    def test_invalid_power_bound(self):
        with pytest.raises(ValueError):
            supnorm_on_K_powers(Polynomial.coordinate(2, 2), self.f, [1, 0], 0)
