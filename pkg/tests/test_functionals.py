import pytest
import numpy as np
import logging
import cmath
import math

from fractions import Fraction

from src.fock import (
    FockVector,
    Polynomial,
    PolynomialParseError,
    enum_multiindices_up_to,
    kernel_vector,
    norm,
    parse_polynomial,
    random_rational_polynomial,
)
from src.multop import truncated_multiplier_norm
from src.peaklab import PeakSpec, householder_unitary, rotation_pullback, peak_polynomial, peak_separation, circle_peak
from src.functionals import (
    TruncationOverflowError,
    VectorPair,
    AtomicMeasure,
    OK,
    DEGENERATE,
    eval_functional,
    functional_norm_bounds,
    functional_from_dict,
    rotated_powers,
    singular_witness,
    henkin_decay,
    kernel_pair_functional,
    extremal_subspace,
    exposed_functional,
    explore_extremal_dimensions,
)

ONE = FockVector(2, 0, {(0, 0): 1})
Z1 = FockVector(2, 1, {(1, 0): 1})


def balanced_extremal() -> Polynomial:
    return Polynomial.monomial((1, 1), math.sqrt(2))


def closed_form_sup_corpus() -> list:
    """Polynomials on the sphere of C^2 with known sup norms."""
    corpus = []
    for alpha in enum_multiindices_up_to(2, 4):
        total = sum(alpha)
        sup = math.prod((a / total) ** (a / 2) for a in alpha) if total else 1.0
        corpus.append((Polynomial.monomial(alpha), sup))
    half_plus = parse_polynomial("(1 + z1)/2", d=2)
    corpus += [(half_plus ** n, 1.0) for n in range(1, 5)]
    corpus += [(circle_peak(n), 1.0) for n in range(1, 5)]
    return corpus


class TestEvaluation:

    def test_vector_pair(self):
        assert eval_functional(VectorPair(ONE, Z1), Polynomial.coordinate(2, 1)) == 1

    def test_pairing_with_constants(self):
        p = parse_polynomial("3 + z1 - z1*z2^2", d=2)
        assert VectorPair(ONE, FockVector.from_polynomial(Polynomial.constant(2), 3)).evaluate(p) == 3

    def test_point_mass(self):
        phi = AtomicMeasure([(1, (1, 0))])
        for n in range(1, 6):
            assert phi.evaluate(Polynomial.monomial((n, 0))) == 1

    def test_atoms_on_sphere(self):
        with pytest.raises(ValueError):
            AtomicMeasure([(1, (1, 1))])
        with pytest.raises(ValueError):
            AtomicMeasure([])

    def test_truncated_vector_overflow(self):
        phi = VectorPair(ONE, kernel_vector((Fraction(1, 2), 0), 2))
        with pytest.raises(TruncationOverflowError):
            phi.evaluate(Polynomial.monomial((3, 0)))

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            VectorPair(ONE, Z1).evaluate(Polynomial.coordinate(3, 1))

    def test_dict_round_trip(self):
        atomic = AtomicMeasure([(1j, (0, 1)), (Fraction(1, 2), (1, 0))])
        pair = VectorPair(ONE, kernel_vector((Fraction(1, 3), 0), 5))
        p = parse_polynomial("1 + z1 + z2^2", d=2)
        for phi in (atomic, pair):
            assert complex(functional_from_dict(phi.to_dict()).evaluate(p)) == pytest.approx(complex(phi.evaluate(p)))

    def test_unknown_kind(self):
        with pytest.raises(PolynomialParseError):
            functional_from_dict({"kind": "henkin"})


class TestNormBounds:

    def test_point_mass(self):
        lower, upper = functional_norm_bounds(AtomicMeasure([(1, (1, 0))]))
        assert lower == pytest.approx(1.0)
        assert upper == pytest.approx(1.0)

    def test_balanced_vector_pair(self):
        eta = FockVector(2, 2, {(1, 1): math.sqrt(2)})
        lower, upper = functional_norm_bounds(VectorPair(ONE, eta))
        assert upper == pytest.approx(1.0)
        assert lower == pytest.approx(1.0)

    def test_peak_separates_other_functionals(self):
        g = peak_polynomial(PeakSpec.point([1, 0], series_length=20))
        others = [AtomicMeasure([(1, (0, 1))]), VectorPair(ONE, ONE), VectorPair(ONE, Z1)]
        table = peak_separation(g, others)
        assert list(table["kind"]) == ["atomic", "vector", "vector"]
        assert (table["value"] < 1).all()

    def test_atomic_below_weighted_sup(self):
        rng = np.random.default_rng(29)
        corpus = closed_form_sup_corpus()
        for _ in range(5):
            atoms = []
            for _ in range(3):
                z = rng.normal(size=2) + 1j * rng.normal(size=2)
                atoms.append((complex(rng.normal(), rng.normal()), tuple(complex(x) for x in z / np.linalg.norm(z))))
            phi = AtomicMeasure(atoms)
            for p, sup in corpus:
                assert abs(complex(phi.evaluate(p))) <= phi.upper_bound() * sup + 1e-9

    def test_extra_candidate_bound_is_sound(self, caplog):
        phi = AtomicMeasure([(1, (1, 0))])
        with caplog.at_level(logging.WARNING):
            lower, upper = functional_norm_bounds(phi, extra_candidates=[parse_polynomial("1 + z1", d=2)])
        assert lower == pytest.approx(1.0)
        assert upper == pytest.approx(1.0)
        assert not [record for record in caplog.records if "above upper bound" in record.getMessage()]

    def test_lower_bound_never_above_upper(self, caplog):
        rng = np.random.default_rng(31)
        with caplog.at_level(logging.WARNING):
            for _ in range(5):
                xi = FockVector.from_polynomial(random_rational_polynomial(rng, 2, 1), 1)
                eta = FockVector.from_polynomial(random_rational_polynomial(rng, 2, 4), 4)
                lower, upper = functional_norm_bounds(VectorPair(xi, eta), max_degree=3)
                assert lower <= upper
        assert not [record for record in caplog.records if "above upper bound" in record.getMessage()]

    def test_zero_functional(self):
        assert functional_norm_bounds(VectorPair(ONE, FockVector(2, 0))) == (0.0, 0.0)

    def test_values_below_bound(self):
        rng = np.random.default_rng(11)
        for _ in range(5):
            xi = FockVector.from_polynomial(random_rational_polynomial(rng, 2, 2), 2)
            eta = FockVector.from_polynomial(random_rational_polynomial(rng, 2, 5), 5)
            phi = VectorPair(xi, eta)
            _, upper = functional_norm_bounds(phi, max_degree=2)
            p = random_rational_polynomial(rng, 2, 3)
            bound = upper * truncated_multiplier_norm(p, xi.degree_bound, method="dense")
            assert abs(complex(phi.evaluate(p))) <= bound + 1e-6


class TestWitnesses:

    def test_point_mass_at_e1(self):
        table = singular_witness(AtomicMeasure([(1, (1, 0))]), 20)
        assert len(table) == 20
        np.testing.assert_allclose(table["mult_norm"], 1.0, atol=1e-6)
        np.testing.assert_allclose(table["value"], 1.0)

    def test_swapped_atom(self):
        table = singular_witness(AtomicMeasure([(1j, (0, 1))]), 5)
        np.testing.assert_allclose(table["value"], 1.0, atol=1e-12)
        assert rotated_powers((0, 1), 2)[1].coefficient((0, 2)) == pytest.approx(1)

    def test_diagonal_atom(self):
        s = math.sqrt(0.5)
        table = singular_witness(AtomicMeasure([(1, (s, s))]), 4)
        np.testing.assert_allclose(table["mult_norm"], 1.0, atol=1e-6)
        np.testing.assert_allclose(table["value"], 1.0, atol=1e-9)

    def test_multi_atom_rejected(self):
        with pytest.raises(ValueError):
            singular_witness(AtomicMeasure([(1, (1, 0)), (1, (0, 1))]), 3)

    def test_evaluation_at_origin_decays(self):
        report = henkin_decay(VectorPair(ONE, ONE), 6)
        assert (report.table["value"] == 0).all()
        assert report.tail_max == 0

    def test_pairing_with_z1(self):
        table = henkin_decay(VectorPair(ONE, Z1), 6).table
        assert table["value"].iloc[0] == 1
        assert (table["value"].iloc[1:] == 0).all()

    def test_kernel_pair_ratio(self):
        phi = kernel_pair_functional((Fraction(1, 2), 0), 4, 12)
        table = henkin_decay(phi, 12).table
        np.testing.assert_allclose(table["ratio"].iloc[1:], 0.5, atol=1e-9)
        assert np.isnan(table["ratio"].iloc[0])

    def test_atomic_has_no_decay_table(self):
        with pytest.raises(ValueError):
            henkin_decay(AtomicMeasure([(1, (1, 0))]), 3)


class TestExtremal:

    def test_balanced_monomial(self):
        result = extremal_subspace(balanced_extremal(), 12)
        assert result.top_eigenvalue == pytest.approx(1.0, abs=1e-9)
        assert result.dimension == 1
        assert result.status == OK
        assert result.gap >= 1 / 3 - 1e-6
        xi = result.eigenvectors[0]
        assert complex(xi.coefficient((0, 0))) == pytest.approx(1.0, abs=1e-8)

    @pytest.mark.parametrize("f", [balanced_extremal(), rotation_pullback(householder_unitary([0.6, 0.8j]), balanced_extremal())])
    def test_stable_in_truncation(self, f):
        coarse = extremal_subspace(f, 8)
        fine = extremal_subspace(f, 12)
        assert abs(coarse.top_eigenvalue - fine.top_eigenvalue) < 1e-8
        assert coarse.dimension == fine.dimension

    def test_rotation_invariance(self):
        U = householder_unitary([0.6, 0.8j])
        result = extremal_subspace(rotation_pullback(U, balanced_extremal()), 8)
        assert result.top_eigenvalue == pytest.approx(1.0, abs=1e-9)
        assert result.dimension == 1

    def test_coordinate_is_degenerate(self):
        result = extremal_subspace(Polynomial.coordinate(2, 1), 6)
        assert result.status == DEGENERATE
        assert result.top_eigenvalue == pytest.approx(1.0)

    def test_unnormalized_rejected(self):
        with pytest.raises(ValueError):
            extremal_subspace(Polynomial.monomial((1, 0), 2), 4)

    def test_exposed_functional(self):
        f = balanced_extremal()
        xi = extremal_subspace(f, 12).eigenvectors[0]
        phi = exposed_functional(f, xi)
        assert complex(phi.evaluate(f)) == pytest.approx(1.0, abs=1e-8)
        assert complex(phi.evaluate(Polynomial.constant(2))) == pytest.approx(0, abs=1e-12)
        assert complex(phi.evaluate(Polynomial.monomial((2, 0)))) == pytest.approx(0, abs=1e-12)

    def test_exposed_functional_is_unique(self):
        f = balanced_extremal()
        reference = VectorPair(FockVector(2, 0, {(0, 0): 1}), FockVector.from_polynomial(f))
        battery = [Polynomial.monomial(alpha) for alpha in enum_multiindices_up_to(2, 4)]
        battery += [f, parse_polynomial("1 + z1 - 3*z1*z2^2 + (0,1)*z2^3", d=2)]
        for truncation in (8, 12):
            result = extremal_subspace(f, truncation)
            for theta in (0.0, 1.0, 2.5):
                phase = cmath.exp(1j * theta)
                top = result.eigenvectors[0]
                xi = FockVector(2, truncation, {alpha: phase * complex(c) for alpha, c in top.items()})
                psi = exposed_functional(f, xi)
                assert norm(psi.eta) == pytest.approx(1.0, abs=1e-8)
                assert complex(psi.evaluate(f)).real >= 1 - 1e-6
                for p in battery:
                    assert abs(complex(psi.evaluate(p)) - complex(reference.evaluate(p))) < 1e-3

    def test_exposed_needs_unit_vector(self):
        with pytest.raises(ValueError):
            exposed_functional(balanced_extremal(), FockVector(2, 0, {(0, 0): 2}))

    def test_dimension_search(self):
        table = explore_extremal_dimensions(n_trials=3, truncation=4)
        assert len(table) == 3
        assert (table["top_eigenvalue"] - 1).abs().max() < 1e-8
        assert (table["dimension"] >= 1).all()
