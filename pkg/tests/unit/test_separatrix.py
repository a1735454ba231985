import numpy as np
import pytest
from kam_atlas.actions.quadrature import ActionIntegrator
from kam_atlas.actions.separatrix import log_divergence_slope, regularized_weight, separatrix_fit
from kam_atlas.errors import DomainError, IllConditionedFitError
from kam_atlas.portrait.regions import RegionKind
from tests.mocks.mock_potentials import pendulum_series, portrait_of


class TestSeparatrixFit:
    @pytest.fixture
    def portrait(self):
        return portrait_of(pendulum_series())

    def test_upper_side(self, portrait):
        fit = separatrix_fit(portrait.region(1), "upper", zmin=1e-3, zmax=0.1, degree=3)

        assert fit.residual <= 1e-6
        assert fit.psi0 > 0
        assert fit.psi0 == pytest.approx(np.sqrt(2) / (2 * np.pi), rel=1e-3)
        assert fit.phi0 == pytest.approx(4 * np.sqrt(2) / np.pi, abs=1e-6)
        assert fit.sign_condition_holds
        assert fit.b_bar < 0

    def test_minimum_side(self, portrait):
        fit = separatrix_fit(portrait.region(1), "lower")

        assert fit.at_minimum
        assert abs(fit.phi0) <= 1e-8
        assert fit.psi_contribution <= 1e-8
        assert fit.phi[1] == pytest.approx(1 / np.sqrt(2), rel=1e-6)
        assert fit.sign_condition_holds

    def test_outer_lower_side(self, portrait):
        fit = separatrix_fit(portrait.region(0), "lower")

        assert fit.kind == RegionKind.OUTER_LOWER
        assert fit.psi0 < 0
        assert fit.sign_condition_holds

    def test_restricted_log_part(self, portrait):
        fit = separatrix_fit(portrait.region(1), "upper", degree=3, log_degree=2)

        assert len(fit.phi) == 4
        assert len(fit.psi) == 3
        assert fit.psi0 == pytest.approx(np.sqrt(2) / (2 * np.pi), rel=1e-2)
        assert fit.sign_condition_holds

    def test_log_degree_range(self, portrait):
        with pytest.raises(DomainError):
            separatrix_fit(portrait.region(1), "upper", degree=3, log_degree=4)

    def test_outer_upper_side(self, portrait):
        with pytest.raises(DomainError):
            separatrix_fit(portrait.region(2), "upper")

    def test_unknown_side(self, portrait):
        with pytest.raises(DomainError):
            separatrix_fit(portrait.region(1), "middle")

    def test_ill_conditioned(self, portrait):
        with pytest.raises(IllConditionedFitError):
            separatrix_fit(portrait.region(1), "upper", zmin=1e-3, zmax=1.001e-3)

    def test_too_few_samples(self, portrait):
        with pytest.raises(DomainError):
            separatrix_fit(portrait.region(1), "upper", samples=10)

    def test_evaluates_expansion(self, portrait):
        fit = separatrix_fit(portrait.region(1), "upper")
        integrator = ActionIntegrator(portrait.region(1))

        assert fit(0.05) == pytest.approx(integrator.action(0.95), abs=1e-6)
        assert fit.to_dict()["samples"] == 48

    def test_regularized_weight(self, portrait):
        fit = separatrix_fit(portrait.region(1), "upper")

        assert abs(regularized_weight(fit, 1e-8)) < 1e-5
        assert regularized_weight(fit, 1e-2) > 0

    def test_log_divergence(self, portrait):
        slope = log_divergence_slope(portrait.region(1), "upper", np.geomspace(1e-8, 1e-5, 6))

        assert slope == pytest.approx(-np.sqrt(2) / (2 * np.pi), rel=0.05)
