import numpy as np
import pytest
from attr import evolve
from kam_atlas.errors import DomainError
from kam_atlas.portrait.standard_form import StandardForm1D, validate
from tests.mocks.mock_potentials import figure_series, pendulum_series


class TestStandardForm:
    @pytest.fixture
    def form(self):
        return StandardForm1D.from_reference(pendulum_series())

    def test_from_reference(self, form):
        assert form.epsilon_bar == pytest.approx(1.0)
        assert form.r == pytest.approx(256.0)
        assert form.R == pytest.approx(512.0)
        assert form.kappa == 4.0
        assert form.energy_flat == pytest.approx(512.0 ** 2 + 512.0 * 256.0)

    def test_validate(self, form):
        report = validate(form)

        assert report.passed
        assert report.violations == []

    def test_validate_figure(self):
        assert validate(StandardForm1D.from_reference(figure_series())).passed

    def test_small_r(self, form):
        report = validate(evolve(form, r=1.0))

        assert not report.passed
        assert report.clause("epsilon_bar_vs_r").margin < 0

    def test_perturbation_size(self, form):
        perturbed = evolve(form, perturbation=pendulum_series(1e-3), mu=1e-4)

        assert not validate(perturbed).clause("perturbation_size").holds

    def test_hamiltonian(self, form):
        assert form.hamiltonian(2.0, np.pi) == pytest.approx(3.0)

    def test_rejects_radius(self, form):
        with pytest.raises(DomainError):
            evolve(form, R=0.0)
