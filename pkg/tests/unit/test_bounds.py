import pytest
from attr import evolve
from kam_atlas.errors import DomainError
from kam_atlas.portrait.bounds import order_preserved, phase_bounds
from kam_atlas.portrait.standard_form import StandardForm1D
from kam_atlas.fourier.series import OneDSeries
from tests.mocks.mock_potentials import figure_series, pendulum_series


class TestPhaseBounds:
    @pytest.fixture
    def form(self):
        return StandardForm1D.from_reference(pendulum_series())

    def test_pendulum(self, form):
        report = phase_bounds(form)

        assert report.holds
        assert report.max_level_momentum < report.outer_half_width

    def test_figure(self):
        assert phase_bounds(StandardForm1D.from_reference(figure_series())).holds

    def test_mu_too_large(self, form):
        with pytest.raises(DomainError):
            phase_bounds(evolve(form, mu=0.5))

    def test_order_preserved(self, form):
        perturbed = evolve(form, perturbation=OneDSeries.trigonometric(cos={2: 1e-7}), mu=1e-6)

        assert order_preserved(perturbed)

    def test_order_requires_small_mu(self, form):
        with pytest.raises(DomainError):
            order_preserved(evolve(form, mu=1e-3))
