import numpy as np
import pytest
from kam_atlas.errors import DomainError, NotMorseError
from kam_atlas.fourier.morse import morse_analyze
from kam_atlas.fourier.series import OneDSeries
from tests.mocks.mock_potentials import figure_series, pendulum_series, softened_series, stiffened_series


class TestMorseAnalyze:
    def test_pendulum(self):
        profile = morse_analyze(pendulum_series())

        assert profile.count == 2
        assert profile.points[1] - profile.points[0] == pytest.approx(np.pi)
        assert profile.values == pytest.approx((1.0, -1.0))
        assert profile.beta == pytest.approx(1.0, rel=1e-6)
        assert profile.sup_abs == pytest.approx(1.0)

    def test_maxima_at_even_indices(self):
        profile = morse_analyze(figure_series())
        g = figure_series()

        assert profile.count == 10
        assert all(g.derivative(t, 2) < 0 for t in profile.points[::2])
        assert all(g.derivative(t, 2) > 0 for t in profile.points[1::2])
        assert profile.values[0] == max(profile.values)

    def test_closed_points(self):
        profile = morse_analyze(pendulum_series())

        assert profile.closed_points[-1] == pytest.approx(profile.points[0] + 2 * np.pi)
        assert profile.closed_values[-1] == profile.values[0]

    def test_degenerate(self):
        with pytest.raises(NotMorseError):
            morse_analyze(OneDSeries.trigonometric(cos={1: 1.0, 2: 0.25}))

    def test_empty(self):
        with pytest.raises(DomainError):
            morse_analyze(OneDSeries({}))

    @pytest.mark.parametrize("factor", [0.25, 4.0])
    def test_scaling(self, factor):
        profile = morse_analyze(figure_series())
        scaled = morse_analyze(figure_series().scaled(factor))

        assert scaled.count == profile.count
        assert scaled.points == pytest.approx(profile.points, abs=1e-10)
        assert scaled.values == pytest.approx(tuple(factor * v for v in profile.values), rel=1e-10)
        assert scaled.beta == pytest.approx(factor * profile.beta, rel=1e-6)

    @pytest.mark.parametrize(
        "shift, cos, sin",
        [(0.7, {2: 0.06}, {}), (2.0, {}, {3: 0.02}), (-1.1, {2: 0.03}, {3: 0.01})]
    )
    def test_cosine_like(self, shift, cos, sin):
        # C² size of the perturbation: Σ |a_j| (1 + j + j²)
        c = sum(abs(a) * (1 + j + j * j) for j, a in {**cos, **sin}.items())
        base = OneDSeries.trigonometric(cos={1: np.cos(shift)}, sin={1: -np.sin(shift)})
        profile = morse_analyze(base.added(OneDSeries.trigonometric(cos=cos, sin=sin)))

        assert c < 0.5
        assert profile.count == 2
        assert profile.beta >= 1 - 2 * c

    @pytest.mark.parametrize("series", [pendulum_series(), figure_series(), softened_series(), stiffened_series()])
    def test_count_bound(self, series):
        profile = morse_analyze(series)

        assert profile.count <= np.pi * np.sqrt(2 * profile.max_second_derivative / profile.beta)
        assert profile.count_bound_holds
        assert profile.to_dict()["count_bound_holds"] is True
        assert profile.to_dict()["count"] == profile.count
