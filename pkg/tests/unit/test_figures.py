from kam_atlas.figures import portrait_figure, svg_bytes
from tests.mocks.mock_potentials import figure_series, portrait_of


class TestFigures:
    def test_portrait_svg(self):
        data = svg_bytes(portrait_figure(portrait_of(figure_series())))

        assert b"<svg" in data

    def test_deterministic(self):
        portrait = portrait_of(figure_series())

        assert svg_bytes(portrait_figure(portrait)) == svg_bytes(portrait_figure(portrait))
