import pytest
from kam_atlas.portrait.regions import RegionKind, critical_order
from tests.mocks.mock_potentials import figure_series, pendulum_series, portrait_of


class TestRegions:
    def test_pendulum(self):
        portrait = portrait_of(pendulum_series())

        assert [r.kind for r in portrait.regions] == [RegionKind.OUTER_LOWER, RegionKind.INNER_ODD, RegionKind.OUTER_UPPER]
        assert portrait.region(1).energy_minus == pytest.approx(-1.0)
        assert portrait.region(1).energy_plus == pytest.approx(1.0)
        assert portrait.region(0).energy_plus == portrait.energy_flat
        assert portrait.region(1).contains(0.0)

    def test_figure_regions(self):
        portrait = portrait_of(figure_series())
        values = portrait.profile.closed_values

        assert portrait.profile.count == 10
        assert len(portrait.regions) == 11
        assert len(portrait.inner_regions) == 9

        for region in portrait.inner_regions:
            assert region.energy_minus < region.energy_plus

            if region.kind == RegionKind.INNER_ODD:
                assert region.energy_plus == min(values[region.index - 1], values[region.index + 1])
            else:
                dominating = [values[2 * region.j_minus], values[2 * region.j_plus]]

                assert all(v > region.energy_minus for v in dominating)
                assert region.energy_plus == min(dominating)

    def test_turning_point_brackets(self):
        portrait = portrait_of(figure_series())
        g = figure_series()

        for region in portrait.inner_regions:
            energy = (region.energy_minus + region.energy_plus) / 2

            for low, high in (region.left_bracket, region.right_bracket):
                assert (g(low) - energy) * (g(high) - energy) < 0

    def test_critical_order(self):
        order = critical_order(portrait_of(pendulum_series()))

        assert order == (1, 0)

    def test_to_dict(self):
        data = portrait_of(pendulum_series()).to_dict()

        assert len(data["regions"]) == 3
        assert data["regions"][1]["kind"] == "inner_odd"
