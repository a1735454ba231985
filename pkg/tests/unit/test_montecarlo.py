import numpy as np
import pytest
from kam_atlas.errors import CoveringHypothesisError, DomainError
from kam_atlas.measure.montecarlo import MeasureMethod, grid_measure, mc_measure, zone_census, zone_measure
from kam_atlas.resonance.covering import CoveringParams, ZoneTag


def disk(points: np.ndarray) -> np.ndarray:
    return np.sum(points ** 2, axis=1) < 1


class TestMonteCarlo:
    @pytest.fixture
    def params(self):
        return CoveringParams(n=2, epsilon=1e-4, K0=2, K=12, alpha_exponent=0)

    def test_disk(self):
        estimate = mc_measure(disk, [(-1, 1), (-1, 1)], samples=200000, seed=11)

        assert estimate.method == MeasureMethod.MONTE_CARLO
        assert estimate.volume == 4.0
        assert abs(estimate.value - np.pi) < 5 * estimate.stderr
        assert estimate.interval()[0] < np.pi < estimate.interval()[1]

    def test_grid_disk(self):
        estimate = grid_measure(disk, [(-1, 1), (-1, 1)], points_per_axis=400)

        assert estimate.value == pytest.approx(np.pi, abs=1e-2)
        assert estimate.stderr == 0.0
        assert estimate.samples == 160000

    def test_workers_do_not_change_estimate(self):
        serial = mc_measure(disk, [(-1, 1), (-1, 1)], samples=10500, seed=5, chunk=1000)
        parallel = mc_measure(disk, [(-1, 1), (-1, 1)], samples=10500, seed=5, workers=4, chunk=1000)

        assert serial == parallel

    def test_seed_changes_estimate(self):
        first = mc_measure(disk, [(-1, 1), (-1, 1)], samples=10000, seed=1)
        second = mc_measure(disk, [(-1, 1), (-1, 1)], samples=10000, seed=2)

        assert first.hits != second.hits

    def test_arguments(self):
        with pytest.raises(DomainError):
            mc_measure(disk, [(-1, 1), (-1, 1)], samples=10, seed=0)
        with pytest.raises(DomainError):
            mc_measure(disk, [(1, -1), (-1, 1)], samples=10000, seed=0)

    def test_census_covers_ball(self, params):
        census = zone_census(params, samples=20000, seed=3)
        total = sum(estimate.value for estimate in census.values())

        assert set(census) == set(ZoneTag)
        assert abs(total - np.pi) < 5 * 4 * np.sqrt(np.pi / 4 * (1 - np.pi / 4) / 20000)
        assert census[ZoneTag.NON_RESONANT].hits > census[ZoneTag.DOUBLY_RESONANT].hits

    def test_census_matches_zone_measure(self, params):
        census = zone_census(params, samples=20000, seed=3)

        for tag in ZoneTag:
            assert census[tag].hits == zone_measure(params, tag, samples=20000, seed=3).hits

    def test_zone_measure_radius(self, params):
        with pytest.raises(DomainError):
            zone_measure(params, samples=20000, radius=0.0)

    def test_large_alpha(self):
        params = CoveringParams(n=2, epsilon=1e-6, K0=4, K=24)

        with pytest.raises(CoveringHypothesisError):
            zone_census(params, samples=20000)
