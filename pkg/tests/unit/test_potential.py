import numpy as np
import pytest
from kam_atlas.errors import DomainError
from kam_atlas.fourier.potential import (
    FourierPotential, check_genericity, cutoff_N, project, prototype, single_line
)
from kam_atlas.resonance.generators import Generator, enumerate_generators
from tests.mocks.mock_potentials import pendulum_potential, two_mode_potential


class TestFourierPotential:
    def test_evaluate(self):
        f = pendulum_potential()

        assert f.evaluate(np.array([0.0, 0.3])) == pytest.approx(1.0)
        assert f.evaluate(np.array([[np.pi, 0.0], [np.pi / 2, 1.0]])) == pytest.approx([-1.0, 0.0])

    def test_reality_enforced(self):
        with pytest.raises(DomainError):
            FourierPotential(n=2, s=1.0, modes={(1, 0): 1.0})

    def test_dimension(self):
        with pytest.raises(DomainError):
            FourierPotential.from_half_modes(1, 1.0, {(1,): 0.5})

    def test_project(self):
        series = project(two_mode_potential(), Generator((1, 0)))

        assert series.coefficients == {1: 0.5, -1: 0.5}
        assert project(pendulum_potential(), (0, 1)).is_empty

    @pytest.mark.parametrize("f, K", [(two_mode_potential(), 2), (prototype(2, 1.0, cap=6), 6), (prototype(3, 1.5, cap=4), 4)])
    def test_projections_partition(self, f, K):
        x = np.random.default_rng(11).uniform(0, 2 * np.pi, size=(20, f.n))
        total = np.zeros(len(x))

        for k in enumerate_generators(f.n, K):
            total += project(f, k)(x @ np.array(k.components, dtype=float))

        assert total == pytest.approx(f.evaluate(x), abs=1e-12)

    def test_single_line(self):
        assert single_line(pendulum_potential()) == Generator((1, 0))
        assert single_line(two_mode_potential()) is None

    def test_prototype(self):
        f = prototype(2, 1.0, cap=4)

        assert f.mode((1, 0)) == pytest.approx(np.exp(-1))
        assert f.mode((-1, 1)) == pytest.approx(np.exp(-2))
        assert f.mode((2, 2)) == 0
        assert f.generator == {"rule": "prototype", "cap": 4}

    def test_cutoff_rejects_delta(self):
        with pytest.raises(DomainError):
            cutoff_N(2.0, 1.0, 2)


class TestCheckGenericity:
    def test_passes(self):
        report = check_genericity(two_mode_potential(), 1.0, 0.1, 2)

        assert report.passed
        assert len(report.entries) == 4
        assert all(e.clause == "morse" for e in report.entries)
        assert all(e.count_bound_holds for e in report.entries)
        assert all(entry["count_bound_holds"] is True for entry in report.to_dict()["entries"])

    def test_weak_projection(self):
        report = check_genericity(two_mode_potential(), 1.0, 0.2, 2)

        assert not report.passed
        assert [e.generator for e in report.entries if not e.holds] == [Generator((1, -1))]

    def test_missing_mode(self):
        report = check_genericity(pendulum_potential(), 1.0, 0.1, 1)

        assert report.first_failure.generator == Generator((0, 1))
        assert report.first_failure.detail == "missing mode"
