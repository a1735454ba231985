import numpy as np
import pytest
import sympy
from kam_atlas.actions.quadrature import ActionIntegrator
from kam_atlas.errors import NotAMinimumError
from kam_atlas.twist.birkhoff import birkhoff_delta, birkhoff_delta_symbolic
from tests.mocks.mock_potentials import pendulum_series, portrait_of, softened_series, stiffened_series


class TestBirkhoff:
    def test_pendulum(self):
        coefficients = birkhoff_delta(pendulum_series(), np.pi)

        assert coefficients.delta == pytest.approx(-3.0)
        assert coefficients.omega0 == pytest.approx(np.sqrt(2))
        assert coefficients.c == pytest.approx(-0.25)

    def test_softened(self):
        coefficients = birkhoff_delta(softened_series(), np.pi)

        assert coefficients.d2 == pytest.approx(1.5)
        assert coefficients.d3 == pytest.approx(0.0, abs=1e-12)
        assert coefficients.d4 == pytest.approx(-3.0)
        assert coefficients.delta == pytest.approx(-13.5)
        assert coefficients.c == pytest.approx(-0.5)

    def test_stiffened(self):
        coefficients = birkhoff_delta(stiffened_series(), np.pi)

        assert coefficients.delta == pytest.approx(1.5)
        assert coefficients.c == pytest.approx(0.5)

    def test_symbolic(self):
        q = sympy.Symbol("q", real=True)
        softened = birkhoff_delta_symbolic(sympy.cos(q) - sympy.cos(2 * q) / 8, q, sympy.pi)
        stiffened = birkhoff_delta_symbolic(sympy.cos(q) + sympy.cos(2 * q) / 8, q, sympy.pi)

        assert softened.delta == sympy.Rational(-27, 2)
        assert stiffened.delta == sympy.Rational(3, 2)
        assert softened.to_dict()["delta"] == "-27/2"
        assert stiffened.to_dict()["float"]["c"] == pytest.approx(0.5)

    def test_not_a_minimum(self):
        with pytest.raises(NotAMinimumError):
            birkhoff_delta(pendulum_series(), 0.0)
        with pytest.raises(NotAMinimumError):
            birkhoff_delta(pendulum_series(), 1.0)

        q = sympy.Symbol("q", real=True)

        with pytest.raises(NotAMinimumError):
            birkhoff_delta_symbolic(sympy.cos(q), q, 0)

    @pytest.mark.parametrize("series,coefficient", [(pendulum_series(), -0.25), (softened_series(), -0.5), (stiffened_series(), 0.5)])
    def test_matches_twist_at_bottom(self, series, coefficient):
        region = portrait_of(series).region(1)
        integrator = ActionIntegrator(region)
        energy = region.energy_minus + 1e-3 * integrator.scale

        assert integrator.twist(energy) == pytest.approx(coefficient, abs=1e-2)

    def test_stiffened_twist_changes_sign(self):
        region = portrait_of(stiffened_series()).region(1)
        integrator = ActionIntegrator(region)
        energies = np.linspace(region.energy_minus, region.energy_plus, 42)[1:-1]
        twists = np.array([integrator.twist(e) for e in energies])

        assert twists[0] > 0
        assert twists[-1] < 0
        assert np.count_nonzero(np.diff(np.sign(twists))) >= 1
