import numpy as np
import pytest
from kam_atlas.errors import DomainError
from kam_atlas.resonance.covering import CoveringParams
from kam_atlas.resonance.generators import Generator
from kam_atlas.resonance.zones import c1_constant, c2_constant, transverse_form, zone_params
from tests.mocks.mock_potentials import two_mode_potential


class TestZones:
    @pytest.fixture
    def params(self):
        return CoveringParams(n=2, epsilon=1e-6, K0=4, K=24, alpha_exponent=0)

    def test_constants(self):
        assert c1_constant(2) == pytest.approx(10.0)
        assert c2_constant(2) == pytest.approx(80 * np.sqrt(2))

    def test_zone_params(self, params):
        zone = zone_params(Generator((1, 1)), params, two_mode_potential(), beta=0.1)

        assert zone.low_mode
        assert zone.R == pytest.approx(params.alpha / 2)
        assert zone.r == pytest.approx(zone.R / c2_constant(2))
        assert zone.epsilon_k == pytest.approx(1e-6)
        assert zone.beta_bar == pytest.approx(1e-7)
        assert zone.mu == pytest.approx(24.0 ** -10)

    def test_zone_params_rejects_high_mode(self, params):
        with pytest.raises(DomainError):
            zone_params(Generator((3, 2)), params, two_mode_potential(), beta=0.1)

    def test_transverse_form_axis(self):
        form = transverse_form(Generator((1, 0)))

        assert form.hessian.tolist() == [[2.0]]
        assert form.d_k == 1.0
        assert all(form.checks.values())

    def test_transverse_form_diagonal(self):
        form = transverse_form((1, 1))

        assert form.hessian == pytest.approx(np.array([[0.5]]))
        assert form.determinant >= form.d_k

    def test_transverse_form_three(self):
        form = transverse_form((1, 2, 3))

        assert form.hessian.shape == (2, 2)
        assert form.positive_definite
        assert form.checks["determinant_bound"]
