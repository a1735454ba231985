import numpy as np
import pytest
from kam_atlas.errors import CertificateNotFoundError, DomainError
from kam_atlas.twist.certificate import certify_nondegeneracy, derivative_bounds
from kam_atlas.twist.normalized import NormalizedTwist, clustered_grid


def sampled(function, samples: int = 41) -> NormalizedTwist:
    x = clustered_grid(0.02, 0.98, samples)

    return NormalizedTwist(x=x, values=function(x))


class TestCertificate:
    def test_first_order(self):
        cert = certify_nondegeneracy(sampled(lambda x: x ** 2 - 0.25), m_max=2)

        assert cert.m == 1
        assert cert.xi == pytest.approx(2 * clustered_grid(0.02, 0.98, 41)[0], rel=1e-3)
        assert cert.holds

    def test_second_order(self):
        cert = certify_nondegeneracy(sampled(lambda x: (x - 0.5) ** 2), m_max=3)

        assert cert.m == 2
        assert cert.xi == pytest.approx(2.0, rel=1e-3)
        assert cert.to_dict()["grid"]["points"] == 401

    def test_constant(self):
        with pytest.raises(CertificateNotFoundError):
            certify_nondegeneracy(sampled(lambda x: np.full_like(x, -0.5)), m_max=2)

    def test_order_range(self):
        with pytest.raises(DomainError):
            certify_nondegeneracy(sampled(lambda x: x), m_max=5)

    def test_interval(self):
        twist = sampled(lambda x: (x - 0.5) ** 2)
        cert = certify_nondegeneracy(twist, m_max=2, interval=(0.6, 0.9))

        assert cert.m == 1
        assert cert.xi == pytest.approx(0.2, rel=1e-3)

        with pytest.raises(DomainError):
            certify_nondegeneracy(twist, m_max=2, interval=(0.0, 0.5))

    def test_too_few_samples(self):
        twist = sampled(lambda x: x, samples=9)

        with pytest.raises(DomainError):
            derivative_bounds(twist, 1, np.linspace(0.1, 0.9, 5))
