import numpy as np
import pytest
from sympy import Rational
from kam_atlas.errors import LogRingOverflowError
from kam_atlas.logring.element import LogElement


class TestLogElement:
    def test_arithmetic(self):
        a = LogElement.monomial(1, 1)
        b = LogElement.monomial(2) + 3

        assert (a + b).terms == {(1, 1): 1, (2, 0): 1, (0, 0): 3}
        assert (a - a).is_zero
        assert (a * b).terms == {(3, 1): 1, (1, 1): 3}
        assert (2 * a).coefficient(1, 1) == 2
        assert (a * Rational(1, 2)).coefficient(1, 1) == Rational(1, 2)

    def test_derivative(self):
        assert LogElement.monomial(1, 1).derivative().to_text() == "log(z) + 1"
        assert LogElement.constant(5).derivative().is_zero

    def test_euler(self):
        assert LogElement.monomial(2, 1).euler().to_text() == "2*z^2*log(z) + z^2"
        assert LogElement.monomial(0, 3).euler().to_text() == "3*log(z)^2"

    def test_order(self):
        element = LogElement.monomial(-1, 2) + 3

        assert element.order == (-1, 2)
        assert element.u(2) == {0: 1}
        assert element.u(0) == {1: 3}
        assert not element.vanishes_at_zero

    def test_text(self):
        element = LogElement({(1, 0): Rational(-1, 2), (0, 2): 1, (3, 1): -4})

        assert element.to_text() == "log(z)^2 - 1/2*z - 4*z^3*log(z)"
        assert LogElement().to_text() == "0"
        assert str(LogElement.constant(-2)) == "-2"

    def test_evaluate(self):
        element = LogElement.monomial(1, 1)

        assert element.evaluate(np.e) == pytest.approx(np.e)
        assert np.allclose(element.evaluate([1.0, 2.0]), [0.0, 2 * np.log(2)])

    def test_caps(self):
        with pytest.raises(LogRingOverflowError):
            LogElement.monomial(65)
        with pytest.raises(LogRingOverflowError):
            LogElement.monomial(0, 33)
        with pytest.raises(LogRingOverflowError):
            LogElement.monomial(40) * LogElement.monomial(40)
        with pytest.raises(ValueError):
            LogElement.monomial(0, -1)
