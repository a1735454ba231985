import numpy as np
import pytest
from kam_atlas.errors import CoveringHypothesisError, DomainError
from kam_atlas.resonance.covering import CoveringParams, ZoneTag, classify, classify_many
from kam_atlas.resonance.generators import Generator


class TestCovering:
    @pytest.fixture
    def params(self):
        return CoveringParams(n=2, epsilon=1e-6, K0=4, K=24, alpha_exponent=0)

    def test_alpha(self, params):
        assert params.alpha == pytest.approx(1e-3)
        assert params.gamma == 4

    def test_default_exponent(self):
        params = CoveringParams(n=2, epsilon=1e-6, K0=4, K=24)

        assert params.nu == 11
        assert params.alpha == pytest.approx(1e-3 * 24 ** 11)

        with pytest.raises(CoveringHypothesisError):
            params.require_small_alpha()

    def test_cutoff_ratio(self):
        with pytest.raises(DomainError):
            CoveringParams(n=2, epsilon=1e-6, K0=4, K=20)

    def test_non_resonant(self, params):
        label = classify((0.6, 0.35), params)

        assert label.tag == ZoneTag.NON_RESONANT
        assert label.nonresonant_margin > 0

    def test_simple_resonance(self, params):
        label = classify((0.5, 0.5), params)

        assert label.tag == ZoneTag.SIMPLY_RESONANT
        assert label.generator == Generator((1, -1))
        assert label.transverse_margin > 0

    def test_double_resonance(self, params):
        assert classify((0.0, 0.0), params).tag == ZoneTag.DOUBLY_RESONANT

    def test_outside_ball(self, params):
        with pytest.raises(DomainError):
            classify((0.8, 0.8), params)

    def test_vectorized_agrees(self, params):
        points = np.random.default_rng(3).uniform(-0.7, 0.7, size=(400, 2))
        points[:50, 1] = points[:50, 0]
        tags, witness = classify_many(points, params)

        for point, tag, index in zip(points, tags, witness):
            label = classify(point, params)

            assert label.tag.value == tag
            if label.generator is not None:
                assert params.low_generators[index] == label.generator

    def test_row(self, params):
        row = classify((0.5, 0.5), params).to_row((0.5, 0.5))

        assert row["label"] == "SIMPLY_RESONANT"
        assert row["k"] == "(1,-1)"
