import json
import pytest
from griptape.artifacts import ErrorArtifact
from kam_atlas.tools import TwistAnalyzer

WELL = {"cos": {"1": 1.0}, "region": 1}


class TestTwistAnalyzer:
    @pytest.fixture
    def tool(self):
        return TwistAnalyzer()

    def test_normalized_twist(self, tool):
        twist = json.loads(tool.normalized_twist({"values": {**WELL, "samples": 9}}).value)

        assert len(twist["samples"]) == 9
        assert twist["max"] <= -1 / 27

    def test_sublevel_bound(self, tool):
        result = tool.sublevel_bound({"values": {"xi": 2.0, "m": 2, "M": 2.0, "length": 2.0, "eta": 1e-2}})

        assert json.loads(result.value) == pytest.approx(8 / 2 ** 0.5 * 3 * 0.1)

    def test_birkhoff_delta(self, tool):
        result = tool.birkhoff_delta({"values": {"expression": "cos(q) - cos(2*q)/8", "minimum": "pi"}})
        coefficients = json.loads(result.value)

        assert coefficients["delta"] == "-27/2"
        assert coefficients["float"]["c"] == pytest.approx(-0.5)

    def test_pd_det_bound(self, tool):
        result = tool.pd_det_bound({"values": {"P": [[1.0, 0.0], [0.0, 1.0]], "Q": [[0.25, 0.0], [0.0, 0.25]]}})

        assert json.loads(result.value)["bound"] == pytest.approx(0.5625)

    def test_errors(self, tool):
        assert isinstance(tool.normalized_twist({"values": {**WELL, "region": 0}}), ErrorArtifact)
        assert isinstance(tool.birkhoff_delta({"values": {"expression": "cos(q)", "minimum": "0"}}), ErrorArtifact)
        assert isinstance(tool.pd_det_bound({"values": {"P": [[1.0]], "Q": [[2.0]]}}), ErrorArtifact)
