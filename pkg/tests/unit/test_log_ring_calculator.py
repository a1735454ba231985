import json
import pytest
from griptape.artifacts import ErrorArtifact
from kam_atlas.tools import LogRingCalculator


class TestLogRingCalculator:
    @pytest.fixture
    def tool(self):
        return LogRingCalculator()

    def test_expand_operator(self, tool):
        assert tool.expand_operator({"values": {"n": 2}}).value == (
            "z^6*D^7 + 18*z^5*D^6 + 98*z^4*D^5 + 184*z^3*D^4 + 100*z^2*D^3 + 8*z*D^2"
        )

    def test_leading_constant(self, tool):
        result = json.loads(tool.leading_constant({"values": {"m": 2, "k": 6}}).value)

        assert result["constant"] == "92160"
        assert result["matches"] is True

    def test_differentiate(self, tool):
        terms = [{"p": 1, "j": 1, "c": "1"}]

        assert tool.differentiate({"values": {"terms": terms}}).value == "log(z) + 1"
        assert tool.differentiate({"values": {"terms": terms, "operator": "euler", "times": 2}}).value == "z*log(z) + 2*z"
        assert tool.differentiate({"values": {"terms": [{"p": 2, "j": 0, "c": "3/2"}]}}).value == "3*z"

    def test_errors(self, tool):
        assert isinstance(tool.expand_operator({"values": {"n": 1}}), ErrorArtifact)
        assert isinstance(tool.differentiate({"values": {"terms": [], "operator": "integral"}}), ErrorArtifact)
