import json
import pytest
from griptape.artifacts import ErrorArtifact
from kam_atlas.tools import PotentialInspector
from tests.mocks.mock_configs import PENDULUM_POTENTIAL


class TestPotentialInspector:
    @pytest.fixture
    def tool(self):
        return PotentialInspector()

    def test_evaluate_potential(self, tool):
        result = tool.evaluate_potential({"values": {"potential": PENDULUM_POTENTIAL, "points": [[0.0, 0.0], [3.14159265358979, 1.0]]}})

        assert json.loads(result.value) == pytest.approx([1.0, -1.0])

    def test_project_potential(self, tool):
        result = tool.project_potential({"values": {"potential": PENDULUM_POTENTIAL, "k": [1, 0]}})

        assert [c["j"] for c in json.loads(result.value)["coefficients"]] == [-1, 1]

    def test_check_genericity(self, tool):
        result = tool.check_genericity({"values": {"potential": PENDULUM_POTENTIAL, "delta": 1.0, "beta": 0.1, "K": 2}})
        report = json.loads(result.value)

        assert report["passed"] is False
        assert report["first_failure"]["detail"] == "missing mode"

    def test_analyze_morse(self, tool):
        result = tool.analyze_morse({"values": {"potential": PENDULUM_POTENTIAL, "k": [1, 0]}})

        assert len(json.loads(result.value)["points"]) == 2

    def test_errors(self, tool):
        assert isinstance(tool.project_potential({"values": {"potential": PENDULUM_POTENTIAL, "k": [2, 0]}}), ErrorArtifact)
        assert isinstance(tool.evaluate_potential({"values": {"potential": {"n": 1}, "points": []}}), ErrorArtifact)
