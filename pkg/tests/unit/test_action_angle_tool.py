import json
import numpy as np
import pytest
from griptape.artifacts import ErrorArtifact
from kam_atlas.tools import ActionAngleTool

WELL = {"cos": {"1": 1.0}, "region": 1}


class TestActionAngleTool:
    @pytest.fixture
    def tool(self):
        return ActionAngleTool()

    def test_compute_action(self, tool):
        rows = json.loads(tool.compute_action({"values": {**WELL, "energies": [0.5, -0.5]}}).value)

        assert [row["energy"] for row in rows] == [-0.5, 0.5]
        assert rows[0]["action"] < rows[1]["action"]
        assert "twist" not in rows[0]

    def test_energy_from_action(self, tool):
        assert json.loads(tool.energy_from_action({"values": {**WELL, "action": 0.0}}).value) == pytest.approx(-1.0)

    def test_fit_separatrix(self, tool):
        fit = json.loads(tool.fit_separatrix({"values": {**WELL, "side": "upper"}}).value)

        assert fit["psi0"] == pytest.approx(np.sqrt(2) / (2 * np.pi), rel=1e-3)

    def test_compute_twist(self, tool):
        assert json.loads(tool.compute_twist({"values": {"cos": {"1": 1.0}, "region": 2, "energy": 5.0}}).value) >= 2

    def test_errors(self, tool):
        assert isinstance(tool.compute_twist({"values": {**WELL, "energy": 3.0}}), ErrorArtifact)
        assert isinstance(tool.fit_separatrix({"values": {**WELL, "side": "middle"}}), ErrorArtifact)
        assert isinstance(tool.compute_action({"values": {**WELL, "region": 7, "energies": [0.0]}}), ErrorArtifact)
