import json
import pytest
from griptape.artifacts import ErrorArtifact
from kam_atlas.tools import StudyRunner
from tests.mocks.mock_configs import pendulum_document


class TestStudyRunner:
    def test_kam_threshold(self):
        result = StudyRunner().kam_threshold({"values": {"M": 2.0, "d": 0.5, "r": 1.0, "s_bar": 1.0, "n": 2}})

        assert json.loads(result.value)["threshold"] == pytest.approx(2.0 ** -23)

    def test_run_study(self, tmp_path):
        (tmp_path / "study.json").write_text(
            json.dumps(pendulum_document(sections={s: False for s in ("genericity", "portraits", "actions", "fits", "twist", "scaling")}))
        )
        result = StudyRunner(dir=str(tmp_path)).run_study({"values": {"config": "study.json", "out": "run", "seed": 1}})
        summary = json.loads(result.value)

        assert summary["seed"] == 1
        assert summary["passed"] is True
        assert (tmp_path / "run" / "summary.json").exists()

    def test_errors(self, tmp_path):
        assert isinstance(StudyRunner(dir=str(tmp_path)).run_study({"values": {"config": "absent.json"}}), ErrorArtifact)
        assert isinstance(StudyRunner().kam_threshold({"values": {"M": 1.0, "d": 2.0, "r": 1.0, "s_bar": 1.0, "n": 2}}), ErrorArtifact)
