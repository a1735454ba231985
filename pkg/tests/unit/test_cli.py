import json
from pathlib import Path
from unittest.mock import patch
import pytest
from kam_atlas.cli import COMMANDS, EXIT_CONFIG, build_parser, main
from kam_atlas.report.study import SectionResult, SectionStatus, StudyReport
from tests.mocks.mock_configs import pendulum_document


def report_with(status: SectionStatus) -> StudyReport:
    return StudyReport(
        name="pendulum", seed=0, output=Path("out"), sections=[SectionResult(name="twist", status=status)]
    )


class TestCli:
    @pytest.fixture
    def config_path(self, tmp_path):
        path = tmp_path / "study.json"
        path.write_text(json.dumps(pendulum_document()))

        return path

    def test_parser(self):
        args = build_parser().parse_args(["--verbose", "twist", "--config", "study.json", "--seed", "3"])

        assert args.verbose
        assert args.command == "twist"
        assert args.seed == 3

    def test_config_is_required(self):
        with pytest.raises(SystemExit):
            build_parser().parse_args(["cover"])

    @patch("kam_atlas.cli.run_study", return_value=report_with(SectionStatus.PASSED))
    def test_command_sections(self, mock_run_study, config_path, tmp_path):
        assert main(["actions", "--config", str(config_path), "--out", str(tmp_path / "run"), "--seed", "5"]) == 0

        config = mock_run_study.call_args.args[0]

        assert mock_run_study.call_args.kwargs["only"] == COMMANDS["actions"]
        assert config.monte_carlo.seed == 5
        assert config.output == tmp_path / "run"

    def test_failed_section(self, mocker, config_path):
        mock_run_study = mocker.patch("kam_atlas.cli.run_study", return_value=report_with(SectionStatus.FAILED))

        assert main(["study", "--config", str(config_path)]) == 1
        assert mock_run_study.call_args.kwargs["only"] is None

    def test_missing_config(self, tmp_path):
        assert main(["cover", "--config", str(tmp_path / "absent.json")]) == EXIT_CONFIG

    def test_invalid_seed(self, config_path):
        assert main(["twist", "--config", str(config_path), "--seed", str(2 ** 64)]) == EXIT_CONFIG

    def test_standalone_logring(self, tmp_path):
        assert main(["logring", "--out", str(tmp_path)]) == 0

        payload = json.loads((tmp_path / "logring.json").read_text())

        assert payload["operators"][0]["text"].startswith("z^6*D^7")

    def test_check_potential(self, config_path, tmp_path):
        document = json.loads(config_path.read_text())
        document["sections"] = {}
        document["potential"] = {"n": 2, "s": 1.0, "generator": {"rule": "prototype", "cap": 8}}
        document["beta"] = 1e-3
        config_path.write_text(json.dumps(document))

        assert main(["check-potential", "--config", str(config_path), "--out", str(tmp_path)]) in (0, 1)
        assert (tmp_path / "genericity.json").exists()
        genericity = json.loads((tmp_path / "genericity.json").read_text())

        assert len(genericity["entries"]) == 12
        assert all("count_bound_holds" in entry for entry in genericity["entries"])
