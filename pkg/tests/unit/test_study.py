import json
from unittest.mock import patch
import pytest
from kam_atlas.errors import DomainError
from kam_atlas.report.study import (
    SECTION_RUNNERS, SectionStatus, StudyContext, generator_label, logring_payload, run_study
)
from kam_atlas.report.config import config_from_dict
from kam_atlas.resonance.generators import Generator
from tests.mocks.mock_configs import pendulum_config


def failing_runner(context, directory):
    raise DomainError("broken section")


def spline_runner(context, directory):
    raise ValueError("x must be increasing")


class TestStudy:
    def test_generator_label(self):
        assert generator_label(Generator((1, -2))) == "k1_m2"

    def test_single_line_context(self, tmp_path):
        context = StudyContext(pendulum_config(tmp_path))

        assert context.line == Generator((1, 0))
        assert context.generators == [Generator((1, 0))]
        assert context.portrait(Generator((1, 0))) is context.portrait(Generator((1, 0)))

    def test_generator_selection(self):
        config = config_from_dict({"potential": {"n": 2, "s": 1.0, "generator": {"rule": "prototype", "cap": 8}}, "beta": 0.01})
        context = StudyContext(config)

        assert context.line is None
        assert context.generators == [Generator((0, 1)), Generator((1, 0)), Generator((1, -1)), Generator((1, 1))]

    def test_pendulum_study(self, tmp_path):
        report = run_study(pendulum_config(tmp_path), only=["covering", "portraits", "actions", "budget", "logring", "kam"])

        assert [s.name for s in report.sections] == ["covering", "portraits", "actions", "budget", "logring", "kam"]
        assert report.section("covering").status == SectionStatus.SKIPPED
        assert report.passed
        assert report.exit_code == 0

        for name in ("portrait_k1_0.json", "portrait_k1_0.svg", "actions_k1_0.csv", "budget.csv", "logring.json", "kam.json"):
            assert (tmp_path / name).exists()

        portrait = json.loads((tmp_path / "portrait_k1_0.json").read_text())

        assert portrait["morse"]["count_bound_holds"] is True

        summary = json.loads((tmp_path / "summary.json").read_text())

        assert summary["schema_version"] == "1"
        assert summary["sections"]["kam"]["summary"]["threshold"]["value"] == pytest.approx(2.0 ** -23)

    def test_twist_section(self, tmp_path):
        report = run_study(pendulum_config(tmp_path), only=["twist"])
        details = json.loads((tmp_path / "twist_k1_0.json").read_text())
        outer = [r for r in details["regions"] if "jensen" in r]

        assert len(outer) == 2
        assert all(r["jensen"]["holds"] for r in outer)
        assert details["birkhoff"][0]["delta"] == pytest.approx(-3.0)
        assert (tmp_path / "twist_field_k1_0_r1.csv").exists()
        assert report.section("twist").status in (SectionStatus.PASSED, SectionStatus.FAILED)

    def test_fits_section(self, tmp_path):
        run_study(pendulum_config(tmp_path), only=["fits"])
        fits = json.loads((tmp_path / "fits.json").read_text())
        upper = next(f for f in fits if f["region"] == 1 and f["side"] == "upper")

        assert len(fits) == 4
        assert upper["psi0"] > 0
        assert upper["sign_condition_holds"]

    def test_failing_section_does_not_stop_study(self, tmp_path):
        with patch.dict(SECTION_RUNNERS, {"budget": failing_runner}):
            report = run_study(pendulum_config(tmp_path), only=["budget", "kam"])

        assert report.section("budget").status == SectionStatus.FAILED
        assert report.section("budget").message == "broken section"
        assert report.section("kam").status == SectionStatus.PASSED
        assert report.exit_code == 1

    def test_library_error_does_not_stop_study(self, tmp_path):
        with patch.dict(SECTION_RUNNERS, {"logring": spline_runner}):
            report = run_study(pendulum_config(tmp_path), only=["logring", "budget", "kam"])

        assert [s.name for s in report.sections] == ["budget", "logring", "kam"]
        assert report.section("logring").status == SectionStatus.FAILED
        assert report.section("logring").message == "x must be increasing"
        assert report.section("budget").status == SectionStatus.PASSED
        assert report.section("kam").status == SectionStatus.PASSED
        assert json.loads((tmp_path / "summary.json").read_text())["sections"]["kam"]["status"] == "passed"

    def test_disabled_sections(self, tmp_path):
        report = run_study(pendulum_config(tmp_path), only=["genericity", "kam"])

        assert [s.name for s in report.sections] == ["kam"]

    def test_logring_payload(self):
        passed, payload = logring_payload(pendulum_config(".").logring)

        assert passed
        assert payload["operators"][0]["order"] == 7
        assert len(payload["leading_constants"]) == 4 * 10
