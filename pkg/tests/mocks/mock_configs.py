from pathlib import Path
from kam_atlas.report.config import StudyConfig, config_from_dict

PENDULUM_POTENTIAL = {
    "n": 2,
    "s": 1.0,
    "modes": [{"k": [1, 0], "re": 0.5}, {"k": [-1, 0], "re": 0.5}]
}


def pendulum_document(**overrides) -> dict:
    document = {
        "name": "pendulum",
        "potential": PENDULUM_POTENTIAL,
        "beta": 0.5,
        "sections": {"genericity": False, "scaling": False},
        "quadrature": {"profile_samples": 12},
        "twist": {"samples": 21}
    }
    document.update(overrides)

    return document


def pendulum_config(output: Path, **overrides) -> StudyConfig:
    return config_from_dict(pendulum_document(output=str(output), **overrides))
