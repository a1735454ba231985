from __future__ import annotations
import json
from pathlib import Path
from schema import Schema, Optional, And, Or, SchemaError
from kam_atlas.errors import ConfigError
from kam_atlas.fourier.potential import FourierPotential, prototype

POTENTIAL_SCHEMA = Schema({
    "n": And(int, lambda n: n >= 2),
    "s": And(Or(int, float), lambda s: s > 0),
    Optional("modes", default=[]): [
        {
            "k": [int],
            "re": Or(int, float),
            Optional("im", default=0.0): Or(int, float)
        }
    ],
    Optional("generator", default=None): Or(None, {
        "rule": "prototype",
        Optional("cap", default=32): And(int, lambda c: c >= 1)
    })
})


def potential_from_dict(document: dict) -> FourierPotential:
    try:
        data = POTENTIAL_SCHEMA.validate(document)
    except SchemaError as e:
        raise ConfigError(f"invalid potential document: {e}") from e

    if data["generator"] is not None:
        return prototype(data["n"], float(data["s"]), data["generator"]["cap"])

    modes = {tuple(m["k"]): complex(m["re"], m["im"]) for m in data["modes"]}

    return FourierPotential(n=data["n"], s=float(data["s"]), modes=modes)


def potential_to_dict(f: FourierPotential) -> dict:
    if f.generator is not None:
        return {"n": f.n, "s": f.s, "generator": dict(f.generator)}

    return {
        "n": f.n,
        "s": f.s,
        "modes": [{"k": list(k), "re": c.real, "im": c.imag} for k, c in sorted(f.modes.items())]
    }


def load_potential(path: str | Path) -> FourierPotential:
    path = Path(path)

    if not path.exists():
        raise ConfigError(f"potential file not found: {path}")

    try:
        return potential_from_dict(json.loads(path.read_text()))
    except json.JSONDecodeError as e:
        raise ConfigError(f"potential file {path} is not valid JSON: {e}") from e


def save_potential(f: FourierPotential, path: str | Path) -> None:
    Path(path).write_text(json.dumps(potential_to_dict(f), indent=2, sort_keys=True))
