import json
import numpy as np
from pathlib import Path
from kam_atlas.report.export import csv_text, json_text, provenance, write_bytes, write_csv, write_json


class TestExport:
    def test_json_text(self):
        text = json_text({"b": np.float64(0.5), "a": [np.int64(1), np.bool_(True)], "path": Path("out/x.json")})

        assert json.loads(text) == {"a": [1, True], "b": 0.5, "path": "out/x.json"}
        assert text.index('"a"') < text.index('"b"')

    def test_csv_text(self):
        text = csv_text([{"x": 0.1, "label": "NON_RESONANT"}, {"x": 1e-300, "extra": 3}])

        assert text.splitlines() == ["x,label,extra", "0.1,NON_RESONANT,", "1e-300,,3"]

    def test_csv_columns(self):
        assert csv_text([{"a": 1, "b": 2}], columns=["b", "a"]).splitlines()[1] == "2,1"

    def test_writers(self, tmp_path):
        assert write_json(tmp_path / "nested" / "a.json", {"x": 1}).read_text() == '{\n  "x": 1\n}\n'
        assert write_csv(tmp_path / "b.csv", [{"x": 1}]).read_text() == "x\n1\n"
        assert write_bytes(tmp_path / "c.svg", b"<svg/>").read_bytes() == b"<svg/>"

    def test_provenance(self):
        assert provenance(np.float64(2.0), "twist_1d", 1e-6) == {"value": 2.0, "operation": "twist_1d", "tolerance": 1e-6}
