import math

import numpy as np
import pytest

from cylcauchy.errors import SpectrumFormatError
from cylcauchy.io import (
    atomic_write_text,
    dump_coefficients,
    dump_grid_csv,
    dump_json,
    load_coefficients,
    load_grid_csv,
    write_coefficients,
)


class TestCoefficientFiles:
    def test_roundtrip_exact(self, tmp_path):
        values = {(1, 1): 0.1, (2, 3): -math.pi, (10, 1): 1e-300}
        p = tmp_path / "c.txt"
        write_coefficients(p, values)
        assert load_coefficients(p) == values

    def test_comments_and_blanks(self, tmp_path):
        p = tmp_path / "c.txt"
        p.write_text("# header\n\n1,1,2.5\n  # indented comment\n2,1,-1\n\n")
        assert load_coefficients(p) == {(1, 1): 2.5, (2, 1): -1.0}

    def test_duplicate_key_rejected(self, tmp_path):
        p = tmp_path / "c.txt"
        p.write_text("1,1,2.0\n1,1,3.0\n")
        with pytest.raises(SpectrumFormatError, match=r":2:"):
            load_coefficients(p)

    def test_malformed_line_reported_with_number(self, tmp_path):
        p = tmp_path / "c.txt"
        p.write_text("1,1,1.0\n2,oops\n")
        with pytest.raises(SpectrumFormatError, match=r":2:"):
            load_coefficients(p)

    def test_non_finite_rejected(self, tmp_path):
        p = tmp_path / "c.txt"
        p.write_text("1,1,nan\n")
        with pytest.raises(SpectrumFormatError):
            load_coefficients(p)

    def test_indices_start_at_one(self, tmp_path):
        p = tmp_path / "c.txt"
        p.write_text("0,1,1.0\n")
        with pytest.raises(SpectrumFormatError):
            load_coefficients(p)

    def test_dump_is_sorted_and_full_precision(self):
        text = dump_coefficients({(2, 1): 0.1, (1, 2): 1 / 3})
        lines = [ln for ln in text.splitlines() if not ln.startswith("#")]
        assert lines[0].startswith("1,2,")
        assert "0.33333333333333331" in lines[0]
        assert "0.10000000000000001" in lines[1]


class TestGridCsv:
    def test_roundtrip_exact(self, tmp_path):
        rng = np.random.default_rng(0)
        grid = rng.standard_normal((5, 7))
        p = tmp_path / "g.csv"
        atomic_write_text(p, dump_grid_csv(grid, comment="demo run"))
        np.testing.assert_array_equal(load_grid_csv(p), grid)

    def test_coordinates_are_uniform(self):
        grid = np.zeros((3, 5))
        data = [
            ln
            for ln in dump_grid_csv(grid).splitlines()
            if ln and not ln.startswith("#") and ln[0].isdigit()
        ]
        xs = sorted({float(ln.split(",")[0]) for ln in data})
        ts = sorted({float(ln.split(",")[1]) for ln in data})
        np.testing.assert_allclose(xs, np.linspace(0.0, math.pi, 3), rtol=0, atol=0)
        np.testing.assert_allclose(ts, np.linspace(0.0, 1.0, 5), rtol=0, atol=0)

    def test_layout_is_x_major(self):
        grid = np.arange(6.0).reshape(2, 3)
        lines = dump_grid_csv(grid).splitlines()
        data = [ln for ln in lines if ln and not ln.startswith("#") and ln[0].isdigit()]
        # first three rows share x=0 and walk t
        vals = [float(ln.split(",")[2]) for ln in data[:3]]
        assert vals == [0.0, 1.0, 2.0]

    def test_missing_dims_comment(self, tmp_path):
        p = tmp_path / "g.csv"
        p.write_text("x,t,value\n0,0,1.0\n")
        with pytest.raises(SpectrumFormatError):
            load_grid_csv(p)

    def test_wrong_row_count(self, tmp_path):
        p = tmp_path / "g.csv"
        text = dump_grid_csv(np.ones((3, 3)))
        truncated = "\n".join(text.splitlines()[:-2]) + "\n"
        p.write_text(truncated)
        with pytest.raises(SpectrumFormatError):
            load_grid_csv(p)

    def test_bad_header(self, tmp_path):
        p = tmp_path / "g.csv"
        p.write_text("# nx=2,nt=2\na,b,c\n0,0,1\n0,1,1\n1,0,1\n1,1,1\n")
        with pytest.raises(SpectrumFormatError):
            load_grid_csv(p)


class TestAtomicWrite:
    def test_creates_and_replaces(self, tmp_path):
        p = tmp_path / "out.txt"
        atomic_write_text(p, "first\n")
        atomic_write_text(p, "second\n")
        assert p.read_text() == "second\n"
        # no stray temp files left behind
        assert [q.name for q in tmp_path.iterdir()] == ["out.txt"]

    def test_missing_parent_raises(self, tmp_path):
        with pytest.raises(OSError):
            atomic_write_text(tmp_path / "no" / "dir" / "f.txt", "x")


class TestJson:
    def test_deterministic_and_newline_terminated(self):
        a = dump_json({"b": 1, "a": [1.5, 2]})
        b = dump_json({"b": 1, "a": [1.5, 2]})
        assert a == b
        assert a.endswith("\n")
        assert '"a"' in a
