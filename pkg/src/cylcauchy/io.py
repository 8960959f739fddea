"""File formats: coefficient lists, grid samples, JSON reports.

All writers are atomic (temp file in the destination directory, then
os.replace) and emit every float at full double precision, so identical
inputs produce byte-identical artifacts.
"""

from __future__ import annotations

import json
import math
import os
import tempfile
from pathlib import Path
from typing import Mapping

import numpy as np

from .errors import SpectrumFormatError


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def atomic_write_text(path, text: str) -> None:
    """Write text to path via a same-directory temp file and rename."""
    target = Path(path)
    fd, tmp = tempfile.mkstemp(
        dir=target.parent or Path("."), prefix=target.name + ".", suffix=".tmp"
    )
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load_coefficients(path) -> dict[tuple[int, int], float]:
    """Parse a coefficient file: lines ``k,m,value``, ``#`` comments.

    Raises SpectrumFormatError on malformed lines, non-finite values,
    non-positive indices, or duplicate (k, m) entries.
    """
    out: dict[tuple[int, int], float] = {}
    text = Path(path).read_text(encoding="utf-8")
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = [p.strip() for p in line.split(",")]
        if len(parts) != 3:
            raise SpectrumFormatError(
                f"{path}:{lineno}: expected 'k,m,value', got {raw!r}"
            )
        try:
            k = int(parts[0])
            m = int(parts[1])
            value = float(parts[2])
        except ValueError:
            raise SpectrumFormatError(
                f"{path}:{lineno}: could not parse {raw!r}"
            ) from None
        if k < 1 or m < 1:
            raise SpectrumFormatError(f"{path}:{lineno}: indices must be >= 1")
        if not math.isfinite(value):
            raise SpectrumFormatError(f"{path}:{lineno}: non-finite value")
        if (k, m) in out:
            raise SpectrumFormatError(f"{path}:{lineno}: duplicate entry ({k},{m})")
        out[(k, m)] = value
    return out


def dump_coefficients(values: Mapping[tuple[int, int], float], comment: str = "") -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    for (k, m) in sorted(values):
        lines.append(f"{k},{m},{_fmt(values[(k, m)])}")
    return "\n".join(lines) + "\n"


def write_coefficients(path, values: Mapping[tuple[int, int], float], comment: str = "") -> None:
    atomic_write_text(path, dump_coefficients(values, comment))


def dump_grid_csv(values: np.ndarray, comment: str = "") -> str:
    """Grid samples as CSV: ``# nx=..,nt=..`` header comment, ``x,t,value``
    column header, rows x-major over the uniform [0,pi] x [0,1] grid."""
    samples = np.asarray(values, dtype=float)
    if samples.ndim != 2:
        raise ValueError("grid samples must be a 2-D array")
    nx, nt = samples.shape
    x = np.linspace(0.0, math.pi, nx)
    t = np.linspace(0.0, 1.0, nt)
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"# nx={nx},nt={nt}")
    lines.append("x,t,value")
    for i in range(nx):
        for j in range(nt):
            lines.append(f"{_fmt(x[i])},{_fmt(t[j])},{_fmt(samples[i, j])}")
    return "\n".join(lines) + "\n"


def write_grid_csv(path, values: np.ndarray, comment: str = "") -> None:
    atomic_write_text(path, dump_grid_csv(values, comment))


def load_grid_csv(path) -> np.ndarray:
    """Read a grid-sample CSV back into its (nx, nt) array."""
    nx = nt = None
    rows: list[float] = []
    saw_header = False
    text = Path(path).read_text(encoding="utf-8")
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("nx="):
                try:
                    dims = dict(part.split("=") for part in body.split(","))
                    nx = int(dims["nx"])
                    nt = int(dims["nt"])
                except (ValueError, KeyError):
                    raise SpectrumFormatError(
                        f"{path}:{lineno}: malformed grid-dimension comment {raw!r}"
                    ) from None
            continue
        if not saw_header:
            if line.replace(" ", "") != "x,t,value":
                raise SpectrumFormatError(
                    f"{path}:{lineno}: expected header 'x,t,value', got {raw!r}"
                )
            saw_header = True
            continue
        parts = line.split(",")
        if len(parts) != 3:
            raise SpectrumFormatError(f"{path}:{lineno}: expected 3 columns")
        try:
            rows.append(float(parts[2]))
        except ValueError:
            raise SpectrumFormatError(f"{path}:{lineno}: bad value field") from None
    if nx is None or nt is None:
        raise SpectrumFormatError(f"{path}: missing '# nx=..,nt=..' comment")
    if len(rows) != nx * nt:
        raise SpectrumFormatError(
            f"{path}: expected {nx * nt} data rows for nx={nx}, nt={nt}, got {len(rows)}"
        )
    return np.array(rows).reshape(nx, nt)


def dump_json(obj) -> str:
    """Deterministic JSON text; floats keep full roundtrip precision."""
    return json.dumps(obj, indent=2, allow_nan=True) + "\n"


def write_json(path, obj) -> None:
    atomic_write_text(path, dump_json(obj))
