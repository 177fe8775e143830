"""Deterministic CSV emission and ingestion for curve and caustic tables.

Values are written with 17 significant digits (enough to round-trip IEEE
doubles exactly) and LF line endings, so identical data always produces
byte-identical files and a read-write cycle is the identity.
"""
from __future__ import annotations

import os
from typing import Iterable, Sequence

import numpy as np

from .errors import ValidationError

__all__ = [
    "CURVE_HEADER",
    "CAUSTIC_HEADER",
    "format_value",
    "write_table",
    "read_table",
    "write_curve_csv",
    "write_caustic_csv",
    "write_coefficient_csv",
]

CURVE_HEADER = ("theta", "x", "y", "R", "s")
CAUSTIC_HEADER = ("theta", "theta1", "x", "y", "R1", "ray_length")


def format_value(value) -> str:
    """One cell: integers verbatim, reals with 17 significant digits."""
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return str(int(value))
    return "%.17g" % float(value)


def write_table(path: str | os.PathLike, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    """Write a CSV table with LF endings and deterministic formatting."""
    lines = [",".join(header)]
    width = len(header)
    for row in rows:
        if len(row) != width:
            raise ValidationError(
                f"row width {len(row)} does not match header width {width}"
            )
        lines.append(",".join(format_value(v) for v in row))
    with open(path, "w", encoding="ascii", newline="") as fh:
        fh.write("\n".join(lines))
        fh.write("\n")


def read_table(path: str | os.PathLike) -> tuple[tuple[str, ...], np.ndarray]:
    """Read a CSV table written by :func:`write_table`.

    Returns the header and the rows as a float array (empty tables give a
    (0, len(header)) array).
    """
    with open(path, "r", encoding="ascii", newline="") as fh:
        text = fh.read()
    lines = [line for line in text.split("\n") if line]
    if not lines:
        raise ValidationError(f"{path}: empty CSV")
    header = tuple(lines[0].split(","))
    rows = np.array(
        [[float(cell) for cell in line.split(",")] for line in lines[1:]], dtype=float
    )
    if rows.size == 0:
        rows = rows.reshape(0, len(header))
    if rows.shape[1] != len(header):
        raise ValidationError(f"{path}: ragged CSV ({rows.shape[1]} columns vs header)")
    return header, rows


def write_curve_csv(path: str | os.PathLike, samples) -> None:
    """Emit reconstructed samples as ``theta,x,y,R,s`` rows."""
    write_table(
        path,
        CURVE_HEADER,
        [(s.theta, s.position.x, s.position.y, s.radius, s.arclength) for s in samples],
    )


def write_caustic_csv(path: str | os.PathLike, samples) -> None:
    """Emit caustic samples as ``theta,theta1,x,y,R1,ray_length`` rows."""
    write_table(
        path,
        CAUSTIC_HEADER,
        [
            (
                s.source_theta,
                s.caustic_theta,
                s.position.x,
                s.position.y,
                s.caustic_radius,
                s.ray_length,
            )
            for s in samples
        ],
    )


def write_coefficient_csv(
    path: str | os.PathLike, pairs: Iterable[tuple[int, float]], value_label: str = "a_n"
) -> None:
    """Emit an indexed coefficient list as ``n,<label>`` rows."""
    write_table(path, ("n", value_label), [(int(n), float(v)) for n, v in pairs])
