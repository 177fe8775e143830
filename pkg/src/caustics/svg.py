"""Deterministic SVG line art for mirrors, caustics and ray diagrams.

Scenes are stroke-only, drawn y-up at uniform scale, and always emit
their groups in the fixed order mirror, caustic, rays, cusps, cuspline
so that regenerated files diff cleanly.
"""
from __future__ import annotations

import os
from typing import Sequence

import numpy as np

from .errors import ValidationError

__all__ = ["GROUP_ORDER", "write_scene"]

GROUP_ORDER = ("mirror", "caustic", "rays", "cusps", "cuspline")

_STYLE = {
    "mirror": 'stroke="#1f77b4" stroke-width="{w}" fill="none"',
    "caustic": 'stroke="#d62728" stroke-width="{w}" fill="none"',
    "rays": 'stroke="#b0b0b0" stroke-width="{thin}" fill="none"',
    "cusps": 'stroke="#000000" stroke-width="{thin}" fill="none"',
    "cuspline": 'stroke="#2ca02c" stroke-width="{thin}" stroke-dasharray="{dash}" fill="none"',
}


def _as_polylines(data) -> list[np.ndarray]:
    if data is None:
        return []
    if isinstance(data, np.ndarray) and data.ndim == 2:
        data = [data]
    out = []
    for poly in data:
        arr = np.asarray(poly, dtype=float)
        if arr.ndim != 2 or arr.shape[1] != 2:
            raise ValidationError("every polyline must be an (n, 2) array")
        out.append(arr)
    return out


def _fmt(x: float) -> str:
    return format(x, ".3f")


def _path_data(poly: np.ndarray, transform) -> str:
    parts = []
    pen_down = False
    for point in poly:
        if not np.all(np.isfinite(point)):
            pen_down = False
            continue
        px, py = transform(point)
        parts.append(f"{'L' if pen_down else 'M'}{_fmt(px)} {_fmt(py)}")
        pen_down = True
    return "".join(parts)


def write_scene(
    path: str | os.PathLike,
    mirror: Sequence | None = None,
    caustic: Sequence | None = None,
    rays: Sequence | None = None,
    cusps: Sequence | None = None,
    cuspline: Sequence | None = None,
    size: float = 640.0,
    margin_fraction: float = 0.05,
) -> None:
    """Write one scene; every argument is a list of (n, 2) polylines.

    ``cusps`` instead takes an (n, 2) array of points, drawn as small
    circles.  NaN rows inside polylines lift the pen.  The viewport is
    fitted to the finite data with a uniform scale and the y axis
    pointing up.
    """
    groups = {
        "mirror": _as_polylines(mirror),
        "caustic": _as_polylines(caustic),
        "rays": _as_polylines(rays),
        "cusps": [np.asarray(cusps, dtype=float).reshape(-1, 2)] if cusps is not None and len(cusps) else [],
        "cuspline": _as_polylines(cuspline),
    }
    stacks = [arr for polys in groups.values() for arr in polys]
    if not stacks:
        raise ValidationError("nothing to draw")
    allpts = np.concatenate(stacks, axis=0)
    finite = allpts[np.all(np.isfinite(allpts), axis=1)]
    if len(finite) == 0:
        raise ValidationError("no finite points to draw")
    lo = finite.min(axis=0)
    hi = finite.max(axis=0)
    span = float(max(hi[0] - lo[0], hi[1] - lo[1], 1e-9))
    margin = margin_fraction * span
    scale = size / (span + 2 * margin)
    width = (hi[0] - lo[0] + 2 * margin) * scale
    height = (hi[1] - lo[1] + 2 * margin) * scale

    def transform(p):
        return (
            (p[0] - lo[0] + margin) * scale,
            (hi[1] - p[1] + margin) * scale,
        )

    stroke = max(1.0, size / 640.0)
    style_args = {
        "w": _fmt(1.5 * stroke),
        "thin": _fmt(0.75 * stroke),
        "dash": f"{_fmt(6 * stroke)} {_fmt(4 * stroke)}",
    }
    dot_radius = 0.006 * size

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {_fmt(width)} {_fmt(height)}" '
        f'width="{_fmt(width)}" height="{_fmt(height)}">',
    ]
    for name in GROUP_ORDER:
        polys = groups[name]
        if not polys:
            continue
        style = _STYLE[name].format(**style_args)
        lines.append(f'<g id="{name}" {style}>')
        if name == "cusps":
            for pts in polys:
                for point in pts:
                    if not np.all(np.isfinite(point)):
                        continue
                    cx, cy = transform(point)
                    lines.append(
                        f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="{_fmt(dot_radius)}"/>'
                    )
        else:
            for poly in polys:
                d = _path_data(poly, transform)
                if d:
                    lines.append(f'<path d="{d}"/>')
        lines.append("</g>")
    lines.append("</svg>")
    with open(path, "w", encoding="ascii", newline="") as fh:
        fh.write("\n".join(lines))
        fh.write("\n")
