"""Deterministic SVG rendering of a target polygon and an optional placement."""

from __future__ import annotations

from fractions import Fraction

from .geometry import OrthoPolygon, Placement, Point, rat_str, transform


def _fmt(value) -> str:
    return f"{float(value):.6g}"


def _path(poly: OrthoPolygon, flip_y) -> str:
    parts = []
    for i, v in enumerate(poly.vertices):
        cmd = "M" if i == 0 else "L"
        parts.append(f"{cmd}{_fmt(v.x)},{_fmt(flip_y(v.y))}")
    return " ".join(parts) + " Z"


def render(target: OrthoPolygon, placed: OrthoPolygon | None = None,
           label: str | None = None) -> str:
    """Axis-true SVG: the target filled, the placed pattern overlaid.

    Pure string construction from exact inputs, so output is byte-identical
    across runs for the same arguments.
    """
    boxes = [target.bounding_box()] + ([placed.bounding_box()] if placed else [])
    x0 = min(b.x0 for b in boxes)
    x1 = max(b.x1 for b in boxes)
    y0 = min(b.y0 for b in boxes)
    y1 = max(b.y1 for b in boxes)
    margin = max(x1 - x0, y1 - y0, Fraction(1)) / 20

    def flip_y(y):
        return y0 + y1 - y  # mirror so larger y renders upward

    vx, vy = x0 - margin, y0 - margin
    vw, vh = (x1 - x0) + 2 * margin, (y1 - y0) + 2 * margin
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{_fmt(vx)} {_fmt(vy)} '
        f'{_fmt(vw)} {_fmt(vh)}" width="640" height="640" '
        'preserveAspectRatio="xMidYMid meet">',
        f'<path d="{_path(target, flip_y)}" fill="#c8e6c9" stroke="#1b5e20" '
        f'stroke-width="{_fmt(vw / 400)}"/>',
    ]
    if placed is not None:
        lines.append(
            f'<path d="{_path(placed, flip_y)}" fill="#bbdefb" fill-opacity="0.8" '
            f'stroke="#0d47a1" stroke-width="{_fmt(vw / 400)}"/>')
    if label:
        lines.append(
            f'<text x="{_fmt(vx + vw / 50)}" y="{_fmt(vy + vh - vh / 50)}" '
            f'font-family="monospace" font-size="{_fmt(vh / 30)}" '
            f'fill="#212121">{label}</text>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def render_placement(pattern: OrthoPolygon, target: OrthoPolygon,
                     lam, tau: Point) -> str:
    """Render the target with the scaled, translated pattern inside it.

    ``tau`` is the translation between the centered frames; the pattern is
    placed accordingly relative to the original target.
    """
    tc = target.bounding_box().center
    pc = pattern.bounding_box().center
    absolute = Point(tau.x + tc.x - pc.x, tau.y + tc.y - pc.y)
    placed = transform(pattern, Placement(Fraction(lam), absolute))
    return render(target, placed, label=f"scale = {rat_str(Fraction(lam))}")
