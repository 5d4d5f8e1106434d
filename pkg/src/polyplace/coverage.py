"""Exact union measure and full-coverage queries for closed rectangles.

Two coordinate kinds share one sweep: real rectangles (`AxisRect`, rational
Lebesgue area) and rank-space rectangles (`RankRect`, counting unit cells of
the integer grid, where the closed rect [a,b]x[c,d] covers the cells
a..b x c..d). The dispatching wrappers sniff the rectangle kind.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .forbidden import RankRect
from .geometry import AxisRect, Point


def _merge_length(intervals: list[tuple]):
    """Total length of a union of intervals given as half-open (lo, hi)."""
    if not intervals:
        return 0
    intervals.sort()
    total = 0
    cur_lo, cur_hi = intervals[0]
    for lo, hi in intervals[1:]:
        if lo > cur_hi:
            total += cur_hi - cur_lo
            cur_lo, cur_hi = lo, hi
        elif hi > cur_hi:
            cur_hi = hi
    return total + (cur_hi - cur_lo)


def _sweep_area(rects: list[tuple], box: tuple):
    """Union measure inside the box; rects and box are half-open (x0,x1,y0,y1)."""
    bx0, bx1, by0, by1 = box
    if bx0 >= bx1 or by0 >= by1:
        return 0
    clipped = []
    for x0, x1, y0, y1 in rects:
        x0, x1 = max(x0, bx0), min(x1, bx1)
        y0, y1 = max(y0, by0), min(y1, by1)
        if x0 < x1 and y0 < y1:
            clipped.append((x0, x1, y0, y1))
    xs = sorted({bx0, bx1} | {r[0] for r in clipped} | {r[1] for r in clipped})
    total = 0
    for k in range(len(xs) - 1):
        lo, hi = xs[k], xs[k + 1]
        ys = [(y0, y1) for x0, x1, y0, y1 in clipped if x0 <= lo and x1 >= hi]
        total += (hi - lo) * _merge_length(ys)
    return total


def _uncovered_point_1d(intervals: list[tuple], lo, hi):
    """A point of the closed segment [lo, hi] missed by closed intervals.

    Returns an endpoint or a gap midpoint, or None when fully covered.
    Handles degenerate single-point gaps between touching-but-separated
    intervals exactly.
    """
    blocks = sorted(iv for iv in intervals if iv[1] >= lo and iv[0] <= hi)
    merged: list[list] = []
    for a, b in blocks:
        if merged and a <= merged[-1][1]:
            if b > merged[-1][1]:
                merged[-1][1] = b
        else:
            merged.append([a, b])
    if not merged or merged[0][0] > lo:
        return lo
    cursor = merged[0][1]
    for a, b in merged[1:]:
        if a > cursor:
            return (cursor + a) / 2
        cursor = max(cursor, b)
    if cursor < hi:
        return hi
    return None


def _first_uncovered_cell_1d(intervals: list[tuple], lo: int, hi: int):
    """Smallest integer of [lo, hi) missed by half-open integer intervals."""
    cursor = lo
    for a, b in sorted(intervals):
        if a > cursor:
            return cursor
        if b > cursor:
            cursor = b
        if cursor >= hi:
            return None
    return cursor if cursor < hi else None


def union_area(rects: Sequence, box):
    """Exact measure of (union of rects) intersected with the box.

    Real rectangles yield rational Lebesgue area; rank rectangles yield the
    number of covered integer cells of the box grid (a closed rank rect
    [a,b]x[c,d] covers cells a..b x c..d).
    """
    if isinstance(box, AxisRect):
        halfopen = [(r.x0, r.x1, r.y0, r.y1) for r in rects]
        return Fraction(_sweep_area(halfopen, (box.x0, box.x1, box.y0, box.y1)))
    nx, ny = box
    halfopen = [(r.x_lo, r.x_hi + 1, r.y_lo, r.y_hi + 1) for r in rects]
    return _sweep_area(halfopen, (1, nx + 1, 1, ny + 1))


def covers_box(rects: Sequence, box) -> bool:
    """True when the union covers the whole box.

    Real coordinates compare Lebesgue measure, which is exact for closed
    rectangles: the uncovered set is relatively open, so it is empty exactly
    when it has measure zero. Rank space counts grid cells, so zero-width
    rectangles still contribute their degenerate cells.
    """
    if isinstance(box, AxisRect):
        return union_area(rects, box) == box.area
    nx, ny = box
    return union_area(rects, box) == nx * ny


def find_hole(rects: Sequence, box):
    """A witness of non-coverage, or None when the box is fully covered.

    Real coordinates: some uncovered Point (box corners, edge points or strip
    midpoints). Rank space: the lexicographically smallest uncovered cell.
    """
    if isinstance(box, AxisRect):
        return _find_hole_real(rects, box)
    return _find_hole_cells(rects, box)


def _find_hole_real(rects: Sequence[AxisRect], box: AxisRect) -> Point | None:
    if box.x0 == box.x1:
        ys = [(r.y0, r.y1) for r in rects if r.x0 <= box.x0 <= r.x1]
        y = _uncovered_point_1d(ys, box.y0, box.y1)
        return None if y is None else Point(box.x0, Fraction(y))
    if box.y0 == box.y1:
        xs = [(r.x0, r.x1) for r in rects if r.y0 <= box.y0 <= r.y1]
        x = _uncovered_point_1d(xs, box.x0, box.x1)
        return None if x is None else Point(Fraction(x), box.y0)
    # positive area: the uncovered set is open, so probing the open strips
    # between consecutive boundary abscissae sees every hole
    xs = sorted({box.x0, box.x1}
                | {r.x0 for r in rects if box.x0 < r.x0 < box.x1}
                | {r.x1 for r in rects if box.x0 < r.x1 < box.x1})
    for k in range(len(xs) - 1):
        lo, hi = xs[k], xs[k + 1]
        ys = [(r.y0, r.y1) for r in rects if r.x0 <= lo and r.x1 >= hi]
        y = _uncovered_point_1d(ys, box.y0, box.y1)
        if y is not None:
            return Point((lo + hi) / 2, Fraction(y))
    return None


def _find_hole_cells(rects: Sequence[RankRect], box: tuple[int, int]):
    nx, ny = box
    xs = sorted({1, nx + 1}
                | {r.x_lo for r in rects if 1 < r.x_lo <= nx}
                | {r.x_hi + 1 for r in rects if 1 <= r.x_hi < nx})
    for k in range(len(xs) - 1):
        lo, hi = xs[k], xs[k + 1]
        ys = [(r.y_lo, r.y_hi + 1) for r in rects if r.x_lo <= lo and r.x_hi + 1 >= hi]
        cell_y = _first_uncovered_cell_1d(ys, 1, ny + 1)
        if cell_y is not None:
            return (lo, cell_y)
    return None
