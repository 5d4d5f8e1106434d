"""Exact planar primitives for rectilinear geometry.

Every coordinate is an arbitrary-precision rational (``fractions.Fraction``);
nothing here ever rounds, so comparisons of derived quantities (areas,
critical scale factors, sorted coordinate orders) are exact. Polygons are
simple axis-parallel vertex cycles, validated and normalized to
counter-clockwise orientation on construction.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction


class PolygonError(ValueError):
    """Input does not describe a valid simple rectilinear polygon."""


class NonRectilinear(PolygonError):
    """An edge is neither horizontal nor vertical."""


class SelfIntersecting(PolygonError):
    """Two non-adjacent edges touch, or the boundary folds back on itself."""


class DegenerateEdge(PolygonError):
    """Two consecutive vertices coincide."""


class TooFewVertices(PolygonError):
    """Fewer than four distinct corners remain after cleanup."""


class NonPositiveScale(ValueError):
    """Scale factors must be strictly positive."""


def rat(value) -> Fraction:
    """Coerce an int, Fraction, or ``"num/den"`` string to an exact rational.

    Floats are rejected on purpose: they would smuggle rounding into an
    otherwise exact pipeline.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a coordinate")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"expected int, Fraction or 'num/den' string, got {type(value).__name__}")


def rat_str(value: Fraction) -> str:
    """Serialize a rational as ``"num/den"`` (always carries the denominator)."""
    value = rat(value)
    return f"{value.numerator}/{value.denominator}"


def rat_json(value: Fraction):
    """JSON form of a rational: plain int when integral, else ``"num/den"``."""
    value = rat(value)
    if value.denominator == 1:
        return value.numerator
    return rat_str(value)


@dataclass(frozen=True)
class Point:
    x: Rational
    y: Rational

    def __add__(self, other: "Point") -> "Point":
        return Point(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Point") -> "Point":
        return Point(self.x - other.x, self.y - other.y)

    def scaled(self, factor: Rational) -> "Point":
        return Point(self.x * factor, self.y * factor)

    def __iter__(self):
        yield self.x
        yield self.y


ORIGIN = Point(Fraction(0), Fraction(0))


@dataclass(frozen=True)
class AxisRect:
    """Closed axis-aligned rectangle [x0,x1] x [y0,y1]."""

    x0: Rational
    x1: Rational
    y0: Rational
    y1: Rational

    def __post_init__(self):
        if self.x0 > self.x1 or self.y0 > self.y1:
            raise ValueError(f"inverted rectangle {self}")

    @property
    def width(self) -> Rational:
        return self.x1 - self.x0

    @property
    def height(self) -> Rational:
        return self.y1 - self.y0

    @property
    def area(self) -> Rational:
        return self.width * self.height

    @property
    def center(self) -> Point:
        return Point((self.x0 + self.x1) / 2, (self.y0 + self.y1) / 2)

    def translated(self, delta: Point) -> "AxisRect":
        return AxisRect(self.x0 + delta.x, self.x1 + delta.x,
                        self.y0 + delta.y, self.y1 + delta.y)

    def inflated(self, margin: Rational) -> "AxisRect":
        return AxisRect(self.x0 - margin, self.x1 + margin,
                        self.y0 - margin, self.y1 + margin)

    def contains_point(self, p: Point) -> bool:
        return self.x0 <= p.x <= self.x1 and self.y0 <= p.y <= self.y1

    def contains_rect(self, other: "AxisRect") -> bool:
        return (self.x0 <= other.x0 and other.x1 <= self.x1
                and self.y0 <= other.y0 and other.y1 <= self.y1)

    def interior_overlaps(self, other: "AxisRect") -> bool:
        """True when the open interiors intersect (boundary contact is fine)."""
        return (max(self.x0, other.x0) < min(self.x1, other.x1)
                and max(self.y0, other.y0) < min(self.y1, other.y1))


class OrthoPolygon:
    """Simple rectilinear polygon as a counter-clockwise vertex cycle.

    Construct through :func:`validate_polygon`; the raw constructor trusts its
    input and is reserved for internal transforms that preserve validity.
    """

    __slots__ = ("vertices", "merged_vertices", "_bbox", "_area")

    def __init__(self, vertices: Sequence[Point], merged_vertices: int = 0):
        self.vertices: tuple[Point, ...] = tuple(vertices)
        self.merged_vertices = merged_vertices
        self._bbox: AxisRect | None = None
        self._area: Rational | None = None

    def __len__(self) -> int:
        return len(self.vertices)

    def __eq__(self, other) -> bool:
        return isinstance(other, OrthoPolygon) and self.vertices == other.vertices

    def __hash__(self):
        return hash(self.vertices)

    def __repr__(self) -> str:
        return f"OrthoPolygon({len(self.vertices)} vertices, bbox={self.bounding_box()})"

    def bounding_box(self) -> AxisRect:
        if self._bbox is None:
            xs = [v.x for v in self.vertices]
            ys = [v.y for v in self.vertices]
            self._bbox = AxisRect(min(xs), max(xs), min(ys), max(ys))
        return self._bbox

    def area(self) -> Rational:
        if self._area is None:
            total = Fraction(0)
            verts = self.vertices
            for i, a in enumerate(verts):
                b = verts[(i + 1) % len(verts)]
                total += a.x * b.y - b.x * a.y
            self._area = total / 2
        return self._area

    def translated(self, delta: Point) -> "OrthoPolygon":
        return OrthoPolygon([v + delta for v in self.vertices], self.merged_vertices)

    def edges(self):
        verts = self.vertices
        for i, a in enumerate(verts):
            yield a, verts[(i + 1) % len(verts)]


@dataclass(frozen=True)
class Placement:
    """Scale about the pattern's bounding-box center, then translate."""

    scale: Rational
    offset: Point

    def __post_init__(self):
        if self.scale <= 0:
            raise NonPositiveScale(f"scale must be positive, got {self.scale}")


def _as_points(vertices: Iterable) -> list[Point]:
    pts = []
    for v in vertices:
        if isinstance(v, Point):
            pts.append(v)
        else:
            x, y = v
            pts.append(Point(rat(x), rat(y)))
    return pts


def _clean_cycle(pts: list[Point]) -> tuple[list[Point], int]:
    """Strip a duplicated closing vertex, reject bad edges, merge flat vertices."""
    if len(pts) >= 2 and pts[0] == pts[-1]:
        pts = pts[:-1]
    if len(pts) < 3:
        raise TooFewVertices(f"{len(pts)} vertices")
    n = len(pts)
    for i in range(n):
        a, b = pts[i], pts[(i + 1) % n]
        if a == b:
            raise DegenerateEdge(f"repeated vertex {a}")
        if a.x != b.x and a.y != b.y:
            raise NonRectilinear(f"diagonal edge {a} -> {b}")

    merged = 0
    pts = list(pts)
    changed = True
    while changed:
        changed = False
        n = len(pts)
        if n < 3:
            break
        for i in range(n):
            a, b, c = pts[i - 1], pts[i], pts[(i + 1) % n]
            if a.x == b.x == c.x:
                straight = (b.y > a.y) == (c.y > b.y)
            elif a.y == b.y == c.y:
                straight = (b.x > a.x) == (c.x > b.x)
            else:
                continue
            if not straight:
                raise SelfIntersecting(f"boundary folds back at {b}")
            del pts[i]
            merged += 1
            changed = True
            break
    if len(pts) < 4:
        raise TooFewVertices(f"{len(pts)} corners after merging collinear vertices")
    return pts, merged


def _check_simple(pts: list[Point]) -> None:
    """All pairs of non-adjacent edges must be disjoint (closed segments)."""
    n = len(pts)
    horiz = []  # (y, xlo, xhi, index)
    vert = []   # (x, ylo, yhi, index)
    for i in range(n):
        a, b = pts[i], pts[(i + 1) % n]
        if a.y == b.y:
            horiz.append((a.y, min(a.x, b.x), max(a.x, b.x), i))
        else:
            vert.append((a.x, min(a.y, b.y), max(a.y, b.y), i))

    def adjacent(i, j):
        return abs(i - j) in (1, n - 1)

    for k, (y1, lo1, hi1, i) in enumerate(horiz):
        for y2, lo2, hi2, j in horiz[k + 1:]:
            if adjacent(i, j):
                continue
            if y1 == y2 and max(lo1, lo2) <= min(hi1, hi2):
                raise SelfIntersecting(f"horizontal edges {i} and {j} overlap")
    for k, (x1, lo1, hi1, i) in enumerate(vert):
        for x2, lo2, hi2, j in vert[k + 1:]:
            if adjacent(i, j):
                continue
            if x1 == x2 and max(lo1, lo2) <= min(hi1, hi2):
                raise SelfIntersecting(f"vertical edges {i} and {j} overlap")
    for y, xlo, xhi, i in horiz:
        for x, ylo, yhi, j in vert:
            if adjacent(i, j):
                continue
            if xlo <= x <= xhi and ylo <= y <= yhi:
                raise SelfIntersecting(f"edges {i} and {j} cross")


def validate_polygon(vertices: Iterable) -> OrthoPolygon:
    """Validate a vertex cycle and return the normalized polygon.

    Accepts either orientation and tolerates redundant collinear vertices,
    which are merged. Raises a :class:`PolygonError` subclass describing the
    first violated invariant otherwise.
    """
    pts = _as_points(vertices)
    if not pts:
        raise TooFewVertices("empty vertex list")
    pts, merged = _clean_cycle(pts)

    doubled = Fraction(0)
    n = len(pts)
    for i, a in enumerate(pts):
        b = pts[(i + 1) % n]
        doubled += a.x * b.y - b.x * a.y
    if doubled == 0:
        raise SelfIntersecting("polygon has zero area")
    if doubled < 0:
        pts.reverse()

    _check_simple(pts)

    # canonical starting vertex keeps serialization deterministic
    start = min(range(len(pts)), key=lambda i: (pts[i].x, pts[i].y))
    pts = pts[start:] + pts[:start]
    return OrthoPolygon(pts, merged)


def bbox(poly: OrthoPolygon) -> AxisRect:
    """Smallest enclosing axis-aligned rectangle."""
    return poly.bounding_box()


def polygon_area(poly: OrthoPolygon) -> Rational:
    """Exact shoelace area (positive for the normalized orientation)."""
    return poly.area()


def normalize_center(poly: OrthoPolygon) -> tuple[OrthoPolygon, Point]:
    """Translate the polygon so its bounding-box center is exactly the origin.

    Returns the centered polygon and the subtracted offset, so
    ``original = centered.translated(offset)``.
    """
    offset = poly.bounding_box().center
    if offset == ORIGIN:
        return poly, offset
    return poly.translated(ORIGIN - offset), offset


def transform(poly: OrthoPolygon, placement: Placement) -> OrthoPolygon:
    """Scale about the polygon's own bounding-box center, then translate."""
    if placement.scale <= 0:
        raise NonPositiveScale(str(placement.scale))
    c = poly.bounding_box().center
    lam, tau = placement.scale, placement.offset
    moved = [Point(lam * (v.x - c.x) + c.x + tau.x,
                   lam * (v.y - c.y) + c.y + tau.y) for v in poly.vertices]
    return OrthoPolygon(moved, poly.merged_vertices)


# ---------------------------------------------------------------------------
# polygon file format: {"vertices": [[x, y], ...]}, coordinates are JSON
# integers or "num/den" strings in lowest terms
# ---------------------------------------------------------------------------

def polygon_from_obj(obj) -> OrthoPolygon:
    if not isinstance(obj, dict) or "vertices" not in obj:
        raise PolygonError('expected an object with a "vertices" list')
    return validate_polygon(obj["vertices"])


def polygon_to_obj(poly: OrthoPolygon) -> dict:
    return {"vertices": [[rat_json(v.x), rat_json(v.y)] for v in poly.vertices]}


def load_polygon(path: str) -> OrthoPolygon:
    with open(path, "r", encoding="utf-8") as fh:
        return polygon_from_obj(json.load(fh))


def save_polygon(path: str, poly: OrthoPolygon) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(polygon_to_obj(poly), fh)
        fh.write("\n")
