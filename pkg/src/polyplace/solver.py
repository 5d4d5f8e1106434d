"""Placement solvers for rectilinear polygons under scaling and translation.

Four user-facing entry points:

* :func:`verify_containment`: direct O(p'q') pairwise check of a placement.
* :func:`contains_fixed`: can the pattern be translated (scale 1) into the
  target? Returns a feasible translation or None.
* :func:`max_scale`: the largest feasible scale, found by sweeping the
  critical scales in descending order while an offline dynamic cover
  structure tracks the rank-space forbidden rectangles.
* :func:`max_scale_baseline`: same answer via an independent route, running
  the exact static coverage test at every critical scale.
* :func:`max_scale_x`: translation restricted to the x axis with the
  bounding-box bottoms kept aligned.

All solvers center both polygons on their bounding-box centers first, so
translations are expressed between the centered frames and results are
invariant under translating either input.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import dyncover
from .coverage import find_hole
from .decompose import (cover_complement, cover_interior,
                        default_scale_cap, padded_frame)
from .forbidden import (_axis_scale, build_sweep, coordinate_functions,
                        critical_values)
from .geometry import (NonPositiveScale, OrthoPolygon, Point, Rational,
                       normalize_center, rat_str)


@dataclass
class SolveStats:
    criticals: int = 0
    updates: int = 0
    queries: int = 0
    skipped: int = 0  # criticals above the bbox-fit cap, infeasible without a query

    def to_obj(self) -> dict:
        return {"criticals": self.criticals, "updates": self.updates,
                "queries": self.queries, "skipped": self.skipped}


@dataclass
class PlacementResult:
    status: str  # "feasible" | "infeasible"
    lambda_star: Rational | None = None
    witness: Point | None = None
    stats: SolveStats = field(default_factory=SolveStats)
    lambda_sup: Rational | None = None  # smallest critical when infeasible

    @property
    def feasible(self) -> bool:
        return self.status == "feasible"

    def to_obj(self) -> dict:
        obj = {"status": self.status, "stats": self.stats.to_obj()}
        obj["lambda"] = rat_str(self.lambda_star) if self.lambda_star is not None else None
        if self.witness is not None:
            obj["tau"] = [rat_str(self.witness.x), rat_str(self.witness.y)]
        else:
            obj["tau"] = None
        if self.lambda_sup is not None:
            obj["lambda_sup"] = rat_str(self.lambda_sup)
        return obj


class _Problem:
    """Centered covers, coordinate functions, and integer-normalized sides."""

    __slots__ = ("pattern", "target", "pcov", "qcov", "box", "cs", "bbox_cap",
                 "scale", "sides", "bx0", "bx1", "by0", "by1", "pat_box")

    def __init__(self, pattern: OrthoPolygon, target: OrthoPolygon,
                 min_cap: Rational = Fraction(1)):
        self.pattern, _ = normalize_center(pattern)
        self.target, _ = normalize_center(target)
        pb = self.pattern.bounding_box()
        qb = self.target.bounding_box()
        self.pat_box = pb
        cap = max(default_scale_cap(pb, qb), min_cap)
        frame, pad = padded_frame(self.target, pb, cap)
        self.pcov = cover_interior(self.pattern)
        self.qcov = cover_complement(self.target, frame, pad)
        self.box = qb
        self.cs = coordinate_functions(self.pcov, self.qcov, qb)
        # no scale above the bbox-fit ratio can be feasible; queries past it
        # would also outrun the finite frame, so they are answered by this cap
        self.bbox_cap = min(qb.width / pb.width, qb.height / pb.height)

        s = _axis_scale(self.cs)
        self.scale = s
        self.sides = [
            (int(r.x_lo.alpha * s), int(r.x_lo.beta * s),
             int(r.x_hi.alpha * s), int(r.x_hi.beta * s),
             int(r.y_lo.alpha * s), int(r.y_lo.beta * s),
             int(r.y_hi.alpha * s), int(r.y_hi.beta * s))
            for r in self.cs.rects
        ]
        self.bx0, self.bx1 = int(qb.x0 * s), int(qb.x1 * s)
        self.by0, self.by1 = int(qb.y0 * s), int(qb.y1 * s)


def _item_span(vals: list[int], lo: int, hi: int) -> tuple[int, int]:
    """Interleaved value/gap items of ``vals`` covered by the open (lo, hi).

    Item 2k is the point vals[k]; item 2k+1 the open gap (vals[k], vals[k+1]).
    Returns an inclusive, possibly empty index range.
    """
    pl = bisect_right(vals, lo)
    pr = bisect_left(vals, hi)
    gl = bisect_left(vals, lo)
    gr = bisect_right(vals, hi) - 1
    return min(2 * pl, 2 * gl + 1), max(2 * pr - 2, 2 * gr - 1)


def _item_value(vals: list[int], item: int, den: int) -> Rational:
    k = item // 2
    if item % 2 == 0:
        return Fraction(vals[k], den)
    return Fraction(vals[k] + vals[k + 1], 2 * den)


def _static_hole(prob: _Problem, lam: Rational) -> Point | None:
    """Exact per-scale coverage test on the tie-refined item grid.

    Returns a translation (in centered frames) that avoids every open
    forbidden rectangle, or None when the bounding box is fully covered.
    Point-sized holes at shared boundaries are represented by the zero-width
    value items, so boundary-contact placements are found exactly.
    """
    num, den = lam.numerator, lam.denominator
    bx0, bx1 = prob.bx0 * den, prob.bx1 * den
    by0, by1 = prob.by0 * den, prob.by1 * den
    rects = []
    for (xa, xb, Xa, Xb, ya, yb, Ya, Yb) in prob.sides:
        lo = xa * num + xb * den
        hi = Xa * num + Xb * den
        if lo >= hi:
            continue
        clo = ya * num + yb * den
        chi = Ya * num + Yb * den
        if clo >= chi:
            continue
        rects.append((lo, hi, clo, chi))

    xset = {bx0, bx1}
    yset = {by0, by1}
    for lo, hi, clo, chi in rects:
        if bx0 < lo < bx1:
            xset.add(lo)
        if bx0 < hi < bx1:
            xset.add(hi)
        if by0 < clo < by1:
            yset.add(clo)
        if by0 < chi < by1:
            yset.add(chi)
    xs = sorted(xset)
    ys = sorted(yset)
    n_xitems = 2 * len(xs) - 1
    n_yitems = 2 * len(ys) - 1

    starts: list[list[tuple[int, int]]] = [[] for _ in range(n_xitems)]
    ends: list[list[tuple[int, int]]] = [[] for _ in range(n_xitems)]
    for lo, hi, clo, chi in rects:
        x_a, x_b = _item_span(xs, lo, hi)
        if x_a > x_b:
            continue
        y_a, y_b = _item_span(ys, clo, chi)
        if y_a > y_b:
            continue
        x_a, x_b = max(x_a, 0), min(x_b, n_xitems - 1)
        y_a, y_b = max(y_a, 0), min(y_b, n_yitems - 1)
        starts[x_a].append((y_a, y_b))
        ends[x_b].append((y_a, y_b))

    cnt = np.zeros(n_yitems, dtype=np.int32)
    zeros = n_yitems
    for i in range(n_xitems):
        for (a, b) in starts[i]:
            region = cnt[a:b + 1]
            zeros -= int(np.count_nonzero(region == 0))
            region += 1
        if zeros:
            j = int(np.flatnonzero(cnt == 0)[0])
            return Point(_item_value(xs, i, den * prob.scale),
                         _item_value(ys, j, den * prob.scale))
        for (a, b) in ends[i]:
            region = cnt[a:b + 1]
            region -= 1
            zeros += int(np.count_nonzero(region == 0))
    return None


def verify_containment(pattern: OrthoPolygon, target: OrthoPolygon,
                       lam: Rational, tau: Point) -> bool:
    """Exact containment check of the placement, independent of the sweep.

    Both polygons are centered internally; ``tau`` translates the centered
    scaled pattern within the centered target. True iff the translation stays
    in the target's bounding box and no scaled interior rectangle of the
    pattern meets the interior of a complement rectangle of the target
    (boundary contact allowed).
    """
    lam = Fraction(lam)
    if lam <= 0:
        raise NonPositiveScale(str(lam))
    pattern_c, _ = normalize_center(pattern)
    target_c, _ = normalize_center(target)
    pb = pattern_c.bounding_box()
    qb = target_c.bounding_box()
    if not qb.contains_point(tau):
        return False
    cap = max(default_scale_cap(pb, qb), lam)
    frame, pad = padded_frame(target_c, pb, cap)
    pcov = cover_interior(pattern_c)
    qcov = cover_complement(target_c, frame, pad)
    for pr in pcov.rects:
        sx0 = lam * pr.x0 + tau.x
        sx1 = lam * pr.x1 + tau.x
        sy0 = lam * pr.y0 + tau.y
        sy1 = lam * pr.y1 + tau.y
        for qr in qcov.rects:
            if (max(sx0, qr.x0) < min(sx1, qr.x1)
                    and max(sy0, qr.y0) < min(sy1, qr.y1)):
                return False
    return True


def _verify_internal(prob: _Problem, lam: Rational, tau: Point) -> bool:
    if not prob.box.contains_point(tau):
        return False
    for pr in prob.pcov.rects:
        sx0 = lam * pr.x0 + tau.x
        sx1 = lam * pr.x1 + tau.x
        sy0 = lam * pr.y0 + tau.y
        sy1 = lam * pr.y1 + tau.y
        for qr in prob.qcov.rects:
            if (max(sx0, qr.x0) < min(sx1, qr.x1)
                    and max(sy0, qr.y0) < min(sy1, qr.y1)):
                return False
    return True


def contains_fixed(pattern: OrthoPolygon, target: OrthoPolygon) -> Point | None:
    """A feasible translation of the unscaled pattern into the target, or None."""
    prob = _Problem(pattern, target)
    return _static_hole(prob, Fraction(1))


def max_scale(pattern: OrthoPolygon, target: OrthoPolygon,
              impl: str = "oy") -> PlacementResult:
    """Largest scale at which the pattern fits into the target.

    Builds the full descending-sweep trace of rank-space rectangles once,
    then lets the offline dynamic cover structure (``impl``: "oy" or
    "naive") execute it, stopping at the first critical whose snapshot
    leaves a hole. The witness translation is recovered from the uncovered
    rank cell.
    """
    prob = _Problem(pattern, target)
    plan = build_sweep(prob.cs, start_below=prob.bbox_cap)
    stats = SolveStats(criticals=plan.skipped_above + len(plan.criticals),
                       updates=len(plan.updates), skipped=plan.skipped_above)

    failed, live = dyncover.run_plan(plan.box_cells, plan.live_bound,
                                     plan.initial, plan.updates,
                                     plan.query_pos, impl)
    if failed is None:
        stats.queries = len(plan.query_pos)
        sup = plan.criticals[-1] if plan.criticals else None
        return PlacementResult("infeasible", stats=stats, lambda_sup=sup)

    stats.queries = failed + 1
    lam = plan.criticals[failed]
    cell = find_hole(list(live.values()), plan.box_cells)
    assert cell is not None, "dynamic structure reported a hole the sweep cannot find"
    tau = Point(plan.value_at_rank("x", lam, (cell[0] + 1) // 2),
                plan.value_at_rank("y", lam, (cell[1] + 1) // 2))
    if not _verify_internal(prob, lam, tau):
        raise RuntimeError("internal inconsistency: witness fails verification")
    return PlacementResult("feasible", lam, tau, stats)


def max_scale_baseline(pattern: OrthoPolygon, target: OrthoPolygon) -> PlacementResult:
    """Reference solver: run the static coverage test at every critical scale."""
    prob = _Problem(pattern, target)
    crits = critical_values(prob.cs)
    stats = SolveStats(criticals=len(crits))
    for lam in crits:
        if lam > prob.bbox_cap:
            stats.skipped += 1
            continue
        stats.queries += 1
        tau = _static_hole(prob, lam)
        if tau is not None:
            return PlacementResult("feasible", lam, tau, stats)
    return PlacementResult("infeasible", stats=stats,
                           lambda_sup=crits[-1] if crits else None)


def max_scale_x(pattern: OrthoPolygon, target: OrthoPolygon) -> PlacementResult:
    """Largest scale with translation restricted to the x axis.

    The vertical translation is forced to keep the bounding-box bottoms
    aligned, so each cover pair is active on a scale interval (two strict
    linear inequalities) and forbids an open x interval while active. The
    candidate scales are the activity endpoints plus all pairwise meeting
    points of the x side functions; a 1D sweep tests coverage of the target
    box's x extent at each.
    """
    prob = _Problem(pattern, target)
    s = prob.scale
    py_bottom = prob.pat_box.y0  # centered pattern's bbox bottom
    pb_s = int(py_bottom * s)
    # placed rect's vertical extent is lam*(y - py_bottom) + target_box.y0;
    # the pair is active when that open extent meets the complement rect's
    # y interior: a1*lam < c1 and a2*lam > c2 in integer form
    acts = []
    for (xa, xb, Xa, Xb, ya, yb, Ya, Yb) in prob.sides:
        a1 = -Ya - pb_s          # y_hi form alpha is -p_ylo
        c1 = Yb - prob.by0
        a2 = -ya - pb_s          # y_lo form alpha is -p_yhi
        c2 = yb - prob.by0
        acts.append((a1, c1, a2, c2, xa, xb, Xa, Xb))

    cands: set[Fraction] = set()
    formset = {(0, prob.bx0), (0, prob.bx1)}
    for (_a1, _c1, _a2, _c2, xa, xb, Xa, Xb) in acts:
        formset.add((xa, xb))
        formset.add((Xa, Xb))
    forms = sorted(formset)
    for i in range(len(forms)):
        ai, bi = forms[i]
        for j in range(i + 1, len(forms)):
            da = ai - forms[j][0]
            if da == 0:
                continue
            db = forms[j][1] - bi
            if db != 0 and (db > 0) == (da > 0):
                cands.add(Fraction(db, da))
    for (a1, c1, a2, c2, *_x) in acts:
        if a1 != 0 and c1 != 0 and (c1 > 0) == (a1 > 0):
            cands.add(Fraction(c1, a1))
        if a2 != 0 and c2 != 0 and (c2 > 0) == (a2 > 0):
            cands.add(Fraction(c2, a2))

    crits = sorted(cands, reverse=True)
    stats = SolveStats(criticals=len(crits))
    for lam in crits:
        if lam > prob.bbox_cap:
            stats.skipped += 1
            continue
        stats.queries += 1
        num, den = lam.numerator, lam.denominator
        intervals = []
        for (a1, c1, a2, c2, xa, xb, Xa, Xb) in acts:
            if a1 * num < c1 * den and a2 * num > c2 * den:
                lo = xa * num + xb * den
                hi = Xa * num + Xb * den
                if lo < hi:
                    intervals.append((lo, hi))
        hole = _open_cover_hole(intervals, prob.bx0 * den, prob.bx1 * den)
        if hole is not None:
            tau = Point(Fraction(hole, den * s),
                        prob.box.y0 - lam * py_bottom)
            if not _verify_internal(prob, lam, tau):
                raise RuntimeError("internal inconsistency: 1D witness fails verification")
            return PlacementResult("feasible", lam, tau, stats)
    return PlacementResult("infeasible", stats=stats,
                           lambda_sup=crits[-1] if crits else None)


def _open_cover_hole(intervals: list[tuple[int, int]], lo: int, hi: int):
    """Smallest point of [lo, hi] missed by a union of open intervals."""
    intervals.sort()
    cur = lo
    best = None
    ptr = 0
    n = len(intervals)
    while True:
        while ptr < n and intervals[ptr][0] < cur:
            b = intervals[ptr][1]
            if best is None or b > best:
                best = b
            ptr += 1
        if best is None or best <= cur:
            return cur
        cur = best
        if cur > hi:
            return None
