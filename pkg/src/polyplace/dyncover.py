"""Offline dynamic rectangle cover over an integer cell grid.

Given a preplanned add/delete trace of closed rank-space rectangles inside a
box, report the covered-cell count after every update and the first update
after which the box is no longer fully covered. Two interchangeable engines:

* ``naive``: a counting grid, one vectorized slice update per event. Dead
  simple, exactly correct, linear work per update in the touched area.
* ``oy``: an Overmars-Yap structure: vertical slabs holding O(sqrt n)
  rectangle edges each, a weighted Klee tree per slab combining the covered
  length of slab-crossing rectangles with per-cell covered width of partial
  rectangles, rebuilt from scratch every n updates. Amortized O(sqrt n
  polylog) per update. The rebuild uses the upcoming batch, which is why the
  trace must be known in advance.
"""

from __future__ import annotations

import math
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .forbidden import CoverUpdate, RankRect


class MalformedTrace(ValueError):
    """Delete of a dead id, out-of-box rectangle, or live-set overflow."""


@dataclass
class TraceProblem:
    n: int                      # max live-rectangle bound (structure capacity)
    box: tuple[int, int]        # cells [1, nx] x [1, ny]
    updates: list[CoverUpdate]


class _NaiveGrid:
    """Reference engine: per-cell cover counts plus a zero-cell counter."""

    def __init__(self, nx: int, ny: int):
        self.grid = np.zeros((nx, ny), dtype=np.int32)
        self.total = nx * ny
        self.zero = nx * ny

    def add(self, r: RankRect) -> None:
        region = self.grid[r.x_lo - 1:r.x_hi, r.y_lo - 1:r.y_hi]
        self.zero -= int(np.count_nonzero(region == 0))
        region += 1

    def remove(self, r: RankRect) -> None:
        region = self.grid[r.x_lo - 1:r.x_hi, r.y_lo - 1:r.y_hi]
        region -= 1
        self.zero += int(np.count_nonzero(region == 0))

    @property
    def covered_cells(self) -> int:
        return self.total - self.zero


class _CoverTree1D:
    """Klee tree over fixed elementary intervals: range count, uncovered length."""

    __slots__ = ("bounds", "size", "cnt", "uncov", "lens", "total")

    def __init__(self, bounds: list[int]):
        self.bounds = bounds
        n = max(1, len(bounds) - 1)
        size = 1
        while size < n:
            size *= 2
        self.size = size
        self.cnt = [0] * (2 * size)
        self.lens = [0] * (2 * size)
        for i in range(len(bounds) - 1):
            self.lens[size + i] = bounds[i + 1] - bounds[i]
        for i in range(size - 1, 0, -1):
            self.lens[i] = self.lens[2 * i] + self.lens[2 * i + 1]
        self.uncov = list(self.lens)
        self.total = self.lens[1]

    def _pull(self, i: int) -> None:
        if self.cnt[i] > 0:
            self.uncov[i] = 0
        elif i >= self.size:
            self.uncov[i] = self.lens[i]
        else:
            self.uncov[i] = self.uncov[2 * i] + self.uncov[2 * i + 1]

    def add(self, lo_val: int, hi_val: int, delta: int) -> None:
        l = bisect_left(self.bounds, lo_val) + self.size
        r = bisect_left(self.bounds, hi_val) + self.size
        ll, rr = l, r - 1
        while l < r:
            if l & 1:
                self.cnt[l] += delta
                self._pull(l)
                l += 1
            if r & 1:
                r -= 1
                self.cnt[r] += delta
                self._pull(r)
            l >>= 1
            r >>= 1
        for i in (ll, rr):
            i >>= 1
            while i:
                self._pull(i)
                i >>= 1

    @property
    def covered(self) -> int:
        return self.total - self.uncov[1]


class _WeightedCoverTree:
    """Klee tree whose uncovered length is weighted by a per-cell density.

    Aggregates uncov_len (length not covered by counted ranges) and uncov_wt
    (that length weighted by density of the cell each leaf belongs to). Nodes
    lying inside a single cell derive their weight as density * uncov_len, so
    a density change refreshes only the canonical nodes of the cell's range.
    """

    __slots__ = ("bounds", "size", "cnt", "lens", "ulen", "uwt", "pure", "density")

    def __init__(self, bounds: list[int], cell_of_leaf: list[int], ncells: int):
        self.bounds = bounds
        n = max(1, len(bounds) - 1)
        size = 1
        while size < n:
            size *= 2
        self.size = size
        self.cnt = [0] * (2 * size)
        self.lens = [0] * (2 * size)
        self.pure = [-1] * (2 * size)
        dummy = ncells  # zero-density cell for padding leaves
        self.density = [0] * (ncells + 1)
        for i in range(size):
            leaf = size + i
            if i < len(bounds) - 1:
                self.lens[leaf] = bounds[i + 1] - bounds[i]
                self.pure[leaf] = cell_of_leaf[i]
            else:
                self.pure[leaf] = dummy
        for i in range(size - 1, 0, -1):
            self.lens[i] = self.lens[2 * i] + self.lens[2 * i + 1]
            l, r = self.pure[2 * i], self.pure[2 * i + 1]
            self.pure[i] = l if l == r else -1
        self.ulen = list(self.lens)
        self.uwt = [0] * (2 * size)

    def _pull(self, i: int) -> None:
        if self.cnt[i] > 0:
            self.ulen[i] = 0
            self.uwt[i] = 0
            return
        if i >= self.size:
            ul = self.lens[i]
        else:
            ul = self.ulen[2 * i] + self.ulen[2 * i + 1]
        self.ulen[i] = ul
        p = self.pure[i]
        if p >= 0:
            self.uwt[i] = self.density[p] * ul
        else:
            self.uwt[i] = self.uwt[2 * i] + self.uwt[2 * i + 1]

    def _update_range(self, l: int, r: int, fn: Callable[[int], None]) -> None:
        l += self.size
        r += self.size
        ll, rr = l, r - 1
        while l < r:
            if l & 1:
                fn(l)
                l += 1
            if r & 1:
                r -= 1
                fn(r)
            l >>= 1
            r >>= 1
        for i in (ll, rr):
            i >>= 1
            while i:
                self._pull(i)
                i >>= 1

    def add(self, lo_val: int, hi_val: int, delta: int) -> None:
        def bump(i: int) -> None:
            self.cnt[i] += delta
            self._pull(i)

        l = bisect_left(self.bounds, lo_val)
        r = bisect_left(self.bounds, hi_val)
        self._update_range(l, r, bump)

    def set_density(self, cell: int, value: int, leaf_lo: int, leaf_hi: int) -> None:
        self.density[cell] = value
        self._update_range(leaf_lo, leaf_hi, self._pull)

    @property
    def uncovered_len(self) -> int:
        return self.ulen[1]

    @property
    def uncovered_weight(self) -> int:
        return self.uwt[1]


class _Slab:
    __slots__ = ("x0", "x1", "width", "cellcuts", "cell_leaf_lo", "xbounds",
                 "ytree", "xtrees", "dens", "area", "height")

    def __init__(self, x0: int, x1: int, ybounds: list[int],
                 cellcut_set: set[int], partial_x: set[int]):
        self.x0 = x0
        self.x1 = x1
        self.width = x1 - x0
        self.cellcuts = sorted(cellcut_set | {ybounds[0], ybounds[-1]})
        self.cell_leaf_lo = [bisect_left(ybounds, c) for c in self.cellcuts]
        ncells = len(self.cellcuts) - 1
        cell_of_leaf = []
        ci = 0
        for i in range(len(ybounds) - 1):
            while ybounds[i] >= self.cellcuts[ci + 1]:
                ci += 1
            cell_of_leaf.append(ci)
        self.ytree = _WeightedCoverTree(ybounds, cell_of_leaf, ncells)
        self.xbounds = sorted(partial_x | {x0, x1})
        self.xtrees = [_CoverTree1D(self.xbounds) for _ in range(ncells)]
        self.dens = [0] * ncells
        self.height = ybounds[-1] - ybounds[0]
        self.area = 0

    def _refresh_area(self) -> None:
        t = self.ytree
        self.area = self.width * (self.height - t.uncovered_len) + t.uncovered_weight

    def add_crossing(self, y_lo: int, y_hi: int, delta: int) -> None:
        self.ytree.add(y_lo, y_hi, delta)
        self._refresh_area()

    def add_partial(self, x_lo: int, x_hi: int, y_lo: int, y_hi: int, delta: int) -> None:
        xl = max(x_lo, self.x0)
        xr = min(x_hi, self.x1)
        ca = bisect_left(self.cellcuts, y_lo)
        cb = bisect_left(self.cellcuts, y_hi)
        for ci in range(ca, cb):
            tree = self.xtrees[ci]
            tree.add(xl, xr, delta)
            cov = tree.covered
            if cov != self.dens[ci]:
                self.dens[ci] = cov
                self.ytree.set_density(ci, cov, self.cell_leaf_lo[ci],
                                       self.cell_leaf_lo[ci + 1])
        self._refresh_area()


class _OverMarsYap:
    """One batch's structure; the engine rebuilds it every ``capacity`` updates."""

    def __init__(self, box: tuple[int, int], universe: Sequence[RankRect]):
        nx, ny = box
        edges: list[int] = [1, nx + 1]
        for r in universe:
            edges.append(r.x_lo)
            edges.append(r.x_hi + 1)
        edges.sort()
        chunk = max(1, math.isqrt(len(edges)) + 1)
        cutset = {1, nx + 1}
        for i in range(0, len(edges), chunk):
            cutset.add(edges[i])
        self.cuts = sorted(cutset)
        nslabs = len(self.cuts) - 1

        ybset = {1, ny + 1}
        for r in universe:
            ybset.add(r.y_lo)
            ybset.add(r.y_hi + 1)
        ybounds = sorted(ybset)

        cellcuts: list[set[int]] = [set() for _ in range(nslabs)]
        partial_x: list[set[int]] = [set() for _ in range(nslabs)]
        for r in universe:
            for edge in (r.x_lo, r.x_hi + 1):
                s = bisect_right(self.cuts, edge) - 1
                if 0 <= s < nslabs and self.cuts[s] < edge < self.cuts[s + 1]:
                    cellcuts[s].add(r.y_lo)
                    cellcuts[s].add(r.y_hi + 1)
                    partial_x[s].add(edge)

        self.slabs = [
            _Slab(self.cuts[s], self.cuts[s + 1], ybounds, cellcuts[s], partial_x[s])
            for s in range(nslabs)
        ]
        self.total = 0

    def _apply(self, r: RankRect, delta: int) -> None:
        x_lo, x_hi = r.x_lo, r.x_hi + 1
        a = bisect_right(self.cuts, x_lo) - 1
        b = bisect_left(self.cuts, x_hi) - 1
        for s in range(max(a, 0), min(b, len(self.slabs) - 1) + 1):
            slab = self.slabs[s]
            before = slab.area
            if x_lo <= slab.x0 and x_hi >= slab.x1:
                slab.add_crossing(r.y_lo, r.y_hi + 1, delta)
            else:
                slab.add_partial(x_lo, x_hi, r.y_lo, r.y_hi + 1, delta)
            self.total += slab.area - before

    def add(self, r: RankRect) -> None:
        self._apply(r, 1)

    def remove(self, r: RankRect) -> None:
        self._apply(r, -1)

    @property
    def covered_cells(self) -> int:
        return self.total


# ---------------------------------------------------------------------------
# trace execution
# ---------------------------------------------------------------------------

def _check_rect(r: RankRect | None, box: tuple[int, int]) -> None:
    if r is None:
        raise MalformedTrace("add without a rectangle")
    nx, ny = box
    if not (1 <= r.x_lo <= r.x_hi <= nx and 1 <= r.y_lo <= r.y_hi <= ny):
        raise MalformedTrace(f"rectangle {r} outside box {box}")


def _execute(box: tuple[int, int], capacity: int,
             initial: Sequence[tuple[object, RankRect]],
             updates: Sequence[CoverUpdate], impl: str,
             on_state: Callable) -> None:
    """Apply the trace, calling on_state(k, struct) after k applied updates.

    on_state returning True stops execution early. ``capacity`` is the
    structure's live bound n; the oy engine rebuilds every n updates.
    """
    if impl not in ("naive", "oy"):
        raise ValueError(f"unknown implementation {impl!r}")
    capacity = max(1, capacity)
    live: dict[object, RankRect] = {}
    for uid, r in initial:
        _check_rect(r, box)
        if uid in live:
            raise MalformedTrace(f"duplicate id {uid!r}")
        live[uid] = r

    def apply_update(struct, u: CoverUpdate) -> None:
        if u.kind == "add":
            _check_rect(u.rect, box)
            if u.uid in live:
                raise MalformedTrace(f"duplicate id {u.uid!r}")
            if len(live) >= 2 * capacity:
                raise MalformedTrace("live set exceeds twice the declared bound")
            live[u.uid] = u.rect
            struct.add(u.rect)
        elif u.kind == "delete":
            rect = live.pop(u.uid, None)
            if rect is None:
                raise MalformedTrace(f"delete of dead id {u.uid!r}")
            struct.remove(rect)
        else:
            raise MalformedTrace(f"unknown update kind {u.kind!r}")

    if impl == "naive":
        struct = _NaiveGrid(*box)
        for r in live.values():
            struct.add(r)
        if on_state(0, struct, live):
            return
        for k, u in enumerate(updates):
            apply_update(struct, u)
            if on_state(k + 1, struct, live):
                return
        return

    k = 0
    while True:
        batch = updates[k:k + capacity]
        universe = list(live.values()) + [u.rect for u in batch if u.kind == "add"]
        struct = _OverMarsYap(box, universe)
        for r in live.values():
            struct.add(r)
        if k == 0 and on_state(0, struct, live):
            return
        if not batch:
            return
        for u in batch:
            apply_update(struct, u)
            k += 1
            if on_state(k, struct, live):
                return


def first_uncover(tp: TraceProblem, impl: str = "naive") -> int | None:
    """First 1-based update index after which the box is not fully covered."""
    full = tp.box[0] * tp.box[1]
    found: list[int | None] = [None]

    def on_state(k, struct, live):
        if k > 0 and struct.covered_cells < full:
            found[0] = k
            return True
        return False

    _execute(tp.box, tp.n, [], tp.updates, impl, on_state)
    return found[0]


def area_after_each(tp: TraceProblem, impl: str = "naive") -> list[int]:
    """Covered-cell count after each update prefix."""
    areas: list[int] = []

    def on_state(k, struct, live):
        if k > 0:
            areas.append(struct.covered_cells)
        return False

    _execute(tp.box, tp.n, [], tp.updates, impl, on_state)
    return areas


def run_plan(box: tuple[int, int], capacity: int,
             initial: Sequence[tuple[object, RankRect]],
             updates: Sequence[CoverUpdate],
             query_positions: Sequence[int],
             impl: str = "oy") -> tuple[int | None, dict | None]:
    """Run a preloaded trace, querying coverage at given update-prefix lengths.

    Returns (index into query_positions of the first query that found the box
    uncovered, live id->rect map at that moment), or (None, None).
    """
    full = box[0] * box[1]
    state: list = [None, None]
    qi = [0]

    def on_state(k, struct, live):
        while qi[0] < len(query_positions) and query_positions[qi[0]] == k:
            if struct.covered_cells < full:
                state[0] = qi[0]
                state[1] = dict(live)
                return True
            qi[0] += 1
        return False

    _execute(box, capacity, initial, updates, impl, on_state)
    return state[0], state[1]


def trace_problem(box: tuple[int, int], updates: Sequence[CoverUpdate]) -> TraceProblem:
    """Wrap raw updates, inferring the live bound from the trace itself."""
    live: set = set()
    peak = 1
    for u in updates:
        if u.kind == "add":
            live.add(u.uid)
        else:
            live.discard(u.uid)
        peak = max(peak, len(live))
    return TraceProblem(n=peak, box=box, updates=list(updates))
