"""Finite unions of right-open intervals and rectangles with lattice endpoints.

Both kinds of set are kept in a canonical form, so ``==`` is set equality.  An
``IntervalSet`` is a sorted tuple of disjoint, non-adjacent intervals.  A
``RectangleSet`` is a sorted tuple of vertical slabs ``[x0, x1) × Y`` with
non-empty cross-section ``Y`` where neighbouring slabs that touch always have
different cross-sections.
"""

from __future__ import annotations

from typing import Callable, Iterable, Iterator

from .alg2 import T2
from .lattice import Lattice, Vec, vsub

Interval = tuple[Vec, Vec]

_OPS: dict[str, Callable[[bool, bool], bool]] = {
    "union": lambda a, b: a or b,
    "intersect": lambda a, b: a and b,
    "diff": lambda a, b: a and not b,
    "symdiff": lambda a, b: a != b,
}


def _grid(L: Lattice, points: Iterable[Vec]) -> list[Vec]:
    return L.sorted(set(points))


def _cover(grid_index: dict[Vec, int], n: int, intervals: Iterable[Interval]) -> list[bool]:
    flags = [False] * n
    for a, b in intervals:
        for k in range(grid_index[a], grid_index[b]):
            flags[k] = True
    return flags


def _runs(grid: list[Vec], flags: list[bool]) -> tuple[Interval, ...]:
    out = []
    k = 0
    while k < len(flags):
        if flags[k]:
            j = k
            while j + 1 < len(flags) and flags[j + 1]:
                j += 1
            out.append((grid[k], grid[j + 1]))
            k = j + 1
        else:
            k += 1
    return tuple(out)


class IntervalSet:
    __slots__ = ("lattice", "intervals")

    def __init__(self, lattice: Lattice, intervals: tuple[Interval, ...]):
        # Trusted constructor: ``intervals`` must already be canonical.
        self.lattice = lattice
        self.intervals = intervals

    @classmethod
    def empty(cls, L: Lattice) -> "IntervalSet":
        return cls(L, ())

    @classmethod
    def from_intervals(cls, L: Lattice, intervals: Iterable[tuple]) -> "IntervalSet":
        """Union of the given ``[a, b)``; endpoints may be GroundNums or vectors."""
        ivs = []
        for a, b in intervals:
            a, b = L.vec(a), L.vec(b)
            c = L.cmp(a, b)
            if c > 0:
                raise ValueError("interval with a > b")
            if c < 0:
                ivs.append((a, b))
        if not ivs:
            return cls(L, ())
        grid = _grid(L, (p for iv in ivs for p in iv))
        index = {p: k for k, p in enumerate(grid)}
        return cls(L, _runs(grid, _cover(index, len(grid) - 1, ivs)))

    def combine(self, other: "IntervalSet", op: str) -> "IntervalSet":
        L = self.lattice
        L.check_same(other.lattice)
        pred = _OPS[op]
        grid = _grid(L, [p for iv in self.intervals + other.intervals for p in iv])
        if len(grid) < 2:
            return IntervalSet(L, ())
        index = {p: k for k, p in enumerate(grid)}
        n = len(grid) - 1
        fa = _cover(index, n, self.intervals)
        fb = _cover(index, n, other.intervals)
        return IntervalSet(L, _runs(grid, [pred(a, b) for a, b in zip(fa, fb)]))

    def union(self, other):
        return self.combine(other, "union")

    def intersect(self, other):
        return self.combine(other, "intersect")

    def diff(self, other):
        return self.combine(other, "diff")

    def symdiff(self, other):
        return self.combine(other, "symdiff")

    __or__ = union
    __and__ = intersect
    __sub__ = diff
    __xor__ = symdiff

    def measure(self) -> Vec:
        acc = self.lattice.zero
        for a, b in self.intervals:
            acc = tuple(x + y - z for x, y, z in zip(acc, b, a))
        return acc

    def is_empty(self) -> bool:
        return not self.intervals

    def __iter__(self) -> Iterator[Interval]:
        return iter(self.intervals)

    def __len__(self) -> int:
        return len(self.intervals)

    def __eq__(self, other) -> bool:
        return isinstance(other, IntervalSet) and self.lattice == other.lattice and self.intervals == other.intervals

    def __hash__(self) -> int:
        return hash(self.intervals)

    def __repr__(self) -> str:
        L = self.lattice
        return "IntervalSet(" + ", ".join(f"[{L.num(a)}, {L.num(b)})" for a, b in self.intervals) + ")"


Slab = tuple[Vec, Vec, IntervalSet]


def _merge_slabs(L: Lattice, grid: list[Vec], cross: list[IntervalSet]) -> tuple[Slab, ...]:
    out: list[Slab] = []
    for k, ys in enumerate(cross):
        if ys.is_empty():
            continue
        x0, x1 = grid[k], grid[k + 1]
        if out and out[-1][1] == x0 and out[-1][2] == ys:
            out[-1] = (out[-1][0], x1, ys)
        else:
            out.append((x0, x1, ys))
    return tuple(out)


class RectangleSet:
    __slots__ = ("lattice", "slabs")

    def __init__(self, lattice: Lattice, slabs: tuple[Slab, ...]):
        self.lattice = lattice
        self.slabs = slabs

    @classmethod
    def empty(cls, L: Lattice) -> "RectangleSet":
        return cls(L, ())

    @classmethod
    def from_rectangles(cls, L: Lattice, rects: Iterable[tuple[tuple, tuple]]) -> "RectangleSet":
        """Union of ``[x0, x1) × [y0, y1)`` given as ``((x0, x1), (y0, y1))``."""
        rs = []
        for (x0, x1), (y0, y1) in rects:
            x0, x1, y0, y1 = L.vec(x0), L.vec(x1), L.vec(y0), L.vec(y1)
            if L.cmp(x0, x1) < 0 and L.cmp(y0, y1) < 0:
                rs.append(((x0, x1), (y0, y1)))
        if not rs:
            return cls(L, ())
        grid = _grid(L, (p for (xs, _) in rs for p in xs))
        index = {p: k for k, p in enumerate(grid)}
        buckets: list[list[Interval]] = [[] for _ in range(len(grid) - 1)]
        for (x0, x1), ys in rs:
            for k in range(index[x0], index[x1]):
                buckets[k].append(ys)
        cross = [IntervalSet.from_intervals(L, b) if b else IntervalSet.empty(L) for b in buckets]
        return cls(L, _merge_slabs(L, grid, cross))

    def rectangles(self) -> Iterator[tuple[Interval, Interval]]:
        for x0, x1, ys in self.slabs:
            for iv in ys:
                yield (x0, x1), iv

    def combine(self, other: "RectangleSet", op: str) -> "RectangleSet":
        L = self.lattice
        L.check_same(other.lattice)
        grid = _grid(L, [p for s in self.slabs + other.slabs for p in s[:2]])
        if len(grid) < 2:
            return RectangleSet(L, ())
        index = {p: k for k, p in enumerate(grid)}
        n = len(grid) - 1
        empty = IntervalSet.empty(L)

        def spread(slabs):
            cross = [empty] * n
            for x0, x1, ys in slabs:
                for k in range(index[x0], index[x1]):
                    cross[k] = ys
            return cross

        ca, cb = spread(self.slabs), spread(other.slabs)
        return RectangleSet(L, _merge_slabs(L, grid, [a.combine(b, op) for a, b in zip(ca, cb)]))

    def union(self, other):
        return self.combine(other, "union")

    def intersect(self, other):
        return self.combine(other, "intersect")

    def diff(self, other):
        return self.combine(other, "diff")

    def symdiff(self, other):
        return self.combine(other, "symdiff")

    __or__ = union
    __and__ = intersect
    __sub__ = diff
    __xor__ = symdiff

    def mirror(self) -> "RectangleSet":
        """Image under s(x, y) = (y, x)."""
        return RectangleSet.from_rectangles(self.lattice, ((ys, xs) for xs, ys in self.rectangles()))

    def is_empty(self) -> bool:
        return not self.slabs

    def __eq__(self, other) -> bool:
        return isinstance(other, RectangleSet) and self.lattice == other.lattice and self.slabs == other.slabs

    def __hash__(self) -> int:
        return hash(self.slabs)

    def __repr__(self) -> str:
        L = self.lattice
        parts = [f"[{L.num(x0)}, {L.num(x1)})×[{L.num(y0)}, {L.num(y1)})" for (x0, x1), (y0, y1) in self.rectangles()]
        return "RectangleSet(" + ", ".join(parts) + ")"


def bool_ops(x: RectangleSet, y: RectangleSet, op: str) -> RectangleSet:
    if op not in _OPS:
        raise ValueError(f"unknown operation {op!r}")
    return x.combine(y, op)


def act(f, P: RectangleSet) -> RectangleSet:
    """f.P = {(f(x), f(y)) : (x, y) in P} for an interval exchange (with or without flips)."""
    L = P.lattice
    L.check_same(f.lattice)
    rects = []
    for x0, x1, ys in P.slabs:
        xs_img = f.map_interval(x0, x1)
        for y0, y1 in ys:
            ys_img = f.map_interval(y0, y1)
            rects.extend((xi, yi) for xi in xs_img for yi in ys_img)
    return RectangleSet.from_rectangles(L, rects)


def measure_t2(P: RectangleSet) -> T2:
    """omega: sum over slabs of (x1 - x0) ⊗ lambda(cross-section)."""
    L = P.lattice
    d = L.d
    m = [[0] * d for _ in range(d)]
    for x0, x1, ys in P.slabs:
        w = vsub(x1, x0)
        h = ys.measure()
        for i, a in enumerate(w):
            if a:
                row = m[i]
                for j, b in enumerate(h):
                    row[j] += a * b
    return T2(L, tuple(tuple(r) for r in m))


def measure_len(X: IntervalSet):
    """lambda(X) as a GroundNum."""
    return X.lattice.num(X.measure())
