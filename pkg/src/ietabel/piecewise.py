"""Shared machinery for interval exchanges with and without flips.

A map is stored by its combinatorial description on the minimal partition:
``lengths[i]`` (lattice vectors), ``tau[i]`` (0-based arrival slot of piece i)
and ``signs[i]`` (+1 translation, -1 reversal).  Piece i is sent onto the
arrival interval J_tau[i], the arrival intervals being consecutive in slot
order.  Maps act on open intervals, so endpoint images are never tracked.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import InvalidElement, MixedContexts, NotAssociated, OutOfRange
from .lattice import Lattice, LatticeLike, Vec, vadd, vsub

Piece = tuple[Vec, Vec, Vec, int]  # (source start, length, image start, sign)


class Piecewise:
    """Common base of :class:`~ietabel.iet.IetMap` and :class:`~ietabel.flips.FlipMap`."""

    __slots__ = ("lattice", "lengths", "tau", "signs", "_pieces")

    def __init__(self, lattice: Lattice, lengths: tuple[Vec, ...], tau: tuple[int, ...], signs: tuple[int, ...]):
        # Trusted constructor; use the builders below for unchecked input.
        self.lattice = lattice
        self.lengths = lengths
        self.tau = tau
        self.signs = signs
        self._pieces: list[Piece] | None = None

    # -- builders ---------------------------------------------------------

    @classmethod
    def _identity(cls, L: Lattice):
        return cls(L, (L.one,), (0,), (1,))

    @classmethod
    def _from_description(cls, L: Lattice, lengths: Sequence[LatticeLike], tau: Sequence[int],
                          signs: Sequence[int] | None = None):
        alpha = [L.vec(a) for a in lengths]
        n = len(alpha)
        if n == 0:
            raise InvalidElement("description needs at least one interval")
        tau = [int(t) for t in tau]
        if sorted(tau) != list(range(n)):
            raise InvalidElement(f"tau must be a permutation of 0..{n - 1}")
        signs = [1] * n if signs is None else [int(s) for s in signs]
        if len(signs) != n or any(s not in (1, -1) for s in signs):
            raise InvalidElement("signs must be a sequence of +1/-1 of the same length")
        for a in alpha:
            if L.sign(a) <= 0:
                raise InvalidElement("interval lengths must be positive")
        total = L.zero
        for a in alpha:
            total = vadd(total, a)
        if total != L.one:
            raise InvalidElement("interval lengths must sum to 1")
        inv = sorted(range(n), key=lambda i: tau[i])
        dst = [None] * n
        pos = L.zero
        for i in inv:
            dst[i] = pos
            pos = vadd(pos, alpha[i])
        return cls._build(L, [(alpha[i], dst[i], signs[i]) for i in range(n)])

    @classmethod
    def _build(cls, L: Lattice, pieces: Iterable[tuple[Vec, Vec, int]]):
        """Canonical map from pieces ``(length, image start, sign)`` in source order."""
        merged: list[tuple[Vec, Vec, int]] = []
        for length, dst, s in pieces:
            if merged:
                l0, d0, s0 = merged[-1]
                if s0 == s == 1 and vadd(d0, l0) == dst:
                    merged[-1] = (vadd(l0, length), d0, 1)
                    continue
                if s0 == s == -1 and vadd(dst, length) == d0:
                    merged[-1] = (vadd(l0, length), dst, -1)
                    continue
            merged.append((length, dst, s))
        tau = _slots(L, [(m[1], m[0]) for m in merged])
        return cls(L, tuple(m[0] for m in merged), tuple(tau), tuple(m[2] for m in merged))

    # -- accessors --------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.lengths)

    def pieces(self) -> list[Piece]:
        if self._pieces is None:
            L = self.lattice
            n = self.n
            inv = sorted(range(n), key=lambda i: self.tau[i])
            dst: list[Vec] = [L.zero] * n
            pos = L.zero
            for i in inv:
                dst[i] = pos
                pos = vadd(pos, self.lengths[i])
            out = []
            start = L.zero
            for i in range(n):
                out.append((start, self.lengths[i], dst[i], self.signs[i]))
                start = vadd(start, self.lengths[i])
            self._pieces = out
        return self._pieces

    def breakpoints(self) -> list[Vec]:
        """x_0 = 0 < x_1 < ... < x_n = 1."""
        return [p[0] for p in self.pieces()] + [self.lattice.one]

    def cuts(self) -> set[Vec]:
        """Interior breakpoints."""
        return {p[0] for p in self.pieces()[1:]}

    def arrival_lengths(self) -> tuple[Vec, ...]:
        inv = sorted(range(self.n), key=lambda i: self.tau[i])
        return tuple(self.lengths[i] for i in inv)

    def translations(self) -> list[Vec]:
        """Image start minus source start, per piece."""
        return [vsub(d, s) for s, _, d, _ in self.pieces()]

    def is_identity(self) -> bool:
        return self.n == 1 and self.signs[0] == 1

    def key(self):
        return (self.lengths, self.tau, self.signs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Piecewise):
            return NotImplemented
        return type(self) is type(other) and self.lattice == other.lattice and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        L = self.lattice
        lengths = ", ".join(str(L.num(a)) for a in self.lengths)
        body = f"lengths=[{lengths}], tau={[t + 1 for t in self.tau]}"
        if any(s < 0 for s in self.signs):
            body += ", signs=" + "".join("+" if s > 0 else "-" for s in self.signs)
        return f"{type(self).__name__}({body})"

    # -- evaluation -------------------------------------------------------

    def _locate(self, x: Vec) -> int:
        """Index of the piece containing x (0 <= x < 1), by binary search."""
        L = self.lattice
        ps = self.pieces()
        lo, hi = 0, len(ps) - 1
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if L.cmp(ps[mid][0], x) <= 0:
                lo = mid
            else:
                hi = mid - 1
        return lo

    def apply_vec(self, x: Vec) -> Vec:
        L = self.lattice
        if L.sign(x) < 0 or L.cmp(x, L.one) >= 0:
            raise OutOfRange("point outside [0, 1)")
        s, length, d, sg = self.pieces()[self._locate(x)]
        if sg > 0:
            return vadd(d, vsub(x, s))
        return vadd(d, vsub(vadd(s, length), x))

    def apply(self, x: LatticeLike):
        """Exact image of x.  On a reversed piece the open-interval formula is used."""
        return self.lattice.num(self.apply_vec(self.lattice.vec(x)))

    def map_interval(self, a: Vec, b: Vec) -> list[tuple[Vec, Vec]]:
        """Images of the pieces of [a, b) cut by the breakpoints of the map."""
        L = self.lattice
        out = []
        for s, length, d, sg in self.pieces():
            e = vadd(s, length)
            lo = a if L.cmp(a, s) > 0 else s
            hi = b if L.cmp(b, e) < 0 else e
            if L.cmp(lo, hi) >= 0:
                continue
            if sg > 0:
                out.append((vadd(d, vsub(lo, s)), vadd(d, vsub(hi, s))))
            else:
                out.append((vadd(d, vsub(e, hi)), vadd(d, vsub(e, lo))))
        return out

    # -- partitions -------------------------------------------------------

    def split(self, partition: Sequence[Vec]) -> list[Piece]:
        """Pieces of the map on a refining partition given by its lengths."""
        L = self.lattice
        pts = []
        pos = L.zero
        for a in partition:
            pts.append(pos)
            pos = vadd(pos, a)
        if pos != L.one:
            raise NotAssociated("partition lengths do not sum to 1")
        if not self.cuts() <= set(pts):
            raise NotAssociated("partition does not refine the breakpoints of the map")
        out = []
        k = 0
        for s, length, d, sg in self.pieces():
            e = vadd(s, length)
            while k < len(partition) and pts[k] != e:
                x, lam = pts[k], partition[k]
                if L.sign(lam) <= 0:
                    raise NotAssociated("partition lengths must be positive")
                if sg > 0:
                    out.append((x, lam, vadd(d, vsub(x, s)), 1))
                else:
                    out.append((x, lam, vadd(d, vsub(e, vadd(x, lam))), -1))
                k += 1
        return out

    def description_on(self, partition: Sequence[Vec]) -> tuple[tuple[Vec, ...], tuple[int, ...], tuple[int, ...]]:
        """Non-canonical (lengths, tau, signs) on a refining partition."""
        pieces = self.split(partition)
        tau = _slots(self.lattice, [(p[2], p[1]) for p in pieces])
        return tuple(p[1] for p in pieces), tuple(tau), tuple(p[3] for p in pieces)

    def image_partition(self, partition: Sequence[Vec]) -> tuple[Vec, ...]:
        """The lengths of f(P), in order along [0, 1)."""
        lengths, tau, _ = self.description_on(partition)
        out = [None] * len(lengths)
        for a, t in zip(lengths, tau):
            out[t] = a
        return tuple(out)

    def preimage_points(self, points: Iterable[Vec]) -> set[Vec]:
        """Cut points x with f(x) = y for interior y, ignoring arrival breakpoints."""
        L = self.lattice
        arrival = set()
        pos = L.zero
        for a in self.arrival_lengths():
            arrival.add(pos)
            pos = vadd(pos, a)
        inv = self._inverse_pieces()
        out = set()
        for y in points:
            if y in arrival or y == L.one:
                continue
            out.add(inv.apply_vec(y))
        return out

    def _inverse_pieces(self):
        return _inverse(self, type(self))


def _slots(L: Lattice, placed: Sequence[tuple[Vec, Vec]]) -> list[int]:
    """Arrival slot of each piece from (image start, length); images must tile [0, 1)."""
    where = {start: i for i, (start, _) in enumerate(placed)}
    if len(where) != len(placed):
        raise InvalidElement("image intervals overlap")
    tau = [0] * len(placed)
    pos = L.zero
    for slot in range(len(placed)):
        i = where.get(pos)
        if i is None:
            raise InvalidElement("image intervals do not tile [0, 1)")
        tau[i] = slot
        pos = vadd(pos, placed[i][1])
    if pos != L.one:
        raise InvalidElement("image intervals do not tile [0, 1)")
    return tau


def _same_lattice(f: Piecewise, g: Piecewise) -> Lattice:
    if f.lattice is not g.lattice and f.lattice != g.lattice:
        raise MixedContexts("maps over different lattices")
    return f.lattice


def _compose(f: Piecewise, g: Piecewise, cls):
    """f∘g (g first): sweep g's arrival intervals against f's source pieces."""
    L = _same_lattice(f, g)
    gp = g.pieces()
    fp = f.pieces()
    order = sorted(range(len(gp)), key=lambda i: g.tau[i])
    segs: list[list[tuple[Vec, Vec, int]]] = [[] for _ in gp]
    y = L.zero
    gi, fi = 0, 0
    while gi < len(order):
        i = order[gi]
        _, gl, gc, _ = gp[i]
        g_end = vadd(gc, gl)
        fs, fl, _, _ = fp[fi]
        f_end = vadd(fs, fl)
        c = L.cmp(g_end, f_end)
        end = g_end if c <= 0 else f_end
        segs[i].append((y, end, fi))
        y = end
        if c <= 0:
            gi += 1
        if c >= 0:
            fi += 1
    pieces = []
    for i, (_, gl, gc, gs) in enumerate(gp):
        run = segs[i] if gs > 0 else reversed(segs[i])
        for y0, y1, k in run:
            fs, fl, fd, fsg = fp[k]
            if fsg > 0:
                dst = vadd(fd, vsub(y0, fs))
            else:
                dst = vadd(fd, vsub(vadd(fs, fl), y1))
            pieces.append((vsub(y1, y0), dst, gs * fsg))
    return cls._build(L, pieces)


def _inverse(f: Piecewise, cls):
    ps = f.pieces()
    order = sorted(range(len(ps)), key=lambda i: f.tau[i])
    return cls._build(f.lattice, [(ps[i][1], ps[i][0], ps[i][3]) for i in order])


def partition_from_cuts(L: Lattice, cuts: Iterable[Vec]) -> tuple[Vec, ...]:
    """Lengths of the partition of [0, 1) cut at the given interior points."""
    pts = [p for p in L.sorted(set(cuts)) if any(p) and p != L.one]
    bounds = [L.zero] + pts + [L.one]
    return tuple(vsub(b, a) for a, b in zip(bounds, bounds[1:]))
