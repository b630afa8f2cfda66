"""Random lattice elements and maps for property checks (seeded ``random.Random``)."""

from __future__ import annotations

import functools
import random

from . import flips, iet
from .lattice import Lattice, Vec, vadd, vsub
from .regions import RectangleSet

COEFF_RANGE = 12


def point(L: Lattice, rng: random.Random, spread: int = COEFF_RANGE) -> Vec:
    """A lattice point of [0, 1)."""
    return L.frac(tuple(rng.randint(-spread, spread) for _ in range(L.d)))


def points(L: Lattice, rng: random.Random, k: int, spread: int = COEFF_RANGE) -> list[Vec]:
    """k distinct sorted points of (0, 1); fewer if the lattice is too coarse."""
    seen: set[Vec] = set()
    for _ in range(50 * k):
        if len(seen) == k:
            break
        p = point(L, rng, spread)
        if any(p):
            seen.add(p)
    return L.sorted(seen)


def positive(L: Lattice, rng: random.Random, bound: Vec | None = None) -> Vec:
    """A positive lattice element below ``bound`` (default 1)."""
    bound = L.one if bound is None else bound
    for _ in range(1000):
        p = point(L, rng)
        if any(p) and L.cmp(p, bound) < 0:
            return p
    raise RuntimeError("no small positive element found")


def lengths(L: Lattice, rng: random.Random, n: int) -> list[Vec]:
    cuts = points(L, rng, n - 1)
    bounds = [L.zero] + cuts + [L.one]
    return [vsub(b, a) for a, b in zip(bounds, bounds[1:])]


def random_iet(L: Lattice, rng: random.Random, n: int | None = None) -> iet.IetMap:
    n = n or rng.randint(1, 6)
    alpha = lengths(L, rng, n)
    tau = list(range(len(alpha)))
    rng.shuffle(tau)
    return iet.from_description(L, alpha, tau)


def random_flip(L: Lattice, rng: random.Random, n: int | None = None) -> flips.FlipMap:
    n = n or rng.randint(1, 6)
    alpha = lengths(L, rng, n)
    tau = list(range(len(alpha)))
    rng.shuffle(tau)
    return flips.from_description(L, alpha, tau, [rng.choice((1, -1)) for _ in alpha])


def random_transposition(L: Lattice, rng: random.Random) -> iet.IetMap:
    while True:
        ys = points(L, rng, 4)
        if len(ys) < 4:
            continue
        a = min(vsub(ys[1], ys[0]), vsub(ys[3], ys[2]), key=functools.cmp_to_key(L.cmp))
        return iet.transposition(L, a, ys[0], ys[2])


def random_rotation(L: Lattice, rng: random.Random) -> iet.IetMap:
    while True:
        ys = points(L, rng, 3)
        if len(ys) < 3:
            continue
        return iet.restricted_rotation(L, vsub(ys[1], ys[0]), vsub(ys[2], ys[1]), ys[0])


def random_rectangles(L: Lattice, rng: random.Random, k: int | None = None) -> RectangleSet:
    k = k or rng.randint(1, 4)
    rects = []
    for _ in range(k):
        xs, ys = points(L, rng, 2), points(L, rng, 2)
        if len(xs) == 2 and len(ys) == 2:
            rects.append(((xs[0], xs[1]), (ys[0], ys[1])))
    return RectangleSet.from_rectangles(L, rects)


def shuffled_encoding(P: RectangleSet, rng: random.Random) -> list[tuple[tuple[Vec, Vec], tuple[Vec, Vec]]]:
    """The same set as an overlapping, split-up list of rectangles."""
    L = P.lattice
    out = []
    for (x0, x1), (y0, y1) in P.rectangles():
        mx = _between(L, x0, x1, rng)
        my = _between(L, y0, y1, rng)
        for xs in ((x0, mx), (mx, x1)):
            for ys in ((y0, my), (my, y1)):
                out.append((xs, ys))
        out.append(((x0, x1), (y0, y1)))
    rng.shuffle(out)
    return out


def _between(L: Lattice, a: Vec, b: Vec, rng: random.Random) -> Vec:
    for _ in range(200):
        p = point(L, rng)
        if L.cmp(a, p) < 0 and L.cmp(p, b) < 0:
            return p
    return a


def balanced_product(L: Lattice, rng: random.Random, pairs: int | None = None) -> iet.IetMap:
    """Product of restricted rotations of types (a, b) and (b, a) at random positions."""
    pairs = pairs or rng.randint(1, 2)
    factors = []
    for _ in range(pairs):
        r = random_rotation(L, rng)
        a, b = iet.rotation_type(r)
        total = vadd(a, b)
        o = positive(L, rng, vsub(L.one, total)) if L.cmp(total, L.one) < 0 else L.zero
        if L.cmp(vadd(o, total), L.one) > 0:
            o = L.zero
        factors += [r, iet.restricted_rotation(L, b, a, o)]
    rng.shuffle(factors)
    return iet.product(factors)
