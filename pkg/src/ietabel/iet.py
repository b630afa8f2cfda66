"""The group IET(Γ): interval exchanges with lengths and breakpoints in a lattice.

``compose(f, g)`` is ``f∘g`` (g is applied first).  ``product([f1, ..., fn])``
is ``f1∘f2∘...∘fn``; every decomposition returns its factors in that order.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import config
from .alg2 import SW2, T2, project
from .errors import BudgetExceeded, NotAssociated, NotDense, NotInSAFKernel, NotRepresentable, OutOfRange, Overlap
from .lattice import Lattice, LatticeLike, Vec, independentize, positive_basis, small_positive_vec, vadd, vscale, vsub
from .piecewise import Piecewise, _compose, _inverse, partition_from_cuts
from .regions import RectangleSet

DECOMPOSE_BUDGET = 100_000


class IetMap(Piecewise):
    """Orientation-preserving interval exchange in canonical (minimal) form."""

    __slots__ = ()


# -- constructors ---------------------------------------------------------------

def identity(L: Lattice) -> IetMap:
    return IetMap._identity(L)


def from_description(L: Lattice, alpha: Sequence[LatticeLike], tau: Sequence[int]) -> IetMap:
    """Map with f(I_i) = J_tau[i]; ``tau`` is 0-based."""
    return IetMap._from_description(L, alpha, tau)


def _support_pieces(L: Lattice, moves: list[tuple[Vec, Vec, Vec]]) -> IetMap:
    """Map that is the identity except on the listed (start, length, image start) blocks."""
    pieces = []
    pos = L.zero
    for start, length, dst in sorted(moves, key=_cmp_key(L)):
        if L.cmp(start, pos) < 0:
            raise Overlap("moved intervals overlap")
        if L.cmp(pos, start) < 0:
            pieces.append((vsub(start, pos), pos, 1))
        pieces.append((length, dst, 1))
        pos = vadd(start, length)
    if L.cmp(pos, L.one) > 0:
        raise OutOfRange("support leaves [0, 1)")
    if L.cmp(pos, L.one) < 0:
        pieces.append((vsub(L.one, pos), pos, 1))
    return IetMap._build(L, pieces)


def _cmp_key(L: Lattice):
    import functools
    return functools.cmp_to_key(lambda u, v: L.cmp(u[0], v[0]))


def _check_nonneg(L: Lattice, *xs: Vec) -> None:
    for x in xs:
        if L.sign(x) < 0:
            raise OutOfRange("negative position")


def _check_pos(L: Lattice, *xs: Vec) -> None:
    for x in xs:
        if L.sign(x) <= 0:
            raise OutOfRange("lengths must be positive")


def restricted_rotation(L: Lattice, a: LatticeLike, b: LatticeLike, offset: LatticeLike = 0) -> IetMap:
    """Translation by b on [o, o+a) and by -a on [o+a, o+a+b)."""
    a, b, o = L.vec(a), L.vec(b), L.vec(offset)
    _check_pos(L, a, b)
    _check_nonneg(L, o)
    return _support_pieces(L, [(o, a, vadd(o, b)), (vadd(o, a), b, o)])


def transposition(L: Lattice, a: LatticeLike, pos1: LatticeLike, pos2: LatticeLike) -> IetMap:
    """Swap of [pos1, pos1+a) and [pos2, pos2+a) by translations."""
    a, p, q = L.vec(a), L.vec(pos1), L.vec(pos2)
    _check_pos(L, a)
    _check_nonneg(L, p, q)
    if p == q:
        raise Overlap("transposition intervals coincide")
    return _support_pieces(L, [(p, a, q), (q, a, p)])


# -- group law --------------------------------------------------------------------

def compose(f: IetMap, g: IetMap) -> IetMap:
    return _compose(f, g, IetMap)


def inverse(f: IetMap) -> IetMap:
    return _inverse(f, IetMap)


def apply(f: IetMap, x: LatticeLike):
    return f.apply(x)


def equals(f: IetMap, g: IetMap) -> bool:
    f.lattice.check_same(g.lattice)
    return f.key() == g.key()


def product(factors: Iterable[IetMap], L: Lattice | None = None) -> IetMap:
    """f1∘f2∘...∘fn (the last factor acts first); identity when empty."""
    factors = list(factors)
    if not factors:
        if L is None:
            raise ValueError("empty product needs a lattice")
        return identity(L)
    acc = factors[-1]
    for h in reversed(factors[:-1]):
        acc = compose(h, acc)
    return acc


def power(f: IetMap, k: int) -> IetMap:
    if k < 0:
        return power(inverse(f), -k)
    acc = type(f)._identity(f.lattice)
    base = f
    while k:
        if k & 1:
            acc = _compose(acc, base, type(f))
        base = _compose(base, base, type(f))
        k >>= 1
    return acc


# -- invariants -------------------------------------------------------------------

def _description(f: Piecewise, partition: Sequence[LatticeLike] | None):
    if partition is None:
        return f.lengths, f.tau, f.signs
    L = f.lattice
    return f.description_on([L.vec(a) for a in partition])


def _sum_outer(L: Lattice, pairs: Iterable[tuple[Vec, Vec]]) -> T2:
    d = L.d
    m = [[0] * d for _ in range(d)]
    for u, v in pairs:
        for i, x in enumerate(u):
            if x:
                row = m[i]
                for j, y in enumerate(v):
                    row[j] += x * y
    return T2(L, tuple(tuple(r) for r in m))


def _inversions(tau: Sequence[int]) -> Iterable[tuple[int, int]]:
    n = len(tau)
    for j in range(n):
        for i in range(j):
            if tau[i] > tau[j]:
                yield i, j


def saf(f: IetMap, partition: Sequence[LatticeLike] | None = None) -> SW2:
    """φ(f) = Σ_j v(j)∧α_j with v(j) the translation on the j-th interval."""
    alpha, tau, _ = _description(f, partition)
    L = f.lattice
    n = len(alpha)
    inv = sorted(range(n), key=lambda i: tau[i])
    dst = [None] * n
    pos = L.zero
    for i in inv:
        dst[i] = pos
        pos = vadd(pos, alpha[i])
    src = L.zero
    pairs = []
    for j in range(n):
        pairs.append((vsub(dst[j], src), alpha[j]))
        src = vadd(src, alpha[j])
    return project(_sum_outer(L, pairs))


def signature(f: IetMap, partition: Sequence[LatticeLike] | None = None) -> SW2:
    """ε(f) = Σ_{i<j, τ(i)>τ(j)} α_i∧α_j."""
    alpha, tau, _ = _description(f, partition)
    return project(_sum_outer(f.lattice, ((alpha[i], alpha[j]) for i, j in _inversions(tau))))


def inversion_rectangles(f: IetMap) -> RectangleSet:
    """E_f = {(x, y) : x < y, f(x) > f(y)} as a union of I_i × I_j."""
    ps = f.pieces()
    rects = []
    for i, j in _inversions(f.tau):
        si, li = ps[i][0], ps[i][1]
        sj, lj = ps[j][0], ps[j][1]
        rects.append(((si, vadd(si, li)), (sj, vadd(sj, lj))))
    return RectangleSet.from_rectangles(f.lattice, rects)


def in_ker_saf(f: IetMap) -> bool:
    return saf(f).is_zero()


def in_derived(f: IetMap) -> bool:
    return signature(f).is_zero()


# -- order ----------------------------------------------------------------------

@dataclass(frozen=True)
class Order:
    kind: str  # "finite", "infinite" or "unknown"
    value: int | None = None  # the order, or the budget for "unknown"

    def __str__(self) -> str:
        if self.kind == "finite":
            return str(self.value)
        if self.kind == "infinite":
            return "infinite"
        return f"unknown (budget {self.value})"


def Finite(n: int) -> Order:
    return Order("finite", n)


INFINITE = Order("infinite")


ORDER_BUDGET = 4096


def invariant_partition(f: Piecewise, max_pieces: int) -> tuple[Vec, ...] | None:
    """Coarsest partition refining the minimal one with f(P) = P, or None past the budget.

    It exists exactly when f has finite order: the cut points are closed under f
    and the forward orbits of the original cuts are then finite.
    """
    L = f.lattice
    P = f.lengths
    cuts = f.cuts()
    while True:
        Q = f.image_partition(P)
        image_cuts = _cuts_of(L, Q)
        if image_cuts <= cuts:
            return P
        cuts |= image_cuts
        if len(cuts) + 1 > max_pieces:
            return None
        P = partition_from_cuts(L, cuts)


def _cuts_of(L: Lattice, lengths: Sequence[Vec]) -> set[Vec]:
    out = set()
    pos = L.zero
    for a in lengths[:-1]:
        pos = vadd(pos, a)
        out.add(pos)
    return out


def signed_interval_order(f: Piecewise, P: Sequence[Vec]) -> int:
    """Order of f when it permutes the intervals of P: lcm over cycles, doubled for odd flips."""
    pieces = f.split(P)
    index = {p[0]: k for k, p in enumerate(pieces)}
    perm = [index[p[2]] for p in pieces]
    total = 1
    for c in cycles(perm):
        flips = sum(1 for k in c if pieces[k][3] < 0)
        total = math.lcm(total, len(c) * (2 if flips % 2 else 1))
    return total


def cycles(perm: Sequence[int]) -> list[list[int]]:
    seen = [False] * len(perm)
    out = []
    for i in range(len(perm)):
        if not seen[i]:
            c = []
            j = i
            while not seen[j]:
                seen[j] = True
                c.append(j)
                j = perm[j]
            out.append(c)
    return out


def order(f: IetMap) -> Order:
    """Finite order iff some associated partition is permuted by f.

    A non-zero SAF invariant certifies infinite order, since finite-order
    elements are products of transpositions.  Without either certificate
    within the budget the order is reported as unknown.
    """
    budget = config.budget(ORDER_BUDGET)
    if not saf(f).is_zero():
        return INFINITE
    P = invariant_partition(f, budget)
    if P is None:
        return Order("unknown", budget)
    n = signed_interval_order(f, P)
    if not power(f, n).is_identity():
        raise AssertionError("interval permutation order does not annihilate f")
    return Finite(n)


# -- the two-transposition construction ------------------------------------------------

def two_transposition_example(L: Lattice, n: int, x: LatticeLike = 0) -> tuple[IetMap, IetMap]:
    """Transpositions f, g with compose(g, f) (f first) of order exactly n."""
    if n < 1:
        raise ValueError("n must be at least 1")
    x = L.vec(x)
    room = L.num(vsub(L.one, x))
    slots = max(n, 2)
    u = small_positive_vec(L, room / slots) if L.dense else L.abs(L.unit(0))
    if L.sign(x) < 0 or L.cmp(vadd(x, vscale(slots, u)), L.one) > 0:
        raise NotRepresentable(f"no slot of length at most {room}/{slots} in the lattice")
    if n == 1:
        f = transposition(L, u, x, vadd(x, u))
        return f, f
    at = lambda k: vadd(x, vscale(k, u))  # noqa: E731
    if n % 2 == 0:
        m = n // 2
        ell = vscale(m, u)
        g = transposition(L, ell, x, at(m))
        if m == 1:
            f = identity(L)
        else:
            f = transposition(L, vscale(m - 1, u), x, at(m + 1))
        return f, g
    m = (n + 1) // 2
    span = vscale(m - 1, u)
    g = transposition(L, span, x, at(m - 1))
    f = transposition(L, span, x, at(m))
    return f, g


# -- decompositions ---------------------------------------------------------------

def rotation_data(f: IetMap) -> tuple[Vec, Vec, Vec] | None:
    """(offset, a, b) if f is a restricted rotation of type (a, b), else None."""
    moved = [k for k, (s, _, d, _) in enumerate(f.pieces()) if s != d]
    if len(moved) != 2 or moved[1] != moved[0] + 1:
        return None
    ps = f.pieces()
    (s0, a, d0, _), (s1, b, d1, _) = ps[moved[0]], ps[moved[1]]
    if d1 != s0 or d0 != vadd(s0, b):
        return None
    return s0, a, b


def rotation_type(f: IetMap) -> tuple[Vec, Vec]:
    data = rotation_data(f)
    if data is None:
        raise ValueError("not a restricted rotation")
    return data[1], data[2]


def transposition_data(f: IetMap) -> tuple[Vec, Vec, Vec] | None:
    """(a, pos1, pos2) if f swaps two disjoint intervals of length a, else None."""
    ps = f.pieces()
    moved = [p for p in ps if p[0] != p[2]]
    if len(moved) == 2:
        (s0, a, d0, _), (s1, b, d1, _) = moved
        if a == b and d0 == s1 and d1 == s0:
            return a, s0, s1
    data = rotation_data(f)
    if data is not None and data[1] == data[2]:
        return data[1], data[0], vadd(data[0], data[1])
    return None


def decompose_rotations(f: IetMap, partition: Sequence[LatticeLike] | None = None) -> list[IetMap]:
    """Restricted rotations of types in lengths(P)² whose product is f."""
    L = f.lattice
    alpha, tau, _ = _description(f, partition)
    arrangement = list(range(len(alpha)))
    swaps = []
    for slot in range(len(alpha)):
        p = arrangement.index(tau.index(slot))
        while p > slot:
            offset = L.zero
            for k in arrangement[:p - 1]:
                offset = vadd(offset, alpha[k])
            w, k = arrangement[p - 1], arrangement[p]
            swaps.append(restricted_rotation(L, alpha[w], alpha[k], offset))
            arrangement[p - 1], arrangement[p] = k, w
            p -= 1
    return swaps[::-1]


def _chunked_transposition(L: Lattice, a: Vec, p: Vec, q: Vec, w: Vec, out: list[IetMap], budget: list[int]) -> None:
    """Split the swap of [p, p+a), [q, q+a) into commuting swaps of length at most w."""
    done = L.zero
    while L.cmp(done, a) < 0:
        rest = vsub(a, done)
        step = w if L.cmp(w, rest) < 0 else rest
        out.append(transposition(L, step, vadd(p, done), vadd(q, done)))
        done = vadd(done, step)
        budget[0] -= 1
        if budget[0] < 0:
            raise BudgetExceeded("decompose_small exceeded its factor budget")


def _small_rotation(L: Lattice, o: Vec, a: Vec, b: Vec, eps, w: Vec, out: list[IetMap], budget: list[int]) -> None:
    while True:
        if L.num(vadd(a, b)) <= eps:
            out.append(restricted_rotation(L, a, b, o))
            return
        c = L.cmp(a, b)
        if c == 0:
            _chunked_transposition(L, a, o, vadd(o, a), w, out, budget)
            return
        if c > 0:
            # rot(a, b)@o = T ∘ rot(a-b, b)@(o+b), T swapping [o, o+b) and [o+b, o+2b)
            _chunked_transposition(L, b, o, vadd(o, b), w, out, budget)
            o, a = vadd(o, b), vsub(a, b)
        else:
            # rot(a, b)@o = T ∘ rot(a, b-a)@o, T swapping [o+b-a, o+b) and [o+b, o+b+a)
            _chunked_transposition(L, a, vsub(vadd(o, b), a), vadd(o, b), w, out, budget)
            b = vsub(b, a)
        budget[0] -= 1
        if budget[0] < 0:
            raise BudgetExceeded("decompose_small exceeded its factor budget")


def in_small_family(f: IetMap, eps: LatticeLike) -> bool:
    """f is a rotation of type (a, b) with a+b <= eps or a transposition of type a with 2a <= eps."""
    L = f.lattice
    bound = L.field.coerce(eps)
    data = rotation_data(f)
    if data is not None and L.num(vadd(data[1], data[2])) <= bound:
        return True
    data = transposition_data(f)
    return data is not None and 2 * L.num(data[0]) <= bound


def decompose_small(f: IetMap, eps: LatticeLike) -> list[IetMap]:
    """Factors in F_eps whose product is f."""
    L = f.lattice
    if not L.dense:
        raise NotDense("small factors need a dense lattice")
    bound = L.field.coerce(eps)
    if bound.sign() <= 0:
        raise ValueError("eps must be positive")
    w = small_positive_vec(L, bound / 2)
    budget = [config.budget(DECOMPOSE_BUDGET)]
    out: list[IetMap] = []
    for r in decompose_rotations(f):
        o, a, b = rotation_data(r)
        _small_rotation(L, o, a, b, bound, w, out, budget)
    return out


def is_balanced(rotations: Iterable[IetMap]) -> bool:
    counts = Counter(rotation_type(r) for r in rotations)
    return all(counts[(a, b)] == counts[(b, a)] for a, b in counts)


def s_refinement(f: Piecewise, S) -> tuple[Vec, ...]:
    """Split each minimal-partition interval into S-intervals (S elements in order)."""
    out = []
    for a in f.lengths:
        coeffs = S.expand(a)
        if coeffs is None:
            raise NotAssociated("length not in the N-span of the set")
        for c, s in zip(coeffs, S.vectors):
            out.extend([s] * c)
    return tuple(out)


def decompose_balanced(f: IetMap) -> list[IetMap]:
    """A balanced tuple of restricted rotations whose product is f."""
    if not in_ker_saf(f):
        raise NotInSAFKernel(f"saf(f) = {saf(f)}")
    L = f.lattice
    targets = sorted(set(f.lengths), key=_cmp_key_vec(L))
    # Both sets are independent and cover the lengths; the coarser refinement
    # gives far fewer factors.
    candidates = [s_refinement(f, S) for S in (independentize(L, targets), positive_basis(L, targets))]
    factors = decompose_rotations(f, min(candidates, key=len))
    if not is_balanced(factors):
        raise AssertionError("rotation counts are not balanced")
    return factors


def _cmp_key_vec(L: Lattice):
    import functools
    return functools.cmp_to_key(L.cmp)


def support_measure(f: Piecewise):
    """λ of the set where f is not the identity."""
    L = f.lattice
    total = L.zero
    for s, length, d, sg in f.pieces():
        if s != d or sg < 0:
            total = vadd(total, length)
    return L.num(total)
