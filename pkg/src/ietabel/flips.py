"""Interval exchanges with flips, modulo finitely supported permutations.

Maps act on open intervals, so two maps that differ at finitely many points are
equal here.  ``compose(f, g)`` is ``f∘g`` (g first), as in :mod:`ietabel.iet`.
"""

from __future__ import annotations

import functools
import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import config
from .alg2 import SW2Mod2, T2Mod2, mod2, project
from .errors import NotDense, NotOrientationPreserving, NotRepresentableOverS, OutOfRange
from .iet import (Finite, IetMap, Order, _sum_outer, invariant_partition, restricted_rotation,
                  signature, signed_interval_order)
from .iet import order as iet_order
from .lattice import IndependentSet, Lattice, LatticeLike, Vec, positive_basis, vadd, vsub
from .piecewise import Piecewise, _compose, _inverse
from .regions import RectangleSet

FLIP_ORDER_BUDGET = 4096


class FlipMap(Piecewise):
    """Piecewise isometry of [0, 1) in canonical (minimal) form."""

    __slots__ = ()


# -- constructors ---------------------------------------------------------------

def identity(L: Lattice) -> FlipMap:
    return FlipMap._identity(L)


def from_description(L: Lattice, alpha: Sequence[LatticeLike], tau: Sequence[int],
                     signs: Sequence[int]) -> FlipMap:
    return FlipMap._from_description(L, alpha, tau, signs)


def reflection(L: Lattice, start: LatticeLike, end: LatticeLike) -> FlipMap:
    """The [start, end)-reflection: reverses the interval, identity elsewhere."""
    x, y = L.vec(start), L.vec(end)
    if L.sign(x) < 0 or L.cmp(x, y) >= 0 or L.cmp(y, L.one) > 0:
        raise OutOfRange("reflection interval must satisfy 0 <= start < end <= 1")
    pieces = []
    if any(x):
        pieces.append((x, L.zero, 1))
    pieces.append((vsub(y, x), x, -1))
    if y != L.one:
        pieces.append((vsub(L.one, y), y, 1))
    return FlipMap._build(L, pieces)


def embed(f: IetMap) -> FlipMap:
    return FlipMap(f.lattice, f.lengths, f.tau, f.signs)


def try_unflip(f: FlipMap) -> IetMap:
    if any(s < 0 for s in f.signs):
        raise NotOrientationPreserving("map reverses some interval")
    return IetMap(f.lattice, f.lengths, f.tau, f.signs)


def _as_flip(f: Piecewise) -> FlipMap:
    return f if isinstance(f, FlipMap) else embed(f)


# -- group law --------------------------------------------------------------------

def compose(f: Piecewise, g: Piecewise) -> FlipMap:
    return _compose(_as_flip(f), _as_flip(g), FlipMap)


def inverse(f: Piecewise) -> FlipMap:
    return _inverse(_as_flip(f), FlipMap)


def equals(f: Piecewise, g: Piecewise) -> bool:
    f.lattice.check_same(g.lattice)
    return f.key() == g.key()


def product(factors: Iterable[Piecewise], L: Lattice | None = None) -> FlipMap:
    """f1∘f2∘...∘fn (the last factor acts first); identity when empty."""
    factors = list(factors)
    if not factors:
        if L is None:
            raise ValueError("empty product needs a lattice")
        return identity(L)
    acc = _as_flip(factors[-1])
    for h in reversed(factors[:-1]):
        acc = compose(h, acc)
    return acc


def power(f: Piecewise, k: int) -> FlipMap:
    f = _as_flip(f)
    if k < 0:
        f, k = inverse(f), -k
    acc = identity(f.lattice)
    while k:
        if k & 1:
            acc = compose(acc, f)
        f = compose(f, f)
        k >>= 1
    return acc


def conjugator(r: FlipMap, s: FlipMap) -> IetMap:
    """A restricted rotation h with h∘r∘h⁻¹ = s, for reflections r, s of one type."""
    (p, a), (q, b) = _reflection_data(r), _reflection_data(s)
    if a != b:
        raise ValueError("reflections of different types are not conjugate")
    L = r.lattice
    if p == q:
        return IetMap._identity(L)
    if L.cmp(p, q) < 0:
        return restricted_rotation(L, a, vsub(q, p), p)
    return _inverse(restricted_rotation(L, a, vsub(p, q), q), IetMap)


def _reflection_data(f: FlipMap) -> tuple[Vec, Vec]:
    flipped = [(s, length, d) for s, length, d, sg in f.pieces() if sg < 0]
    moved = [p for p in f.pieces() if p[3] > 0 and p[0] != p[2]]
    if len(flipped) != 1 or moved or flipped[0][0] != flipped[0][2]:
        raise ValueError("not a reflection")
    return flipped[0][0], flipped[0][1]


# -- positive substitutes ------------------------------------------------------------

def _partition(f: Piecewise, P: Sequence[LatticeLike] | None) -> tuple[Vec, ...]:
    if P is None:
        return f.lengths
    L = f.lattice
    return tuple(L.vec(a) for a in P)


def positive_substitute(f: Piecewise, P: Sequence[LatticeLike] | None = None) -> IetMap:
    """The IET sending each interval of P onto the same arrival interval by a translation."""
    pieces = f.split(_partition(f, P))
    return IetMap._build(f.lattice, [(length, d, 1) for _, length, d, _ in pieces])


def substitute_residual(f: Piecewise, P: Sequence[LatticeLike] | None = None) -> FlipMap:
    """r with f = r∘f⁺_P: the product of the reflections of the reversed arrival intervals."""
    L = f.lattice
    pieces = f.split(_partition(f, P))
    arrivals = sorted(((d, length, sg) for _, length, d, sg in pieces), key=functools.cmp_to_key(
        lambda u, v: L.cmp(u[0], v[0])))
    return FlipMap._build(L, [(length, d, sg) for d, length, sg in arrivals])


# -- the flip signature ------------------------------------------------------------------

def eps_flip(f: Piecewise) -> T2Mod2:
    """ω(E_f) mod 2 with E_f the symmetric inversion set."""
    L = f.lattice
    alpha, tau, signs = f.lengths, f.tau, f.signs
    pairs = []
    n = len(alpha)
    for j in range(n):
        for i in range(j):
            if tau[i] > tau[j]:
                pairs.append((alpha[i], alpha[j]))
                pairs.append((alpha[j], alpha[i]))
        if signs[j] < 0:
            pairs.append((alpha[j], alpha[j]))
    return mod2(_sum_outer(L, pairs))


def inversion_set(f: Piecewise) -> RectangleSet:
    """E_f = E_{f⁺} ∪ s(E_{f⁺}) ∪ ⋃_{I flipped} I × I on the minimal partition."""
    L = f.lattice
    ps = f.pieces()
    rects = []
    for j, (sj, lj, _, sgj) in enumerate(ps):
        Ij = (sj, vadd(sj, lj))
        for i in range(j):
            if f.tau[i] > f.tau[j]:
                Ii = (ps[i][0], vadd(ps[i][0], ps[i][1]))
                rects.append((Ii, Ij))
                rects.append((Ij, Ii))
        if sgj < 0:
            rects.append((Ij, Ij))
    return RectangleSet.from_rectangles(L, rects)


def in_ker_eps_flip(f: Piecewise) -> bool:
    return eps_flip(f).is_zero()


# -- the positive contribution -------------------------------------------------------------

@dataclass(frozen=True)
class PsiValue:
    value: SW2Mod2
    basis: IndependentSet

    def is_zero(self) -> bool:
        return self.value.is_zero()

    def render(self) -> str:
        return self.value.render()

    __str__ = render


def _expansion(S: IndependentSet, a: Vec) -> tuple[int, ...]:
    coeffs = S.expand(a)
    if coeffs is None:
        raise NotRepresentableOverS(f"{S.lattice.num(a)} is not an N-combination of the set")
    return coeffs


def block_reversal(S: IndependentSet, a: Vec) -> SW2Mod2:
    """Q_S(a): the mod-2 signature of reversing the order of the S-blocks of an a-interval."""
    L = S.lattice
    c = _expansion(S, a)
    pairs = []
    for k, s in enumerate(S.vectors):
        if c[k] * (c[k] - 1) // 2 % 2:
            pairs.append((s, s))
        for m in range(k + 1, len(c)):
            if c[k] * c[m] % 2:
                pairs.append((s, S.vectors[m]))
    return mod2(project(_sum_outer(L, pairs)))


def psi_at(f: Piecewise, S: IndependentSet) -> SW2Mod2:
    """ψ_S(f) = ε(f⁺ on an S-refinement) mod 2, in closed form.

    Refining a flipped interval into S-blocks reverses the blocks in the
    substitute, which adds Q_S of its length to the minimal-partition value.
    """
    f.lattice.check_same(S.lattice)
    value = mod2(signature(positive_substitute(f)))
    for a, sg in zip(f.lengths, f.signs):
        if sg < 0:
            value = value + block_reversal(S, a)
        else:
            _expansion(S, a)
    return value


def s_partition(f: Piecewise, S: IndependentSet, rng: random.Random | None = None) -> tuple[Vec, ...]:
    """Refine the minimal partition into S-intervals, in S order or shuffled per interval."""
    out = []
    for a in f.lengths:
        blocks = [s for c, s in zip(_expansion(S, a), S.vectors) for _ in range(c)]
        if rng is not None:
            rng.shuffle(blocks)
        out.extend(blocks)
    return tuple(out)


def psi_refined(f: Piecewise, S: IndependentSet, rng: random.Random | None = None) -> SW2Mod2:
    """ψ_S(f) computed literally from the positive substitute on an S-partition."""
    return mod2(signature(positive_substitute(f, s_partition(f, S, rng))))


def canonical_basis(L: Lattice, lengths: Iterable[Vec]) -> IndependentSet:
    """Positive basis of the lattice covering the given lengths, from their sorted distinct values."""
    distinct = L.sorted(set(lengths))
    return positive_basis(L, distinct)


def psi(f: Piecewise) -> PsiValue:
    S = canonical_basis(f.lattice, f.lengths)
    return PsiValue(psi_at(f, S), S)


def psi_discrepancy(f: Piecewise, S: IndependentSet, T: IndependentSet) -> SW2Mod2:
    """ψ_T(f) - ψ_S(f) for S inside the N-span of T: Q_T of the total reversed length."""
    L = f.lattice
    flipped = L.zero
    for a, sg in zip(f.lengths, f.signs):
        if sg < 0:
            flipped = vadd(flipped, a)
    if flipped == L.zero:
        return SW2Mod2.zero(L)
    # Δ is additive mod 2 with Δ(s) = Q_T(s) on the elements of S.
    total = SW2Mod2.zero(L)
    for c, s in zip(_expansion(S, flipped), S.vectors):
        if c % 2:
            total = total + block_reversal(T, s)
    return total


def _check_dense(f: Piecewise) -> None:
    if not f.lattice.dense:
        raise NotDense("the abelianization of the flip group is computed for dense lattices")


def in_derived_flip(f: Piecewise) -> bool:
    _check_dense(f)
    return eps_flip(f).is_zero() and psi(f).is_zero()


def ab_image(f: Piecewise) -> tuple[T2Mod2, PsiValue]:
    _check_dense(f)
    return eps_flip(f), psi(f)


def ab_images(elements: Sequence[Piecewise]) -> list[tuple[T2Mod2, SW2Mod2]]:
    """(ε⋈, ψ_S) for several elements under one S covering all their lengths.

    Per-element bases are not comparable: outside Ker ε⋈ the value of ψ_S moves
    with S, so spans and sums need the common basis.
    """
    if not elements:
        return []
    L = elements[0].lattice
    _check_dense(elements[0])
    S = canonical_basis(L, [a for f in elements for a in f.lengths])
    return [(eps_flip(f), psi_at(f, S)) for f in elements]


def same_coset(f: Piecewise, g: Piecewise) -> bool:
    """f and g agree modulo the derived subgroup."""
    return in_derived_flip(compose(f, inverse(g)))


# -- order ----------------------------------------------------------------------------

def order_flip(f: Piecewise) -> Order:
    """Finite when some associated partition is permuted with signs; a cycle whose
    sign product is -1 contributes twice its length.  Without such a partition
    within the budget the order is unknown, as no flip analogue of the
    interval-permutation criterion for infinite order is available."""
    f = _as_flip(f)
    if all(s > 0 for s in f.signs):
        return iet_order(try_unflip(f))
    budget = config.budget(FLIP_ORDER_BUDGET)
    P = invariant_partition(f, budget)
    if P is None:
        return Order("unknown", budget)
    n = signed_interval_order(f, P)
    if not power(f, n).is_identity():
        raise AssertionError("signed interval permutation order does not annihilate f")
    return Finite(n)

