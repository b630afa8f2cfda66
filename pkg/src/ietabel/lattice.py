"""Finitely generated subgroups of R containing 1.

A :class:`Lattice` fixes a Z-basis e_1..e_d.  Downstream modules represent
lattice elements by their integer coordinate tuples ("vectors"), which keeps
group arithmetic on plain ``int`` tuples; the lattice supplies exact order
comparison of vectors.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cmp_to_key
from math import gcd
from typing import Iterable, Sequence, Union

from . import config
from .errors import BudgetExceeded, MixedContexts, NotDense, NotInLattice
from .ground import Field, GroundNum, _common_denominator

Vec = tuple[int, ...]
LatticeLike = Union[GroundNum, int, Fraction, Sequence[int]]

INDEPENDENTIZE_BUDGET = 10_000
COEFF_GROWTH_BITS = 40


# -- small integer linear algebra --------------------------------------------

def hermite_normal_form(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Row-style HNF of an integer matrix, zero rows dropped.

    Pivots are positive and entries above a pivot lie in ``[0, pivot)``.
    """
    a = [list(r) for r in rows if any(r)]
    if not a:
        return []
    ncols = len(a[0])
    out: list[list[int]] = []
    r0 = 0
    for c in range(ncols):
        # Euclid down column c among rows r0.. until a single nonzero remains.
        while True:
            nz = [i for i in range(r0, len(a)) if a[i][c] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(a[i][c]))
            a[r0], a[piv] = a[piv], a[r0]
            done = True
            for i in range(r0 + 1, len(a)):
                if a[i][c]:
                    q = a[i][c] // a[r0][c]
                    a[i] = [x - q * y for x, y in zip(a[i], a[r0])]
                    if a[i][c]:
                        done = False
            if done:
                break
        if r0 < len(a) and a[r0][c] != 0:
            if a[r0][c] < 0:
                a[r0] = [-x for x in a[r0]]
            for i in range(r0):
                q = a[i][c] // a[r0][c]
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[r0])]
            r0 += 1
            if r0 == len(a):
                break
    out = [row for row in a[:r0] if any(row)]
    return out


def _solve_rational(basis: Sequence[Sequence[Fraction]], target: Sequence[Fraction]) -> list[Fraction] | None:
    """Solve ``sum c_i basis_i = target`` for independent ``basis``; None if no solution."""
    k = len(basis)
    n = len(target)
    # Augmented system: columns = basis vectors, rows = coordinates.
    rows = [[Fraction(basis[i][j]) for i in range(k)] + [Fraction(target[j])] for j in range(n)]
    piv_cols = []
    r = 0
    for c in range(k):
        p = next((i for i in range(r, n) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pv = rows[r][c]
        rows[r] = [v / pv for v in rows[r]]
        for i in range(n):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [v - f * w for v, w in zip(rows[i], rows[r])]
        piv_cols.append(c)
        r += 1
    if any(rows[i][k] != 0 for i in range(r, n)):
        return None
    sol = [Fraction(0)] * k
    for i, c in enumerate(piv_cols):
        sol[c] = rows[i][k]
    return sol


def rank(vectors: Sequence[Sequence[int]]) -> int:
    return len(hermite_normal_form(vectors))


def vadd(u: Vec, v: Vec) -> Vec:
    return tuple(x + y for x, y in zip(u, v))


def vsub(u: Vec, v: Vec) -> Vec:
    return tuple(x - y for x, y in zip(u, v))


def vneg(u: Vec) -> Vec:
    return tuple(-x for x in u)


def vscale(k: int, u: Vec) -> Vec:
    return tuple(k * x for x in u)


def vsum(vectors: Iterable[Vec], d: int) -> Vec:
    acc = [0] * d
    for v in vectors:
        for i, x in enumerate(v):
            acc[i] += x
    return tuple(acc)


# -- lattice ---------------------------------------------------------------

class Lattice:
    """Z-span of ``basis`` inside ``field``; must contain 1."""

    def __init__(self, field: Field, basis: Sequence[GroundNum]):
        self.field = field
        self.basis: tuple[GroundNum, ...] = tuple(field.coerce(b) for b in basis)
        self.d = len(self.basis)
        if self.d == 0:
            raise ValueError("a lattice needs at least one basis element")
        if rank([[int(c * _common_denominator(b.coords)) for c in b.coords] for b in self.basis]) != self.d:
            raise ValueError("basis is not linearly independent")
        den = 1
        for b in self.basis:
            d = _common_denominator(b.coords)
            den = den * d // gcd(den, d)
        self._den = den
        # Integer matrix: row i = den * coords(e_i).
        self._m = tuple(tuple(int(c * den) for c in b.coords) for b in self.basis)
        self._basis_cols = [[c for c in b.coords] for b in self.basis]
        self.one: Vec = self._coords_or_none(field.one) or self._missing_one()
        self.dense = self.d >= 2

    def _missing_one(self):
        raise NotInLattice("1 is not in the span of the basis")

    # -- identity -------------------------------------------------------

    def _key(self):
        return (self.field, tuple(b.coords for b in self.basis))

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        return isinstance(other, Lattice) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return f"Lattice(d={self.d}, basis=[{', '.join(str(b) for b in self.basis)}])"

    def check_same(self, other: "Lattice") -> None:
        if other is not self and other != self:
            raise MixedContexts("values over different lattices")

    # -- coordinates ----------------------------------------------------

    def _coords_or_none(self, x: GroundNum) -> Vec | None:
        sol = _solve_rational(self._basis_cols, x.coords)
        if sol is None or any(c.denominator != 1 for c in sol):
            return None
        return tuple(int(c) for c in sol)

    def coords(self, x: GroundNum | int | Fraction) -> Vec:
        x = self.field.coerce(x)
        c = self._coords_or_none(x)
        if c is None:
            raise NotInLattice(f"{x} is not in the lattice")
        return c

    def vec(self, x: LatticeLike) -> Vec:
        """Coordinates of ``x``; integer tuples are taken as coordinates already."""
        if isinstance(x, tuple) or isinstance(x, list):
            if len(x) != self.d or not all(isinstance(c, int) for c in x):
                raise ValueError(f"expected {self.d} integer coordinates, got {x!r}")
            return tuple(x)
        return self.coords(x)

    def num(self, v: Vec) -> GroundNum:
        acc = [Fraction(0)] * self.field.degree
        for c, b in zip(v, self.basis):
            if c:
                for j, y in enumerate(b.coords):
                    acc[j] += c * y
        return GroundNum(self.field, tuple(acc))

    @property
    def zero(self) -> Vec:
        return (0,) * self.d

    def unit(self, i: int) -> Vec:
        return tuple(1 if j == i else 0 for j in range(self.d))

    # -- order ----------------------------------------------------------

    def sign(self, v: Vec) -> int:
        if not any(v):
            return 0
        n = [0] * self.field.degree
        for c, row in zip(v, self._m):
            if c:
                for j, y in enumerate(row):
                    n[j] += c * y
        return self.field.sign_of_int_poly(n)

    def cmp(self, u: Vec, v: Vec) -> int:
        if u == v:
            return 0
        return self.sign(vsub(u, v))

    def lt(self, u: Vec, v: Vec) -> bool:
        return self.cmp(u, v) < 0

    def le(self, u: Vec, v: Vec) -> bool:
        return self.cmp(u, v) <= 0

    def sorted(self, vectors: Iterable[Vec]) -> list[Vec]:
        return sorted(vectors, key=cmp_to_key(self.cmp))

    def floor_div(self, x: Vec, m: Vec) -> int:
        """``floor(x / m)`` for ``m > 0``."""
        return (self.num(x) / self.num(m)).floor()

    def frac(self, x: Vec) -> Vec:
        """Representative of ``x`` modulo 1 in ``[0, 1)``."""
        k = self.num(x).floor()
        return vsub(x, vscale(k, self.one))

    def abs(self, x: Vec) -> Vec:
        return vneg(x) if self.sign(x) < 0 else x


def lattice_from_generators(field: Field, gens: Sequence[GroundNum | int | Fraction]) -> Lattice:
    """Z-basis (Hermite normal form) of the group generated by ``gens`` and 1."""
    elems = [field.coerce(g) for g in gens]
    if not any(g == 1 for g in elems):
        elems.append(field.one)
    den = 1
    for g in elems:
        d = _common_denominator(g.coords)
        den = den * d // gcd(den, d)
    rows = [[int(c * den) for c in g.coords] for g in elems]
    hnf = hermite_normal_form(rows)
    basis = [field(*(Fraction(c, den) for c in row)) for row in hnf]
    return Lattice(field, basis)


def coordinates_of(L: Lattice, x: GroundNum) -> Vec:
    return L.coords(x)


def divisible_by(L: Lattice, x: LatticeLike, k: int) -> bool:
    if k < 1:
        raise ValueError("k must be positive")
    return all(c % k == 0 for c in L.vec(x))


def small_positive(L: Lattice, bound: LatticeLike) -> GroundNum:
    """Some w in the lattice with ``0 < w < bound``, by Euclid steps on (1, y)."""
    return L.num(small_positive_vec(L, bound))


def small_positive_vec(L: Lattice, bound: LatticeLike) -> Vec:
    if not L.dense:
        raise NotDense("rank-1 lattice has a smallest positive element")
    if isinstance(bound, GroundNum) or isinstance(bound, (int, Fraction)):
        bnum = L.field.coerce(bound)
    else:
        bnum = L.num(L.vec(bound))
    if bnum.sign() <= 0:
        raise ValueError("bound must be positive")
    # Any basis vector independent of 1 gives an irrational partner for 1.
    y = next(L.unit(i) for i in range(L.d) if rank([L.one, L.unit(i)]) == 2)
    a, b = L.one, L.frac(y)
    while (L.num(b) - bnum).sign() >= 0:
        a, b = b, vsub(a, vscale(L.floor_div(a, b), b))
    return b


@dataclass(frozen=True)
class IndependentSet:
    """Positive, Z-independent lattice elements with stored N-expansions."""

    lattice: Lattice
    vectors: tuple[Vec, ...]
    expansions: dict = dc_field(default_factory=dict, compare=False, hash=False)

    @property
    def elements(self) -> tuple[GroundNum, ...]:
        return tuple(self.lattice.num(v) for v in self.vectors)

    def __len__(self) -> int:
        return len(self.vectors)

    def solve(self, x: LatticeLike) -> tuple[Fraction, ...] | None:
        v = self.lattice.vec(x)
        sol = _solve_rational(self.vectors, v)
        return None if sol is None else tuple(sol)

    def expand(self, x: LatticeLike) -> tuple[int, ...] | None:
        """N-coefficients of ``x`` over the set, or None if there are none."""
        v = self.lattice.vec(x)
        if v in self.expansions:
            return self.expansions[v]
        sol = _solve_rational(self.vectors, v)
        if sol is None or any(c.denominator != 1 or c < 0 for c in sol):
            return None
        return tuple(int(c) for c in sol)

    def verify(self) -> None:
        L = self.lattice
        if rank(self.vectors) != len(self.vectors):
            raise AssertionError("set is not independent")
        if any(L.sign(v) <= 0 for v in self.vectors):
            raise AssertionError("set has a non-positive element")
        for target, coeffs in self.expansions.items():
            if any(c < 0 for c in coeffs):
                raise AssertionError("negative expansion coefficient")
            if vsum((vscale(c, s) for c, s in zip(coeffs, self.vectors)), L.d) != target:
                raise AssertionError("expansion does not re-evaluate to its target")


def _finish(L: Lattice, elements: Sequence[Vec], targets: Sequence[Vec]) -> IndependentSet:
    S = IndependentSet(L, tuple(elements))
    for t in targets:
        coeffs = S.expand(t)
        if coeffs is None:
            raise AssertionError("target not covered by the constructed set")
        S.expansions[t] = coeffs
    S.verify()
    return S


def _targets(L: Lattice, targets: Sequence[LatticeLike]) -> list[Vec]:
    vs = [L.vec(t) for t in targets]
    for v in vs:
        if L.sign(v) <= 0:
            raise ValueError("targets must be positive")
    return vs


def _reduce_by_smallest(L: Lattice, vs: list[Vec], rounds: int) -> list[Vec] | None:
    current = list(dict.fromkeys(vs))
    # Dependent inputs can shrink forever; stop once coordinates blow up.
    limit = max(abs(c) for v in current for c in v) << COEFF_GROWTH_BITS
    for _ in range(rounds):
        if rank(current) == len(current):
            return current
        if any(abs(c) > limit for v in current for c in v):
            return None
        m = min(current, key=cmp_to_key(L.cmp))
        nxt = [m]
        for x in current:
            if x == m:
                continue
            r = vsub(x, vscale(L.floor_div(x, m), m))
            if any(r) and r not in nxt:
                nxt.append(r)
        current = nxt
    return current if rank(current) == len(current) else None


def _orient(L: Lattice, vectors: Sequence[Vec]) -> list[Vec]:
    return [L.abs(v) for v in vectors]


def _cover(L: Lattice, basis: list[Vec], targets: Sequence[Vec], budget: int) -> list[Vec]:
    """Subtractive moves on a positive basis until every target has N-coordinates.

    A move replaces the larger of two basis vectors by their difference; this
    keeps the basis positive, unimodular, and its N-span only grows.  Each pair
    of opposite-signed coordinates is resolved by a Euclid run whose coefficient
    sum strictly decreases, so the loop terminates.
    """
    basis = list(basis)
    steps = 0
    for t in targets:
        while True:
            c = [int(x) for x in _solve_rational(basis, t)]
            pos = [i for i, x in enumerate(c) if x > 0]
            neg = [i for i, x in enumerate(c) if x < 0]
            if not neg:
                break
            i, j = pos[0], neg[0]
            while c[i] * c[j] < 0:
                steps += 1
                if steps > budget:
                    raise BudgetExceeded(f"positive basis search exceeded {budget} steps")
                if L.cmp(basis[i], basis[j]) > 0:
                    big, small = i, j
                else:
                    big, small = j, i
                need = -(-abs(c[small]) // abs(c[big]))
                k = max(1, min(L.floor_div(basis[big], basis[small]), need))
                basis[big] = vsub(basis[big], vscale(k, basis[small]))
                c[small] += k * c[big]
    return basis


def independentize(L: Lattice, targets: Sequence[LatticeLike]) -> IndependentSet:
    """Independent positive set whose N-span contains every target.

    Reduce-by-smallest is tried first.  If it has not reached an independent set
    within the budget, a subtractive basis refinement of the targets' span is
    used instead, which always terminates.
    """
    vs = _targets(L, targets)
    budget = config.budget(INDEPENDENTIZE_BUDGET)
    reduced = _reduce_by_smallest(L, vs, budget)
    if reduced is None:
        span = hermite_normal_form(vs)
        reduced = _cover(L, _orient(L, [tuple(r) for r in span]), vs, budget * 100)
    return _finish(L, reduced, vs)


def positive_basis(L: Lattice, targets: Sequence[LatticeLike] = ()) -> IndependentSet:
    """Positive Z-basis of the whole lattice whose N-span contains every target."""
    vs = _targets(L, targets)
    budget = config.budget(INDEPENDENTIZE_BUDGET)
    start = _orient(L, [L.unit(i) for i in range(L.d)])
    return _finish(L, _cover(L, start, vs, budget * 100), vs)
