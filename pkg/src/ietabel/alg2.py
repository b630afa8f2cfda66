"""Value groups of the invariants, in coordinates of a lattice basis.

``T2`` is the tensor square, ``SW2`` the quotient by ``x⊗y + y⊗x`` (the
skew-symmetric square, whose diagonal ``e_i∧e_i`` is 2-torsion), ``Ext2`` the
exterior square, and ``T2Mod2`` / ``SW2Mod2`` the reductions modulo 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import MixedContexts, NotUnimodular
from .lattice import Lattice, LatticeLike, Vec


def _pairs(d: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(d) for j in range(i + 1, d)]


def _same(a, b) -> Lattice:
    if a.lattice is not b.lattice and a.lattice != b.lattice:
        raise MixedContexts("values over different lattices")
    return a.lattice


def _join(terms: list[tuple[int, str]]) -> str:
    if not terms:
        return "0"
    out = []
    for k, (c, label) in enumerate(terms):
        mag = abs(c)
        body = label if mag == 1 else f"{mag}·{label}"
        if k == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


@dataclass(frozen=True)
class T2:
    lattice: Lattice
    m: tuple[tuple[int, ...], ...]

    @classmethod
    def zero(cls, L: Lattice) -> "T2":
        return cls(L, tuple((0,) * L.d for _ in range(L.d)))

    @classmethod
    def outer(cls, L: Lattice, u: Vec, v: Vec) -> "T2":
        return cls(L, tuple(tuple(x * y for y in v) for x in u))

    def __add__(self, other: "T2") -> "T2":
        _same(self, other)
        return T2(self.lattice, tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(self.m, other.m)))

    def __sub__(self, other: "T2") -> "T2":
        return self + (-other)

    def __neg__(self) -> "T2":
        return T2(self.lattice, tuple(tuple(-x for x in r) for r in self.m))

    def __mul__(self, k: int) -> "T2":
        return T2(self.lattice, tuple(tuple(k * x for x in r) for r in self.m))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.m)

    def transpose(self) -> "T2":
        return T2(self.lattice, tuple(zip(*self.m)))

    def render(self) -> str:
        d = self.lattice.d
        return _join([(self.m[i][j], f"e{i + 1}⊗e{j + 1}") for i in range(d) for j in range(d) if self.m[i][j]])

    __str__ = render


@dataclass(frozen=True)
class SW2:
    """Normal form: ``upper[k]`` is the coefficient of e_i∧e_j for the k-th pair
    i<j in row-major order; ``diag[i]`` in {0,1} is the coefficient of e_i∧e_i."""

    lattice: Lattice
    upper: tuple[int, ...]
    diag: tuple[int, ...]

    @classmethod
    def zero(cls, L: Lattice) -> "SW2":
        return cls(L, (0,) * (L.d * (L.d - 1) // 2), (0,) * L.d)

    def coeff(self, i: int, j: int) -> int:
        """Coefficient of e_i∧e_j (0-based, i<j) or the diagonal bit (i==j)."""
        if i == j:
            return self.diag[i]
        if i > j:
            return -self.coeff(j, i)
        return self.upper[_pairs(self.lattice.d).index((i, j))]

    def __add__(self, other: "SW2") -> "SW2":
        _same(self, other)
        return SW2(self.lattice, tuple(x + y for x, y in zip(self.upper, other.upper)),
                   tuple((x + y) % 2 for x, y in zip(self.diag, other.diag)))

    def __neg__(self) -> "SW2":
        return SW2(self.lattice, tuple(-x for x in self.upper), self.diag)

    def __sub__(self, other: "SW2") -> "SW2":
        return self + (-other)

    def __mul__(self, k: int) -> "SW2":
        return SW2(self.lattice, tuple(k * x for x in self.upper), tuple((k * x) % 2 for x in self.diag))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.upper) and not any(self.diag)

    def is_torsion(self) -> bool:
        return not any(self.upper)

    def lift(self) -> T2:
        """A T2 representative: upper entries above the diagonal, bits on it."""
        d = self.lattice.d
        m = [[0] * d for _ in range(d)]
        for (i, j), c in zip(_pairs(d), self.upper):
            m[i][j] = c
        for i, b in enumerate(self.diag):
            m[i][i] = b
        return T2(self.lattice, tuple(tuple(r) for r in m))

    def terms(self) -> list[tuple[int, str]]:
        d = self.lattice.d
        out = []
        up = dict(zip(_pairs(d), self.upper))
        for i in range(d):
            if self.diag[i]:
                out.append((1, f"e{i + 1}∧e{i + 1}"))
            for j in range(i + 1, d):
                if up[(i, j)]:
                    out.append((up[(i, j)], f"e{i + 1}∧e{j + 1}"))
        return out

    def render(self, marker: bool = True) -> str:
        text = _join(self.terms())
        if marker and not self.is_zero() and self.is_torsion():
            text += " (torsion)"
        return text

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True)
class Ext2:
    lattice: Lattice
    upper: tuple[int, ...]

    def is_zero(self) -> bool:
        return not any(self.upper)

    def render(self) -> str:
        return _join([(c, f"e{i + 1}∧e{j + 1}") for (i, j), c in zip(_pairs(self.lattice.d), self.upper) if c])

    __str__ = render


class _Mod2:
    lattice: Lattice

    def bits(self) -> tuple[int, ...]:
        raise NotImplementedError

    def is_zero(self) -> bool:
        return not any(self.bits())


@dataclass(frozen=True)
class T2Mod2(_Mod2):
    lattice: Lattice
    m: tuple[tuple[int, ...], ...]

    @classmethod
    def zero(cls, L: Lattice) -> "T2Mod2":
        return cls(L, tuple((0,) * L.d for _ in range(L.d)))

    def bits(self) -> tuple[int, ...]:
        return tuple(x for r in self.m for x in r)

    def __add__(self, other: "T2Mod2") -> "T2Mod2":
        _same(self, other)
        return T2Mod2(self.lattice, tuple(tuple((x + y) % 2 for x, y in zip(r, s)) for r, s in zip(self.m, other.m)))

    __sub__ = __add__

    def render(self) -> str:
        d = self.lattice.d
        text = _join([(1, f"e{i + 1}⊗e{j + 1}") for i in range(d) for j in range(d) if self.m[i][j]])
        return text + " [mod 2]" if text != "0" else text

    __str__ = render


@dataclass(frozen=True)
class SW2Mod2(_Mod2):
    lattice: Lattice
    upper: tuple[int, ...]
    diag: tuple[int, ...]

    @classmethod
    def zero(cls, L: Lattice) -> "SW2Mod2":
        return cls(L, (0,) * (L.d * (L.d - 1) // 2), (0,) * L.d)

    def bits(self) -> tuple[int, ...]:
        return self.upper + self.diag

    def __add__(self, other: "SW2Mod2") -> "SW2Mod2":
        _same(self, other)
        return SW2Mod2(self.lattice, tuple((x + y) % 2 for x, y in zip(self.upper, other.upper)),
                       tuple((x + y) % 2 for x, y in zip(self.diag, other.diag)))

    __sub__ = __add__

    def render(self) -> str:
        text = _join(SW2(self.lattice, self.upper, self.diag).terms())
        return text + " [mod 2]" if text != "0" else text

    __str__ = render


# -- operations ---------------------------------------------------------------

def tensor(L: Lattice, a: LatticeLike, b: LatticeLike) -> T2:
    return T2.outer(L, L.vec(a), L.vec(b))


def wedge(L: Lattice, a: LatticeLike, b: LatticeLike) -> SW2:
    return project(tensor(L, a, b))


def project(t: T2) -> SW2:
    d = t.lattice.d
    m = t.m
    return SW2(t.lattice, tuple(m[i][j] - m[j][i] for i, j in _pairs(d)), tuple(m[i][i] % 2 for i in range(d)))


def to_exterior(s: SW2) -> Ext2:
    return Ext2(s.lattice, s.upper)


def mod2(x):
    """Reduce a T2 or SW2 value modulo 2."""
    if isinstance(x, T2):
        return T2Mod2(x.lattice, tuple(tuple(v % 2 for v in r) for r in x.m))
    if isinstance(x, SW2):
        return SW2Mod2(x.lattice, tuple(v % 2 for v in x.upper), x.diag)
    raise TypeError(f"cannot reduce {type(x).__name__} modulo 2")


def project_mod2(t: T2Mod2) -> SW2Mod2:
    """Map T2Mod2 -> SW2Mod2 induced by ``project``."""
    d = t.lattice.d
    m = t.m
    return SW2Mod2(t.lattice, tuple((m[i][j] + m[j][i]) % 2 for i, j in _pairs(d)), tuple(m[i][i] for i in range(d)))


def _bits_of(x) -> tuple[Lattice, tuple[int, ...]]:
    if isinstance(x, _Mod2):
        return x.lattice, x.bits()
    if isinstance(x, tuple):
        parts = [_bits_of(p) for p in x]
        L = parts[0][0]
        for other, _ in parts[1:]:
            if other != L:
                raise MixedContexts("mixed lattices inside a tuple")
        return L, tuple(b for _, bits in parts for b in bits)
    raise TypeError(f"not a mod-2 value: {type(x).__name__}")


def f2_span_dim(vectors: Iterable) -> int:
    """Rank over GF(2); entries may also be tuples of mod-2 values (concatenated)."""
    rows = []
    L = None
    shape = None
    for v in vectors:
        lat, bits = _bits_of(v)
        if L is None:
            L, shape = lat, (type(v), len(bits))
        elif lat != L or (type(v), len(bits)) != shape:
            raise MixedContexts("mod-2 values of different kinds or lattices")
        rows.append(int("".join(str(b) for b in bits) or "0", 2))
    basis: list[int] = []
    for r in rows:
        for b in basis:
            r = min(r, r ^ b)
        if r:
            basis.append(r)
    return len(basis)


def _det(m: Sequence[Sequence[int]]) -> int:
    from fractions import Fraction

    a = [[Fraction(x) for x in r] for r in m]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c] != 0), None)
        if p is None:
            return 0
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return int(det)


def _inverse_unimodular(U: Sequence[Sequence[int]]) -> list[list[int]]:
    from fractions import Fraction

    n = len(U)
    a = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(U)]
    for c in range(n):
        p = next(r for r in range(c, n) if a[r][c] != 0)
        a[c], a[p] = a[p], a[c]
        pv = a[c][c]
        a[c] = [x / pv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [[int(x) for x in r[n:]] for r in a]


def rebase(L: Lattice, U: Sequence[Sequence[int]]) -> Lattice:
    """The same group with basis e'_j = sum_i U[i][j] e_i."""
    d = L.d
    if len(U) != d or any(len(r) != d for r in U) or abs(_det(U)) != 1:
        raise NotUnimodular("basis change must be a unimodular d×d integer matrix")
    new = [L.num(tuple(U[i][j] for i in range(d))) for j in range(d)]
    return Lattice(L.field, new)


def change_basis(x, U: Sequence[Sequence[int]]):
    """Express a T2 or SW2 value over the rebased lattice ``rebase(L, U)``."""
    L = x.lattice
    target = rebase(L, U)
    V = _inverse_unimodular(U)  # new coords = V * old coords
    if isinstance(x, SW2):
        return project(change_basis(x.lift(), U))
    if not isinstance(x, T2):
        raise TypeError(f"cannot change basis of {type(x).__name__}")
    d = L.d
    m = x.m
    vm = [[sum(V[i][k] * m[k][j] for k in range(d)) for j in range(d)] for i in range(d)]
    out = tuple(tuple(sum(vm[i][k] * V[j][k] for k in range(d)) for j in range(d)) for i in range(d))
    return T2(target, out)

