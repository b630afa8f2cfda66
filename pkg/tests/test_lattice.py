import itertools
import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from ietabel import randgen as rg
from ietabel.errors import NotDense, NotInLattice
from ietabel.ground import quadratic_field, rational_field
from ietabel.lattice import (divisible_by, hermite_normal_form, independentize, lattice_from_generators,
                             positive_basis, small_positive)

from .conftest import rngs

K2 = quadratic_field(2)
Q = rational_field()
t = K2.theta


def test_generators_reduce_to_a_basis():
    L = lattice_from_generators(K2, [1, t, t / 2])
    assert L.d == 2
    for g in (1, t, t / 2):
        L.coords(K2.coerce(g))
    u, v = L.coords(K2.one), L.coords(t / 2)
    assert abs(u[0] * v[1] - u[1] * v[0]) == 1
    with pytest.raises(NotInLattice):
        L.coords(t / 4)


def test_rank_one_lattices():
    L = lattice_from_generators(Q, [1])
    assert L.d == 1 and not L.dense
    L6 = lattice_from_generators(Q, [Fraction(1, 2), Fraction(1, 3)])
    assert L6.basis in ((Q(Fraction(1, 6)),), (Q(Fraction(-1, 6)),))


def test_coordinates(L2):
    assert L2.num(L2.coords(t - 1)) == t - 1
    assert L2.coords(12 - 8 * t) == (12, -8)
    with pytest.raises(NotInLattice):
        L2.coords(K2(Fraction(1, 2)))


def test_divisibility(L2):
    assert not divisible_by(L2, t - 1, 2)
    assert divisible_by(L2, 6 - 4 * t, 2)
    assert divisible_by(L2, 12 - 8 * t, 4)


def test_small_positive(L2):
    for bound in (Fraction(1, 4), Fraction(1), Fraction(1, 1000)):
        w = small_positive(L2, bound)
        assert 0 < w < bound
    with pytest.raises(NotDense):
        small_positive(lattice_from_generators(Q, [1]), Fraction(1, 2))


def test_independentize_examples(L2, L6):
    S = independentize(L6, [Fraction(1, 2), Fraction(1, 3), Fraction(1, 6)])
    assert S.elements == (Q(Fraction(1, 6)),)
    assert [S.expand(Q(x)) for x in (Fraction(1, 2), Fraction(1, 3), Fraction(1, 6))] == [(3,), (2,), (1,)]
    S = independentize(L2, [2 - t, t - 1])
    assert set(S.elements) == {2 - t, t - 1}
    S = independentize(L2, [1, 2 - t, t - 1])
    assert len(S) == 2
    for x in (1, 2 - t, t - 1):
        assert S.expand(K2.coerce(x)) is not None


@given(rngs)
def test_independent_sets_cover_targets(rng):
    L = lattice_from_generators(K2, [1, t])
    targets = [rg.positive(L, rng) for _ in range(rng.randint(1, 5))]
    for S in (independentize(L, targets), positive_basis(L, targets)):
        S.verify()
        assert all(x.sign() > 0 for x in S.elements)
        for a in targets:
            c = S.expand(a)
            assert c is not None and all(k >= 0 for k in c)
            total = K2.zero
            for k, s in zip(c, S.elements):
                total = total + k * s
            assert total == L.num(a)


def _minor_gcd(rows, r):
    M = sympy.Matrix(rows)
    g = 0
    for ri in itertools.combinations(range(M.rows), r):
        for ci in itertools.combinations(range(M.cols), r):
            g = math.gcd(g, int(M.extract(list(ri), list(ci)).det()))
    return g


@given(st.lists(st.lists(st.integers(-9, 9), min_size=3, max_size=3), min_size=1, max_size=5))
def test_hnf_spans_the_same_group(rows):
    H = hermite_normal_form(rows)
    r = sympy.Matrix(rows).rank()
    assert len(H) == r
    if r == 0:
        return
    # Every row lies in the Z-span of the independent rows of H ...
    for row in rows:
        sol = sympy.Matrix(H).T.gauss_jordan_solve(sympy.Matrix(row))[0]
        assert all(v.is_integer for v in sol)
    # ... and both spans have the same covolume, so they coincide.
    assert _minor_gcd(H, r) == _minor_gcd(rows, r)
