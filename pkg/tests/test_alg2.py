import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ietabel import randgen as rg
from ietabel.acceptance import _sw2_quotient_invariants, cubic_lattice, sqrt_lattice
from ietabel.alg2 import (SW2, T2, change_basis, f2_span_dim, mod2, project, project_mod2, rebase, tensor,
                          to_exterior, wedge)
from ietabel.errors import MixedContexts, NotUnimodular
from ietabel.lattice import vadd

from .conftest import rngs

L2 = sqrt_lattice(2)
r2 = L2.field.theta

matrices = st.lists(st.lists(st.integers(-6, 6), min_size=2, max_size=2), min_size=2, max_size=2).map(
    lambda rows: T2(L2, tuple(tuple(r) for r in rows)))


def test_examples():
    w = wedge(L2, 2 - r2, r2 - 1)
    assert w.upper == (1,) and w.diag == (0, 1)
    assert tensor(L2, r2 - 1, r2 - 1).m == ((1, -1), (-1, 1))
    p = project(T2(L2, ((1, 3), (0, 2))))
    assert p.upper == (3,) and p.diag == (1, 0)
    e1, e2 = L2.unit(0), L2.unit(1)
    assert project(T2.outer(L2, e1, e2) + T2.outer(L2, e2, e1)).is_zero()


def test_exterior_kernel_is_the_diagonal():
    for L in (L2, cubic_lattice()):
        diag = [wedge(L, L.unit(i), L.unit(i)) for i in range(L.d)]
        assert all(to_exterior(x).is_zero() and not x.is_zero() and (x * 2).is_zero() for x in diag)
        assert f2_span_dim(mod2(x) for x in diag) == L.d


def test_quotient_oracle():
    # Smith form of the relation lattice: free part of rank d(d-1)/2 plus (Z/2)^d.
    for d in (1, 2, 3, 4):
        inv = _sw2_quotient_invariants(d)
        assert sorted(inv) == [1] * (d * (d - 1) // 2) + [2] * d


@given(matrices)
def test_projection_kernel_is_the_relation_lattice(t):
    symmetric = t.m[0][1] == t.m[1][0]
    even_diag = all(t.m[i][i] % 2 == 0 for i in range(2))
    assert project(t).is_zero() == (symmetric and even_diag)


@given(matrices, matrices, st.integers(-5, 5))
def test_projection_is_additive(s, t, k):
    assert project(s + t) == project(s) + project(t)
    assert project(s * k) == project(s) * k
    assert mod2(s + t) == mod2(s) + mod2(t)
    assert project_mod2(mod2(t)) == mod2(project(t))


@given(rngs)
def test_wedge_bilinear_and_skew(rng):
    a, b, c = (rg.point(L2, rng) for _ in range(3))
    assert wedge(L2, vadd(a, b), c) == wedge(L2, a, c) + wedge(L2, b, c)
    assert wedge(L2, a, b) == -wedge(L2, b, a)
    assert (wedge(L2, a, a) + wedge(L2, a, a)).is_zero()


@given(rngs)
def test_change_basis_is_natural(rng):
    L3 = cubic_lattice()
    while True:
        U = [[rng.randint(-2, 2) for _ in range(3)] for _ in range(3)]
        try:
            M = rebase(L3, U)
            break
        except NotUnimodular:
            continue
    a, b = rg.point(L3, rng), rg.point(L3, rng)
    x, y = L3.num(a), L3.num(b)
    assert change_basis(wedge(L3, a, b), U) == wedge(M, M.coords(x), M.coords(y))
    assert change_basis(tensor(L3, a, b), U) == tensor(M, M.coords(x), M.coords(y))


def test_swap_basis_negates_the_wedge():
    e1, e2 = L2.unit(0), L2.unit(1)
    x = change_basis(wedge(L2, e1, e2), [[0, 1], [1, 0]])
    assert x.upper == (-1,)


def test_f2_dimensions():
    vecs = [v for v in itertools.product((0, 1), repeat=2)]
    assert f2_span_dim(mod2(tensor(L2, v, v)) for v in vecs) == 3
    assert f2_span_dim(mod2(wedge(L2, v, v)) for v in vecs) == 2
    assert f2_span_dim([]) == 0
    with pytest.raises(MixedContexts):
        f2_span_dim([mod2(tensor(L2, vecs[1], vecs[1])), mod2(wedge(L2, vecs[1], vecs[1]))])


def test_rendering():
    assert SW2.zero(L2).render() == "0"
    assert wedge(L2, r2 - 1, r2 - 1).render() == "e1∧e1 + e2∧e2 (torsion)"
