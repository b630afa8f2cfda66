from fractions import Fraction

import pytest
from hypothesis import given

from ietabel import iet
from ietabel import randgen as rg
from ietabel.acceptance import sqrt_lattice, step_lattice
from ietabel.piecewise import partition_from_cuts
from ietabel.errors import InvalidElement, NotInSAFKernel, OutOfRange, Overlap

from .conftest import rngs

L2 = sqrt_lattice(2)
r2 = L2.field.theta
L4 = step_lattice(4)
half, quarter = Fraction(1, 2), Fraction(1, 4)


def torsion_transposition():
    a, u = r2 - 1, 5 * r2 - 7
    return iet.transposition(L2, a, u, 2 * u + a)


def test_constructors():
    swap = iet.restricted_rotation(L4, half, half)
    assert iet.power(swap, 2).is_identity()
    assert swap.apply(quarter) == 3 * quarter
    L3 = step_lattice(3)
    assert iet.from_description(L3, [Fraction(1, 3), Fraction(2, 3)], [0, 1]).is_identity()
    t = torsion_transposition()
    assert len(t.lengths) == 5 and t.tau == (0, 3, 2, 1, 4)
    assert iet.transposition_data(t)[0] == L2.coords(r2 - 1)


def test_invalid_input():
    with pytest.raises(InvalidElement):
        iet.from_description(L4, [half, half], [0, 0])
    with pytest.raises(InvalidElement):
        iet.from_description(L4, [half, quarter], [0, 1])
    with pytest.raises(Overlap):
        iet.transposition(L4, half, 0, quarter)
    with pytest.raises(OutOfRange):
        iet.restricted_rotation(L4, half, half, quarter)


@given(rngs)
def test_group_laws(rng):
    f, g, h = (rg.random_iet(L2, rng) for _ in range(3))
    assert iet.compose(iet.compose(f, g), h) == iet.compose(f, iet.compose(g, h))
    assert iet.compose(f, iet.inverse(f)).is_identity()
    assert iet.compose(iet.identity(L2), f) == f
    x = rg.point(L2, rng)
    assert iet.compose(f, g).apply_vec(x) == f.apply_vec(g.apply_vec(x))


@given(rngs)
def test_product_and_power(rng):
    f, g = rg.random_iet(L2, rng), rg.random_iet(L2, rng)
    assert iet.product([f, g, f]) == iet.compose(f, iet.compose(g, f))
    assert iet.power(f, 3) == iet.product([f, f, f])
    assert iet.power(f, -2) == iet.inverse(iet.power(f, 2))


def test_saf_examples():
    rot = iet.restricted_rotation(L2, 2 - r2, r2 - 1)
    s = iet.saf(rot)
    assert s.upper == (-2,) and s.diag == (0, 0)
    assert iet.saf(torsion_transposition()).is_zero()
    assert iet.saf(iet.identity(L2)).is_zero()
    assert iet.signature(rot).render() == "e1∧e2 + e2∧e2"
    assert iet.signature(torsion_transposition()).render() == "e1∧e1 + e2∧e2 (torsion)"


@given(rngs)
def test_invariants_on_refinements(rng):
    f = rg.random_iet(L2, rng)
    P = partition_from_cuts(L2, f.cuts() | set(rg.points(L2, rng, 3)))
    assert iet.saf(f, P) == iet.saf(f)
    assert iet.signature(f, P) == iet.signature(f)


@given(rngs)
def test_conjugation_invariance(rng):
    f, g = rg.random_iet(L2, rng), rg.random_iet(L2, rng)
    c = iet.product([g, f, iet.inverse(g)])
    assert iet.signature(c) == iet.signature(f)
    assert iet.in_derived(iet.product([f, g, iet.inverse(f), iet.inverse(g)]))


def test_orders():
    assert iet.order(torsion_transposition()) == iet.Finite(2)
    assert iet.order(iet.restricted_rotation(L2, 2 - r2, r2 - 1)) == iet.INFINITE
    assert iet.order(iet.identity(L2)) == iet.Finite(1)
    for n in (1, 5, 9, 10):
        f, g = iet.two_transposition_example(L2, n)
        assert iet.order(iet.compose(g, f)) == iet.Finite(n)
    f, g = iet.two_transposition_example(L2, 1)
    assert f == g
    L6 = step_lattice(6)
    for n in range(1, 7):
        f, g = iet.two_transposition_example(L6, n)
        assert iet.order(iet.compose(g, f)) == iet.Finite(n)


def test_order_budget(monkeypatch):
    f, g = iet.two_transposition_example(L2, 12)
    monkeypatch.setenv("IETABEL_BUDGET", "2")
    o = iet.order(iet.compose(g, f))
    assert o.kind == "unknown" and str(o) == "unknown (budget 2)"


@given(rngs)
def test_transposition_pairs_have_finite_order(rng):
    h = iet.compose(rg.random_transposition(L2, rng), rg.random_transposition(L2, rng))
    o = iet.order(h)
    assert o.kind == "finite" and iet.power(h, o.value).is_identity()
    for p in range(2, o.value + 1):
        if o.value % p == 0 and all(p % q for q in range(2, p)):
            assert not iet.power(h, o.value // p).is_identity()


def test_decomposition_examples():
    assert iet.decompose_rotations(iet.identity(L2)) == []
    rot = iet.restricted_rotation(L2, 2 - r2, r2 - 1)
    assert iet.decompose_rotations(rot) == [rot]
    assert iet.decompose_small(iet.identity(L2), quarter) == []
    a = 17 - 12 * r2  # about 0.029, so the support 2a is below 1/4
    small = iet.restricted_rotation(L2, a, a, a)
    assert iet.decompose_small(small, quarter) == [small]
    t = torsion_transposition()
    factors = iet.decompose_small(t, quarter)
    assert all(iet.support_measure(h) <= quarter for h in factors)
    assert iet.product(factors, L2) == t


def test_balanced_examples():
    a, b = 3 - 2 * r2, r2 - 1
    r = iet.restricted_rotation(L2, a, b)
    s = iet.restricted_rotation(L2, b, a, a)
    assert iet.is_balanced([r, s])
    assert not iet.is_balanced([r])
    assert iet.is_balanced([iet.restricted_rotation(L2, a, a)])
    f = iet.compose(r, s)
    factors = iet.decompose_balanced(f)
    assert iet.is_balanced(factors) and iet.product(factors, L2) == f
    t = torsion_transposition()
    factors = iet.decompose_balanced(t)
    assert iet.is_balanced(factors) and iet.product(factors, L2) == t
    with pytest.raises(NotInSAFKernel):
        iet.decompose_balanced(r)


@given(rngs)
def test_rotation_decomposition(rng):
    f = rg.random_iet(L2, rng, rng.randint(1, 6))
    factors = iet.decompose_rotations(f)
    assert iet.product(factors, L2) == f
    assert all(set(iet.rotation_type(r)) <= set(f.lengths) for r in factors)


@given(rngs)
def test_rectangles_match_closed_form(rng):
    from ietabel.alg2 import project
    from ietabel.regions import measure_t2
    f = rg.random_iet(L2, rng)
    assert project(measure_t2(iet.inversion_rectangles(f))) == iet.signature(f)
