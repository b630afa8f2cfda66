from fractions import Fraction

import pytest
from hypothesis import given

from ietabel import flips, iet
from ietabel import randgen as rg
from ietabel.acceptance import sqrt_lattice, step_lattice
from ietabel.alg2 import mod2, tensor, wedge
from ietabel.errors import NotDense, NotOrientationPreserving
from ietabel.lattice import positive_basis, small_positive

from .conftest import rngs

L2 = sqrt_lattice(2)
r2 = L2.field.theta
third = Fraction(1, 3)


def random_reflection(rng):
    x, y = rg.points(L2, rng, 2)
    return flips.reflection(L2, x, y)


@given(rngs)
def test_group_laws(rng):
    f, g, h = (rg.random_flip(L2, rng) for _ in range(3))
    assert flips.compose(flips.compose(f, g), h) == flips.compose(f, flips.compose(g, h))
    assert flips.compose(f, flips.inverse(f)).is_identity()
    assert flips.power(f, -1) == flips.inverse(f)


def test_embedding():
    rot = iet.restricted_rotation(L2, 2 - r2, r2 - 1)
    assert flips.try_unflip(flips.embed(rot)) == rot
    with pytest.raises(NotOrientationPreserving):
        flips.try_unflip(flips.reflection(L2, 0, r2 - 1))


def test_reflections_generate_rotations():
    a, b, x = 3 - 2 * r2, r2 - 1, 3 - 2 * r2
    ra = flips.reflection(L2, x, x + a)
    rb = flips.reflection(L2, x + a, x + a + b)
    whole = flips.reflection(L2, x, x + a + b)
    assert flips.product([whole, ra, rb]) == flips.embed(iet.restricted_rotation(L2, a, b, x))


def test_half_reflection_conjugation():
    a, x = 3 - 2 * r2, r2 - 1
    r = flips.reflection(L2, x, x + 2 * a)
    h = flips.reflection(L2, x, x + a)
    assert flips.product([h, r, h]) == flips.embed(iet.restricted_rotation(L2, a, a, x))


@given(rngs)
def test_conjugator(rng):
    p, q = (L2.num(v) for v in rg.points(L2, rng, 2))
    if rng.random() < 0.5:
        p, q = q, p
    a = small_positive(L2, 1 - max(p, q))
    r = flips.reflection(L2, p, p + a)
    s = flips.reflection(L2, q, q + a)
    h = flips.conjugator(r, s)
    assert flips.product([h, r, flips.inverse(h)]) == s


def test_orders():
    L3 = step_lattice(3)
    rot = flips.embed(iet.restricted_rotation(L3, third, third))
    assert flips.order_flip(flips.reflection(L3, 0, 2 * third)) == iet.Finite(2)
    assert flips.order_flip(flips.compose(rot, flips.reflection(L3, 0, 2 * third))) == iet.Finite(2)
    assert flips.order_flip(flips.compose(rot, flips.reflection(L3, 0, third))) == iet.Finite(4)
    irrational = flips.embed(iet.restricted_rotation(L2, 2 - r2, r2 - 1))
    assert flips.order_flip(irrational) == iet.INFINITE


@given(rngs)
def test_reflection_orders(rng):
    assert flips.order_flip(random_reflection(rng)) == iet.Finite(2)


def test_positive_substitute_of_a_reflection():
    a, x = 2 * (3 - 2 * r2), r2 - 1
    r = flips.reflection(L2, x, x + a)
    P = [L2.vec(x), L2.vec(a / 2), L2.vec(a / 2), L2.vec(1 - x - a)]
    assert flips.positive_substitute(r, P) == iet.restricted_rotation(L2, a / 2, a / 2, x)
    assert flips.positive_substitute(r).is_identity()


@given(rngs)
def test_substitute_residual(rng):
    f = rg.random_flip(L2, rng)
    assert flips.compose(flips.substitute_residual(f), flips.positive_substitute(f)) == f
    g = rg.random_iet(L2, rng)
    assert flips.positive_substitute(flips.embed(g)) == g
    assert flips.substitute_residual(flips.embed(g)).is_identity()


def test_flip_signature_examples():
    a = r2 - 1
    assert flips.eps_flip(flips.reflection(L2, 0, a)) == mod2(tensor(L2, a, a))
    assert flips.eps_flip(flips.reflection(L2, 0, 12 - 8 * r2)).is_zero()
    p, q = 3 - 2 * r2, r2 - 1
    rot = flips.embed(iet.restricted_rotation(L2, p, q))
    assert flips.eps_flip(rot) == mod2(tensor(L2, p, q) + tensor(L2, q, p))


def test_psi_examples():
    ell = r2 - 1
    refl = flips.reflection(L2, 0, 2 * ell)
    assert flips.psi(refl).value == mod2(wedge(L2, ell, ell))
    assert flips.psi(refl).render() == "e1∧e1 + e2∧e2 [mod 2]"
    assert flips.psi(flips.identity(L2)).is_zero()
    assert flips.in_ker_eps_flip(refl) and not flips.in_derived_flip(refl)
    assert flips.in_derived_flip(flips.reflection(L2, 0, 12 - 8 * r2))


@given(rngs)
def test_psi_on_embedded_iets_is_the_signature_mod_2(rng):
    f = rg.random_iet(L2, rng)
    assert flips.psi(flips.embed(f)).value == mod2(iet.signature(f))


@given(rngs)
def test_psi_closed_form_matches_refinements(rng):
    f = rg.random_flip(L2, rng)
    S = flips.canonical_basis(L2, f.lengths)
    assert flips.psi_refined(f, S, rng) == flips.psi_at(f, S) == flips.psi_refined(f, S)


@given(rngs)
def test_psi_is_additive_under_a_common_basis(rng):
    f, g = rg.random_flip(L2, rng), rg.random_flip(L2, rng)
    fg = flips.compose(f, g)
    S = flips.canonical_basis(L2, f.lengths + g.lengths + fg.lengths)
    assert flips.psi_at(fg, S) == flips.psi_at(f, S) + flips.psi_at(g, S)


@given(rngs)
def test_psi_basis_dependence(rng):
    f = rg.random_flip(L2, rng)
    h = flips.compose(f, f)
    S = flips.canonical_basis(L2, f.lengths + h.lengths)
    T = positive_basis(L2, list(S.vectors) + rg.points(L2, rng, 2))
    assert flips.psi_at(f, T) == flips.psi_at(f, S) + flips.psi_discrepancy(f, S, T)
    # On Ker ε⋈ the value does not depend on the basis.
    assert flips.psi_at(h, T) == flips.psi_at(h, S)


@given(rngs)
def test_homomorphism_and_squares(rng):
    f, g = rg.random_flip(L2, rng), rg.random_flip(L2, rng)
    assert flips.eps_flip(flips.compose(f, g)) == flips.eps_flip(f) + flips.eps_flip(g)
    assert flips.in_derived_flip(flips.compose(f, f))
    assert flips.same_coset(flips.product([g, f, flips.inverse(g)]), f)


@given(rngs)
def test_inversion_set_measure(rng):
    from ietabel.alg2 import T2Mod2
    from ietabel.regions import measure_t2
    f = rg.random_flip(L2, rng)
    assert mod2(measure_t2(flips.inversion_set(f))) == flips.eps_flip(f)
    assert flips.inversion_set(f).mirror() == flips.inversion_set(f)
    assert isinstance(flips.eps_flip(f), T2Mod2)


def test_rank_one_is_rejected():
    L6 = step_lattice(6)
    with pytest.raises(NotDense):
        flips.in_derived_flip(flips.reflection(L6, 0, Fraction(1, 6)))
