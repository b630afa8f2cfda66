from fractions import Fraction

from hypothesis import given

from ietabel import flips
from ietabel import randgen as rg
from ietabel.acceptance import sqrt_lattice, step_lattice
from ietabel.regions import IntervalSet, RectangleSet, act, measure_t2

from .conftest import rngs

L2 = sqrt_lattice(2)
F = L2.field


def test_intersection_example():
    L4 = step_lattice(4)
    h, q = Fraction(1, 2), Fraction(1, 4)
    a = RectangleSet.from_rectangles(L4, [((0, h), (0, 1))])
    b = RectangleSet.from_rectangles(L4, [((q, 1), (0, 1))])
    assert a & b == RectangleSet.from_rectangles(L4, [((q, h), (0, 1))])
    assert a | b == RectangleSet.from_rectangles(L4, [((0, 1), (0, 1))])


@given(rngs)
def test_boolean_laws(rng):
    P, Q, R = (rg.random_rectangles(L2, rng) for _ in range(3))
    assert P | (Q & R) == (P | Q) & (P | R)
    assert (P - Q) | (P & Q) == P
    assert (P ^ Q) == (P - Q) | (Q - P)
    assert (P - Q) & Q == RectangleSet.empty(L2)
    assert P.mirror().mirror() == P


@given(rngs)
def test_measure_is_additive(rng):
    P, Q = rg.random_rectangles(L2, rng), rg.random_rectangles(L2, rng)
    assert measure_t2(P | Q) + measure_t2(P & Q) == measure_t2(P) + measure_t2(Q)
    assert measure_t2(P.mirror()) == measure_t2(P).transpose()


@given(rngs)
def test_canonical_form_is_encoding_independent(rng):
    P = rg.random_rectangles(L2, rng)
    assert RectangleSet.from_rectangles(L2, rg.shuffled_encoding(P, rng)) == P


@given(rngs)
def test_action_is_a_group_action(rng):
    f, g = rg.random_flip(L2, rng), rg.random_flip(L2, rng)
    P = rg.random_rectangles(L2, rng)
    assert act(flips.compose(f, g), P) == act(f, act(g, P))
    assert act(flips.identity(L2), P) == P
    assert measure_t2(act(f, P)) == measure_t2(P)


def test_interval_sets():
    q = 3 - 2 * F.theta
    X = IntervalSet.from_intervals(L2, [(0, q), (q, 2 * q)])
    assert len(X) == 1
    assert X.measure() == L2.coords(2 * q)
    assert X.diff(X).is_empty()
