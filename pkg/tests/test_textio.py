import pytest
from hypothesis import given

from ietabel import randgen as rg
from ietabel.acceptance import sqrt_lattice
from ietabel.errors import ParseError
from ietabel.textio import (format_context, format_element, format_elements, make_context, parse_context,
                            parse_element, parse_elements)

from .conftest import rngs

CTX = make_context([-2, 0, 1], (1, 2), ["1", "(0, 1)"])


def test_context_round_trip():
    text = format_context(CTX)
    assert format_context(parse_context(text)) == text
    assert parse_context(text).lattice == sqrt_lattice(2)


@given(rngs)
def test_element_round_trip(rng):
    elems = [rg.random_iet(CTX.lattice, rng), rg.random_flip(CTX.lattice, rng)]
    text = format_elements(elems)
    assert parse_elements(CTX, text) == elems
    assert format_elements(parse_elements(CTX, text)) == text


def test_non_canonical_input_is_canonicalized():
    f = parse_element(CTX, "kind: flip\nalpha: (3, -2); (-2, 2)\ntau: 1 2\nsigns: +−\n")
    assert format_element(f) == "kind: flip\nalpha: (3, -2); (-2, 2)\ntau: 1 2\nsigns: +-\n"
    g = parse_element(CTX, "# comment\nkind: iet\nalpha: (3, -2); (-2, 2)\ntau: 1 2\n")
    assert format_element(g) == "kind: iet\nalpha: (1, 0)\ntau: 1\n"


@pytest.mark.parametrize("text", [
    "kind: iet\n",
    "kind: map\nalpha: (1, 0)\ntau: 1\n",
    "kind: iet\nalpha: (1, 0)\ntau: 1\nsigns: +\n",
    "kind: flip\nalpha: (1, 0)\ntau: 1\nsigns: +-\n",
    "kind: iet\nalpha: (1, 0)\ntau: 1 2\n",
    "kind: iet\nkind: iet\nalpha: (1, 0)\ntau: 1\n",
    "colour: red\n",
])
def test_malformed_elements(text):
    with pytest.raises(ParseError):
        parse_element(CTX, text)
