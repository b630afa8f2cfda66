"""Line-oriented text formats for contexts and elements.

A context file::

    minpoly: -2 0 1
    interval: 1 2
    gen: (1, 0)
    gen: (0, 1)

An element file (``signs`` only for kind ``flip``)::

    kind: flip
    alpha: (-7, 5); (8, -5)
    tau: 2 1
    signs: -+

Numbers are ``p/q`` in a degree-1 field and power-basis tuples
``(c0, c1, ...)`` otherwise; ``tau`` is one-line notation, 1-based.  Several
elements in one stream are separated by a line ``---``.  Writing what was read
reproduces the input byte for byte when the input is canonical.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import ParseError
from .flips import FlipMap
from .ground import Field, GroundNum, format_fraction, format_number, parse_fraction, parse_number
from .iet import IetMap
from .lattice import Lattice, lattice_from_generators
from .piecewise import Piecewise

SEPARATOR = "---"


@dataclass(frozen=True)
class Context:
    field: Field
    gens: tuple[GroundNum, ...]
    lattice: Lattice


def _fields(text: str, allowed: Sequence[str], what: str) -> list[tuple[str, str]]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition(":")
        key = key.strip()
        if not sep or key not in allowed:
            raise ParseError(f"{what} line {lineno}: expected one of {', '.join(allowed)}")
        out.append((key, value.strip()))
    return out


def _one(pairs: list[tuple[str, str]], key: str, what: str, required: bool = True) -> str | None:
    values = [v for k, v in pairs if k == key]
    if len(values) > 1:
        raise ParseError(f"{what}: duplicate {key!r}")
    if not values:
        if required:
            raise ParseError(f"{what}: missing {key!r}")
        return None
    return values[0]


def _ints(text: str, what: str) -> list[int]:
    try:
        return [int(t) for t in text.split()]
    except ValueError as exc:
        raise ParseError(f"{what}: expected integers, got {text!r}") from exc


def _number(field: Field, text: str) -> GroundNum:
    try:
        return parse_number(field, text)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


# -- contexts -------------------------------------------------------------------------

def make_context(minpoly: Sequence[int], interval: tuple, gens: Sequence) -> Context:
    field = Field(minpoly, interval)
    gens = tuple(field.coerce(g) if not isinstance(g, str) else _number(field, g) for g in gens)
    return Context(field, gens, lattice_from_generators(field, gens))


def parse_context(text: str) -> Context:
    pairs = _fields(text, ("minpoly", "interval", "gen"), "context")
    minpoly = _ints(_one(pairs, "minpoly", "context"), "minpoly")
    bounds = _one(pairs, "interval", "context").split()
    if len(bounds) != 2:
        raise ParseError("interval: expected two rationals")
    try:
        interval = (parse_fraction(bounds[0]), parse_fraction(bounds[1]))
    except ValueError as exc:
        raise ParseError(f"interval: {exc}") from exc
    field = Field(minpoly, interval)
    gens = tuple(_number(field, v) for k, v in pairs if k == "gen")
    if not gens:
        raise ParseError("context: at least one 'gen' line is required")
    return Context(field, gens, lattice_from_generators(field, gens))


def format_context(ctx: Context) -> str:
    f = ctx.field
    lines = ["minpoly: " + " ".join(str(c) for c in f.minpoly),
             "interval: " + " ".join(format_fraction(q) for q in f.interval)]
    lines += ["gen: " + format_number(g) for g in ctx.gens]
    return "\n".join(lines) + "\n"


# -- elements -------------------------------------------------------------------------

def parse_element(ctx: Context, text: str) -> Piecewise:
    pairs = _fields(text, ("kind", "alpha", "tau", "signs"), "element")
    kind = _one(pairs, "kind", "element")
    if kind not in ("iet", "flip"):
        raise ParseError(f"kind must be 'iet' or 'flip', got {kind!r}")
    alpha = [_number(ctx.field, a) for a in _one(pairs, "alpha", "element").split(";")]
    tau = _ints(_one(pairs, "tau", "element"), "tau")
    if len(tau) != len(alpha):
        raise ParseError("tau and alpha have different lengths")
    signs_text = _one(pairs, "signs", "element", required=False)
    if kind == "iet" and signs_text is not None:
        raise ParseError("an iet element has no 'signs' line")
    if kind == "flip":
        if signs_text is None:
            signs_text = "+" * len(alpha)
        signs_text = signs_text.replace("−", "-")
        if len(signs_text) != len(alpha) or set(signs_text) - {"+", "-"}:
            raise ParseError("signs must be a string of '+' and '-' of the same length as alpha")
    tau0 = [t - 1 for t in tau]
    L = ctx.lattice
    if kind == "iet":
        return IetMap._from_description(L, alpha, tau0)
    return FlipMap._from_description(L, alpha, tau0, [1 if c == "+" else -1 for c in signs_text])


def format_element(f: Piecewise) -> str:
    L = f.lattice
    kind = "flip" if isinstance(f, FlipMap) else "iet"
    lines = [f"kind: {kind}",
             "alpha: " + "; ".join(format_number(L.num(a)) for a in f.lengths),
             "tau: " + " ".join(str(t + 1) for t in f.tau)]
    if kind == "flip":
        lines.append("signs: " + "".join("+" if s > 0 else "-" for s in f.signs))
    return "\n".join(lines) + "\n"


def split_documents(text: str) -> list[str]:
    docs, current = [], []
    for line in text.splitlines(keepends=True):
        if line.strip() == SEPARATOR:
            docs.append("".join(current))
            current = []
        else:
            current.append(line)
    docs.append("".join(current))
    return [d for d in docs if d.strip()]


def parse_elements(ctx: Context, text: str) -> list[Piecewise]:
    return [parse_element(ctx, d) for d in split_documents(text)]


def format_elements(elements: Sequence[Piecewise]) -> str:
    return (SEPARATOR + "\n").join(format_element(f) for f in elements)

