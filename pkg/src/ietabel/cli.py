"""Command-line front end.

Exit codes: 0 success, 2 malformed input, 3 semantic error, 4 budget exhausted.
"""

from __future__ import annotations

import argparse
import sys
from math import isqrt
from typing import Sequence

from . import flips, iet
from .errors import BudgetExceeded, IetabelError, ParseError
from .ground import parse_fraction, parse_number
from .iet import IetMap
from .piecewise import Piecewise
from .render import render_svg
from .textio import Context, format_context, format_element, format_elements, make_context, parse_context, \
    parse_elements

EXIT_OK, EXIT_PARSE, EXIT_SEMANTIC, EXIT_BUDGET = 0, 2, 3, 4


class KindMismatch(IetabelError):
    pass


# -- input helpers ------------------------------------------------------------------------

def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc


def _context(path: str) -> Context:
    return parse_context(_read(path))


def _elements(ctx: Context, path: str) -> list[Piecewise]:
    return parse_elements(ctx, _read(path))


def _element(ctx: Context, path: str) -> Piecewise:
    elems = _elements(ctx, path)
    if len(elems) != 1:
        raise ParseError(f"{path}: expected exactly one element, found {len(elems)}")
    return elems[0]


def _as_iet(f: Piecewise, what: str) -> IetMap:
    if isinstance(f, IetMap):
        return f
    raise KindMismatch(f"{what} needs an element of kind iet")


def _number(ctx: Context, text: str):
    try:
        return parse_number(ctx.field, text)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def _compact(text: str) -> str:
    return text.replace(" [mod 2]", "").replace(" (torsion)", "").replace(" + ", "+").replace(" - ", "-")


def _write(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


# -- commands ---------------------------------------------------------------------------

def cmd_ctx_new(args) -> int:
    if args.sqrt is not None:
        r = isqrt(args.sqrt)
        minpoly, interval = [-args.sqrt, 0, 1], (r, r + 1)
        gens = args.gen or ["1", "(0, 1)"]
    else:
        try:
            minpoly = [int(t) for t in args.minpoly.split()]
            lo, hi = args.interval.split()
            interval = (parse_fraction(lo), parse_fraction(hi))
        except ValueError as exc:
            raise ParseError(f"bad --minpoly or --interval: {exc}") from exc
        gens = args.gen or ["1"]
    ctx = make_context(minpoly, interval, gens)
    _write(format_context(ctx), args.output)
    return EXIT_OK


def cmd_elem_check(args) -> int:
    ctx = _context(args.ctx)
    _write(format_elements(_elements(ctx, args.elem)), args.output)
    return EXIT_OK


def cmd_compose(args) -> int:
    ctx = _context(args.ctx)
    factors = [f for path in args.elems for f in _elements(ctx, path)]
    if all(isinstance(f, IetMap) for f in factors):
        result = iet.product(factors, ctx.lattice)
    else:
        result = flips.product(factors, ctx.lattice)
    _write(format_element(result), args.output)
    return EXIT_OK


def cmd_inverse(args) -> int:
    ctx = _context(args.ctx)
    f = _element(ctx, args.elem)
    _write(format_element(iet.inverse(f) if isinstance(f, IetMap) else flips.inverse(f)), args.output)
    return EXIT_OK


def cmd_invariant(args) -> int:
    ctx = _context(args.ctx)
    f = _element(ctx, args.elem)
    which = args.which
    if which == "saf":
        text = iet.saf(_as_iet(f, "saf")).render()
    elif which == "eps":
        text = iet.signature(_as_iet(f, "eps")).render()
    elif which == "epsflip":
        text = flips.eps_flip(f).render()
    else:
        text = flips.psi(f).render()
    print(text)
    return EXIT_OK


def cmd_member(args) -> int:
    ctx = _context(args.ctx)
    f = _element(ctx, args.elem)
    which = args.which
    if which == "kerphi":
        value = iet.saf(_as_iet(f, "kerphi"))
        verdict, evidence = value.is_zero(), f"φ = {_compact(value.render(marker=False))}"
    elif which == "kereps":
        value = flips.eps_flip(f)
        verdict, evidence = value.is_zero(), f"ε⋈ = {_compact(value.render())}"
    elif isinstance(f, IetMap):
        value = iet.signature(f)
        verdict, evidence = value.is_zero(), f"ε = {_compact(value.render(marker=False))}"
    else:
        e, p = flips.ab_image(f)
        verdict = e.is_zero() and p.is_zero()
        evidence = f"ε⋈ = {_compact(e.render())}, ψ = {_compact(p.render())}"
    print(f"{'true' if verdict else 'false'} ({evidence})")
    return EXIT_OK


def cmd_decompose(args) -> int:
    ctx = _context(args.ctx)
    f = _as_iet(_element(ctx, args.elem), "decompose")
    which = args.which
    if which == "rotations":
        factors = iet.decompose_rotations(f)
    elif which == "balanced":
        factors = iet.decompose_balanced(f)
    elif which.startswith("small:"):
        eps = _number(ctx, which[len("small:"):])
        factors = iet.decompose_small(f, eps)
        if not all(iet.in_small_family(h, eps) for h in factors):
            raise AssertionError("a factor is not small")
    else:
        raise ParseError(f"unknown decomposition {which!r}; use rotations, balanced or small:EPS")
    if iet.product(factors, ctx.lattice) != f:
        raise AssertionError("decomposition does not recompose to the input")
    _write(format_elements(factors), args.output)
    return EXIT_OK


def cmd_order(args) -> int:
    ctx = _context(args.ctx)
    f = _element(ctx, args.elem)
    result = iet.order(f) if isinstance(f, IetMap) else flips.order_flip(f)
    print(result)
    return EXIT_BUDGET if result.kind == "unknown" else EXIT_OK


def cmd_example(args) -> int:
    ctx = _context(args.ctx)
    L = ctx.lattice
    name, params = args.name, args.params

    def need(k: int) -> list:
        if len(params) != k:
            raise ParseError(f"{name} takes {k} parameters")
        return params

    if name == "two-transpositions-order":
        if len(params) != 1:
            raise ParseError("two-transpositions-order takes one integer N")
        try:
            n = int(params[0])
        except ValueError as exc:
            raise ParseError(f"not an integer: {params[0]!r}") from exc
        f, g = iet.two_transposition_example(L, n)
        elems = [f, g]
    elif name == "identity":
        elems = [iet.identity(L)]
    elif name == "transposition":
        a, p, q = (_number(ctx, t) for t in need(3))
        elems = [iet.transposition(L, a, p, q)]
    elif name == "rotation":
        if len(params) not in (2, 3):
            raise ParseError("rotation takes A B [OFFSET]")
        nums = [_number(ctx, t) for t in params]
        elems = [iet.restricted_rotation(L, *nums)]
    elif name == "reflection":
        x, y = (_number(ctx, t) for t in need(2))
        elems = [flips.reflection(L, x, y)]
    else:
        raise ParseError(f"unknown example {name!r}")
    _write(format_elements(elems), args.output)
    return EXIT_OK


def cmd_render(args) -> int:
    ctx = _context(args.ctx)
    _write(render_svg(_element(ctx, args.elem)), args.output)
    return EXIT_OK


def cmd_selftest(args) -> int:
    from .acceptance import run_all
    results = run_all(quick=args.quick)
    for r in results:
        print(r.line())
    return EXIT_OK if all(r.ok for r in results) else EXIT_SEMANTIC


# -- parser ------------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse's own exit code is already 2
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ietabel", description="Exact interval exchanges and their abelian invariants.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def out(sp):
        sp.add_argument("-o", "--output", help="write to this file instead of stdout")

    ctx = sub.add_parser("ctx", help="context files").add_subparsers(dest="ctx_command", required=True,
                                                                         parser_class=_Parser)
    new = ctx.add_parser("new", help="write a context file")
    new.add_argument("--minpoly", default="0 1", help="integer coefficients, constant term first")
    new.add_argument("--interval", default="-1 1", help="isolating interval 'lo hi'")
    new.add_argument("--sqrt", type=int, help="shortcut for Q(sqrt(N)) with lattice Z + sqrt(N) Z")
    new.add_argument("--gen", action="append", help="lattice generator (repeatable)")
    out(new)
    new.set_defaults(func=cmd_ctx_new)

    elem = sub.add_parser("elem", help="element files").add_subparsers(dest="elem_command", required=True,
                                                                           parser_class=_Parser)
    check = elem.add_parser("check", help="validate and print canonical elements")
    check.add_argument("ctx")
    check.add_argument("elem")
    out(check)
    check.set_defaults(func=cmd_elem_check)

    sp = sub.add_parser("compose", help="product F1∘F2∘... (the last acts first)")
    sp.add_argument("ctx")
    sp.add_argument("elems", nargs="+")
    out(sp)
    sp.set_defaults(func=cmd_compose)

    sp = sub.add_parser("inverse", help="inverse element")
    sp.add_argument("ctx")
    sp.add_argument("elem")
    out(sp)
    sp.set_defaults(func=cmd_inverse)

    sp = sub.add_parser("invariant", help="saf, eps, epsflip or psi")
    sp.add_argument("ctx")
    sp.add_argument("elem")
    sp.add_argument("which", choices=["saf", "eps", "epsflip", "psi"])
    sp.set_defaults(func=cmd_invariant)

    sp = sub.add_parser("member", help="membership verdict with evidence")
    sp.add_argument("ctx")
    sp.add_argument("elem")
    sp.add_argument("which", choices=["derived", "kerphi", "kereps"])
    sp.set_defaults(func=cmd_member)

    sp = sub.add_parser("decompose", help="rotations, balanced or small:EPS")
    sp.add_argument("ctx")
    sp.add_argument("elem")
    sp.add_argument("which")
    out(sp)
    sp.set_defaults(func=cmd_decompose)

    sp = sub.add_parser("order", help="order of an element")
    sp.add_argument("ctx")
    sp.add_argument("elem")
    sp.set_defaults(func=cmd_order)

    sp = sub.add_parser("example", help="two-transpositions-order N | transposition A P Q | "
                                        "rotation A B [O] | reflection X Y | identity")
    sp.add_argument("ctx")
    sp.add_argument("name")
    sp.add_argument("params", nargs="*")
    out(sp)
    sp.set_defaults(func=cmd_example)

    sp = sub.add_parser("render", help="SVG of the graph and the inversion set")
    sp.add_argument("ctx")
    sp.add_argument("elem")
    out(sp)
    sp.set_defaults(func=cmd_render)

    sp = sub.add_parser("selftest", help="run the acceptance checks")
    sp.add_argument("--quick", action="store_true", help="smaller sample sizes")
    sp.set_defaults(func=cmd_selftest)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"ietabel: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except BudgetExceeded as exc:
        print(f"ietabel: budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (IetabelError, ValueError) as exc:
        print(f"ietabel: error: {exc}", file=sys.stderr)
        return EXIT_SEMANTIC


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
