"""The sixteen acceptance criteria as runnable checks.

Each check returns ``(ok, detail)``; :func:`run_all` times them and the CLI
``selftest`` verb and ``tests/test_acceptance.py`` print one PASS/FAIL line each.
"""

from __future__ import annotations

import functools
import itertools
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import flips, iet
from . import randgen as rg
from .alg2 import SW2, T2, f2_span_dim, mod2, project, tensor, to_exterior, wedge
from .errors import NotInSAFKernel, OutOfRange, Overlap
from .ground import Field, quadratic_field, rational_field
from .lattice import Lattice, lattice_from_generators, rank, vadd, vscale, vsub
from .piecewise import partition_from_cuts
from .regions import RectangleSet, act, measure_t2

SEED = 20240601


@dataclass(frozen=True)
class Result:
    number: int
    name: str
    ok: bool
    detail: str
    seconds: float

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'} [{self.number:02d}] {self.name}: {self.detail} ({self.seconds:.2f}s)"


@functools.lru_cache(maxsize=None)
def sqrt_lattice(n: int) -> Lattice:
    K = quadratic_field(n)
    return lattice_from_generators(K, [1, K.theta])


@functools.lru_cache(maxsize=None)
def cubic_lattice() -> Lattice:
    K = Field((-2, 0, 0, 1), (1, 2))
    t = K.theta
    return lattice_from_generators(K, [1, t, t * t])


@functools.lru_cache(maxsize=None)
def step_lattice(n: int) -> Lattice:
    return lattice_from_generators(rational_field(), [Fraction(1, n)])


def _scale(quick: bool, n: int) -> int:
    return max(5, n // 10) if quick else n


def _perm_parity(perm) -> int:
    return (len(perm) - len(iet.cycles(perm))) % 2


# -- criteria ------------------------------------------------------------------------

def c01_parity(rng, quick):
    checked = 0
    for n, Lk, slots in ((4, step_lattice(4), 4), (4, step_lattice(6), 6)):
        e = Lk.abs(Lk.unit(0))
        for perm in itertools.permutations(range(n)):
            alpha = [e] * n + ([vsub(Lk.one, vscale(n, e))] if slots > n else [])
            tau = list(perm) + ([n] if slots > n else [])
            f = iet.from_description(Lk, alpha, tau)
            if iet.signature(f) != SW2(Lk, (), (_perm_parity(perm),)):
                return False, f"mismatch for {perm} over (1/{slots})Z"
            checked += 1
    L6 = step_lattice(6)
    e = L6.abs(L6.unit(0))
    for _ in range(100):
        perm = list(range(6))
        rng.shuffle(perm)
        f = iet.from_description(L6, [e] * 6, perm)
        if iet.signature(f) != SW2(L6, (), (_perm_parity(perm),)):
            return False, f"mismatch for {perm} over (1/6)Z"
        checked += 1
    return True, f"{checked} permutations match the parity oracle"


def c02_homomorphism(rng, quick):
    L = sqrt_lattice(2)
    n = _scale(quick, 200)
    for _ in range(n):
        f, g = rg.random_iet(L, rng), rg.random_iet(L, rng)
        if iet.signature(iet.compose(f, g)) != iet.signature(f) + iet.signature(g):
            return False, f"signature not additive on {f}, {g}"
    for _ in range(n):
        f, g = rg.random_flip(L, rng), rg.random_flip(L, rng)
        if flips.eps_flip(flips.compose(f, g)) != flips.eps_flip(f) + flips.eps_flip(g):
            return False, f"flip signature not additive on {f}, {g}"
    return True, f"{n} IET pairs and {n} flip pairs"


def c03_two_eps(rng, quick):
    L = sqrt_lattice(2)
    n = _scale(quick, 200)
    for _ in range(n):
        f = rg.random_iet(L, rng)
        eps = iet.signature(f)
        if eps * 2 != -iet.saf(f):
            return False, f"2ε != -φ for {f}"
        if project(measure_t2(iet.inversion_rectangles(f))) != eps:
            return False, f"rectangle measure differs from the closed formula for {f}"
    return True, f"{n} elements; rectangle measure agrees with the closed formula"


def c04_closed_forms(rng, quick):
    count = 0
    for L in (sqrt_lattice(2), sqrt_lattice(3)):
        for _ in range(_scale(quick, 25)):
            t = rg.random_transposition(L, rng)
            a = iet.transposition_data(t)[0]
            if iet.signature(t) != wedge(L, a, a):
                return False, f"ε(transposition) != a∧a for {t}"
            r = rg.random_rotation(L, rng)
            p, q = iet.rotation_type(r)
            if iet.signature(r) != wedge(L, p, q):
                return False, f"ε(rotation) != a∧b for {r}"
            count += 1
    return True, f"{count} (a, b) samples over two lattices"


def c05_torsion_witness(rng, quick):
    L = sqrt_lattice(2)
    K = L.field
    r2 = K.theta
    a, u = r2 - 1, 5 * r2 - 7
    t = iet.transposition(L, a, u, u + a + u)
    if len(t.lengths) != 5 or t.tau != (0, 3, 2, 1, 4):
        return False, f"unexpected description {t}"
    if not iet.saf(t).is_zero() or iet.signature(t).is_zero():
        return False, "type √2-1 is not a torsion witness"
    # Two disjoint intervals of length 2(√2-1) do not fit in [0, 1).
    try:
        iet.transposition(L, 2 * a, 0, 2 * a)
        return False, "a transposition of type 2(√2-1) was constructed"
    except (OutOfRange, Overlap):
        pass
    if not wedge(L, 2 * a, 2 * a).is_zero():
        return False, "the closed-form value (2(√2-1))∧(2(√2-1)) is not zero"
    ell = 3 - 2 * r2  # not in 2Γ, like √2-1
    t2 = iet.transposition(L, 2 * ell, 0, 2 * ell)
    if not iet.signature(t2).is_zero() or not iet.in_derived(t2):
        return False, "type 2(3-2√2) is not in the derived subgroup"
    return True, ("type √2-1: φ = 0, ε = " + iet.signature(t).render() + "; type 2(√2-1) does not fit in [0, 1) "
                  "but its closed-form value is 0; type 2(3-2√2) has ε = 0 and lies in D")


def c06_rotations(rng, quick):
    L = sqrt_lattice(2)
    n = _scale(quick, 100)
    for k in range(n):
        f = rg.random_iet(L, rng, rng.randint(1, 8))
        P = f.lengths
        if k % 2:
            P = partition_from_cuts(L, f.cuts() | set(rg.points(L, rng, 2)))
        factors = iet.decompose_rotations(f, P)
        if iet.product(factors, L) != f:
            return False, f"recomposition failed for {f}"
        allowed = set(P)
        if any(not set(iet.rotation_type(r)) <= allowed for r in factors):
            return False, f"a rotation type is not a pair of partition lengths for {f}"
    return True, f"{n} elements recompose; types within partition lengths"


def c07_balanced(rng, quick):
    L = sqrt_lattice(2)
    n = _scale(quick, 50)
    for _ in range(n):
        f = rg.balanced_product(L, rng)
        if not iet.in_ker_saf(f):
            return False, f"balanced product outside Ker φ: {f}"
        factors = iet.decompose_balanced(f)
        if not iet.is_balanced(factors) or iet.product(factors, L) != f:
            return False, f"bad balanced decomposition for {f}"
    m = _scale(quick, 20)
    rejected = 0
    while rejected < m:
        f = rg.random_iet(L, rng)
        if iet.in_ker_saf(f):
            continue
        try:
            iet.decompose_balanced(f)
            return False, f"no NotInSAFKernel for {f}"
        except NotInSAFKernel:
            rejected += 1
    return True, f"{n} balanced decompositions verified; {m} rejections"


def c08_small(rng, quick):
    L = sqrt_lattice(2)
    n = _scale(quick, 20)
    total = 0
    for _ in range(n):
        f = rg.random_iet(L, rng, rng.randint(2, 4))
        for eps in (Fraction(1, 4), Fraction(1, 10)):
            factors = iet.decompose_small(f, eps)
            if not all(iet.in_small_family(h, eps) for h in factors):
                return False, f"a factor is not in F_{eps} for {f}"
            if iet.product(factors, L) != f:
                return False, f"recomposition failed for {f}, eps = {eps}"
            total += len(factors)
    return True, f"{n} elements, 2 thresholds, {total} small factors"


def c09_orders(rng, quick):
    L = sqrt_lattice(2)
    for n in range(1, 13):
        f, g = iet.two_transposition_example(L, n)
        o = iet.order(iet.compose(g, f))
        if o != iet.Finite(n):
            return False, f"order {o} for n = {n}"
    m = _scale(quick, 100)
    for _ in range(m):
        f, g = rg.random_transposition(L, rng), rg.random_transposition(L, rng)
        h = iet.compose(g, f)
        o = iet.order(h)
        if o.kind != "finite" or not iet.power(h, o.value).is_identity():
            return False, f"order {o} for a product of transpositions"
    return True, f"orders 1..12 exact; {m} random pairs of finite order"


def c10_flip_values(rng, quick):
    L = sqrt_lattice(2)
    r2 = L.field.theta
    for _ in range(_scale(quick, 50)):
        x, y = rg.points(L, rng, 2)
        a = vsub(y, x)
        if flips.eps_flip(flips.reflection(L, x, y)) != mod2(tensor(L, a, a)):
            return False, "ε⋈(reflection) != a⊗a mod 2"
        r = rg.random_rotation(L, rng)
        p, q = iet.rotation_type(r)
        if flips.eps_flip(flips.embed(r)) != mod2(tensor(L, p, q) + tensor(L, q, p)):
            return False, "ε⋈(rotation) != p⊗q + q⊗p mod 2"
    ell = r2 - 1
    refl = flips.reflection(L, 0, 2 * ell)
    psi = flips.psi(refl).value
    if psi != mod2(wedge(L, ell, ell)) or psi.is_zero():
        return False, f"ψ(reflection 2(√2-1)) = {psi}"
    r4 = flips.reflection(L, 0, 12 - 8 * r2)
    if not (flips.eps_flip(r4).is_zero() and flips.psi(r4).is_zero() and flips.in_derived_flip(r4)):
        return False, "reflection of type 12-8√2 is not in D"
    return True, f"ψ(reflection 2(√2-1)) = {psi}; reflection 12-8√2 in D"


def c11_kernel(rng, quick):
    L = sqrt_lattice(2)
    n = _scale(quick, 100)
    for _ in range(n):
        f = rg.random_flip(L, rng)
        if not flips.in_derived_flip(flips.compose(f, f)):
            return False, f"f² not in D for {f}"
    refl = flips.reflection(L, 0, 2 * (L.field.theta - 1))
    if not flips.in_ker_eps_flip(refl) or flips.in_derived_flip(refl):
        return False, "reflection 2(√2-1) misclassified"
    return True, f"{n} squares in D; reflection 2(√2-1) in Ker ε⋈ and not in D"


def c12_measure(rng, quick):
    L = sqrt_lattice(2)
    n = _scale(quick, 100)
    for k in range(n):
        f = rg.random_iet(L, rng) if k % 2 else rg.random_flip(L, rng)
        P = rg.random_rectangles(L, rng)
        if measure_t2(act(f, P)) != measure_t2(P):
            return False, "ω(f.P) != ω(P)"
    m = _scale(quick, 50)
    for _ in range(m):
        P = rg.random_rectangles(L, rng)
        Q = RectangleSet.from_rectangles(L, rg.shuffled_encoding(P, rng))
        if Q != P or measure_t2(Q) != measure_t2(P):
            return False, "re-encoding changed the set or its measure"
    for _ in range(n):
        f, g = rg.random_flip(L, rng), rg.random_flip(L, rng)
        Efg = flips.inversion_set(flips.compose(f, g))
        Eg = flips.inversion_set(g)
        pulled = act(flips.inverse(g), flips.inversion_set(f))
        if Efg | (Eg & pulled) != Eg | pulled:
            return False, "union identity fails"
        if not (Efg & Eg & pulled).is_empty():
            return False, "triple intersection is not empty"
    return True, f"{n} invariance checks, {m} re-encodings, {n} pairs for the set identities"


def c13_substitutes(rng, quick):
    L = sqrt_lattice(2)
    n = _scale(quick, 100)
    for _ in range(n):
        f, g = rg.random_flip(L, rng), rg.random_flip(L, rng)
        P = partition_from_cuts(L, f.cuts() | f.preimage_points(g.cuts()))
        lhs = flips.positive_substitute(flips.compose(g, f), P)
        rhs = iet.compose(flips.positive_substitute(g, f.image_partition(P)), flips.positive_substitute(f, P))
        if lhs != rhs:
            return False, "chain rule fails"
    m = _scale(quick, 50)
    for _ in range(m):
        f = rg.random_flip(L, rng)
        S = flips.canonical_basis(L, f.lengths)
        closed = flips.psi_at(f, S)
        if any(flips.psi_refined(f, S, rng) != closed for _ in range(3)):
            return False, f"ε(f⁺) mod 2 depends on the S-partition for {f}"
    return True, f"{n} chain-rule pairs; {m} elements x 3 refinements agree"


def _sw2_quotient_invariants(d: int) -> list[int]:
    import sympy
    from sympy.matrices.normalforms import smith_normal_form
    rels = []
    for i in range(d):
        for j in range(i, d):
            row = [0] * (d * d)
            row[i * d + j] += 1
            row[j * d + i] += 1
            rels.append(row)
    snf = smith_normal_form(sympy.Matrix(rels), domain=sympy.ZZ)
    return [abs(int(snf[k, k])) for k in range(min(snf.shape)) if snf[k, k] != 0]


def c14_targets(rng, quick):
    for L in (sqrt_lattice(2), cubic_lattice()):
        d = L.d
        invariants = _sw2_quotient_invariants(d)
        torsion = sum(1 for x in invariants if x == 2)
        if torsion != d or any(x not in (1, 2) for x in invariants):
            return False, f"quotient invariants {invariants} for d = {d}"
        diag = [wedge(L, L.unit(i), L.unit(i)) for i in range(d)]
        if any(x.is_zero() or not (x * 2).is_zero() or not to_exterior(x).is_zero() for x in diag):
            return False, "diagonal elements are not the 2-torsion kernel"
        if f2_span_dim(mod2(x) for x in diag) != d:
            return False, "diagonal bits are dependent"
        for _ in range(_scale(quick, 50)):
            m = tuple(tuple(rng.randint(-5, 5) for _ in range(d)) for _ in range(d))
            x = project(T2(L, m))
            if to_exterior(x).is_zero() != x.is_torsion():
                return False, "kernel of the exterior map is not the torsion part"
    L = sqrt_lattice(2)
    for _ in range(_scale(quick, 200)):
        a, b = rg.point(L, rng), rg.point(L, rng)
        if wedge(L, vadd(a, b), vadd(a, b)) != wedge(L, a, a) + wedge(L, b, b):
            return False, "q(a) = a∧a is not additive"
    C = cubic_lattice()
    triples = 0
    while triples < _scale(quick, 50):
        ls = [rg.positive(C, rng) for _ in range(3)]
        if rank(ls) < 3:
            continue
        ws = [wedge(C, ls[i], ls[j]).upper for i, j in ((0, 1), (0, 2), (1, 2))]
        if rank(ws) != 3:
            return False, "wedges of an independent triple are dependent"
        triples += 1
    return True, f"quotient of the tensor square is Z^k + (Z/2)^d for d = 2, 3; {triples} wedge triples independent"


def _random_reflection(L, rng):
    x, y = rg.points(L, rng, 2)
    return flips.reflection(L, x, y)


def c15_dimensions(rng, quick):
    dims = []
    for L in (sqrt_lattice(2), cubic_lattice()):
        d = L.d
        sample = [rg.point(L, rng) for _ in range(40)]
        t = f2_span_dim(mod2(tensor(L, a, a)) for a in sample)
        w = f2_span_dim(mod2(wedge(L, a, a)) for a in sample)
        elems = [_random_reflection(L, rng) for _ in range(30)]
        elems += [flips.embed(rg.random_rotation(L, rng)) for _ in range(15)]
        elems += [rg.random_flip(L, rng) for _ in range(15)]
        j = f2_span_dim(flips.ab_images(elems))
        if (t, w, j) != (d * (d + 1) // 2, d, d * (d + 3) // 2):
            return False, f"d = {d}: spans {t}, {w}, {j}"
        dims.append(f"d={d}: {t}, {w}, {j}")
    return True, "; ".join(dims)


def c16_iota(rng, quick):
    L = sqrt_lattice(2)
    target = _scale(quick, 100)
    found = tries = 0
    makers: list[Callable[[], iet.IetMap]] = [
        lambda: iet.power(rg.random_iet(L, rng), 2),
        lambda: iet.product([g := rg.random_iet(L, rng), h := rg.random_iet(L, rng), iet.inverse(g), iet.inverse(h)]),
        lambda: rg.random_iet(L, rng),
    ]
    while found < target:
        tries += 1
        if tries > 200 * target:
            return False, f"only {found} samples with vanishing flip invariants"
        f = makers[tries % len(makers)]()
        e = flips.embed(f)
        if not (flips.eps_flip(e).is_zero() and flips.psi(e).is_zero()):
            continue
        s = iet.signature(f)
        if any(c % 2 for c in s.upper) or any(s.diag):
            return False, f"signature {s} is not in 2·SW2"
        found += 1
    return True, f"{found} elements with both flip invariants zero have even signature"


CRITERIA: list[tuple[str, Callable]] = [
    ("rank-1 parity oracle", c01_parity),
    ("homomorphism laws", c02_homomorphism),
    ("2ε = -φ", c03_two_eps),
    ("closed-form signatures", c04_closed_forms),
    ("torsion witness", c05_torsion_witness),
    ("rotation decomposition", c06_rotations),
    ("balanced decomposition", c07_balanced),
    ("small-support factorization", c08_small),
    ("orders", c09_orders),
    ("flip values", c10_flip_values),
    ("flip kernel structure", c11_kernel),
    ("measure algebra", c12_measure),
    ("positive substitutes", c13_substitutes),
    ("target groups", c14_targets),
    ("F2 dimension counts", c15_dimensions),
    ("iota injectivity evidence", c16_iota),
]


def run(number: int, quick: bool = False, seed: int = SEED) -> Result:
    name, check = CRITERIA[number - 1]
    rng = random.Random(seed + number)
    start = time.perf_counter()
    try:
        ok, detail = check(rng, quick)
    except Exception as exc:  # a crash is a failure with its message
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return Result(number, name, ok, detail, time.perf_counter() - start)


def run_all(quick: bool = False, seed: int = SEED) -> list[Result]:
    return [run(k, quick, seed) for k in range(1, len(CRITERIA) + 1)]
