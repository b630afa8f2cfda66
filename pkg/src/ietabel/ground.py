"""Exact arithmetic in a real number field Q(theta).

Elements are stored in the power basis 1, theta, ..., theta^(n-1) with
``Fraction`` coordinates.  Signs are decided by an exact zero test followed by
bisection of theta's isolating interval and interval evaluation with integer
arithmetic, so a returned sign is never wrong.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from functools import lru_cache
from math import ceil, floor, gcd, isqrt
from typing import Iterable, Sequence, Union

from .errors import BadInterval, BadPolynomial, DivisionByZero, MixedContexts

Rational = Union[int, Fraction]

# Enclosure precision (bits) used on the first attempt and added on each retry.
_START_BITS = 48
_STEP_BITS = 48


def _poly_eval(coeffs: Sequence[Rational], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _check_polynomial(minpoly: Sequence[int]) -> None:
    if len(minpoly) < 2:
        raise BadPolynomial("degree must be at least 1")
    if minpoly[-1] != 1:
        raise BadPolynomial("polynomial must be monic (leading coefficient 1)")
    if len(minpoly) == 2:
        return
    import sympy

    x = sympy.Symbol("x")
    poly = sympy.Poly(list(reversed(minpoly)), x, domain="QQ")
    if sympy.degree(sympy.gcd(poly, poly.diff(x)), x) > 0:
        raise BadPolynomial("polynomial is not square-free")
    if not poly.is_irreducible:
        raise BadPolynomial("polynomial is reducible over Q")


class Field:
    """The field Q(theta) for the unique root theta of ``minpoly`` in ``[lo, hi]``.

    ``minpoly`` lists integer coefficients, constant term first, and must be
    monic and irreducible.
    """

    def __init__(self, minpoly: Sequence[int], interval: tuple[Rational, Rational]):
        minpoly = tuple(int(c) for c in minpoly)
        _check_polynomial(minpoly)
        lo, hi = Fraction(interval[0]), Fraction(interval[1])
        if lo > hi:
            raise BadInterval("interval endpoints out of order")
        self.minpoly = minpoly
        self.degree = len(minpoly) - 1
        self.interval = (lo, hi)
        if self.degree == 1:
            root = Fraction(-minpoly[0])
            if not lo <= root <= hi:
                raise BadInterval("root not inside the interval")
            self._root = root
        else:
            self._root = None
            self._check_interval(lo, hi)
        self._lock = threading.Lock()
        self._bisections: list[tuple[Fraction, Fraction]] = [(lo, hi)]
        self._power_bounds: dict[int, tuple[tuple[int, int], ...]] = {}

    def _check_interval(self, lo: Fraction, hi: Fraction) -> None:
        import sympy

        x = sympy.Symbol("x")
        poly = sympy.Poly(list(reversed(self.minpoly)), x, domain="QQ")
        if poly.count_roots(sympy.Rational(lo.numerator, lo.denominator),
                            sympy.Rational(hi.numerator, hi.denominator)) != 1:
            raise BadInterval("interval must contain exactly one real root")
        if _poly_eval(self.minpoly, lo) * _poly_eval(self.minpoly, hi) >= 0:
            raise BadInterval("polynomial must change sign across the interval")

    # -- identity -------------------------------------------------------

    def _key(self):
        return (self.minpoly, self.interval)

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        return isinstance(other, Field) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return f"Field(minpoly={list(self.minpoly)}, interval=({self.interval[0]}, {self.interval[1]}))"

    # -- element construction ------------------------------------------

    def __call__(self, *coords: Rational) -> "GroundNum":
        """``K(a0, a1, ...)`` is ``a0 + a1*theta + ...``; missing coordinates are 0."""
        if len(coords) > self.degree:
            raise ValueError(f"at most {self.degree} coordinates expected")
        padded = tuple(Fraction(c) for c in coords) + (Fraction(0),) * (self.degree - len(coords))
        return GroundNum(self, padded)

    @property
    def zero(self) -> "GroundNum":
        return self()

    @property
    def one(self) -> "GroundNum":
        return self(1)

    @property
    def theta(self) -> "GroundNum":
        if self.degree == 1:
            return self(self._root)
        return self(0, 1)

    def coerce(self, x: Union["GroundNum", Rational]) -> "GroundNum":
        if isinstance(x, GroundNum):
            if x.field != self:
                raise MixedContexts("numbers from different fields")
            return x
        if isinstance(x, (int, Fraction)):
            return self(x)
        raise TypeError(f"cannot convert {type(x).__name__} to a field element")

    # -- enclosures -----------------------------------------------------

    def _bisection(self, level: int) -> tuple[Fraction, Fraction]:
        """Enclosure of theta after ``level`` bisections of the isolating interval."""
        with self._lock:
            while len(self._bisections) <= level:
                lo, hi = self._bisections[-1]
                mid = (lo + hi) / 2
                s_lo = _poly_eval(self.minpoly, lo)
                s_mid = _poly_eval(self.minpoly, mid)
                if (s_lo < 0) == (s_mid < 0):
                    self._bisections.append((mid, hi))
                else:
                    self._bisections.append((lo, mid))
            return self._bisections[level]

    def _bounds(self, bits: int) -> tuple[tuple[int, int], ...]:
        """Integer bounds ``floor/ceil(theta^j * 2^bits)`` valid for j < degree."""
        with self._lock:
            cached = self._power_bounds.get(bits)
        if cached is not None:
            return cached
        lo, hi = self._bisection(bits)
        scale = 1 << bits
        out = []
        plo, phi = Fraction(1), Fraction(1)
        for j in range(self.degree):
            if j > 0:
                cands = (plo * lo, plo * hi, phi * lo, phi * hi)
                plo, phi = min(cands), max(cands)
            out.append((floor(plo * scale), ceil(phi * scale)))
        result = tuple(out)
        with self._lock:
            self._power_bounds[bits] = result
        return result

    def sign_of_int_poly(self, n: Sequence[int], start_bits: int = _START_BITS,
                         step_bits: int = _STEP_BITS) -> int:
        """Exact sign of ``sum n[j] * theta^j`` for integer coefficients ``n``."""
        if not any(n):
            return 0
        if self.degree == 1:
            c = n[0]
            return (c > 0) - (c < 0)
        bits = start_bits
        while True:
            bounds = self._bounds(bits)
            low = high = 0
            for c, (bl, bh) in zip(n, bounds):
                if c >= 0:
                    low += c * bl
                    high += c * bh
                else:
                    low += c * bh
                    high += c * bl
            if low > 0:
                return 1
            if high < 0:
                return -1
            bits += step_bits

    def enclose(self, coords: Sequence[Fraction], bits: int) -> tuple[Fraction, Fraction]:
        """Rational interval containing the value of ``coords`` (width shrinks with ``bits``)."""
        if self.degree == 1:
            v = coords[0]
            return v, v
        den = _common_denominator(coords)
        n = [int(c * den) for c in coords]
        bounds = self._bounds(bits)
        low = high = 0
        for c, (bl, bh) in zip(n, bounds):
            if c >= 0:
                low += c * bl
                high += c * bh
            else:
                low += c * bh
                high += c * bl
        scale = den << bits
        return Fraction(low, scale), Fraction(high, scale)


def _common_denominator(coords: Iterable[Fraction]) -> int:
    den = 1
    for c in coords:
        d = c.denominator
        den = den * d // gcd(den, d)
    return den


class GroundNum:
    """Immutable element of a :class:`Field`."""

    __slots__ = ("field", "coords")

    def __init__(self, field: Field, coords: tuple[Fraction, ...]):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coords", coords)

    def __setattr__(self, name, value):
        raise AttributeError("GroundNum is immutable")

    # -- helpers --------------------------------------------------------

    def _other(self, other) -> "GroundNum":
        if isinstance(other, GroundNum):
            if other.field is not self.field and other.field != self.field:
                raise MixedContexts("numbers from different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return NotImplemented

    def _mul_coords(self, a: Sequence[Fraction], b: Sequence[Fraction]) -> tuple[Fraction, ...]:
        n = self.field.degree
        prod = [Fraction(0)] * (2 * n - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        mp = self.field.minpoly
        for k in range(2 * n - 2, n - 1, -1):
            c = prod[k]
            if c:
                prod[k] = Fraction(0)
                for j in range(n):
                    prod[k - n + j] -= c * mp[j]
        return tuple(prod[:n])

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return GroundNum(self.field, tuple(x + y for x, y in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return GroundNum(self.field, tuple(x - y for x, y in zip(self.coords, other.coords)))

    def __rsub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return GroundNum(self.field, tuple(-x for x in self.coords))

    def __pos__(self):
        return self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return GroundNum(self.field, tuple(x * other for x in self.coords))
        other = self._other(other)
        if other is NotImplemented:
            return other
        return GroundNum(self.field, self._mul_coords(self.coords, other.coords))

    __rmul__ = __mul__

    def inverse(self) -> "GroundNum":
        """Multiplicative inverse, by solving ``M_self * x = 1`` over Q."""
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        n = self.field.degree
        # Column k of the multiplication matrix is self * theta^k.
        cols = []
        basis_vec = [Fraction(0)] * n
        for k in range(n):
            e = list(basis_vec)
            e[k] = Fraction(1)
            cols.append(self._mul_coords(self.coords, e))
        rows = [[cols[k][i] for k in range(n)] + [Fraction(1 if i == 0 else 0)] for i in range(n)]
        for c in range(n):
            piv = next(r for r in range(c, n) if rows[r][c] != 0)
            rows[c], rows[piv] = rows[piv], rows[c]
            pv = rows[c][c]
            rows[c] = [v / pv for v in rows[c]]
            for r in range(n):
                if r != c and rows[r][c] != 0:
                    f = rows[r][c]
                    rows[r] = [v - f * w for v, w in zip(rows[r], rows[c])]
        return GroundNum(self.field, tuple(rows[i][n] for i in range(n)))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise DivisionByZero("division by zero")
            return GroundNum(self.field, tuple(x / other for x in self.coords))
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    # -- order ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.coords)

    def sign(self) -> int:
        if self.is_zero():
            return 0
        den = _common_denominator(self.coords)
        return self.field.sign_of_int_poly([int(c * den) for c in self.coords])

    def _cmp(self, other) -> int:
        other = self._other(other)
        if other is NotImplemented:
            raise TypeError("unsupported comparison")
        return (self - other).sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __eq__(self, other):
        if isinstance(other, GroundNum):
            return self.field == other.field and self.coords == other.coords
        if isinstance(other, (int, Fraction)):
            return self.coords[0] == other and not any(self.coords[1:])
        return NotImplemented

    def __hash__(self):
        if not any(self.coords[1:]):
            return hash(self.coords[0])
        return hash(self.coords)

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def floor(self) -> int:
        bits = 16
        while True:
            lo, hi = self.field.enclose(self.coords, bits)
            a, b = floor(lo), floor(hi)
            if a == b:
                return a
            if b == a + 1:
                return b if (self - b).sign() >= 0 else a
            bits += 32

    def __float__(self) -> float:
        lo, hi = self.field.enclose(self.coords, 64)
        return float((lo + hi) / 2)

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    # -- text -----------------------------------------------------------

    def __repr__(self) -> str:
        return f"GroundNum({format_number(self)})"

    def __str__(self) -> str:
        return format_number(self)


def format_fraction(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_number(x: GroundNum) -> str:
    """``p/q`` for rationals of a degree-1 field, else ``(c0, c1, ...)``."""
    if x.field.degree == 1:
        return format_fraction(x.coords[0])
    return "(" + ", ".join(format_fraction(c) for c in x.coords) + ")"


def parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not an exact rational: {text!r}") from exc


def parse_number(field: Field, text: str) -> GroundNum:
    """Inverse of :func:`format_number`; also accepts a bare rational in any field."""
    text = text.strip()
    if text.startswith("("):
        if not text.endswith(")"):
            raise ValueError(f"unterminated tuple: {text!r}")
        parts = [p for p in text[1:-1].split(",")]
        if len(parts) != field.degree:
            raise ValueError(f"expected {field.degree} coordinates in {text!r}")
        return field(*(parse_fraction(p) for p in parts))
    return field(parse_fraction(text))


def field_new(minpoly: Sequence[int], interval: tuple[Rational, Rational]) -> Field:
    return Field(minpoly, interval)


def sign(a: GroundNum) -> int:
    return a.sign()


@lru_cache(maxsize=None)
def rational_field() -> Field:
    """The field Q, presented by the polynomial x."""
    return Field((0, 1), (-1, 1))


@lru_cache(maxsize=None)
def quadratic_field(n: int) -> Field:
    """Q(sqrt(n)) for a positive non-square ``n``, with the positive root."""
    r = isqrt(n)
    return Field((-n, 0, 1), (r, r + 1))
