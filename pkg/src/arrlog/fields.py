"""Exact scalar arithmetic.

Everything in the library runs over an exact field: either the rationals
(``fractions.Fraction``) or the quadratic extension Q(w) with w a primitive
cube root of unity (w^2 + w + 1 = 0).  The extension is needed by fixtures
whose defining polynomials only split into linear factors over Q(w), such as
products involving x^2 + x*y + y^2 or x^3 - z^3.

Scalars are duck-typed: any code that adds, multiplies, divides and compares
against 0/1 works for both kinds.  ``Eisenstein`` implements the full mixed
arithmetic protocol with ``int`` and ``Fraction``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

Scalar = object  # Fraction | int | Eisenstein; kept loose on purpose


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"not a rational scalar: {x!r}")


@dataclass(frozen=True)
class Eisenstein:
    """Element a + b*w of Q(w), with w^2 = -1 - w."""

    a: Fraction
    b: Fraction

    def __init__(self, a=0, b=0):
        object.__setattr__(self, "a", _frac(a))
        object.__setattr__(self, "b", _frac(b))

    # -- ring structure --

    def __add__(self, other):
        o = _lift(other)
        if o is None:
            return NotImplemented
        return Eisenstein(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other):
        o = _lift(other)
        if o is None:
            return NotImplemented
        return Eisenstein(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = _lift(other)
        if o is None:
            return NotImplemented
        return Eisenstein(o.a - self.a, o.b - self.b)

    def __neg__(self):
        return Eisenstein(-self.a, -self.b)

    def __mul__(self, other):
        o = _lift(other)
        if o is None:
            return NotImplemented
        # (a + bw)(c + dw) = ac + (ad + bc)w + bd(-1 - w)
        a, b, c, d = self.a, self.b, o.a, o.b
        return Eisenstein(a * c - b * d, a * d + b * c - b * d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _lift(other)
        if o is None:
            return NotImplemented
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(w)")
        return self * _scale(o.conjugate(), Fraction(1) / n)

    def __rtruediv__(self, other):
        o = _lift(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k: int):
        if k < 0:
            return 1 / self.__pow__(-k)
        out = Eisenstein(1, 0)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- field helpers --

    def conjugate(self) -> "Eisenstein":
        """Image under w -> w^2 = -1 - w."""
        return Eisenstein(self.a - self.b, -self.b)

    def norm(self) -> Fraction:
        """self * conjugate(self), a rational."""
        return self.a * self.a - self.a * self.b + self.b * self.b

    # -- comparisons / conversions --

    def __eq__(self, other):
        o = _lift(other)
        if o is None:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def sort_key(self):
        return (self.a, self.b)

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"Eisenstein({self.a!r}, {self.b!r})"


OMEGA = Eisenstein(0, 1)


def _lift(x) -> Eisenstein | None:
    if isinstance(x, Eisenstein):
        return x
    if isinstance(x, (int, Fraction)):
        return Eisenstein(x, 0)
    return None


def _scale(e: Eisenstein, c: Fraction) -> Eisenstein:
    return Eisenstein(e.a * c, e.b * c)


def scalar_sort_key(x):
    """Deterministic, field-consistent ordering key for a scalar."""
    if isinstance(x, Eisenstein):
        return x.sort_key()
    return (_frac(x), Fraction(0))


def coerce(x):
    """Normalize a raw scalar (int is promoted to Fraction)."""
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, (Fraction, Eisenstein)):
        return x
    raise TypeError(f"unsupported scalar type: {type(x).__name__}")


def format_scalar(x) -> str:
    """Render a scalar exactly: '3', '-1/2', 'w', '1+w', '2-1/3w'."""
    if isinstance(x, Eisenstein):
        if x.b == 0:
            return format_scalar(x.a)
        wpart = "w" if x.b == 1 else ("-w" if x.b == -1 else f"{format_scalar(x.b)}w")
        if x.a == 0:
            return wpart
        sep = "+" if x.b > 0 and not wpart.startswith("-") else ""
        return f"{format_scalar(x.a)}{sep}{wpart}"
    x = _frac(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"
