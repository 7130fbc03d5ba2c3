"""Dense homogeneous polynomials and polynomial derivations.

A ``HomPoly`` is a homogeneous polynomial stored as a dense coefficient
vector against the graded-lex monomial basis of its degree (the zero
polynomial of any degree is representable).  A ``Derivation`` is a tuple of
equal-degree ``HomPoly`` components, component i being the coefficient of
d/dx_i; applying it to a polynomial f yields  sum_i P_i * df/dx_i.

Division only ever happens by *linear* forms: ``divide_by_linear`` runs a
synthetic division against the pivot variable of the divisor, which is all
the ideal-membership testing the rest of the library needs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .fields import coerce, format_scalar
from .monomials import (
    basis_size,
    default_varnames,
    monomial_basis,
    monomial_index,
    monomial_string,
)

_ZERO = Fraction(0)


@dataclass(frozen=True)
class HomPoly:
    nvars: int
    degree: int
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != basis_size(self.nvars, self.degree):
            raise ValueError(
                f"coefficient vector of length {len(self.coeffs)} does not match "
                f"degree {self.degree} in {self.nvars} variables"
            )

    # -- constructors --

    @classmethod
    def zero(cls, nvars: int, degree: int) -> "HomPoly":
        return cls(nvars, degree, (_ZERO,) * basis_size(nvars, degree))

    @classmethod
    def from_coeffs(cls, nvars: int, degree: int, coeffs) -> "HomPoly":
        return cls(nvars, degree, tuple(coerce(c) for c in coeffs))

    @classmethod
    def from_terms(cls, nvars: int, degree: int, terms: dict) -> "HomPoly":
        """Build from {exponent tuple: coefficient}."""
        idx = monomial_index(nvars, degree)
        out = [_ZERO] * basis_size(nvars, degree)
        for exps, c in terms.items():
            out[idx[tuple(exps)]] += coerce(c)
        return cls(nvars, degree, tuple(out))

    @classmethod
    def monomial(cls, nvars: int, exps, coeff=1) -> "HomPoly":
        exps = tuple(exps)
        return cls.from_terms(nvars, sum(exps), {exps: coeff})

    @classmethod
    def variable(cls, nvars: int, i: int) -> "HomPoly":
        exps = tuple(1 if j == i else 0 for j in range(nvars))
        return cls.from_terms(nvars, 1, {exps: 1})

    @classmethod
    def linear(cls, coeffs) -> "HomPoly":
        coeffs = tuple(coerce(c) for c in coeffs)
        return cls(len(coeffs), 1, coeffs)

    # -- queries --

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def coefficient(self, exps) -> object:
        return self.coeffs[monomial_index(self.nvars, self.degree)[tuple(exps)]]

    def terms(self):
        basis = monomial_basis(self.nvars, self.degree)
        for i, c in enumerate(self.coeffs):
            if c != 0:
                yield basis[i], c

    # -- arithmetic --

    def _check_compatible(self, other: "HomPoly"):
        if self.nvars != other.nvars:
            raise ValueError("nvars mismatch")
        if self.degree != other.degree:
            raise ValueError(f"degree mismatch: {self.degree} vs {other.degree}")

    def __add__(self, other: "HomPoly") -> "HomPoly":
        self._check_compatible(other)
        return HomPoly(self.nvars, self.degree,
                       tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "HomPoly") -> "HomPoly":
        self._check_compatible(other)
        return HomPoly(self.nvars, self.degree,
                       tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "HomPoly":
        return HomPoly(self.nvars, self.degree, tuple(-a for a in self.coeffs))

    def scale(self, c) -> "HomPoly":
        c = coerce(c)
        return HomPoly(self.nvars, self.degree, tuple(c * a for a in self.coeffs))

    def __mul__(self, other: "HomPoly") -> "HomPoly":
        if not isinstance(other, HomPoly):
            return NotImplemented
        if self.nvars != other.nvars:
            raise ValueError("nvars mismatch")
        n = self.nvars
        deg = self.degree + other.degree
        idx = monomial_index(n, deg)
        b1 = monomial_basis(n, self.degree)
        b2 = monomial_basis(n, other.degree)
        out = [_ZERO] * basis_size(n, deg)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            e1 = b1[i]
            for j, b in enumerate(other.coeffs):
                if b == 0:
                    continue
                e = tuple(x + y for x, y in zip(e1, b2[j]))
                out[idx[e]] += a * b
        return HomPoly(n, deg, tuple(out))

    def partial(self, i: int) -> "HomPoly":
        """d/dx_i; the result is homogeneous of degree one less."""
        if self.degree == 0:
            raise ValueError("cannot differentiate a degree-0 form to negative degree")
        n = self.nvars
        idx = monomial_index(n, self.degree - 1)
        out = [_ZERO] * basis_size(n, self.degree - 1)
        for exps, c in self.terms():
            e = exps[i]
            if e:
                lowered = exps[:i] + (e - 1,) + exps[i + 1:]
                out[idx[lowered]] += e * c
        return HomPoly(n, self.degree - 1, tuple(out))

    def evaluate(self, point) -> object:
        point = tuple(point)
        if len(point) != self.nvars:
            raise ValueError("point dimension mismatch")
        total = _ZERO
        for exps, c in self.terms():
            v = c
            for p, e in zip(point, exps):
                for _ in range(e):
                    v = v * p
            total = total + v
        return total

    def __str__(self):
        return self.to_string()

    def to_string(self, varnames: tuple[str, ...] | None = None) -> str:
        if varnames is None:
            varnames = default_varnames(self.nvars)
        parts = []
        for exps, c in self.terms():
            mono = monomial_string(exps, varnames)
            cs = format_scalar(c)
            if mono == "1":
                term = cs
            elif cs == "1":
                term = mono
            elif cs == "-1":
                term = f"-{mono}"
            else:
                term = f"({cs})*{mono}" if ("+" in cs[1:] or "-" in cs[1:]) else f"{cs}*{mono}"
            parts.append(term)
        if not parts:
            return "0"
        text = parts[0]
        for term in parts[1:]:
            text += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
        return text


def poly_product(polys) -> HomPoly:
    polys = list(polys)
    if not polys:
        raise ValueError("empty product")
    out = polys[0]
    for p in polys[1:]:
        out = out * p
    return out


def divide_by_linear(f: HomPoly, linear) -> tuple[HomPoly | None, bool]:
    """Exact division of f by a nonzero linear form.

    Returns (quotient, True) when linear divides f exactly, else (None,
    False).  Works by synthetic division against the pivot variable (the
    first with nonzero coefficient) of the divisor.
    """
    lc = _linear_coeffs(f.nvars, linear)
    pivot = next((i for i, c in enumerate(lc) if c != 0), None)
    if pivot is None:
        raise ValueError("division by the zero form")
    if f.degree == 0:
        # no degree -1 quotients; callers test degree-0 membership directly
        raise ValueError("cannot divide a degree-0 form by a linear form")

    cp = lc[pivot]
    d = f.degree
    # slice f by pivot exponent: layers[k] = {exps with pivot 0: coeff} at degree d-k
    layers: list[dict] = [dict() for _ in range(d + 1)]
    for exps, c in f.terms():
        k = exps[pivot]
        flat = exps[:pivot] + (0,) + exps[pivot + 1:]
        layers[k][flat] = c

    def mul_rest(layer: dict) -> dict:
        # multiply a pivot-free layer by the non-pivot part of the divisor
        out: dict = {}
        for exps, c in layer.items():
            for i, ci in enumerate(lc):
                if i == pivot or ci == 0:
                    continue
                e = exps[:i] + (exps[i] + 1,) + exps[i + 1:]
                out[e] = out.get(e, _ZERO) + c * ci
        return {e: c for e, c in out.items() if c != 0}

    # f = (cp*x_p + m) * q  with  q = sum_k x_p^k q_k:
    #   layer_d = cp*q_{d-1};  layer_k = cp*q_{k-1} + m*q_k;  layer_0 = m*q_0
    q_layers: list[dict] = [dict() for _ in range(d)]
    q_layers[d - 1] = {e: c / cp for e, c in layers[d].items()}
    for k in range(d - 1, 0, -1):
        rem = dict(layers[k])
        for e, c in mul_rest(q_layers[k]).items():
            rem[e] = rem.get(e, _ZERO) - c
        q_layers[k - 1] = {e: c / cp for e, c in rem.items() if c != 0}
    check = dict(layers[0])
    for e, c in mul_rest(q_layers[0]).items():
        check[e] = check.get(e, _ZERO) - c
    if any(c != 0 for c in check.values()):
        return None, False

    terms: dict = {}
    for k, layer in enumerate(q_layers):
        for exps, c in layer.items():
            e = exps[:pivot] + (k,) + exps[pivot + 1:]
            terms[e] = c
    return HomPoly.from_terms(f.nvars, d - 1, terms), True


def _linear_coeffs(nvars: int, linear) -> tuple:
    if isinstance(linear, HomPoly):
        if linear.degree != 1 or linear.nvars != nvars:
            raise ValueError("divisor must be a linear form in the same variables")
        return linear.coeffs
    coeffs = tuple(coerce(c) for c in linear)
    if len(coeffs) != nvars:
        raise ValueError("divisor length does not match nvars")
    return coeffs


@dataclass(frozen=True)
class Derivation:
    """theta = sum_i components[i] * d/dx_i with equal-degree components."""

    components: tuple[HomPoly, ...]

    def __post_init__(self):
        if not self.components:
            raise ValueError("a derivation needs at least one component")
        n = self.components[0].nvars
        d = self.components[0].degree
        for p in self.components:
            if p.nvars != n or p.degree != d:
                raise ValueError("components must share nvars and degree")
        if len(self.components) != n:
            raise ValueError("need one component per variable")

    @property
    def nvars(self) -> int:
        return self.components[0].nvars

    @property
    def degree(self) -> int:
        return self.components[0].degree

    @classmethod
    def euler(cls, nvars: int) -> "Derivation":
        return cls(tuple(HomPoly.variable(nvars, i) for i in range(nvars)))

    @classmethod
    def zero(cls, nvars: int, degree: int) -> "Derivation":
        return cls(tuple(HomPoly.zero(nvars, degree) for _ in range(nvars)))

    def apply(self, f: HomPoly) -> HomPoly:
        if f.nvars != self.nvars:
            raise ValueError("nvars mismatch")
        out = HomPoly.zero(self.nvars, self.degree + f.degree - 1)
        for i, comp in enumerate(self.components):
            if not comp.is_zero():
                out = out + comp * f.partial(i)
        return out

    def is_zero(self) -> bool:
        return all(p.is_zero() for p in self.components)

    def __add__(self, other: "Derivation") -> "Derivation":
        return Derivation(tuple(a + b for a, b in zip(self.components, other.components)))

    def __sub__(self, other: "Derivation") -> "Derivation":
        return Derivation(tuple(a - b for a, b in zip(self.components, other.components)))

    def scale(self, c) -> "Derivation":
        return Derivation(tuple(p.scale(c) for p in self.components))

    def mul_poly(self, g: HomPoly) -> "Derivation":
        return Derivation(tuple(g * p for p in self.components))

    def to_string(self, varnames: tuple[str, ...] | None = None) -> str:
        if varnames is None:
            varnames = default_varnames(self.nvars)
        parts = []
        for name, comp in zip(varnames, self.components):
            if not comp.is_zero():
                parts.append(f"({comp.to_string(varnames)})*d/d{name}")
        return " + ".join(parts) if parts else "0"

    def __str__(self):
        return self.to_string()


def apply_derivation(theta: Derivation, f: HomPoly) -> HomPoly:
    """sum_i theta_i * df/dx_i, homogeneous of degree deg(theta) + deg(f) - 1."""
    return theta.apply(f)
