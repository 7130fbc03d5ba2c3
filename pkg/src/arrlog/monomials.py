"""Graded-lexicographic monomial bookkeeping.

All dense polynomial data in the library is indexed against the monomial
list produced here.  Within a fixed total degree, exponent tuples are listed
in descending lexicographic order with x1 > x2 > ... > xn, so for three
variables and degree 2 the order is x^2, xy, xz, y^2, yz, z^2.  The order is
deterministic and cached; matrix layouts elsewhere rely on it.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb


def basis_size(nvars: int, degree: int) -> int:
    return comb(degree + nvars - 1, nvars - 1)


@lru_cache(maxsize=None)
def monomial_basis(nvars: int, degree: int) -> tuple[tuple[int, ...], ...]:
    """All exponent tuples of the given total degree, graded-lex descending."""
    if nvars < 1:
        raise ValueError("nvars must be at least 1")
    if degree < 0:
        raise ValueError("degree must be non-negative")
    if nvars == 1:
        return ((degree,),)
    out = []
    for e in range(degree, -1, -1):
        for rest in monomial_basis(nvars - 1, degree - e):
            out.append((e,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(nvars: int, degree: int) -> dict[tuple[int, ...], int]:
    """Exponent tuple -> position in monomial_basis(nvars, degree)."""
    return {e: i for i, e in enumerate(monomial_basis(nvars, degree))}


def default_varnames(nvars: int) -> tuple[str, ...]:
    if nvars == 3:
        return ("x", "y", "z")
    return tuple(f"x{i + 1}" for i in range(nvars))


def monomial_string(exps: tuple[int, ...], varnames: tuple[str, ...] | None = None) -> str:
    if varnames is None:
        varnames = default_varnames(len(exps))
    parts = []
    for name, e in zip(varnames, exps):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"
