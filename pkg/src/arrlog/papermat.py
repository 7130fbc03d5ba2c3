"""Specialized coefficient systems for degree-2 and degree-3 derivations.

For a rank-3 line arrangement whose first three forms are x, y, z, a
normalized derivation Q'*y*d/dy + R'*z*d/dz of degree 2 or 3 is logarithmic
iff the coefficient vector of (Q', R') solves a small exact linear system.
The system is assembled line by line: writing theta(l) = l * T and comparing
coefficients gives six (degree 2) or ten (degree 3) relations per line, and
eliminating the cofactor T leaves relations in the q_i, r_j alone.

Lines beyond the coordinate triangle carry at most one zero coefficient and
are grouped by which one vanishes:

    situation i:   c = 0   (rescaled so b = 1)
    situation ii:  b = 0   (rescaled so c = 1)
    situation iii: a = 0   (rescaled so c = 1)
    situation iv:  a, b, c all nonzero (rescaled so c = 1)

Row order is deterministic: situations in order, inside a situation the
shared relation first, then each remaining relation kind swept over the
lines in grouped order.  Unknown order is (q_1..q_k, r_1..r_k) with the
quadric convention q1*x^2 + q2*y^2 + q3*z^2 + q4*xy + q5*xz + q6*yz.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arrangement import Arrangement, normalize_point
from .derlog import NormalizedDerivation
from .errors import AllZeroCoefficients, MissingCoordinateTriangle
from .linalg import Matrix, nullspace_from_rref, rref
from .poly import Derivation

_ZERO = Fraction(0)
_ONE = Fraction(1)

SITUATIONS = ("i", "ii", "iii", "iv")


@dataclass(frozen=True)
class GroupedLine:
    index: int        # 0-based position in the arrangement
    situation: str
    a: object
    b: object
    c: object


@dataclass(frozen=True)
class LineGrouping:
    """Stable partition of the lines beyond x, y, z into the four situations."""

    lines: tuple[GroupedLine, ...]    # grouped order: situations i, ii, iii, iv
    j_end: int                        # 1-based count through situation i
    l_end: int                        # ... through situation ii
    n_end: int                        # ... through situation iii
    size: int                         # s, the total number of lines

    def permutation(self) -> tuple[int, ...]:
        """Original 0-based indices in grouped order, triangle first."""
        return (0, 1, 2) + tuple(g.index for g in self.lines)

    def in_situation(self, name: str) -> tuple[GroupedLine, ...]:
        return tuple(g for g in self.lines if g.situation == name)


def group_lines(arr: Arrangement) -> LineGrouping:
    if not arr.has_coordinate_triangle():
        raise MissingCoordinateTriangle(
            "grouping needs x, y, z as the first three forms"
        )
    buckets: dict[str, list[GroupedLine]] = {s: [] for s in SITUATIONS}
    for idx in range(3, arr.size):
        a, b, c = arr.forms[idx].coeffs
        zeros = sum(1 for v in (a, b, c) if v == 0)
        if zeros >= 2:  # would duplicate a coordinate form, which is excluded
            raise AssertionError("unreachable: coordinate duplicate slipped through")
        if c == 0:
            g = GroupedLine(idx, "i", a / b, _ONE, _ZERO)
        elif b == 0:
            g = GroupedLine(idx, "ii", a / c, _ZERO, _ONE)
        elif a == 0:
            g = GroupedLine(idx, "iii", _ZERO, b / c, _ONE)
        else:
            g = GroupedLine(idx, "iv", a / c, b / c, _ONE)
        buckets[g.situation].append(g)
    ordered = buckets["i"] + buckets["ii"] + buckets["iii"] + buckets["iv"]
    j_end = 3 + len(buckets["i"])
    l_end = j_end + len(buckets["ii"])
    n_end = l_end + len(buckets["iii"])
    return LineGrouping(tuple(ordered), j_end, l_end, n_end, arr.size)


@dataclass(frozen=True)
class RowOrigin:
    line: int | None   # 0-based index of the source line; None for shared rows
    relation: str


@dataclass(frozen=True)
class DerivationSystem:
    degree: int
    matrix: Matrix
    unknowns: tuple[str, ...]
    provenance: tuple[RowOrigin, ...]
    grouping: LineGrouping
    rank: int
    nullity: int
    nullspace: tuple[tuple, ...]

    def reconstruct(self, vector) -> Derivation:
        """Derivation Q'*y*d/dy + R'*z*d/dz from a solution vector."""
        return NormalizedDerivation.from_paper_vector(self.degree, vector).to_derivation()


def _finish(degree: int, rows, provenance, grouping, unknowns) -> DerivationSystem:
    ncols = len(unknowns)
    pivots, reduced = rref([list(r) for r in rows], ncols)
    null = nullspace_from_rref(pivots, reduced, ncols)
    return DerivationSystem(
        degree=degree,
        matrix=Matrix.from_rows(rows) if rows else Matrix(()),
        unknowns=unknowns,
        provenance=tuple(provenance),
        grouping=grouping,
        rank=len(pivots),
        nullity=ncols - len(pivots),
        nullspace=tuple(null),
    )


_Q2 = ("q1", "q2", "q3", "r1", "r2", "r3")
_Q3 = ("q1", "q2", "q3", "q4", "q5", "q6", "r1", "r2", "r3", "r4", "r5", "r6")


def quadratic_matrix(arr: Arrangement) -> DerivationSystem:
    """The linear system cutting out degree-2 logarithmic derivations."""
    grouping = group_lines(arr)
    rows: list[list] = []
    prov: list[RowOrigin] = []

    def emit(row, line, relation):
        rows.append(row)
        prov.append(RowOrigin(line, relation))

    sit = grouping.in_situation
    if sit("i"):
        emit([_ZERO, _ZERO, _ONE, _ZERO, _ZERO, _ZERO], None, "i: q3 = 0")
        for g in sit("i"):
            emit([_ONE, -g.a, _ZERO, _ZERO, _ZERO, _ZERO], g.index, "i: q1 - a*q2 = 0")
    if sit("ii"):
        emit([_ZERO, _ZERO, _ZERO, _ZERO, _ONE, _ZERO], None, "ii: r2 = 0")
        for g in sit("ii"):
            emit([_ZERO, _ZERO, _ZERO, _ONE, _ZERO, -g.a], g.index, "ii: r1 - a*r3 = 0")
    if sit("iii"):
        emit([_ONE, _ZERO, _ZERO, -_ONE, _ZERO, _ZERO], None, "iii: q1 - r1 = 0")
        for g in sit("iii"):
            emit([_ZERO, _ONE, -g.b, _ZERO, -_ONE, g.b], g.index,
                 "iii: (q2-r2) - b*(q3-r3) = 0")
    iv = sit("iv")
    for g in iv:
        emit([g.b, -g.a, _ZERO, _ZERO, _ZERO, _ZERO], g.index, "iv: b*q1 - a*q2 = 0")
    for g in iv:
        emit([_ZERO, _ZERO, _ZERO, _ONE, _ZERO, -g.a], g.index, "iv: r1 - a*r3 = 0")
    for g in iv:
        emit([_ZERO, -_ONE, g.b, _ZERO, _ONE, -g.b], g.index,
             "iv: (q2-r2) - b*(q3-r3) = 0")
    return _finish(2, rows, prov, grouping, _Q2)


def cubic_matrix(arr: Arrangement) -> DerivationSystem:
    """The linear system cutting out degree-3 logarithmic derivations."""
    grouping = group_lines(arr)
    rows: list[list] = []
    prov: list[RowOrigin] = []
    Z = _ZERO

    def emit(row, line, relation):
        rows.append(row)
        prov.append(RowOrigin(line, relation))

    sit = grouping.in_situation
    if sit("i"):
        emit([Z, Z, _ONE, Z, Z, Z, Z, Z, Z, Z, Z, Z], None, "i: q3 = 0")
        for g in sit("i"):
            a = g.a
            emit([_ONE, a * a, Z, -a, Z, Z, Z, Z, Z, Z, Z, Z], g.index,
                 "i: q1 + a^2*q2 - a*q4 = 0")
        for g in sit("i"):
            emit([Z, Z, Z, Z, _ONE, -g.a, Z, Z, Z, Z, Z, Z], g.index,
                 "i: q5 - a*q6 = 0")
    if sit("ii"):
        emit([Z, Z, Z, Z, Z, Z, Z, _ONE, Z, Z, Z, Z], None, "ii: r2 = 0")
        for g in sit("ii"):
            a = g.a
            emit([Z, Z, Z, Z, Z, Z, _ONE, Z, a * a, Z, -a, Z], g.index,
                 "ii: r1 + a^2*r3 - a*r5 = 0")
        for g in sit("ii"):
            emit([Z, Z, Z, Z, Z, Z, Z, Z, Z, _ONE, Z, -g.a], g.index,
                 "ii: r4 - a*r6 = 0")
    if sit("iii"):
        emit([_ONE, Z, Z, Z, Z, Z, -_ONE, Z, Z, Z, Z, Z], None, "iii: q1 - r1 = 0")
        for g in sit("iii"):
            b = g.b
            emit([Z, _ONE, b * b, Z, Z, -b, Z, -_ONE, -b * b, Z, Z, b], g.index,
                 "iii: (q2-r2) + b^2*(q3-r3) - b*(q6-r6) = 0")
        for g in sit("iii"):
            b = g.b
            emit([Z, Z, Z, _ONE, -b, Z, Z, Z, Z, -_ONE, b, Z], g.index,
                 "iii: (q4-r4) - b*(q5-r5) = 0")
    iv = sit("iv")
    for g in iv:
        a, b = g.a, g.b
        emit([b * b, a * a, Z, -a * b, Z, Z, Z, Z, Z, Z, Z, Z], g.index,
             "iv: b^2*q1 + a^2*q2 - a*b*q4 = 0")
    for g in iv:
        a = g.a
        emit([Z, Z, Z, Z, Z, Z, _ONE, Z, a * a, Z, -a, Z], g.index,
             "iv: r1 + a^2*r3 - a*r5 = 0")
    for g in iv:
        b = g.b
        emit([Z, _ONE, b * b, Z, Z, -b, Z, -_ONE, -b * b, Z, Z, b], g.index,
             "iv: (q2-r2) + b^2*(q3-r3) - b*(q6-r6) = 0")
    for g in iv:
        a, b = g.a, g.b
        emit([Z, -a, a * b * b, b, -b * b, Z, Z, Z, -2 * a * b * b, -b, b * b, a * b],
             g.index,
             "iv: -a*q2 + a*b^2*q3 + b*(q4-r4) - b^2*(q5-r5) - 2*a*b^2*r3 + a*b*r6 = 0")
    return _finish(3, rows, prov, grouping, _Q3)


# ---------------------------------------------------------------------------
# dual points

def dual_points(arr: Arrangement) -> list[tuple]:
    """[1,0,0], [0,1,0], [0,0,1], then the coefficient point of each line."""
    if not arr.has_coordinate_triangle():
        raise MissingCoordinateTriangle(
            "dual points are taken with x, y, z as the first three forms"
        )
    pts = [normalize_point((1, 0, 0)), normalize_point((0, 1, 0)), normalize_point((0, 0, 1))]
    for f in arr.forms[3:]:
        pts.append(normalize_point(f.coeffs))
    return pts


def _containment_values_quadratic(point, v):
    x, y, z = point
    q1, q2, q3, r1, r2, r3 = v
    return (
        x * y * (y * q1 - x * q2),
        x * z * (z * r1 - x * r3),
        y * z * (y * (q3 - r3) - z * (q2 - r2)),
    )


def _containment_values_cubic(point, v):
    x, y, z = point
    q1, q2, q3, q4, q5, q6, r1, r2, r3, r4, r5, r6 = v
    return (
        x * y * (q2 * x * x - q4 * x * y + q1 * y * y),
        x * z * (r3 * x * x - r5 * x * z + r1 * z * z),
        y * z * ((q3 - r3) * y * y - (q6 - r6) * y * z + (q2 - r2) * z * z),
        x * y * z * ((q3 - 2 * r3) * x * y * y - q2 * x * z * z + r6 * x * y * z
                     - (q5 - r5) * y * y * z + (q4 - r4) * y * z * z),
    )


def dual_containment_values(arr: Arrangement, coeffs, degree: int):
    """Per-dual-point values of the containment polynomials."""
    v = tuple(coeffs)
    if degree == 2 and len(v) != 6:
        raise ValueError("degree 2 takes 6 coefficients")
    if degree == 3 and len(v) != 12:
        raise ValueError("degree 3 takes 12 coefficients")
    if degree not in (2, 3):
        raise ValueError("degree must be 2 or 3")
    if all(c == 0 for c in v):
        raise AllZeroCoefficients("coefficient vector is identically zero")
    fn = _containment_values_quadratic if degree == 2 else _containment_values_cubic
    return [(pt, fn(pt, v)) for pt in dual_points(arr)]


def dual_containment(arr: Arrangement, coeffs, degree: int) -> bool:
    """True iff every dual point lies on all containment polynomials."""
    return all(
        all(val == 0 for val in vals)
        for _, vals in dual_containment_values(arr, coeffs, degree)
    )
