"""Central arrangements of hyperplanes given by exact linear forms.

Forms are normalized so the first nonzero coefficient is 1, which makes
proportionality checks and point dedup structural.  For rank-3 line
arrangements the singular locus, point multiplicities, per-line statistics
and the two counting identities

    sum over points P on H of (m_P - 1) = s - 1       (every line H)
    sum over all singular P of C(m_P, 2) = C(s, 2)

are computed exactly; both identities are theorems, so a nonzero residual in
a report signals a bug rather than bad input.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .errors import (
    DuplicateHyperplane,
    NotMember,
    RankTooLow,
    SingularTransform,
    ZeroForm,
)
from .fields import coerce, format_scalar, scalar_sort_key
from .linalg import rank_of_rows
from .monomials import default_varnames
from .poly import HomPoly, poly_product

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class LinearForm:
    """Nonzero linear form, normalized so its first nonzero coefficient is 1."""

    coeffs: tuple

    @classmethod
    def make(cls, coeffs) -> "LinearForm":
        coeffs = tuple(coerce(c) for c in coeffs)
        pivot = next((i for i, c in enumerate(coeffs) if c != 0), None)
        if pivot is None:
            raise ZeroForm("all coefficients are zero")
        lead = coeffs[pivot]
        if lead != 1:
            coeffs = tuple(c / lead for c in coeffs)
        return cls(coeffs)

    @property
    def nvars(self) -> int:
        return len(self.coeffs)

    @property
    def pivot(self) -> int:
        return next(i for i, c in enumerate(self.coeffs) if c != 0)

    def evaluate(self, point) -> object:
        return sum((c * p for c, p in zip(self.coeffs, point)), _ZERO)

    def vanishes_at(self, point) -> bool:
        return self.evaluate(point) == 0

    def poly(self) -> HomPoly:
        return HomPoly.linear(self.coeffs)

    def to_string(self, varnames=None) -> str:
        return self.poly().to_string(varnames)

    def __str__(self):
        return self.to_string()


def normalize_point(coords) -> tuple:
    """Projective representative with first nonzero coordinate equal to 1."""
    coords = tuple(coerce(c) for c in coords)
    pivot = next((i for i, c in enumerate(coords) if c != 0), None)
    if pivot is None:
        raise ValueError("the zero vector is not a projective point")
    lead = coords[pivot]
    if lead != 1:
        coords = tuple(c / lead for c in coords)
    return coords


def point_sort_key(point):
    return tuple(scalar_sort_key(c) for c in point)


@dataclass(frozen=True)
class SingularPoint:
    point: tuple
    multiplicity: int
    incident: tuple[int, ...]  # 0-based indices into the arrangement's forms

    def to_string(self) -> str:
        return "[" + ":".join(format_scalar(c) for c in self.point) + "]"


@dataclass(frozen=True)
class Arrangement:
    """Ordered central arrangement; forms are pairwise non-proportional."""

    forms: tuple[LinearForm, ...]
    rank: int

    @property
    def nvars(self) -> int:
        return self.forms[0].nvars

    @property
    def size(self) -> int:
        return len(self.forms)

    def defining_polynomial(self) -> HomPoly:
        return poly_product(f.poly() for f in self.forms)

    def gradient(self) -> tuple[HomPoly, ...]:
        f = self.defining_polynomial()
        return tuple(f.partial(i) for i in range(self.nvars))

    def index_of(self, form) -> int:
        lf = form if isinstance(form, LinearForm) else LinearForm.make(form)
        for i, g in enumerate(self.forms):
            if g.coeffs == lf.coeffs:
                return i
        raise NotMember(f"{lf} is not a hyperplane of the arrangement")

    def has_coordinate_triangle(self) -> bool:
        if self.nvars != 3 or self.size < 3:
            return False
        units = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
        return all(
            tuple(self.forms[i].coeffs) == tuple(map(coerce, units[i]))
            for i in range(3)
        )

    def to_string(self, varnames=None) -> str:
        if varnames is None:
            varnames = default_varnames(self.nvars)
        return ", ".join(f.to_string(varnames) for f in self.forms)

    def __str__(self):
        return self.to_string()


def new_arrangement(forms) -> Arrangement:
    """Validate and normalize a list of forms (LinearForm or coefficient rows)."""
    normalized = []
    for f in forms:
        normalized.append(f if isinstance(f, LinearForm) else LinearForm.make(f))
    if not normalized:
        raise ValueError("an arrangement needs at least one hyperplane")
    nvars = normalized[0].nvars
    if any(f.nvars != nvars for f in normalized):
        raise ValueError("forms have inconsistent numbers of variables")
    seen = {}
    for i, f in enumerate(normalized):
        if f.coeffs in seen:
            raise DuplicateHyperplane(
                f"forms {seen[f.coeffs] + 1} and {i + 1} are proportional"
            )
        seen[f.coeffs] = i
    rank = rank_of_rows([list(f.coeffs) for f in normalized], nvars)
    return Arrangement(tuple(normalized), rank)


def _cross(u, v) -> tuple:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def singular_locus(arr: Arrangement) -> list[SingularPoint]:
    """All pairwise intersection points with exact multiplicities, sorted."""
    if arr.nvars != 3:
        raise ValueError("singular_locus handles rank-3 line arrangements only")
    if arr.rank < 2:
        raise RankTooLow("rank must be at least 2")
    points = {}
    s = arr.size
    for i in range(s):
        ci = arr.forms[i].coeffs
        for j in range(i + 1, s):
            w = _cross(ci, arr.forms[j].coeffs)
            if all(c == 0 for c in w):
                continue  # cannot happen for non-proportional forms
            points.setdefault(normalize_point(w), None)
    out = []
    for pt in points:
        incident = tuple(k for k, f in enumerate(arr.forms) if f.vanishes_at(pt))
        out.append(SingularPoint(pt, len(incident), incident))
    out.sort(key=lambda sp: point_sort_key(sp.point))
    return out


@dataclass(frozen=True)
class LineStats:
    index: int       # 0-based index of the line in the arrangement
    points_on: int   # |H|: singular points lying on the line
    doubles: int     # D_H
    triples: int     # T_H


@dataclass(frozen=True)
class ArrangementStats:
    s: int
    m: int             # max point multiplicity
    max_coatom: int    # M: max coatom multiplicity (= m for line arrangements)
    n2: int
    n3: int
    num_points: int
    per_line: tuple[LineStats, ...]


def line_stats(arr: Arrangement, form) -> LineStats:
    idx = arr.index_of(form)
    return stats(arr).per_line[idx]


def stats(arr: Arrangement) -> ArrangementStats:
    sing = singular_locus(arr)
    mults = [p.multiplicity for p in sing]
    per_line = []
    for i in range(arr.size):
        on = [p for p in sing if i in p.incident]
        per_line.append(LineStats(
            index=i,
            points_on=len(on),
            doubles=sum(1 for p in on if p.multiplicity == 2),
            triples=sum(1 for p in on if p.multiplicity == 3),
        ))
    m = max(mults) if mults else 0
    return ArrangementStats(
        s=arr.size,
        m=m,
        max_coatom=m,
        n2=sum(1 for v in mults if v == 2),
        n3=sum(1 for v in mults if v == 3),
        num_points=len(sing),
        per_line=tuple(per_line),
    )


@dataclass(frozen=True)
class CountFormulaReport:
    per_line_residuals: tuple[int, ...]   # sum over P on H of (m_P - 1), minus (s - 1)
    global_residual: int                  # sum of C(m_P, 2), minus C(s, 2)

    @property
    def ok(self) -> bool:
        return self.global_residual == 0 and all(r == 0 for r in self.per_line_residuals)


def check_count_formulas(arr: Arrangement) -> CountFormulaReport:
    """Verify the per-line and global counting identities; residuals must be 0."""
    sing = singular_locus(arr)
    s = arr.size
    per_line = []
    for i in range(s):
        total = sum(p.multiplicity - 1 for p in sing if i in p.incident)
        per_line.append(total - (s - 1))
    glob = sum(comb(p.multiplicity, 2) for p in sing) - comb(s, 2)
    return CountFormulaReport(tuple(per_line), glob)


def delete(arr: Arrangement, form) -> Arrangement:
    idx = arr.index_of(form)
    rest = arr.forms[:idx] + arr.forms[idx + 1:]
    return new_arrangement(rest)


def modular_points(arr: Arrangement) -> list[SingularPoint]:
    """Singular points joined to every other singular point by a line of A."""
    sing = singular_locus(arr)
    out = []
    for p in sing:
        pset = set(p.incident)
        if all(q is p or pset.intersection(q.incident) for q in sing):
            out.append(p)
    return out


def change_coordinates(arr: Arrangement, transform) -> Arrangement:
    """Compose every form with x -> T*x for an invertible matrix T.

    A form with coefficient row c becomes the form with row c*T; the
    multiplicity profile of the singular locus is preserved.
    """
    t = [[coerce(x) for x in row] for row in transform]
    n = arr.nvars
    if len(t) != n or any(len(row) != n for row in t):
        raise ValueError("transform must be square of matching size")
    if rank_of_rows([list(r) for r in t], n) != n:
        raise SingularTransform("transform matrix is singular")
    new_forms = []
    for f in arr.forms:
        row = [sum((f.coeffs[i] * t[i][j] for i in range(n)), _ZERO) for j in range(n)]
        new_forms.append(LinearForm.make(row))
    return new_arrangement(new_forms)


def triangle_first_transform(arr: Arrangement, indices: tuple[int, int, int]) -> Arrangement:
    """Reorder so the three named lines come first and map them to x, y, z."""
    i, j, k = indices
    rows = [list(arr.forms[i].coeffs), list(arr.forms[j].coeffs), list(arr.forms[k].coeffs)]
    if rank_of_rows([r[:] for r in rows], 3) != 3:
        raise RankTooLow("chosen lines are not independent")
    # forms transform by c -> c*T, so T = inverse of the matrix with the
    # chosen rows makes those rows the standard basis
    inv = _invert3(rows)
    order = [i, j, k] + [m for m in range(arr.size) if m not in (i, j, k)]
    reordered = new_arrangement([arr.forms[m] for m in order])
    return change_coordinates(reordered, inv)


def _invert3(rows):
    a, b, c = rows
    det = (a[0] * (b[1] * c[2] - b[2] * c[1])
           - a[1] * (b[0] * c[2] - b[2] * c[0])
           + a[2] * (b[0] * c[1] - b[1] * c[0]))
    if det == 0:
        raise SingularTransform("matrix is singular")
    cof = [
        [b[1] * c[2] - b[2] * c[1], -(a[1] * c[2] - a[2] * c[1]), a[1] * b[2] - a[2] * b[1]],
        [-(b[0] * c[2] - b[2] * c[0]), a[0] * c[2] - a[2] * c[0], -(a[0] * b[2] - a[2] * b[0])],
        [b[0] * c[1] - b[1] * c[0], -(a[0] * c[1] - a[1] * c[0]), a[0] * b[1] - a[1] * b[0]],
    ]
    return [[cof[i][j] / det for j in range(3)] for i in range(3)]
