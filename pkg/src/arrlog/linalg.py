"""Exact linear algebra: reduced row echelon form, rank, nullspaces.

The reduced row echelon form of a matrix is unique, so every routine here is
deterministic no matter how pivots are chosen.  Nullspace bases follow the
back-substitution convention: one vector per free column, in column order,
with that free variable set to 1 and all other free variables 0.

Rational matrices take an integer fast path (rows are scaled to integers and
reduced with gcd normalization after each elimination step); matrices over
Q(w) run the same algorithm with field division.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .fields import Eisenstein, coerce
from .monomials import basis_size, monomial_basis

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class Matrix:
    entries: tuple[tuple, ...]  # row-major, rectangular

    def __post_init__(self):
        if self.entries:
            w = len(self.entries[0])
            if any(len(r) != w for r in self.entries):
                raise ValueError("ragged rows")

    @classmethod
    def from_rows(cls, rows) -> "Matrix":
        return cls(tuple(tuple(coerce(x) for x in row) for row in rows))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def row_lists(self) -> list[list]:
        return [list(r) for r in self.entries]

    def matvec(self, v) -> list:
        v = list(v)
        return [sum((a * x for a, x in zip(row, v)), _ZERO) for row in self.entries]

    def transpose(self) -> "Matrix":
        return Matrix(tuple(zip(*self.entries))) if self.entries else Matrix(())


def rref(rows: list[list], ncols: int | None = None) -> tuple[list[int], list[list]]:
    """Reduced row echelon form.  Returns (pivot columns, reduced rows).

    The returned rows are exactly the nonzero rows of the RREF (pivot entries
    equal to 1), as Fractions or Q(w) scalars.
    """
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    int_rows = _integerize(rows)
    if int_rows is not None:
        return _rref_int(int_rows, ncols)
    return _rref_field([list(r) for r in rows], ncols)


def _integerize(rows) -> list[list[int]] | None:
    out = []
    for row in rows:
        denlcm = 1
        for x in row:
            if isinstance(x, int):
                continue
            if isinstance(x, Fraction):
                d = x.denominator
                denlcm = denlcm // gcd(denlcm, d) * d
            else:
                return None
        ints = [int(x * denlcm) if isinstance(x, Fraction) else x * denlcm for x in row]
        g = 0
        for v in ints:
            g = gcd(g, v)
        if g > 1:
            ints = [v // g for v in ints]
        out.append(ints)
    return out


def _rref_int(rows: list[list[int]], ncols: int) -> tuple[list[int], list[list]]:
    nrows = len(rows)
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        best = -1
        for k in range(r, nrows):
            v = rows[k][c]
            if v:
                if best < 0 or abs(v) < abs(rows[best][c]):
                    best = k
                if abs(v) == 1:
                    break
        if best < 0:
            continue
        rows[r], rows[best] = rows[best], rows[r]
        p = rows[r][c]
        for k in range(nrows):
            if k == r:
                continue
            v = rows[k][c]
            if v:
                row = [p * a - v * b for a, b in zip(rows[k], rows[r])]
                g = 0
                for x in row:
                    g = gcd(g, x)
                rows[k] = [x // g for x in row] if g > 1 else row
        pivots.append(c)
        r += 1
    reduced = []
    for i, c in enumerate(pivots):
        p = rows[i][c]
        reduced.append([Fraction(x, p) for x in rows[i]])
    return pivots, reduced


def _rref_field(rows: list[list], ncols: int) -> tuple[list[int], list[list]]:
    nrows = len(rows)
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        k = next((k for k in range(r, nrows) if rows[k][c] != 0), None)
        if k is None:
            continue
        rows[r], rows[k] = rows[k], rows[r]
        p = rows[r][c]
        rows[r] = [x / p for x in rows[r]]
        for k in range(nrows):
            if k != r and rows[k][c] != 0:
                v = rows[k][c]
                rows[k] = [a - v * b for a, b in zip(rows[k], rows[r])]
        pivots.append(c)
        r += 1
    return pivots, rows[: len(pivots)]


def nullspace_from_rref(pivots: list[int], reduced: list[list], ncols: int) -> list[tuple]:
    """Basis vectors, one per free column in column order."""
    pivot_set = set(pivots)
    free_cols = [c for c in range(ncols) if c not in pivot_set]
    out = []
    for f in free_cols:
        v = [_ZERO] * ncols
        v[f] = _ONE
        for row, p in zip(reduced, pivots):
            v[p] = -row[f]
        out.append(tuple(v))
    return out


def rref_nullspace(m: Matrix) -> tuple[int, list[tuple]]:
    """Rank and an exact nullspace basis of a Matrix."""
    pivots, reduced = rref(m.row_lists(), m.cols)
    return len(pivots), nullspace_from_rref(pivots, reduced, m.cols)


def rank_of_rows(rows: list[list], ncols: int | None = None) -> int:
    pivots, _ = rref([list(r) for r in rows], ncols if ncols is not None else (len(rows[0]) if rows else 0))
    return len(pivots)


def nullspace_of_rows(rows: list[list], ncols: int) -> list[tuple]:
    pivots, reduced = rref([list(r) for r in rows], ncols)
    return nullspace_from_rref(pivots, reduced, ncols)


class SpanReducer:
    """Incremental row space with canonical residuals.

    Rows are reduced against the running RREF; ``residual`` returns the
    canonical representative of a vector modulo the current span, and
    ``add`` extends the span (returning True when the vector was new).
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivots: list[int] = []
        self.rows: list[list] = []

    def residual(self, vec) -> list:
        v = list(vec)
        for row, p in zip(self.rows, self.pivots):
            c = v[p]
            if c != 0:
                v = [a - c * b for a, b in zip(v, row)]
        return v

    def add(self, vec) -> bool:
        v = self.residual(vec)
        lead = next((i for i, x in enumerate(v) if x != 0), None)
        if lead is None:
            return False
        p = v[lead]
        v = [x / p for x in v]
        for row in self.rows:
            c = row[lead]
            if c != 0:
                row[:] = [a - c * b for a, b in zip(row, v)]
        at = next((i for i, q in enumerate(self.pivots) if q > lead), len(self.pivots))
        self.pivots.insert(at, lead)
        self.rows.insert(at, v)
        return True

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def contains(self, vec) -> bool:
        return all(x == 0 for x in self.residual(vec))


def solve_columns(columns: list, target) -> list | None:
    """Solve sum_j x_j * columns[j] = target exactly; None when inconsistent.

    Free variables are set to zero, so the solution is canonical.
    """
    n = len(list(target))
    ncols = len(columns)
    rows = [[columns[j][i] for j in range(ncols)] + [target[i]] for i in range(n)]
    pivots, reduced = rref(rows, ncols + 1)
    if ncols in pivots:
        return None
    x = [_ZERO] * ncols
    for row, p in zip(reduced, pivots):
        x[p] = row[-1]
    return x


def vanishing_dimension(points, degree: int) -> int:
    """Dimension of degree-d forms vanishing at every given projective point.

    The evaluation matrix has one row per point and one column per monomial
    of the degree; the answer is its nullity, computed exactly.
    """
    points = [tuple(p) for p in points]
    if not points:
        raise ValueError("no points given")
    nvars = len(points[0])
    basis = monomial_basis(nvars, degree)
    rows = []
    for pt in points:
        if len(pt) != nvars:
            raise ValueError("inconsistent point dimensions")
        row = []
        for exps in basis:
            v = _ONE
            for c, e in zip(pt, exps):
                for _ in range(e):
                    v = v * c
            row.append(v)
        rows.append(row)
    return basis_size(nvars, degree) - rank_of_rows(rows, len(basis))
