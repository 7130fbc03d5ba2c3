"""Degree bounds, the coatom syzygy, and addition-deletion checks.

For a rank-3 line arrangement of s lines with maximal point multiplicity m
(coatom multiplicity M = m):

  * alpha0 - 1 <= mdr, where alpha0 is the least degree of a curve through
    every singular point;
  * mdr <= s - M whenever M <= s - 2, witnessed by an explicit syzygy built
    from the split F = g*h at a maximal-multiplicity point;
  * mdr = s - m, or mdr >= min |H| - 1 over the lines H (the dichotomy);
  * when m <= 3, additionally mdr >= (s - 2) / 2.

Addition-deletion relates r = mdr(A), r' = mdr(A minus H) and the
restriction value r'' = |H| - 1; every implication checked here is a
theorem, so a violation in a report indicates a bug, not bad input.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .arrangement import (
    Arrangement,
    LinearForm,
    SingularPoint,
    delete,
    new_arrangement,
    singular_locus,
    stats,
)
from .derlog import mdr
from .errors import PencilLike, RankCollapse, RankTooLow
from .linalg import vanishing_dimension
from .poly import Derivation, HomPoly

_ZERO = Fraction(0)


def alpha0(arr: Arrangement) -> int:
    """Least degree of a plane curve containing the whole singular locus."""
    points = [p.point for p in singular_locus(arr)]
    for d in range(1, arr.size + 1):
        if vanishing_dimension(points, d) > 0:
            return d
    raise AssertionError("unreachable: the defining polynomial contains Sing(A)")


@dataclass(frozen=True)
class CoatomSyzygy:
    """Explicit Jacobian relation of degree s - nu(X) from the split F = g*h."""

    components: tuple[HomPoly, ...]   # in the moved coordinates (X at [0:0:1])
    degree: int
    moved: Arrangement                # the arrangement after the coordinate move
    through: HomPoly                  # g, the product of lines through X
    off: HomPoly                      # h, the product of the remaining lines

    def derivation(self) -> Derivation:
        return Derivation(self.components)


def _move_point_last(arr: Arrangement, point) -> Arrangement:
    """Coordinate change taking the given projective point to [0, 0, 1]."""
    from .arrangement import change_coordinates

    cols = [list(point)]
    for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
        trial = cols + [list(e)]
        if _rank3(trial) == len(trial):
            cols.append(list(e))
        if len(cols) == 3:
            break
    # point is the image of e3, so it goes in the last column
    t = [[cols[2][i], cols[1][i], cols[0][i]] for i in range(3)]
    return change_coordinates(arr, t)


def _rank3(rows):
    from .linalg import rank_of_rows

    return rank_of_rows([list(r) for r in rows], 3)


def coatom_syzygy(arr: Arrangement, coatom: SingularPoint) -> CoatomSyzygy:
    """Build the degree-(s - nu(X)) syzygy attached to a singular point X.

    Needs M <= s - 2 so that the off-point factor h keeps degree >= 2.  The
    construction: after moving X to [0:0:1], F = g*h with g collecting the
    lines through X (these do not involve z), and

        (x*h_z) F_x + (y*h_z) F_y + (z*h_z - s*h) F_z = 0.
    """
    st = stats(arr)
    s = arr.size
    if st.max_coatom > s - 2:
        raise PencilLike(f"max multiplicity {st.max_coatom} > s - 2 = {s - 2}")
    moved = _move_point_last(arr, coatom.point)
    target = (_ZERO, _ZERO, Fraction(1))
    through = [f for f in moved.forms if f.vanishes_at(target)]
    off = [f for f in moved.forms if not f.vanishes_at(target)]
    if len(through) != coatom.multiplicity:  # pragma: no cover - move is exact
        raise AssertionError("coordinate move changed the multiplicity")
    g = _product([f.poly() for f in through])
    h = _product([f.poly() for f in off])
    hz = h.partial(2)
    x = HomPoly.variable(3, 0)
    y = HomPoly.variable(3, 1)
    z = HomPoly.variable(3, 2)
    comps = (x * hz, y * hz, z * hz - h.scale(s))
    grad = moved.gradient()
    contraction = None
    for c, gr in zip(comps, grad):
        term = c * gr
        contraction = term if contraction is None else contraction + term
    if not contraction.is_zero():  # pragma: no cover - identity is exact
        raise ArithmeticError("coatom syzygy does not contract to zero")
    if _is_euler_multiple(comps):  # pragma: no cover - impossible, see docstring
        raise ArithmeticError("coatom syzygy degenerated to an Euler multiple")
    return CoatomSyzygy(comps, s - coatom.multiplicity, moved, g, h)


def _product(polys):
    out = polys[0]
    for p in polys[1:]:
        out = out * p
    return out


def _is_euler_multiple(comps) -> bool:
    from .poly import divide_by_linear

    quotients = []
    for i, c in enumerate(comps):
        if c.is_zero():
            quotients.append(None)
            continue
        q, ok = divide_by_linear(c, HomPoly.variable(3, i))
        if not ok:
            return False
        quotients.append(q)
    fixed = [q for q in quotients if q is not None]
    if not fixed:
        return True
    return all(q == fixed[0] for q in fixed) and len(fixed) == 3


@dataclass(frozen=True)
class BoundsReport:
    s: int
    m: int
    max_coatom: int
    alpha0: int
    lower: int                  # alpha0 - 1
    upper: int | None           # s - M when M <= s - 2, else absent
    r: int
    min_points_on_line: int
    dichotomy: str              # "r=s-m", "r>=min|H|-1", or "both"
    dt_bound: bool | None       # 2r >= s - 2, evaluated only when m <= 3

    def to_json(self) -> dict:
        return {
            "s": self.s,
            "m": self.m,
            "M": self.max_coatom,
            "alpha0": self.alpha0,
            "lower": self.lower,
            "upper": self.upper,
            "r": self.r,
            "min_points_on_line": self.min_points_on_line,
            "dichotomy": self.dichotomy,
            "double_triple_bound": self.dt_bound,
        }


def bounds_report(arr: Arrangement) -> BoundsReport:
    if arr.rank < 3:
        raise RankTooLow("bounds are stated for rank-3 line arrangements")
    st = stats(arr)
    a0 = alpha0(arr)
    r = mdr(arr).r
    s = arr.size
    upper = s - st.max_coatom if st.max_coatom <= s - 2 else None
    min_points = min(ls.points_on for ls in st.per_line)
    on_upper = r == s - st.m
    on_lower = r >= min_points - 1
    if not (on_upper or on_lower):  # pragma: no cover - dichotomy is a theorem
        raise ArithmeticError("dichotomy failed; this indicates a bug")
    dichotomy = "both" if (on_upper and on_lower) else ("r=s-m" if on_upper else "r>=min|H|-1")
    dt = (2 * r >= s - 2) if st.m <= 3 else None
    report = BoundsReport(
        s=s, m=st.m, max_coatom=st.max_coatom, alpha0=a0, lower=a0 - 1,
        upper=upper, r=r, min_points_on_line=min_points,
        dichotomy=dichotomy, dt_bound=dt,
    )
    if report.lower > r or (upper is not None and r > upper):  # pragma: no cover
        raise ArithmeticError("a proven bound failed; this indicates a bug")
    return report


@dataclass(frozen=True)
class ImplicationCheck:
    name: str
    antecedent: bool
    consequent: bool | None      # None when not evaluated (vacuous)

    @property
    def status(self) -> str:
        if not self.antecedent:
            return "vacuous"
        return "holds" if self.consequent else "violated"


@dataclass(frozen=True)
class AdditionDeletionReport:
    line_index: int             # 0-based index of H in the arrangement
    r: int                      # mdr(A)
    r_deleted: int              # r' = mdr(A minus H)
    points_on_line: int         # |H|
    r_restricted: int           # r'' = |H| - 1
    checks: tuple[ImplicationCheck, ...]

    @property
    def ok(self) -> bool:
        return all(c.status != "violated" for c in self.checks)

    def to_json(self) -> dict:
        return {
            "line": self.line_index + 1,
            "r": self.r,
            "r_deleted": self.r_deleted,
            "points_on_line": self.points_on_line,
            "r_restricted": self.r_restricted,
            "checks": [
                {"name": c.name, "status": c.status} for c in self.checks
            ],
            "ok": self.ok,
        }


def addition_deletion_check(arr: Arrangement, form) -> AdditionDeletionReport:
    """Evaluate every addition-deletion implication for the line H."""
    idx = arr.index_of(form)
    smaller = delete(arr, form)
    if smaller.rank < 2:
        raise RankCollapse("deletion leaves rank below 2")
    r = mdr(arr).r
    r_del = mdr(smaller).r
    st = stats(arr)
    points_on = st.per_line[idx].points_on
    r_res = points_on - 1
    s = arr.size
    checks = (
        ImplicationCheck("r' <= r <= r'+1", True, r_del <= r <= r_del + 1),
        ImplicationCheck("|A|-|A''| > r  =>  r' = r",
                         s - points_on > r, (r_del == r) if s - points_on > r else None),
        ImplicationCheck("|A'|-|A''| > r'  =>  r = r'",
                         (s - 1) - points_on > r_del,
                         (r == r_del) if (s - 1) - points_on > r_del else None),
        ImplicationCheck("r' < r''  =>  r = r'+1",
                         r_del < r_res, (r == r_del + 1) if r_del < r_res else None),
        ImplicationCheck("r = r'  =>  r'' <= r",
                         r == r_del, (r_res <= r) if r == r_del else None),
        ImplicationCheck("|H| >= r'+2  =>  r = r'+1",
                         points_on >= r_del + 2,
                         (r == r_del + 1) if points_on >= r_del + 2 else None),
        ImplicationCheck("|H| >= r+2  =>  r' = r-1",
                         points_on >= r + 2,
                         (r_del == r - 1) if points_on >= r + 2 else None),
    )
    return AdditionDeletionReport(idx, r, r_del, points_on, r_res, checks)


# ---------------------------------------------------------------------------
# seeded random arrangements for property sweeps

def random_arrangement(rng: random.Random, s: int, *,
                       coordinate_triangle: bool = False,
                       coeff_bound: int = 2) -> Arrangement:
    """Random rank-3 line arrangement with small integer coefficients.

    Resamples until the forms are pairwise non-proportional and the rank is
    3.  Pass a seeded ``random.Random`` so sweeps are reproducible.
    """
    if s < 3:
        raise ValueError("need at least 3 lines for rank 3")
    while True:
        forms: list[LinearForm] = []
        if coordinate_triangle:
            forms = [LinearForm.make(e) for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1))]
        seen = {f.coeffs for f in forms}
        tries = 0
        while len(forms) < s and tries < 200:
            tries += 1
            coeffs = tuple(rng.randint(-coeff_bound, coeff_bound) for _ in range(3))
            if all(c == 0 for c in coeffs):
                continue
            lf = LinearForm.make(coeffs)
            if lf.coeffs in seen:
                continue
            seen.add(lf.coeffs)
            forms.append(lf)
        if len(forms) < s:
            continue
        arr = new_arrangement(forms)
        if arr.rank == 3:
            return arr
