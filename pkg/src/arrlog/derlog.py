"""Logarithmic derivation modules, degree by degree.

A derivation theta is logarithmic for an arrangement when theta(l) lies in
the ideal (l) for every defining form l.  For each degree d this is a finite
exact linear system on the n * dim S_d unknown coefficients of theta: reduce
theta(l) modulo l by substituting the pivot variable of l and require every
coefficient of the remainder to vanish.

The minimal degree of a Jacobian relation, mdr, is the least d at which the
solution space is larger than the Euler multiples S_{d-1} * theta_E.  The
search is capped at d = s - 1; running past the cap is a loud internal
failure, not a valid outcome.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arrangement import Arrangement
from .errors import (
    CapExceeded,
    DegreeSumMismatch,
    MissingCoordinateTriangle,
    NotLogarithmic,
    RankTooLow,
)
from .linalg import SpanReducer, nullspace_of_rows
from .monomials import basis_size, monomial_basis, monomial_index
from .poly import Derivation, HomPoly, divide_by_linear

_ZERO = Fraction(0)
_ONE = Fraction(1)

# paper-style coefficient order for ternary quadrics: x^2, y^2, z^2, xy, xz, yz
_QUADRIC_ORDER = (0, 3, 5, 1, 2, 4)


# ---------------------------------------------------------------------------
# coefficient vectors

def derivation_to_vector(theta: Derivation) -> tuple:
    out = []
    for comp in theta.components:
        out.extend(comp.coeffs)
    return tuple(out)


def vector_to_derivation(nvars: int, degree: int, vec) -> Derivation:
    n = basis_size(nvars, degree)
    comps = []
    for j in range(nvars):
        comps.append(HomPoly.from_coeffs(nvars, degree, vec[j * n:(j + 1) * n]))
    return Derivation(tuple(comps))


def euler_multiple_vectors(nvars: int, degree: int) -> list[tuple]:
    """Coefficient vectors of m * theta_E over degree-(d-1) monomials m."""
    if degree < 1:
        return []
    n = basis_size(nvars, degree)
    idx = monomial_index(nvars, degree)
    out = []
    for m in monomial_basis(nvars, degree - 1):
        vec = [_ZERO] * (nvars * n)
        for j in range(nvars):
            e = m[:j] + (m[j] + 1,) + m[j + 1:]
            vec[j * n + idx[e]] = _ONE
        out.append(tuple(vec))
    return out


def euler_reducer(nvars: int, degree: int) -> SpanReducer:
    red = SpanReducer(nvars * basis_size(nvars, degree))
    for v in euler_multiple_vectors(nvars, degree):
        red.add(v)
    return red


# ---------------------------------------------------------------------------
# the degree-d solver

def _line_reduction(form, degree: int):
    """Per-line data: compact row index and reduced basis monomials.

    For a normalized form with pivot p (coefficient 1), substitute
    x_p = -(sum of the other terms); every degree-d monomial reduces to a
    pivot-free polynomial of the same degree.
    """
    nvars = form.nvars
    p = form.pivot
    repl = HomPoly.linear(tuple(
        _ZERO if i == p else -c for i, c in enumerate(form.coeffs)
    ))
    powers = [HomPoly.from_coeffs(nvars, 0, (1,))]
    for _ in range(degree):
        powers.append(powers[-1] * repl)
    basis = monomial_basis(nvars, degree)
    idx = monomial_index(nvars, degree)
    compact = {e: i for i, e in enumerate(b for b in basis if b[p] == 0)}
    reduced = []
    for exps in basis:
        k = exps[p]
        flat = exps[:p] + (0,) + exps[p + 1:]
        pw = powers[k]
        cells = []
        for mono, c in pw.terms():
            target = tuple(a + b for a, b in zip(mono, flat))
            cells.append((compact[target], c))
        reduced.append(cells)
    return len(compact), reduced


def derlog_system_rows(arr: Arrangement, degree: int) -> tuple[list[list], int]:
    """Constraint rows over the n * dim S_d unknown derivation coefficients."""
    nvars = arr.nvars
    n = basis_size(nvars, degree)
    ncols = nvars * n
    rows: list[list] = []
    for form in arr.forms:
        nrows, reduced = _line_reduction(form, degree)
        block = [[_ZERO] * ncols for _ in range(nrows)]
        for j, cj in enumerate(form.coeffs):
            if cj == 0:
                continue
            base = j * n
            for m, cells in enumerate(reduced):
                col = base + m
                for rix, c in cells:
                    block[rix][col] = block[rix][col] + cj * c
        rows.extend(block)
    return rows, ncols


@dataclass(frozen=True)
class DerlogBasis:
    degree: int
    basis: tuple[Derivation, ...]
    dimension: int
    euler_dim: int
    vectors: tuple[tuple, ...]


def derlog_basis(arr: Arrangement, degree: int) -> DerlogBasis:
    """Exact basis of the logarithmic derivations of the given degree."""
    if degree < 0:
        raise ValueError("degree must be non-negative")
    rows, ncols = derlog_system_rows(arr, degree)
    vectors = nullspace_of_rows(rows, ncols)
    basis = tuple(vector_to_derivation(arr.nvars, degree, v) for v in vectors)
    euler_dim = basis_size(arr.nvars, degree - 1) if degree >= 1 else 0
    return DerlogBasis(degree, basis, len(vectors), euler_dim, tuple(vectors))


def non_euler_quotient(arr: Arrangement, degree: int,
                       basis: DerlogBasis | None = None) -> list[Derivation]:
    """Deterministic complement basis of Derlog_d modulo Euler multiples."""
    if basis is None:
        basis = derlog_basis(arr, degree)
    red = euler_reducer(arr.nvars, degree)
    out = []
    for vec in basis.vectors:
        res = red.residual(vec)
        if any(x != 0 for x in res):
            out.append(vector_to_derivation(arr.nvars, degree, res))
            red.add(vec)
    return out


def reduce_mod_euler(theta: Derivation) -> Derivation:
    """Canonical representative of theta modulo S_{d-1} * theta_E."""
    red = euler_reducer(theta.nvars, theta.degree)
    res = red.residual(derivation_to_vector(theta))
    return vector_to_derivation(theta.nvars, theta.degree, res)


def equal_mod_euler(a: Derivation, b: Derivation) -> bool:
    return reduce_mod_euler(a - b).is_zero()


def is_logarithmic(arr: Arrangement, theta: Derivation) -> bool:
    if theta.nvars != arr.nvars:
        raise ValueError("nvars mismatch")
    for form in arr.forms:
        image = theta.apply(form.poly())
        if theta.degree == 0:
            if not image.is_zero():
                return False
            continue
        _, ok = divide_by_linear(image, form.poly())
        if not ok:
            return False
    return True


# ---------------------------------------------------------------------------
# mdr

@dataclass(frozen=True)
class MdrResult:
    r: int
    witness: Derivation              # non-Euler, reduced modulo Euler multiples
    checked_degrees: tuple[tuple[int, int, int], ...]  # (d, dimension, euler_dim) for d < r


def mdr(arr: Arrangement) -> MdrResult:
    """Minimal degree of a non-Euler logarithmic derivation (Jacobian relation)."""
    if arr.rank < 2:
        raise RankTooLow("mdr needs rank at least 2")
    cap = arr.size - 1
    checked = []
    for d in range(1, cap + 1):
        basis = derlog_basis(arr, d)
        if basis.dimension > basis.euler_dim:
            red = euler_reducer(arr.nvars, d)
            witness = None
            for vec in basis.vectors:
                res = red.residual(vec)
                if any(x != 0 for x in res):
                    witness = vector_to_derivation(arr.nvars, d, res)
                    break
            if witness is None:  # pragma: no cover - dimension count guarantees one
                raise CapExceeded("dimension exceeded Euler part but no witness found")
            return MdrResult(d, witness, tuple(checked))
        checked.append((d, basis.dimension, basis.euler_dim))
    raise CapExceeded(
        f"no non-Euler logarithmic derivation up to degree {cap}; "
        "this violates the stated bounds and indicates a bug"
    )


# ---------------------------------------------------------------------------
# normalized form

@dataclass(frozen=True)
class NormalizedDerivation:
    """theta written as Q'*y*d/dy + R'*z*d/dz after removing the Euler part.

    Valid whenever x, y, z are the first three forms of the arrangement:
    each component of a logarithmic theta is then divisible by its own
    variable, and subtracting P' * theta_E clears the d/dx component.
    """

    degree: int       # degree of the derivation itself
    qp: HomPoly       # Q', degree - 1
    rp: HomPoly       # R', degree - 1

    def to_derivation(self) -> Derivation:
        y = HomPoly.variable(3, 1)
        z = HomPoly.variable(3, 2)
        return Derivation((HomPoly.zero(3, self.degree), self.qp * y, self.rp * z))

    def paper_vector(self) -> tuple:
        """Coefficients (q_1..q_k, r_1..r_k) in the conventional column order.

        Degree-1 parts are read as q1*x + q2*y + q3*z; degree-2 parts as
        q1*x^2 + q2*y^2 + q3*z^2 + q4*xy + q5*xz + q6*yz.
        """
        if self.qp.degree == 1:
            return tuple(self.qp.coeffs) + tuple(self.rp.coeffs)
        if self.qp.degree == 2:
            q = [self.qp.coeffs[i] for i in _QUADRIC_ORDER]
            r = [self.rp.coeffs[i] for i in _QUADRIC_ORDER]
            return tuple(q) + tuple(r)
        raise ValueError("named coefficients exist only for degrees 2 and 3")

    @classmethod
    def from_paper_vector(cls, degree: int, vec) -> "NormalizedDerivation":
        vec = [x for x in vec]
        half = len(vec) // 2
        if degree == 2 and half == 3:
            qp = HomPoly.from_coeffs(3, 1, vec[:3])
            rp = HomPoly.from_coeffs(3, 1, vec[3:])
        elif degree == 3 and half == 6:
            qc = [_ZERO] * 6
            rc = [_ZERO] * 6
            for k, i in enumerate(_QUADRIC_ORDER):
                qc[i] = vec[k]
                rc[i] = vec[half + k]
            qp = HomPoly.from_coeffs(3, 2, qc)
            rp = HomPoly.from_coeffs(3, 2, rc)
        else:
            raise ValueError("vector length does not match the degree")
        return cls(degree, qp, rp)


def normalize_derivation(arr: Arrangement, theta: Derivation) -> NormalizedDerivation:
    if not arr.has_coordinate_triangle():
        raise MissingCoordinateTriangle(
            "normalization needs x, y, z as the first three forms"
        )
    if theta.degree < 1:
        raise ValueError("cannot normalize a degree-0 derivation")
    parts = []
    for i in range(3):
        quot, ok = divide_by_linear(theta.components[i], arr.forms[i].poly())
        if not ok:
            raise NotLogarithmic(
                f"component {i + 1} is not divisible by its variable"
            )
        parts.append(quot)
    pprime, qsec, rsec = parts
    return NormalizedDerivation(theta.degree, qsec - pprime, rsec - pprime)


# ---------------------------------------------------------------------------
# syzygies of the Jacobian ideal

def derivation_to_syzygy(arr: Arrangement, theta: Derivation) -> tuple[HomPoly, ...]:
    """Map a logarithmic derivation to a syzygy of the Jacobian ideal.

    With theta(F) = h*F the tuple is s*theta - h*theta_E componentwise; its
    contraction against grad F is verified to vanish exactly.
    """
    cofactors = []
    for form in arr.forms:
        image = theta.apply(form.poly())
        quot, ok = divide_by_linear(image, form.poly())
        if not ok:
            raise NotLogarithmic(f"theta({form}) is not in the ideal ({form})")
        cofactors.append(quot)
    h = cofactors[0]
    for t in cofactors[1:]:
        h = h + t
    s = arr.size
    syz = tuple(
        theta.components[i].scale(s) - h * HomPoly.variable(arr.nvars, i)
        for i in range(arr.nvars)
    )
    grad = arr.gradient()
    contraction = None
    for c, g in zip(syz, grad):
        term = c * g
        contraction = term if contraction is None else contraction + term
    if not contraction.is_zero():  # pragma: no cover - identity is a theorem
        raise ArithmeticError("syzygy contraction against grad F did not vanish")
    return syz


# ---------------------------------------------------------------------------
# Saito's criterion

@dataclass(frozen=True)
class SaitoCertificate:
    derivations: tuple[Derivation, ...]
    exponents: tuple[int, ...]
    scalar: object  # det(coefficient matrix) = scalar * F, scalar != 0


def _poly_det(mat: list[list[HomPoly]], expected_degree: int, nvars: int) -> HomPoly:
    n = len(mat)
    if n == 1:
        return mat[0][0]
    total = None
    for j in range(n):
        a = mat[0][j]
        if a.is_zero():
            continue
        minor = [[row[k] for k in range(n) if k != j] for row in mat[1:]]
        sub = _poly_det(minor, expected_degree - a.degree, nvars)
        term = a * sub
        if j % 2:
            term = -term
        total = term if total is None else total + term
    if total is None:
        return HomPoly.zero(nvars, expected_degree)
    return total


def saito_check(arr: Arrangement, derivations) -> SaitoCertificate | None:
    """Certify freeness: det of the coefficient matrix must be c*F, c != 0.

    Returns None when no certificate arises from these derivations (zero or
    wrong determinant, or a non-logarithmic input); absence of a certificate
    proves nothing.
    """
    derivations = tuple(derivations)
    n = arr.nvars
    if len(derivations) != n:
        raise ValueError(f"need exactly {n} derivations")
    degrees = tuple(t.degree for t in derivations)
    if sum(degrees) != arr.size:
        raise DegreeSumMismatch(
            f"degrees {degrees} sum to {sum(degrees)}, expected {arr.size}"
        )
    if not all(is_logarithmic(arr, t) for t in derivations):
        return None
    mat = [[derivations[j].components[i] for j in range(n)] for i in range(n)]
    det = _poly_det(mat, arr.size, n)
    if det.is_zero():
        return None
    f = arr.defining_polynomial()
    lead = next(i for i, c in enumerate(f.coeffs) if c != 0)
    c = det.coeffs[lead] / f.coeffs[lead]
    if c == 0 or det != f.scale(c):
        return None
    return SaitoCertificate(derivations, degrees, c)
