"""Totally-real cubic states and their conjugate geometry.

A state holds the exact coordinates (x, y, 1) of the distinguished
vector xi in the current integer basis, as elements of Q(theta).  The
conjugate vectors nu1, nu2 are never stored: they are the same rational
coefficient triples re-evaluated at the conjugate roots, which keeps
conjugate-consistency automatic (field operations commute with the
conjugation isomorphisms).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace

from .rationals import Q
from .field import (
    AlgebraicReal,
    CubicField,
    ReduciblePolynomial,
    make_field,
)
from .matrices import (
    Mat3,
    IDENTITY,
    char_poly,
    mat_det,
    mat_inverse_unimodular,
    mat_mul,
    mat_vec,
)


class StateError(Exception):
    pass


class NotUnimodular(StateError):
    pass


class ReducibleCharPoly(StateError):
    pass


class DegenerateEigenvector(StateError):
    """A zero or rationally-dependent eigenvector coordinate; impossible
    for an irreducible characteristic polynomial, so this is a bug trap."""


class NotABasis(StateError):
    pass


class NotSupporting(StateError):
    pass


class Membership(enum.Enum):
    INSIDE = "inside"
    INSIDE_NEGATED = "inside_negated"
    OUTSIDE = "outside"


@dataclass(frozen=True)
class CubicState:
    """Coordinates of (xi, nu1, nu2) in the current basis, xi normalized
    to third coordinate 1, plus the accumulated basis matrix."""

    field: CubicField
    xi_root: int
    nu_roots: tuple[int, int]
    x: AlgebraicReal
    y: AlgebraicReal
    basis: Mat3 = IDENTITY

    def coords(self):
        return (self.x, self.y, self.field.one(self.xi_root))

    def xi_vector(self):
        return self.coords()

    def nu_vector(self, k: int):
        """Coordinates of nu_k (k in {0,1}) in the current basis: the
        coefficient triples of x and y evaluated at the conjugate root."""
        r = self.nu_roots[k]
        return (
            self.field.element(self.x.coeffs, r),
            self.field.element(self.y.coeffs, r),
            self.field.one(r),
        )

    def key(self):
        """Canonical exact key: equal keys iff identical normalized state."""
        return (self.xi_root, self.x.coeffs, self.y.coeffs)

    def is_sorted(self) -> bool:
        one = self.field.one(self.xi_root)
        return (self.x - self.y).sign() >= 0 and (self.y - one).sign() >= 0

    def with_basis(self, basis: Mat3) -> "CubicState":
        return replace(self, basis=basis)


def _independence_det(x: AlgebraicReal, y: AlgebraicReal):
    """Determinant of the rational coefficient matrix of (1, x, y): nonzero
    iff 1, x, y are linearly independent over Q."""
    rows = ((Q(1), Q(0), Q(0)), x.coeffs, y.coeffs)
    return (
        rows[0][0] * (rows[1][1] * rows[2][2] - rows[1][2] * rows[2][1])
        - rows[0][1] * (rows[1][0] * rows[2][2] - rows[1][2] * rows[2][0])
        + rows[0][2] * (rows[1][0] * rows[2][1] - rows[1][1] * rows[2][0])
    )


def _resolve_root_choice(root_choice) -> int:
    if root_choice in ("largest", None):
        return 2
    idx = int(root_choice)
    if idx not in (0, 1, 2):
        raise ValueError("root index must be 0, 1 or 2")
    return idx


def state_from_matrix(a: Mat3, root_choice="largest") -> CubicState:
    """Exact eigenvector state of a GL(3,Z) matrix with irreducible
    totally-real characteristic polynomial.

    The eigenvector for theta is the cross product of two rows of
    (A - theta*I), computed exactly in Q(theta) and normalized to third
    coordinate 1.
    """
    if mat_det(a) not in (1, -1):
        raise NotUnimodular(f"det = {mat_det(a)}")
    cp = char_poly(a)
    try:
        field = make_field(cp)
    except ReduciblePolynomial as ex:
        raise ReducibleCharPoly(str(ex)) from ex
    root = _resolve_root_choice(root_choice)
    th = field.theta(root)
    m = [
        [field.rational(a[i][j], root) - (th if i == j else 0) for j in range(3)]
        for i in range(3)
    ]
    v = None
    for r1, r2 in ((0, 1), (0, 2), (1, 2)):
        cand = (
            m[r1][1] * m[r2][2] - m[r1][2] * m[r2][1],
            m[r1][2] * m[r2][0] - m[r1][0] * m[r2][2],
            m[r1][0] * m[r2][1] - m[r1][1] * m[r2][0],
        )
        if not all(c.is_zero for c in cand):
            v = cand
            break
    if v is None:
        raise DegenerateEigenvector("all row pairs of A - theta*I are dependent")
    residual = mat_vec(a, v)
    if any(not (residual[i] - th * v[i]).is_zero for i in range(3)):
        raise DegenerateEigenvector("eigenvector residual is nonzero")
    if v[2].is_zero:
        raise DegenerateEigenvector("normalizing coordinate is zero")
    x, y = v[0] / v[2], v[1] / v[2]
    if _independence_det(x, y) == 0:
        raise DegenerateEigenvector("1, x, y are rationally dependent")
    nus = tuple(i for i in range(3) if i != root)
    return CubicState(field=field, xi_root=root, nu_roots=nus, x=x, y=y)


def state_from_polynomials(p_coeffs, q1_coeffs, q2_coeffs, root_choice="largest") -> CubicState:
    """State from the polynomial quadruple (p, q1, q2, 1): vectors
    (q1(theta_i), q2(theta_i), 1) per root.  q coefficients are rationals,
    highest degree first, degree <= 2."""
    field = make_field(p_coeffs)

    def triple(coeffs):
        cs = [Q(c) for c in coeffs]
        if len(cs) > 3:
            raise NotABasis("q polynomials must have degree <= 2")
        cs = [Q(0)] * (3 - len(cs)) + cs
        return (cs[2], cs[1], cs[0])  # low-to-high

    t1, t2 = triple(q1_coeffs), triple(q2_coeffs)
    root = _resolve_root_choice(root_choice)
    x = field.element(t1, root)
    y = field.element(t2, root)
    if _independence_det(x, y) == 0:
        raise NotABasis("(1, q1, q2) do not span the degree <= 2 polynomials")
    nus = tuple(i for i in range(3) if i != root)
    return CubicState(field=field, xi_root=root, nu_roots=nus, x=x, y=y)


def change_basis(state: CubicState, m: Mat3) -> CubicState:
    """Re-express the state in the basis obtained by applying matrix m:
    new coordinates are m^{-1} times the old ones, renormalized to third
    coordinate 1.  No sorting is performed here."""
    minv = mat_inverse_unimodular(m)
    v = mat_vec(minv, state.coords())
    if v[2].is_zero:
        raise DegenerateEigenvector("basis change sends xi into the plane z=0")
    return replace(
        state, x=v[0] / v[2], y=v[1] / v[2], basis=mat_mul(state.basis, m)
    )


def orthant_membership(v, b: Mat3 = IDENTITY) -> Membership:
    """Classify vector v (triple of AlgebraicReal sharing a root) against
    the non-negative orthant of the basis b."""
    binv = mat_inverse_unimodular(b)
    c = mat_vec(binv, v)
    signs = [ci.sign() for ci in c]
    if all(s >= 0 for s in signs):
        return Membership.INSIDE
    if all(s <= 0 for s in signs):
        return Membership.INSIDE_NEGATED
    return Membership.OUTSIDE


def is_separating(triple, b: Mat3 = IDENTITY) -> bool:
    """True iff the orthant of b is supporting for xi and contains neither
    +-nu1 nor +-nu2.

    `triple` is (xi_vec, nu1_vec, nu2_vec), each a triple of AlgebraicReal
    in its own embedding.
    """
    xi, nu1, nu2 = triple
    if orthant_membership(xi, b) is Membership.OUTSIDE:
        raise NotSupporting("xi is outside the orthant of the basis")
    return (
        orthant_membership(nu1, b) is Membership.OUTSIDE
        and orthant_membership(nu2, b) is Membership.OUTSIDE
    )


def conjugate_triple(state: CubicState):
    return (state.xi_vector(), state.nu_vector(0), state.nu_vector(1))


def state_is_separating(state: CubicState) -> bool:
    """Separating test for the state's own coordinate basis."""
    return is_separating(conjugate_triple(state))
