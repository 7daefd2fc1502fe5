"""JP-transformations, admissibility, exact sin^2 evaluation and the
argmax step of the main stage.

sin^2 of the angle between the planes (xi, nu1) and (xi, nu2) is computed
from their normal vectors n_i = xi x nu_i inside the quadratic cofactor
extension of Q(theta); the result is Galois-symmetric and reduces to an
exact element of Q(theta).  Candidate transformations are compared with a
rigorous rational-interval prefilter first, and by exact field arithmetic
whenever intervals cannot separate them, so the argmax is always exact.
"""

from __future__ import annotations

from dataclasses import dataclass

from .rationals import Q
from . import intervals as iv
from .field import AlgebraicReal, CofactorContext
from .matrices import (
    Mat3,
    mat_det,
    mat_inverse_unimodular,
    mat_mul,
    mat_transpose,
    mat_vec,
    perm_matrix,
)
from .states import CubicState, change_basis


class TransformError(Exception):
    pass


class NotSorted(TransformError):
    pass


class DegenerateState(TransformError):
    pass


class EmptyAdmissibleSet(TransformError):
    """Cannot occur for sorted strictly-positive coordinates; bug trap."""


class ExactTie(TransformError):
    """Two admissible transformations share the exact maximal sin^2.
    Raised only in strict mode: ties genuinely occur in cyclic cubic
    fields (square discriminant), where the Galois symmetry can make two
    candidates reach the same value, even sin^2 = 1 exactly."""


@dataclass(frozen=True)
class JPTransform:
    """V_{alpha,beta;gamma}, W, or a coordinate transposition."""

    kind: str  # "V" | "W" | "T"
    params: tuple = ()

    def matrix(self) -> Mat3:
        if self.kind == "V":
            a, b, g = self.params
            return ((1, g, a), (0, 1, b), (0, 0, 1))
        if self.kind == "W":
            return ((1, 1, 0), (0, 1, 0), (1, 0, 1))
        return perm_matrix(self.params)

    def __str__(self):
        if self.kind == "V":
            a, b, g = self.params
            return f"V[{a},{b};{g}]"
        if self.kind == "W":
            return "W"
        return f"T{list(self.params)}"


def V(alpha: int, beta: int, gamma: int) -> JPTransform:
    return JPTransform("V", (alpha, beta, gamma))


def W() -> JPTransform:
    return JPTransform("W")


def T(perm) -> JPTransform:
    return JPTransform("T", tuple(perm))


def apply_to_coords(t: JPTransform, v):
    """Coordinates of a vector in the transformed basis (inverse action)."""
    x, y, z = v
    if t.kind == "V":
        a, b, g = t.params
        yb = y - b * z
        return (x - a * z - g * yb, yb, z)
    if t.kind == "W":
        xy = x - y
        return (xy, y, z - xy)
    p = t.params
    return (v[p[0]], v[p[1]], v[p[2]])


def _strict_floor(v: AlgebraicReal) -> int:
    """Largest integer strictly below v."""
    f = v.floor()
    if v.is_integer:
        return f - 1
    return f


def enumerate_admissible(coords) -> list[JPTransform]:
    """All admissible JP-transformations for sorted positive coordinates
    (x >= y >= z > 0): the V's with strictly positive image coordinates
    (identity excluded), in ascending lexicographic (alpha, beta, gamma)
    order, then W when z > x - y > 0."""
    x, y, z = coords
    if not ((x - y).sign() >= 0 and (y - z).sign() >= 0 and z.sign() > 0):
        raise NotSorted("coordinates must satisfy x >= y >= z > 0")
    out = []
    a_max = _strict_floor(x / z)
    for a in range(a_max + 1):
        xa = x - a * z
        b_max = _strict_floor(y / z)
        for b in range(b_max + 1):
            yb = y - b * z
            g_max = _strict_floor(xa / yb)
            for g in range(g_max + 1):
                if (a, b, g) != (0, 0, 0):
                    out.append(V(a, b, g))
    xy = x - y
    if xy.sign() > 0 and (z - xy).sign() > 0:
        out.append(W())
    return out


@dataclass(frozen=True)
class Sin2Value:
    """Exact sin^2 of the plane angle plus a decimal rendering."""

    exact: AlgebraicReal
    digits: int = 50

    @property
    def approx(self) -> str:
        return self.exact.to_decimal(self.digits)


def _cross(u, v):
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def _dot(u, v):
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def normal_vectors(state: CubicState):
    """(n1, n2, n1 x n2) in the cofactor extension, with nu1 evaluated at
    eta and nu2 at the conjugate root."""
    ctx = CofactorContext(state.field, state.xi_root)
    eta, eta_conj = ctx.conjugate_roots()
    xi = (ctx.embed(state.x), ctx.embed(state.y), ctx.embed(1))
    nu1 = (
        ctx.eval_coeffs(state.x.coeffs, eta),
        ctx.eval_coeffs(state.y.coeffs, eta),
        ctx.embed(1),
    )
    nu2 = tuple(c.conjugate() for c in nu1)
    n1 = _cross(xi, nu1)
    n2 = _cross(xi, nu2)
    return n1, n2, _cross(n1, n2)


def _sin2_from_normals(n1, n2, c) -> tuple[AlgebraicReal, AlgebraicReal]:
    num = _dot(c, c).symmetric_part()
    den = (_dot(n1, n1) * _dot(n2, n2)).symmetric_part()
    if den.is_zero or num.is_zero:
        raise DegenerateState("conjugate vectors are not linearly independent")
    return num, den


def sin2_alpha(state: CubicState, digits: int = 50) -> Sin2Value:
    n1, n2, c = normal_vectors(state)
    num, den = _sin2_from_normals(n1, n2, c)
    return Sin2Value(exact=num / den, digits=digits)


# ---------------------------------------------------------------------------
# cross-validation formulas via axis intercepts of the lines xi-nu_i


def _intercept_sin2(state: CubicState, swap_xy: bool):
    ctx = CofactorContext(state.field, state.xi_root)
    eta, _ = ctx.conjugate_roots()
    x, y = ctx.embed(state.x), ctx.embed(state.y)
    xr = ctx.eval_coeffs(state.x.coeffs, eta)
    yr = ctx.eval_coeffs(state.y.coeffs, eta)
    if swap_xy:
        x, y, xr, yr = y, x, yr, xr
    d = x - xr
    if d.norm().is_zero:
        return None  # a line xi-nu_i is parallel to the intercept axis
    p1 = y + x * (yr - y) / d
    p2 = p1.conjugate()
    one = ctx.embed(1)
    num = (p1 - p2) * (p1 - p2) * (x * x + y * y + one) * x * x
    den = (x * x + x * x * p1 * p1 + (y - p1) * (y - p1)) * (
        x * x + x * x * p2 * p2 + (y - p2) * (y - p2)
    )
    if den.norm().is_zero:
        return None
    return (num / den).symmetric_part()


def sin2_via_y_intercepts(state: CubicState) -> AlgebraicReal | None:
    """sin^2 as a rational expression of the y-axis intercepts p1, p2 of
    the lines xi-nu_i in the plane z = 1; None when not applicable."""
    return _intercept_sin2(state, swap_xy=False)


def sin2_via_x_intercepts(state: CubicState) -> AlgebraicReal | None:
    """Same with the x-axis intercepts q1, q2 (coordinates swapped, which
    exchanges the roles of x and y in the expression)."""
    return _intercept_sin2(state, swap_xy=True)


# ---------------------------------------------------------------------------
# the Phi step


@dataclass(frozen=True)
class PhiResult:
    chosen: JPTransform
    sort_perm: tuple[int, int, int]
    matrix: Mat3  # composite Phi = M . T
    state: CubicState
    sin2: AlgebraicReal  # exact sin^2 of the new state
    tied: bool = False  # an exact tie was broken by enumeration order


def _interval_sin2(m: Mat3, n1iv, n2iv, civ):
    """Rigorous enclosure of sin^2(M(s)) from enclosures of the normal
    vectors: new normals are M^T n_i and their cross product is
    det(M) M^{-1} (n1 x n2)."""
    mt = mat_transpose(m)
    minv = mat_inverse_unimodular(m)
    w1 = tuple(iv.iv_dot([iv.iv_point(k) for k in row], n1iv) for row in mt)
    w2 = tuple(iv.iv_dot([iv.iv_point(k) for k in row], n2iv) for row in mt)
    wc = tuple(iv.iv_dot([iv.iv_point(k) for k in row], civ) for row in minv)
    num = iv.iv_dot(wc, wc)
    den = iv.iv_mul(iv.iv_dot(w1, w1), iv.iv_dot(w2, w2))
    d2 = mat_det(m) ** 2
    if d2 != 1:
        num = iv.iv_scale(num, d2)
    if den[0] <= 0:
        return (Q(0), Q(1))  # undecided at this precision; sin^2 is in (0,1]
    return iv.iv_div(num, den)


def _exact_sin2_pair(m: Mat3, n1, n2, c):
    """Exact (numerator, denominator) of sin^2(M(s)) in Q(theta)."""
    mt = mat_transpose(m)
    minv = mat_inverse_unimodular(m)
    w1 = mat_vec(mt, n1)
    w2 = mat_vec(mt, n2)
    wc = mat_vec(minv, c)
    num = (_dot(wc, wc) * (mat_det(m) ** 2)).symmetric_part()
    den = (_dot(w1, w1) * _dot(w2, w2)).symmetric_part()
    return num, den


def _stable_argsort_desc(values):
    """Indices sorting values in non-increasing order, stable (equal
    entries keep their relative order).  Comparisons are exact."""
    order = list(range(len(values)))
    for i in range(1, len(order)):
        j = i
        while j > 0 and (values[order[j]] - values[order[j - 1]]).sign() > 0:
            order[j], order[j - 1] = order[j - 1], order[j]
            j -= 1
    return tuple(order)


def phi_step(state: CubicState, prefilter_bits: int = 96, strict_ties: bool = False) -> PhiResult:
    """One main-stage iteration: exact argmax of sin^2 over the admissible
    set (ties broken by enumeration order: V's ascending lexicographically,
    then W) composed with the stable sorting transposition.

    strict_ties=True raises ExactTie instead of breaking ties; use it to
    detect the cyclic-field tie configurations."""
    coords = state.coords()
    candidates = enumerate_admissible(coords)
    if not candidates:
        raise EmptyAdmissibleSet("no admissible transformation")

    n1, n2, c = normal_vectors(state)
    survivors = list(range(len(candidates)))
    mats = [t.matrix() for t in candidates]

    bits = prefilter_bits
    for _ in range(3):
        if len(survivors) == 1:
            break
        # one consistent embedding: eta maps to the first conjugate root
        # (n2 already contains the conjugation eta -> -B - eta)
        width = Q(1, 2**bits)
        eta_root = state.nu_roots[0]
        n1iv = tuple(e.enclosure(eta_root, width) for e in n1)
        n2iv = tuple(e.enclosure(eta_root, width) for e in n2)
        civ = tuple(e.enclosure(eta_root, width) for e in c)
        encs = [_interval_sin2(mats[i], n1iv, n2iv, civ) for i in survivors]
        best_lo = max(e[0] for e in encs)
        survivors = [i for i, e in zip(survivors, encs) if e[1] >= best_lo]
        bits *= 2

    best = survivors[0]
    tied = False
    if len(survivors) > 1:
        best_pair = _exact_sin2_pair(mats[best], n1, n2, c)
        for i in survivors[1:]:
            num, den = _exact_sin2_pair(mats[i], n1, n2, c)
            diff = (num * best_pair[1] - best_pair[0] * den).sign()
            if diff > 0:
                best, best_pair, tied = i, (num, den), False
            elif diff == 0:
                if strict_ties:
                    raise ExactTie(f"{candidates[best]} and {candidates[i]}")
                tied = True  # keep `best`: first in enumeration order

    chosen = candidates[best]
    m = mats[best]
    raw = mat_vec(mat_inverse_unimodular(m), coords)
    assert all(v.sign() > 0 for v in raw), "admissible image must stay positive"
    perm = _stable_argsort_desc(raw)
    composite = mat_mul(m, perm_matrix(perm))
    new_state = change_basis(state, composite)
    num, den = _exact_sin2_pair(m, n1, n2, c)
    return PhiResult(
        chosen=chosen,
        sort_perm=perm,
        matrix=composite,
        state=new_state,
        sin2=num / den,
        tied=tied,
    )
