"""Exact arithmetic in totally-real cubic number fields.

A field context is an irreducible integer cubic together with certified
isolating intervals for its three real roots.  Elements are rational
coefficient triples over the power basis (1, theta, theta^2) tagged with
a root index, so equality is coefficient equality and every sign or
floor decision terminates: either the element is rational (decided
exactly) or the root enclosure is refined until zero is excluded.

The module also provides the quadratic cofactor extension Q(theta)[eta],
eta a root of p(t)/(t - theta), used to evaluate Galois-symmetric
quantities (the sin^2 of the angle between conjugate planes) exactly
inside Q(theta).
"""

from __future__ import annotations

import math

from .rationals import Q, qsign, qfloor, decimal_str
from . import intervals as iv


class FieldError(Exception):
    """Base class for exact-arithmetic failures."""


class ReduciblePolynomial(FieldError):
    pass


class NotTotallyReal(FieldError):
    pass


class DivisionByZero(FieldError, ZeroDivisionError):
    pass


class NotSymmetric(FieldError):
    """A quantity expected to be Galois-symmetric reduced with a nonzero
    antisymmetric part; signals an internal arithmetic bug."""


# ---------------------------------------------------------------------------
# dense univariate polynomials over Q, coefficients low-to-high


def _poly_trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_eval(p, x):
    acc = Q(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _poly_mul(p, q):
    out = [Q(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return _poly_trim(out)


def _poly_sub(p, q):
    n = max(len(p), len(q))
    p = p + [Q(0)] * (n - len(p))
    q = q + [Q(0)] * (n - len(q))
    return _poly_trim([a - b for a, b in zip(p, q)])


def _poly_divmod(p, q):
    p = list(p)
    d = len(q) - 1
    lead = q[-1]
    quot = [Q(0)] * max(len(p) - d, 0)
    while len(p) - 1 >= d and p:
        k = len(p) - 1 - d
        c = p[-1] / lead
        quot[k] = c
        for j in range(len(q)):
            p[k + j] -= c * q[j]
        p.pop()
        _poly_trim(p)
    return _poly_trim(quot), p


def _sturm_chain(p):
    dp = [i * c for i, c in enumerate(p)][1:]
    chain = [list(p), dp]
    while len(chain[-1]) > 1:
        _, rem = _poly_divmod(chain[-2], chain[-1])
        if not rem:
            break
        chain.append([-c for c in rem])
    return chain


def _sign_variations(chain, x):
    signs = [qsign(_poly_eval(p, x)) for p in chain]
    signs = [s for s in signs if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a * b < 0)


def _divisors(n: int):
    n = abs(n)
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def discriminant(c3: int, c2: int, c1: int, c0: int) -> int:
    return (
        18 * c3 * c2 * c1 * c0
        - 4 * c2**3 * c0
        + c2**2 * c1**2
        - 4 * c3 * c1**3
        - 27 * c3**2 * c0**2
    )


class CubicField:
    """An irreducible totally-real integer cubic with isolated real roots.

    Root isolation data is refined lazily and cached; the cache only ever
    shrinks intervals, so concurrent readers see valid (if differently
    tight) enclosures.  All other attributes are immutable.
    """

    def __init__(self, coeffs):
        c3, c2, c1, c0 = (int(c) for c in coeffs)
        if c3 == 0:
            raise ValueError("leading coefficient must be nonzero")
        g = math.gcd(math.gcd(abs(c3), abs(c2)), math.gcd(abs(c1), abs(c0)))
        c3, c2, c1, c0 = c3 // g, c2 // g, c1 // g, c0 // g
        if c3 < 0:
            c3, c2, c1, c0 = -c3, -c2, -c1, -c0
        self.coeffs = (c3, c2, c1, c0)
        self._check_irreducible()
        self.discriminant = discriminant(c3, c2, c1, c0)
        if self.discriminant <= 0:
            raise NotTotallyReal(
                f"discriminant {self.discriminant} <= 0: not three distinct real roots"
            )
        # monic reduction: theta^3 = r2*theta^2 + r1*theta + r0
        self._red = (Q(-c0, c3), Q(-c1, c3), Q(-c2, c3))
        self._poly = [Q(c0), Q(c1), Q(c2), Q(c3)]
        self._isolate_roots()

    # -- construction helpers ------------------------------------------------

    def _check_irreducible(self):
        c3, c2, c1, c0 = self.coeffs
        if c0 == 0:
            raise ReduciblePolynomial("t = 0 is a rational root")
        for p in _divisors(c0):
            for q in _divisors(c3):
                for num in (p, -p):
                    if c3 * num**3 + c2 * num**2 * q + c1 * num * q**2 + c0 * q**3 == 0:
                        raise ReduciblePolynomial(f"rational root {num}/{q}")

    def _isolate_roots(self):
        c3, c2, c1, c0 = self.coeffs
        bound = 1 + max(abs(c2), abs(c1), abs(c0)) // abs(c3) + 1
        chain = self._sturm = _sturm_chain(self._poly)
        stack = [(Q(-bound), Q(bound))]
        found = []
        while stack:
            a, b = stack.pop()
            n = _sign_variations(chain, a) - _sign_variations(chain, b)
            if n == 0:
                continue
            if n == 1 and qsign(self.eval_at(a)) * qsign(self.eval_at(b)) < 0:
                found.append([a, b])
                continue
            m = (a + b) / 2
            stack.append((a, m))
            stack.append((m, b))
        assert len(found) == 3, "totally-real cubic must have three real roots"
        found.sort(key=lambda ab: ab[0])
        self._roots = found

    # -- root access ---------------------------------------------------------

    def eval_at(self, x):
        return _poly_eval(self._poly, x)

    def root_interval(self, index: int, width=None):
        """Isolating interval for root `index` (ascending), refined below
        `width` if given.  Refinement is plain sign bisection: irreducibility
        guarantees no rational point is a root, so the sign at the midpoint
        is always decisive."""
        lo, hi = self._roots[index]
        if width is not None:
            s_lo = qsign(self.eval_at(lo))
            while hi - lo >= width:
                mid = (lo + hi) / 2
                if qsign(self.eval_at(mid)) == s_lo:
                    lo = mid
                else:
                    hi = mid
            self._roots[index][0] = lo
            self._roots[index][1] = hi
        return (lo, hi)

    def sturm_count(self, a, b) -> int:
        return _sign_variations(self._sturm, a) - _sign_variations(self._sturm, b)

    # -- element constructors --------------------------------------------------

    def element(self, coeffs, root: int) -> "AlgebraicReal":
        return AlgebraicReal(self, root, tuple(Q(c) for c in coeffs))

    def zero(self, root: int) -> "AlgebraicReal":
        return self.element((0, 0, 0), root)

    def one(self, root: int) -> "AlgebraicReal":
        return self.element((1, 0, 0), root)

    def theta(self, root: int) -> "AlgebraicReal":
        return self.element((0, 1, 0), root)

    def rational(self, q, root: int) -> "AlgebraicReal":
        return self.element((Q(q), 0, 0), root)

    # -- dunder plumbing -------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, CubicField) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        c3, c2, c1, c0 = self.coeffs
        return f"CubicField({c3}t^3 + {c2}t^2 + {c1}t + {c0})"


def make_field(coeffs) -> CubicField:
    """Build the arithmetic context for an integer cubic given as
    (c3, c2, c1, c0), highest degree first."""
    return CubicField(coeffs)


class AlgebraicReal:
    """An element a0 + a1*theta + a2*theta^2 of Q(theta_i).

    Immutable.  Arithmetic is exact (reduction modulo the minimal
    polynomial, inversion by extended gcd in Q[t]); ordering predicates
    refine the root enclosure until decisive.
    """

    __slots__ = ("field", "root", "coeffs")

    def __init__(self, field: CubicField, root: int, coeffs):
        self.field = field
        self.root = root
        self.coeffs = tuple(Q(c) for c in coeffs)
        assert len(self.coeffs) == 3

    # -- predicates ------------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    @property
    def is_rational(self) -> bool:
        return self.coeffs[1] == 0 and self.coeffs[2] == 0

    @property
    def is_integer(self) -> bool:
        return self.is_rational and self.coeffs[0].denominator == 1

    def rational_value(self):
        if not self.is_rational:
            raise ValueError("element is irrational")
        return self.coeffs[0]

    # -- coercion ----------------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, AlgebraicReal):
            if other.field != self.field or other.root != self.root:
                raise ValueError("mixed fields or root indices")
            return other
        if isinstance(other, (int, type(Q(0)))):
            return AlgebraicReal(self.field, self.root, (Q(other), 0, 0))
        return NotImplemented

    # -- ring operations ---------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return AlgebraicReal(
            self.field, self.root, tuple(a + b for a, b in zip(self.coeffs, o.coeffs))
        )

    __radd__ = __add__

    def __neg__(self):
        return AlgebraicReal(self.field, self.root, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return AlgebraicReal(
            self.field, self.root, tuple(a - b for a, b in zip(self.coeffs, o.coeffs))
        )

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        a0, a1, a2 = self.coeffs
        b0, b1, b2 = o.coeffs
        # degree-4 product, folded through theta^3 = r2 t^2 + r1 t + r0
        d = [
            a0 * b0,
            a0 * b1 + a1 * b0,
            a0 * b2 + a1 * b1 + a2 * b0,
            a1 * b2 + a2 * b1,
            a2 * b2,
        ]
        r0, r1, r2 = self.field._red
        d[1] += d[4] * r0
        d[2] += d[4] * r1
        d[3] += d[4] * r2
        d[0] += d[3] * r0
        d[1] += d[3] * r1
        d[2] += d[3] * r2
        return AlgebraicReal(self.field, self.root, (d[0], d[1], d[2]))

    __rmul__ = __mul__

    def inverse(self) -> "AlgebraicReal":
        if self.is_zero:
            raise DivisionByZero("inverse of zero element")
        if self.is_rational:
            return AlgebraicReal(self.field, self.root, (1 / self.coeffs[0], 0, 0))
        r0, r1, r2 = self.field._red
        m = [-r0, -r1, -r2, Q(1)]  # monic minimal polynomial
        a = _poly_trim(list(self.coeffs))
        # extended gcd in Q[t]: find s with s*a == g (mod m), g a nonzero constant
        old_r, r = m, a
        old_s, s = [Q(0)], [Q(1)]
        while len(r) > 1:
            quot, rem = _poly_divmod(old_r, r)
            old_r, r = r, rem
            old_s, s = s, _poly_sub(old_s, _poly_mul(quot, s) if quot else [Q(0)])
        assert r, "gcd degenerated; minimal polynomial not irreducible?"
        g = r[0]
        inv = [c / g for c in s] + [Q(0), Q(0)]
        return AlgebraicReal(self.field, self.root, tuple(inv[:3]))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o.is_zero:
            raise DivisionByZero("division by zero element")
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = AlgebraicReal(self.field, self.root, (1, 0, 0))
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- order and enclosure -------------------------------------------------------

    def enclosure(self, width=None):
        """Exact rational interval containing the real value; refined so the
        result is narrower than `width` when given."""
        if self.is_rational:
            return iv.iv_point(self.coeffs[0])
        t = self.field.root_interval(self.root, width)
        out = self._eval_on(t)
        if width is not None:
            while iv.iv_width(out) >= width:
                t = self.field.root_interval(self.root, iv.iv_width(t) / 2)
                out = self._eval_on(t)
        return out

    def _eval_on(self, t):
        a0, a1, a2 = self.coeffs
        out = iv.iv_add(iv.iv_scale(t, a1), iv.iv_point(a0))
        return iv.iv_add(out, iv.iv_scale(iv.iv_sq(t), a2))

    def sign(self) -> int:
        if self.is_zero:
            return 0
        if self.is_rational:
            return qsign(self.coeffs[0])
        width = Q(1, 2**32)
        while True:
            s = iv.iv_sign(self.enclosure(width))
            if s is not None:
                return s
            width /= 2**32

    def floor(self) -> int:
        if self.is_rational:
            return qfloor(self.coeffs[0])
        width = Q(1, 2**32)
        while True:
            f = iv.iv_floor(self.enclosure(width))
            if f is not None:
                return f
            width /= 2**32

    def compare(self, other) -> int:
        diff = self - self._coerce(other)
        return diff.sign()

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __lt__(self, other):
        return self.compare(other) < 0

    def __le__(self, other):
        return self.compare(other) <= 0

    def __gt__(self, other):
        return self.compare(other) > 0

    def __ge__(self, other):
        return self.compare(other) >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __hash__(self):
        return hash((self.field.coeffs, self.root, self.coeffs))

    def to_decimal(self, digits: int) -> str:
        enc = self.enclosure(Q(1, 10 ** (digits + 3)))
        return decimal_str(iv.iv_mid(enc), digits)

    def __repr__(self):
        a0, a1, a2 = self.coeffs
        return f"<{a0} + {a1}θ + {a2}θ² @root{self.root}>"


# ---------------------------------------------------------------------------
# quadratic cofactor extension


class CofactorContext:
    """The ring Q(theta)[eta] with eta a root of p(t)/(t - theta).

    eta^2 = -B*eta - C where B = theta + c2/c3 and C = theta^2 +
    (c2/c3) theta + c1/c3; the conjugate root is eta' = -B - eta.  For
    cyclic cubics this ring has zero divisors, so inversion goes through
    the conjugate norm and fails only on exact zero norms.
    """

    def __init__(self, field: CubicField, root: int):
        self.field = field
        self.root = root
        c3, c2, c1, _ = field.coeffs
        th = field.theta(root)
        self.B = th + field.rational(Q(c2, c3), root)
        self.C = th * th + field.rational(Q(c2, c3), root) * th + field.rational(
            Q(c1, c3), root
        )

    def embed(self, a) -> "CofactorElement":
        if not isinstance(a, AlgebraicReal):
            a = self.field.rational(Q(a), self.root)
        return CofactorElement(self, a, self.field.zero(self.root))

    def eta(self) -> "CofactorElement":
        return CofactorElement(self, self.field.zero(self.root), self.field.one(self.root))

    def eval_coeffs(self, coeffs, at: "CofactorElement") -> "CofactorElement":
        """Evaluate a0 + a1*t + a2*t^2 (rational coefficient triple) at a
        ring element, reducing through the cofactor relation."""
        a0, a1, a2 = coeffs
        return self.embed(a0) + self.embed(a1) * at + self.embed(a2) * at * at

    def conjugate_roots(self):
        """Ordered pair (eta, eta') = (eta, -B - eta)."""
        e = self.eta()
        return e, -e - self.embed(self.B)


class CofactorElement:
    """u0 + u1*eta with u0, u1 in Q(theta)."""

    __slots__ = ("ctx", "u0", "u1")

    def __init__(self, ctx: CofactorContext, u0: AlgebraicReal, u1: AlgebraicReal):
        self.ctx = ctx
        self.u0 = u0
        self.u1 = u1

    @property
    def is_zero(self) -> bool:
        return self.u0.is_zero and self.u1.is_zero

    @property
    def is_symmetric(self) -> bool:
        return self.u1.is_zero

    def _coerce(self, other):
        if isinstance(other, CofactorElement):
            return other
        return self.ctx.embed(other)

    def __add__(self, other):
        o = self._coerce(other)
        return CofactorElement(self.ctx, self.u0 + o.u0, self.u1 + o.u1)

    __radd__ = __add__

    def __neg__(self):
        return CofactorElement(self.ctx, -self.u0, -self.u1)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        o = self._coerce(other)
        cross = self.u0 * o.u1 + self.u1 * o.u0
        sq = self.u1 * o.u1
        return CofactorElement(
            self.ctx,
            self.u0 * o.u0 - sq * self.ctx.C,
            cross - sq * self.ctx.B,
        )

    __rmul__ = __mul__

    def conjugate(self) -> "CofactorElement":
        """Image under eta -> eta' = -B - eta."""
        return CofactorElement(self.ctx, self.u0 - self.u1 * self.ctx.B, -self.u1)

    def norm(self) -> AlgebraicReal:
        """self * self.conjugate(), an element of Q(theta)."""
        return self.u0 * self.u0 - self.ctx.B * self.u0 * self.u1 + self.ctx.C * self.u1 * self.u1

    def inverse(self) -> "CofactorElement":
        n = self.norm()
        if n.is_zero:
            raise DivisionByZero("zero norm in cofactor extension")
        conj = self.conjugate()
        ninv = n.inverse()
        return CofactorElement(self.ctx, conj.u0 * ninv, conj.u1 * ninv)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def symmetric_part(self) -> AlgebraicReal:
        if not self.u1.is_zero:
            raise NotSymmetric(f"antisymmetric part {self.u1!r} is nonzero")
        return self.u0

    def enclosure(self, eta_root: int, width):
        """Interval image under theta -> root enclosure, eta -> enclosure of
        the conjugate root `eta_root`."""
        t = self.ctx.field.root_interval(eta_root, width)
        return iv.iv_add(self.u0.enclosure(width), iv.iv_mul(self.u1.enclosure(width), t))

    def __eq__(self, other):
        o = self._coerce(other)
        return self.u0 == o.u0 and self.u1 == o.u1

    def __repr__(self):
        return f"<({self.u0!r}) + ({self.u1!r})·η>"
