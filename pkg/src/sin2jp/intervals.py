"""Exact interval arithmetic over the rationals.

Intervals are (lo, hi) pairs of Q.  All operations are exact, so the
usual outward-rounding concerns of floating-point interval arithmetic do
not arise; widths only grow through genuine dependency, never rounding.
"""

from __future__ import annotations

from .rationals import Q, qfloor

ZERO = (Q(0), Q(0))
ONE = (Q(1), Q(1))


def iv_point(q):
    q = Q(q)
    return (q, q)


def iv_add(a, b):
    return (a[0] + b[0], a[1] + b[1])


def iv_sub(a, b):
    return (a[0] - b[1], a[1] - b[0])


def iv_neg(a):
    return (-a[1], -a[0])


def iv_mul(a, b):
    p = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
    return (min(p), max(p))


def iv_sq(a):
    lo, hi = a
    if lo >= 0:
        return (lo * lo, hi * hi)
    if hi <= 0:
        return (hi * hi, lo * lo)
    return (Q(0), max(lo * lo, hi * hi))


def iv_div(a, b):
    if b[0] <= 0 <= b[1]:
        raise ZeroDivisionError("interval denominator straddles zero")
    inv = (Q(1) / b[1], Q(1) / b[0])
    return iv_mul(a, inv)


def iv_scale(a, k):
    k = Q(k)
    if k >= 0:
        return (a[0] * k, a[1] * k)
    return (a[1] * k, a[0] * k)


def iv_contains_zero(a) -> bool:
    return a[0] <= 0 <= a[1]


def iv_width(a):
    return a[1] - a[0]


def iv_mid(a):
    return (a[0] + a[1]) / 2


def iv_sign(a) -> int | None:
    """Certified sign, or None if the interval straddles zero."""
    if a[0] > 0:
        return 1
    if a[1] < 0:
        return -1
    if a[0] == 0 == a[1]:
        return 0
    return None


def iv_floor(a) -> int | None:
    """Certified floor, or None if the enclosure spans an integer."""
    lo, hi = qfloor(a[0]), qfloor(a[1])
    return lo if lo == hi else None


def iv_dot(u, v):
    acc = ZERO
    for a, b in zip(u, v):
        acc = iv_add(acc, iv_mul(a, b))
    return acc


def iv_cross(u, v):
    return (
        iv_sub(iv_mul(u[1], v[2]), iv_mul(u[2], v[1])),
        iv_sub(iv_mul(u[2], v[0]), iv_mul(u[0], v[2])),
        iv_sub(iv_mul(u[0], v[1]), iv_mul(u[1], v[0])),
    )
