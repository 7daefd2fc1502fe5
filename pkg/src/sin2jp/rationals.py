"""Rational number plumbing shared by the whole package.

``Q`` is gmpy2.mpq when available (much faster for the coefficient sizes
that show up after a few hundred basis changes) and fractions.Fraction
otherwise.  Both store reduced representations, so equality of values is
equality of (numerator, denominator) pairs.
"""

from __future__ import annotations

import math

try:
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover
    from fractions import Fraction as Q


def qify(v):
    """Coerce an int, string or rational to Q. Floats are rejected:
    every quantity in this package is exact."""
    if isinstance(v, float):
        raise TypeError("floats are not exact; pass an int, string or rational")
    return Q(v)


def qsign(q) -> int:
    if q > 0:
        return 1
    if q < 0:
        return -1
    return 0


def qfloor(q) -> int:
    return int(math.floor(q))


def parse_rational(text: str):
    """Parse '3', '-7/2' or '0.25' into Q."""
    text = text.strip()
    if "/" in text:
        num, den = text.split("/")
        return Q(int(num), int(den))
    if "." in text:
        sign = -1 if text.startswith("-") else 1
        body = text.lstrip("+-")
        whole, frac = body.split(".")
        whole = whole or "0"
        scale = 10 ** len(frac)
        return sign * Q(int(whole) * scale + int(frac or "0"), scale)
    return Q(int(text))


def decimal_str(q, digits: int) -> str:
    """Fixed-point decimal string with `digits` fractional digits,
    rounded half away from zero. Deterministic across platforms."""
    q = Q(q)
    neg = q < 0
    if neg:
        q = -q
    scaled = q * 10**digits
    n = scaled.numerator // scaled.denominator
    rem2 = 2 * (scaled.numerator - n * scaled.denominator)
    if rem2 >= scaled.denominator:
        n += 1
    whole, frac = divmod(n, 10**digits)
    body = f"{whole}.{frac:0{digits}d}" if digits else str(whole)
    return "-" + body if neg and n else body
