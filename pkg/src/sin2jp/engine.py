"""Algorithm drivers: the preliminary stages and main loop of the
sin^2-algorithm, and the classical Jacobi-Perron algorithm in certified
numeric mode.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .rationals import Q, qfloor
from . import intervals as iv
from .field import AlgebraicReal
from .matrices import Mat3, IDENTITY, mat_is_identity, mat_mul, perm_matrix
from .states import CubicState, change_basis, state_is_separating
from .transforms import (
    phi_step,
    sin2_alpha,
    sin2_via_x_intercepts,
    sin2_via_y_intercepts,
    _stable_argsort_desc,
)
from .periodicity import PeriodReport, SeenMap, certify


class EngineError(Exception):
    pass


class ZeroCoordinate(EngineError):
    pass


class BudgetExceeded(EngineError):
    pass


class PrecisionExhausted(EngineError):
    pass


class CrossValidationFailed(EngineError):
    """Exact sin^2 disagreed with an intercept formula; bug trap."""


@dataclass
class StepRecord:
    index: int
    stage: str  # "stage1" | "stage2" | "main"
    kind: str
    params: tuple
    matrix: Mat3
    sin2_approx: str = ""
    state_key: tuple | None = None
    descent: bool = False
    tied: bool = False


@dataclass
class RunResult:
    records: list[StepRecord]
    report: PeriodReport | None
    budget_exceeded: bool
    descent_count: int
    final_state: CubicState


def stage1_supporting(coords) -> Mat3:
    """Signed permutation matrix whose basis makes the coordinates sorted
    non-increasing and positive.  Stable: equal absolute values keep their
    relative order."""
    signs = []
    for v in coords:
        s = v.sign() if isinstance(v, AlgebraicReal) else (v > 0) - (v < 0)
        if s == 0:
            raise ZeroCoordinate("a coordinate is exactly zero")
        signs.append(s)
    abs_coords = [v if s > 0 else -v for v, s in zip(coords, signs)]
    order = _stable_argsort_desc(abs_coords)
    return tuple(
        tuple(signs[order[j]] if i == order[j] else 0 for j in range(3))
        for i in range(3)
    )


def cf_partial_quotients(x, y, n: int) -> list[int]:
    """First n partial quotients of x/y by exact floors; stops early if
    the ratio is rational and the expansion terminates."""
    r = x / y
    out = []
    for _ in range(n):
        a = r.floor() if isinstance(r, AlgebraicReal) else qfloor(r)
        out.append(a)
        rem = r - a
        if isinstance(rem, AlgebraicReal):
            if rem.is_zero:
                break
            r = rem.inverse()
        else:
            if rem == 0:
                break
            r = 1 / rem
    return out


class _QuotientStream:
    """Lazy continued fraction of x/y with exact floors."""

    def __init__(self, x, y):
        self._r = x / y
        self._done = False

    def next(self) -> int | None:
        if self._done:
            return None
        a = self._r.floor()
        rem = self._r - a
        if rem.is_zero:
            self._done = True
        else:
            self._r = rem.inverse()
        return a


def stage2_separating(state: CubicState, max_pairs: int = 500):
    """Even-convergent products of the continued fraction of x/y until the
    basis is separating.  Returns (matrix, quotients_used); the matrix has
    a sorting permutation folded in when the resulting coordinates are not
    already non-increasing (identity permutation otherwise)."""
    if state_is_separating(state):
        return IDENTITY, []
    stream = _QuotientStream(state.x, state.y)
    m = IDENTITY
    used = []
    for _ in range(max_pairs):
        a_even = stream.next()
        a_odd = stream.next()
        if a_even is None or a_odd is None:
            raise BudgetExceeded("continued fraction terminated before separation")
        used += [a_even, a_odd]
        m = mat_mul(m, ((1, a_even, 0), (0, 1, 0), (0, 0, 1)))
        m = mat_mul(m, ((1, 0, 0), (a_odd, 1, 0), (0, 0, 1)))
        candidate = change_basis(state, m)
        assert all(v.sign() > 0 for v in candidate.coords()), (
            "convergent cone must keep xi inside the positive orthant"
        )
        if state_is_separating(candidate):
            order = _stable_argsort_desc(candidate.coords())
            if order != (0, 1, 2):
                m = mat_mul(m, perm_matrix(order))
            return m, used
    raise BudgetExceeded(f"no separating basis within {max_pairs} quotient pairs")


def _cross_validate(state: CubicState, exact: AlgebraicReal):
    for formula in (sin2_via_y_intercepts, sin2_via_x_intercepts):
        alt = formula(state)
        if alt is not None and not (alt - exact).is_zero:
            raise CrossValidationFailed(f"{formula.__name__} disagrees")


def run_sin2(
    state: CubicState,
    max_steps: int = 10000,
    report_digits: int = 50,
    source_matrix: Mat3 | None = None,
    cross_validate: bool = True,
    check_separating: bool = True,
) -> RunResult:
    """Full three-stage run with periodicity detection and certificate.

    The input state's basis must be the identity (fresh from one of the
    constructors); all stage and step matrices are recorded and their
    running product always equals the state's accumulated basis.
    """
    assert mat_is_identity(state.basis), "run must start from a fresh state"
    records: list[StepRecord] = []

    s1 = stage1_supporting(state.coords())
    state = change_basis(state, s1)
    records.append(StepRecord(0, "stage1", "signed_permutation", (), s1))

    s2, quotients = stage2_separating(state)
    state = change_basis(state, s2)
    records.append(
        StepRecord(0, "stage2", "cf_convergents", tuple(quotients), s2, state_key=state.key())
    )

    seen = SeenMap()
    seen.probe(state.key(), 0)
    current = sin2_alpha(state, report_digits).exact
    if cross_validate:
        _cross_validate(state, current)
    descents = 0
    budget = True
    report = None

    for step in range(1, max_steps + 1):
        res = phi_step(state)
        state = res.state
        descent = (res.sin2 - current).sign() < 0
        descents += descent
        current = res.sin2
        if cross_validate:
            _cross_validate(state, current)
        if check_separating:
            assert state_is_separating(state), "Phi must preserve the separating property"
        records.append(
            StepRecord(
                index=step,
                stage="main",
                kind=res.chosen.kind,
                params=res.chosen.params + (res.sort_perm,),
                matrix=res.matrix,
                sin2_approx=current.to_decimal(report_digits),
                state_key=state.key(),
                descent=descent,
                tied=res.tied,
            )
        )
        hit = seen.probe(state.key(), step)
        if hit is not None:
            preperiod, period = hit
            report = certify(
                source_matrix,
                records,
                preperiod,
                period,
                state=state,
            )
            budget = False
            break

    return RunResult(
        records=records,
        report=report,
        budget_exceeded=budget,
        descent_count=descents,
        final_state=state,
    )


# ---------------------------------------------------------------------------
# classical Jacobi-Perron algorithm, certified numeric mode


_NUM_RE = re.compile(r"^(sqrt|cbrt)\((\d+)\)$")


def _nth_root_enclosure(n: int, k: int, bits: int):
    """Rational (lo, hi) around k^(1/n) with width below 2^-bits."""
    if k == 0:
        return iv.ZERO
    lo, hi = Q(0), Q(max(1, k))
    target = Q(1, 2**bits)
    while hi - lo >= target:
        mid = (lo + hi) / 2
        if mid**n <= k:
            lo = mid
        else:
            hi = mid
    return (lo, hi)


def parse_numeric(text: str):
    """A numeric literal: integer, decimal, fraction, sqrt(n) or cbrt(n).
    Returns a generator bits -> exact rational enclosure."""
    from .rationals import parse_rational

    text = text.strip()
    m = _NUM_RE.match(text)
    if m:
        n = 2 if m.group(1) == "sqrt" else 3
        k = int(m.group(2))
        return lambda bits: _nth_root_enclosure(n, k, bits)
    q = parse_rational(text)  # raises ValueError on junk
    return lambda bits: (q, q)


class _NeedMorePrecision(Exception):
    pass


def _certified_floor(num, den):
    """floor(num/den) from enclosures, or escalate."""
    if iv.iv_contains_zero(den):
        raise _NeedMorePrecision
    f = iv.iv_floor(iv.iv_div(num, den))
    if f is None:
        raise _NeedMorePrecision
    return f


@dataclass
class JPResult:
    pairs: list[tuple[int, int]]
    terminated: bool
    repeat: tuple[int, int] | None  # (first index, second index) of a repeated key
    bits_used: int
    final: tuple | None = None  # enclosures of (x, y, z) after the last step


def _round_key(value, bits: int):
    scaled = value * 2**bits
    return scaled.numerator // scaled.denominator


def run_classical_jp(
    values,
    steps: int,
    precision_bits: int = 256,
    max_bits: int = 1 << 20,
) -> JPResult:
    """Iterate (x, y, z) -> (y, z - floor(z/y) y, x - floor(x/y) y),
    emitting (floor(z/y), floor(x/y)) per step.

    `values` are enclosure generators (see parse_numeric) or exact
    rationals.  Every floor is certified: if an enclosure straddles an
    integer the whole run restarts from re-generated inputs at doubled
    precision; PrecisionExhausted is raised at the cap, never a guess.
    The repetition note compares directions (y/x, z/x) rounded at
    `precision_bits` binary digits; it is a heuristic, not a certificate.
    """
    gens = [v if callable(v) else (lambda q: (lambda bits: (Q(q), Q(q))))(v) for v in values]
    bits = precision_bits
    while True:
        try:
            return _jp_attempt(gens, steps, bits, precision_bits)
        except _NeedMorePrecision:
            bits *= 2
            if bits > max_bits:
                raise PrecisionExhausted(
                    f"floor undecidable below {max_bits} bits"
                ) from None


def _jp_attempt(gens, steps, bits, key_bits) -> JPResult:
    x, y, z = (g(bits) for g in gens)
    pairs = []
    seen = {}
    repeat = None
    for i in range(steps):
        if y == iv.ZERO:
            return JPResult(pairs, True, repeat, bits, final=(x, y, z))
        if iv.iv_contains_zero(y):
            raise _NeedMorePrecision
        if repeat is None and not iv.iv_contains_zero(x):
            key = (_round_key(iv.iv_mid(iv.iv_div(y, x)), key_bits),
                   _round_key(iv.iv_mid(iv.iv_div(z, x)), key_bits))
            if key in seen:
                repeat = (seen[key], i)
            else:
                seen[key] = i
        a = _certified_floor(z, y)
        b = _certified_floor(x, y)
        pairs.append((a, b))
        x, y, z = y, iv.iv_sub(z, iv.iv_scale(y, a)), iv.iv_sub(x, iv.iv_scale(y, b))
    return JPResult(pairs, False, repeat, bits, final=(x, y, z))
