"""Periodicity detection and the integer-exact period certificate.

States are exact and canonically keyed, so a hash map over visited keys
detects the first repeat in a single pass.  The certificate is the
integer matrix M = M1 * M2 * M1^{-1} (pre-period and period products):
it must commute with the input matrix A when one exists, must fix the xi
eigendirection exactly, and must have an irreducible characteristic
polynomial (in particular it is not a rational multiple of the identity).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .matrices import (
    Mat3,
    IDENTITY,
    char_poly,
    mat_inverse_unimodular,
    mat_mul,
    mat_vec,
)


class CertificateFailed(Exception):
    def __init__(self, failures, report=None):
        super().__init__(f"failed checks: {', '.join(failures)}")
        self.failures = failures
        self.report = report


class SeenMap:
    """First-repeat detector over canonical state keys.

    Keys are full exact tuples, so the dict's equality test already
    performs the coefficient-by-coefficient comparison required before a
    repeat may be declared (hash collisions cannot alias distinct states).
    """

    def __init__(self):
        self._seen: dict = {}

    def probe(self, key, step: int):
        """Record key at `step`; on a repeat first seen at i < step return
        (preperiod, period) = (i, step - i)."""
        first = self._seen.get(key)
        if first is not None:
            return (first, step - first)
        self._seen[key] = step
        return None

    def __len__(self):
        return len(self._seen)


def _is_irreducible_charpoly(m: Mat3) -> bool:
    """Rational-root test for the (monic, integer) characteristic
    polynomial of m; complete for cubics."""
    _, c2, c1, c0 = char_poly(m)
    if c0 == 0:
        return False
    for p in _int_divisors(c0):
        for r in (p, -p):
            if r**3 + c2 * r**2 + c1 * r + c0 == 0:
                return False
    return True


def _int_divisors(n: int):
    n = abs(n)
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return out


def _is_scalar_multiple_of_identity(m: Mat3) -> bool:
    return (
        m[0][0] == m[1][1] == m[2][2]
        and all(m[i][j] == 0 for i in range(3) for j in range(3) if i != j)
    )


@dataclass
class PeriodReport:
    preperiod_len: int
    period_len: int
    m1: Mat3
    m2: Mat3
    certificate: Mat3
    checks: dict = dc_field(default_factory=dict)
    source_matrix: Mat3 | None = None

    @property
    def accepted(self) -> bool:
        return all(v for v in self.checks.values() if v is not None) and any(
            v is not None for v in self.checks.values()
        )


def _matrix_products(records, preperiod: int, period: int):
    """(M1, M2) from the recorded stage and main-step matrices."""
    m1 = IDENTITY
    for rec in records:
        if rec.stage in ("stage1", "stage2"):
            m1 = mat_mul(m1, rec.matrix)
    main = [rec for rec in records if rec.stage == "main"]
    for rec in main[:preperiod]:
        m1 = mat_mul(m1, rec.matrix)
    m2 = IDENTITY
    for rec in main[preperiod : preperiod + period]:
        m2 = mat_mul(m2, rec.matrix)
    return m1, m2


def run_checks(a: Mat3 | None, m: Mat3, state=None) -> dict:
    checks = {
        "commutes_with_A": None,
        "charpoly_irreducible": _is_irreducible_charpoly(m)
        and not _is_scalar_multiple_of_identity(m),
        "fixes_xi_direction": None,
    }
    if a is not None:
        checks["commutes_with_A"] = mat_mul(m, a) == mat_mul(a, m)
    if state is not None:
        # M fixes the original xi direction: basis-transport M back to the
        # current coordinates and require M' xi to be parallel to xi.
        b = state.basis
        m_local = mat_mul(mat_mul(mat_inverse_unimodular(b), m), b)
        v = state.coords()
        w = mat_vec(m_local, v)
        cross_is_zero = all(
            (w[i] * v[j] - w[j] * v[i]).is_zero
            for i, j in ((0, 1), (0, 2), (1, 2))
        )
        checks["fixes_xi_direction"] = cross_is_zero
    return checks


def certify(
    a: Mat3 | None,
    records,
    preperiod: int,
    period: int,
    state=None,
) -> PeriodReport:
    """Build and verify the period certificate; raises CertificateFailed
    (carrying the partially-filled report) when any check fails."""
    m1, m2 = _matrix_products(records, preperiod, period)
    m = mat_mul(mat_mul(m1, m2), mat_inverse_unimodular(m1))
    checks = run_checks(a, m, state=state)

    main = [rec for rec in records if rec.stage == "main"]
    if preperiod >= 1:
        k_pre = main[preperiod - 1].state_key
    else:
        # pre-period of zero main steps: the cycle closes on the state
        # produced by the preliminary stages (keyed on the stage-2 record)
        k_pre = next(r for r in records if r.stage == "stage2").state_key
    k_post = main[preperiod + period - 1].state_key
    checks["state_key_recurrence"] = k_pre is not None and k_pre == k_post

    report = PeriodReport(
        preperiod_len=preperiod,
        period_len=period,
        m1=m1,
        m2=m2,
        certificate=m,
        checks=checks,
        source_matrix=a,
    )
    failures = [k for k, v in checks.items() if v is False]
    if failures:
        raise CertificateFailed(failures, report)
    return report
