"""Acceptance gate: eight criteria, one pass/fail line each.

Run with `pytest tests/test_acceptance.py -v -s` to see the lines; each
criterion is a separate test so the verbose listing doubles as the
pass/fail report.
"""

import random
import time
from fractions import Fraction

import pytest

from sin2jp import (
    Q,
    cf_partial_quotients,
    change_basis,
    make_field,
    mat_mul,
    parse_numeric,
    phi_step,
    run_classical_jp,
    run_sin2,
    sin2_alpha,
    sin2_via_x_intercepts,
    sin2_via_y_intercepts,
    state_from_matrix,
    state_is_separating,
)
from sin2jp.cli import run_survey
from sin2jp.matrices import mat_inverse_unimodular, parse_matrix
from sin2jp.periodicity import _is_irreducible_charpoly, _is_scalar_multiple_of_identity

from test_field import oracle_roots, oracle_value

A = ((0, 0, 1), (1, -15, -9), (-9, 136, 66))

PREPERIOD_MATRICES = [
    ((1, 3, 1), (0, 1, 1), (0, 1, 0)),
    ((1, 1, 1), (1, 0, 1), (1, 0, 0)),
    ((1, 1, 0), (1, 0, 1), (1, 0, 0)),
]
PERIOD_MATRICES = [
    ((1, 1, 0), (0, 1, 1), (0, 0, 1)),
    ((1, 0, 1), (1, 0, 0), (0, 1, 0)),
    ((1, 0, 1), (1, 0, 0), (0, 1, 0)),
    ((1, 1, 6), (1, 0, 5), (0, 0, 1)),
    ((1, 16, 4), (0, 4, 1), (0, 1, 0)),
    ((1, 0, 1), (1, 0, 0), (0, 1, 0)),
    ((0, 1, 1), (1, 0, 0), (0, 0, 1)),
    ((1, 1, 1), (1, 1, 0), (1, 0, 0)),
]

SURVEY_COUNT = 20
SURVEY_SEED = 0
SURVEY_BUDGET = 10000


@pytest.fixture(scope="module")
def survey_rows():
    return run_survey(SURVEY_COUNT, SURVEY_SEED, SURVEY_BUDGET, jobs=4)


def test_criterion_1_worked_example_reproduction(example_run):
    t0 = time.monotonic()
    res = run_sin2(state_from_matrix(A), source_matrix=A)
    elapsed = time.monotonic() - t0
    stage1 = next(r for r in res.records if r.stage == "stage1")
    assert stage1.matrix == ((0, 0, 1), (0, -1, 0), (1, 0, 0))  # (a)
    st = change_basis(state_from_matrix(A), stage1.matrix)
    assert cf_partial_quotients(st.x, st.y, 4) == [6, 1, 3, 6]  # (b)
    stage2 = next(r for r in res.records if r.stage == "stage2")
    assert stage2.params == (6, 1)  # (c)
    main = [r.matrix for r in res.records if r.stage == "main"]
    assert main[:3] == PREPERIOD_MATRICES  # (d) pre-period
    assert main[3:11] == PERIOD_MATRICES  # (d) period
    rep = res.report
    assert (rep.preperiod_len, rep.period_len) == (3, 8)  # (e)
    assert elapsed < 10.0
    print(f"\nPASS criterion 1: worked example reproduced exactly in {elapsed:.2f}s")


def test_criterion_2_eigenvector(example_state):
    x = Fraction(example_state.x.to_decimal(30))
    y = Fraction(example_state.y.to_decimal(30))
    # published approximation; its y has a typo in the 8th decimal, so the
    # y comparison is held at 1e-8 while x meets the stated 9 digits
    assert abs(x - Fraction("0.02189094967")) < Fraction(1, 10**9)
    assert abs(y - Fraction("-0.1479558970")) < Fraction(1, 10**8)
    # and both coordinates against an independent bisection oracle, tight
    olo, ohi = oracle_value((1, -51, 243, -1), 2, example_state.x.coeffs)
    assert olo - Fraction(1, 10**20) <= x <= ohi + Fraction(1, 10**20)
    olo, ohi = oracle_value((1, -51, 243, -1), 2, example_state.y.coeffs)
    assert olo - Fraction(1, 10**20) <= y <= ohi + Fraction(1, 10**20)
    print("\nPASS criterion 2: eigenvector matches to stated precision "
          "(y pinned at 1e-8 against the published value, 1e-20 against the oracle)")


def test_criterion_3_certificate_suite(example_run, survey_rows):
    checked = 0
    items = [(A, example_run.report.m1, example_run.report.m2)]
    for row in survey_rows:
        if row["status"] == "period":
            items.append((parse_matrix(row["matrix"]), row["m1"], row["m2"]))
    for a, m1, m2 in items:
        m = mat_mul(mat_mul(m1, m2), mat_inverse_unimodular(m1))
        assert mat_mul(m, a) == mat_mul(a, m)
        assert _is_irreducible_charpoly(m)
        assert not _is_scalar_multiple_of_identity(m)
        checked += 1
    assert checked >= 21
    print(f"\nPASS criterion 3: certificate checks exact on {checked} runs "
          "(worked example + survey), 100% pass")


def test_criterion_4_periodicity_at_desk_scale(survey_rows):
    assert len(survey_rows) >= 20
    certified = [r for r in survey_rows if r["status"] == "period"]
    misses = [r for r in survey_rows if r["status"] != "period"]
    for r in misses:
        print(f"\nbudget/failure trace: instance {r['index']} {r['matrix']} -> {r['status']}")
    rate = len(certified) / len(survey_rows)
    assert rate >= 0.95
    print(f"\nPASS criterion 4: {len(certified)}/{len(survey_rows)} random instances "
          f"certified within {SURVEY_BUDGET} steps ({rate:.0%})")


def test_criterion_5_sin2_cross_validation():
    st = state_from_matrix(A)
    st = change_basis(st, ((0, 0, 1), (0, -1, 0), (1, 0, 0)))
    st = change_basis(st, ((7, 6, 0), (1, 1, 0), (0, 0, 1)))
    steps = 0
    for _ in range(12):
        exact = sin2_alpha(st).exact  # raises NotSymmetric on nonzero u1 (a)
        for alt in (sin2_via_y_intercepts(st), sin2_via_x_intercepts(st)):
            if alt is not None:
                assert (alt - exact).is_zero  # (b) exact field subtraction
        st = phi_step(st).state
        steps += 1
    print(f"\nPASS criterion 5: exact sin^2 agreed with both intercept formulas "
          f"at all {steps} replayed steps (zero tolerance)")


def test_criterion_6_separating_invariance():
    st = state_from_matrix(A)
    st = change_basis(st, ((0, 0, 1), (0, -1, 0), (1, 0, 0)))
    st = change_basis(st, ((7, 6, 0), (1, 1, 0), (0, 0, 1)))
    checked = 0
    for _ in range(12):
        st = phi_step(st).state
        assert state_is_separating(st)
        checked += 1
    # every full run also asserts this internally (run_sin2 check_separating)
    print(f"\nPASS criterion 6: is_separating held after all {checked} replayed steps")


def test_criterion_7_classical_jp():
    res = run_classical_jp([Q(10), Q(4), Q(3)], 1)
    assert res.pairs == [(0, 2)]
    assert [lo for lo, _ in res.final] == [Q(4), Q(3), Q(2)]
    vec = [parse_numeric("1"), parse_numeric("cbrt(4)"), parse_numeric("cbrt(16)")]
    res = run_classical_jp(vec, 1000, precision_bits=256)
    assert len(res.pairs) == 1000
    assert res.repeat is None
    print("\nPASS criterion 7: (10,4,3) step exact; (1,cbrt4,cbrt16) showed no "
          "state repetition in 1000 steps (consistency check, not a proof)")


def test_criterion_8_field_arithmetic_property_suite():
    fields = [make_field(c) for c in
              [(1, 0, -3, 1), (1, -51, 243, -1), (1, 0, -4, 1), (1, -1, -2, 1), (2, -2, -4, 1)]]
    rng = random.Random(12345)
    trials = 0
    for _ in range(1000):
        field = rng.choice(fields)
        root = rng.randrange(3)
        coeffs = tuple(Q(rng.randint(-99, 99), rng.randint(1, 20)) for _ in range(3))
        a = field.element(coeffs, root)
        olo, ohi = oracle_value(field.coeffs, root, coeffs)

        # sign trichotomy against the oracle
        s = a.sign()
        if a.is_zero:
            assert s == 0
        elif olo > 0:
            assert s == 1
        elif ohi < 0:
            assert s == -1
        else:
            assert s in (-1, 1)  # oracle undecided only within its padding

        # round trip
        if not a.is_zero:
            assert (a * a.inverse() - field.one(root)).is_zero

        # floor bounds, validated against the oracle enclosure
        f = a.floor()
        assert f <= ohi
        assert olo < f + 1

        trials += 1

    # root-interval certification: a sign change over every returned interval
    for field in fields:
        c3, c2, c1, c0 = field.coeffs
        for i in range(3):
            lo, hi = field.root_interval(i, Q(1, 2**64))
            plo = ((c3 * lo + c2) * lo + c1) * lo + c0
            phi_ = ((c3 * hi + c2) * hi + c1) * hi + c0
            assert plo * phi_ < 0

    assert trials == 1000
    print(f"\nPASS criterion 8: {trials} randomized field-arithmetic round-trips "
          "with zero failures; floors and signs validated against the bisection oracle")
