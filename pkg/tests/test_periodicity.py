import pytest

from sin2jp import CertificateFailed, SeenMap, certify, mat_mul, run_checks, run_sin2, state_from_matrix
from sin2jp.matrices import mat_inverse_unimodular
from sin2jp.periodicity import _is_irreducible_charpoly, _is_scalar_multiple_of_identity

A = ((0, 0, 1), (1, -15, -9), (-9, 136, 66))


def test_seen_map_first_repeat():
    seen = SeenMap()
    assert seen.probe("k1", 0) is None
    assert seen.probe("k2", 1) is None
    assert seen.probe("k3", 2) is None
    assert seen.probe("k2", 3) == (1, 2)
    assert len(seen) == 3


def test_irreducibility_checks():
    assert not _is_irreducible_charpoly(((1, 0, 0), (0, 1, 0), (0, 0, 1)))
    assert not _is_irreducible_charpoly(((0, 1, 0), (0, 0, 1), (1, 0, 0)))
    assert _is_irreducible_charpoly(A)
    assert _is_scalar_multiple_of_identity(((-2, 0, 0), (0, -2, 0), (0, 0, -2)))
    assert not _is_scalar_multiple_of_identity(A)


def test_certificate_structure(example_run):
    rep = example_run.report
    m = mat_mul(mat_mul(rep.m1, rep.m2), mat_inverse_unimodular(rep.m1))
    assert m == rep.certificate
    assert rep.certificate == (
        (-1, 18, 8),
        (8, -121, -54),
        (-54, 818, 365),
    )
    assert all(v for v in rep.checks.values())


def test_certificate_commutes(example_run):
    m = example_run.report.certificate
    assert mat_mul(m, A) == mat_mul(A, m)


def test_tampered_matrix_fails_certificate(example_run):
    """Mutation test: corrupting one recorded step matrix must break at
    least one certificate check."""
    import copy

    records = copy.deepcopy(example_run.records)
    main = [r for r in records if r.stage == "main"]
    # swap in a different unimodular matrix for a period step
    main[5].matrix = ((1, 1, 0), (0, 1, 0), (0, 0, 1))
    rep = example_run.report
    with pytest.raises(CertificateFailed) as exc:
        certify(A, records, rep.preperiod_len, rep.period_len, state=example_run.final_state)
    assert exc.value.failures
    assert exc.value.report is not None


def test_tampered_source_matrix_fails_commutation(example_run):
    rep = example_run.report
    wrong_a = ((0, 0, 1), (1, -15, -9), (-9, 136, 67))
    checks = run_checks(wrong_a, rep.certificate)
    assert checks["commutes_with_A"] is False


def test_checks_without_source_matrix(example_run):
    checks = run_checks(None, example_run.report.certificate)
    assert checks["commutes_with_A"] is None
    assert checks["charpoly_irreducible"] is True


def test_poly_input_certificate_uses_eigendirection():
    # polynomial input has no source matrix; the certificate must still be
    # accepted through the eigendirection and recurrence checks
    from sin2jp import state_from_polynomials

    st = state_from_matrix(A)
    q1 = tuple(reversed(st.x.coeffs))
    q2 = tuple(reversed(st.y.coeffs))
    st2 = state_from_polynomials(st.field.coeffs, q1, q2)
    res = run_sin2(st2)
    rep = res.report
    assert rep is not None
    assert rep.checks["commutes_with_A"] is None
    assert rep.checks["fixes_xi_direction"] is True
    assert rep.checks["state_key_recurrence"] is True
    assert rep.accepted
