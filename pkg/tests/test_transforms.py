import random

import numpy as np
import pytest

from sin2jp import (
    Q,
    V,
    W,
    apply_to_coords,
    enumerate_admissible,
    make_field,
    mat_inverse_unimodular,
    mat_vec,
    phi_step,
    sin2_alpha,
    sin2_via_x_intercepts,
    sin2_via_y_intercepts,
    state_from_matrix,
)
from sin2jp.transforms import NotSorted, _strict_floor

A = ((0, 0, 1), (1, -15, -9), (-9, 136, 66))


def _rats(field, values, root=2):
    return tuple(field.rational(Q(v), root) for v in values)


@pytest.fixture(scope="module")
def field():
    return make_field((1, 0, -3, 1))


def test_apply_v_example():
    assert apply_to_coords(V(1, 2, 3), (Q(20), Q(7), Q(2))) == (Q(9), Q(3), Q(2))


def test_apply_w_example():
    assert apply_to_coords(W(), (Q(5), Q(3), Q(5, 2))) == (Q(2), Q(3), Q(1, 2))


def test_apply_matches_matrix_inverse(field):
    coords = _rats(field, ("13/4", "9/5", 1))
    for t in (V(2, 1, 0), V(0, 1, 1), W()):
        direct = apply_to_coords(t, coords)
        via = mat_vec(mat_inverse_unimodular(t.matrix()), coords)
        assert all((a - b).is_zero for a, b in zip(direct, via))


def test_strict_floor(field):
    assert _strict_floor(field.rational(Q(3), 2)) == 2
    assert _strict_floor(field.rational(Q(7, 2), 2)) == 3
    th = field.theta(2)  # about 1.532
    assert _strict_floor(th) == 1


def test_enumerate_admissible_example(field):
    ts = enumerate_admissible(_rats(field, ("3/2", "5/4", 1)))
    want = [
        V(0, 0, 1),
        V(0, 1, 0), V(0, 1, 1), V(0, 1, 2), V(0, 1, 3), V(0, 1, 4), V(0, 1, 5),
        V(1, 0, 0),
        V(1, 1, 0), V(1, 1, 1),
        W(),
    ]
    assert ts == want


def test_enumerate_requires_sorted(field):
    with pytest.raises(NotSorted):
        enumerate_admissible(_rats(field, (1, 2, 1)))


def test_admissible_images_strictly_positive(field):
    coords = _rats(field, ("11/3", "7/3", 1))
    for t in enumerate_admissible(coords):
        img = apply_to_coords(t, coords)
        assert all(v.sign() > 0 for v in img)


def test_intercept_formula_against_float_oracle():
    """The closed-form expression in the intercepts agrees with the direct
    plane-angle computation on random real data."""
    rng = random.Random(11)
    for _ in range(200):
        xi = np.array([rng.uniform(0.5, 4), rng.uniform(0.5, 4), 1.0])
        n1v = np.array([rng.uniform(-4, 4), rng.uniform(-4, 4), 1.0])
        n2v = np.array([rng.uniform(-4, 4), rng.uniform(-4, 4), 1.0])
        x, y = xi[0], xi[1]
        if abs(n1v[0] - x) < 1e-3 or abs(n2v[0] - x) < 1e-3:
            continue
        n1 = np.cross(xi, n1v)
        n2 = np.cross(xi, n2v)
        c = np.cross(n1, n2)
        direct = c.dot(c) / (n1.dot(n1) * n2.dot(n2))
        p1 = y + x * (n1v[1] - y) / (x - n1v[0])
        p2 = y + x * (n2v[1] - y) / (x - n2v[0])
        num = (p1 - p2) ** 2 * (x * x + y * y + 1) * x * x
        den = (x * x + x * x * p1 * p1 + (y - p1) ** 2) * (
            x * x + x * x * p2 * p2 + (y - p2) ** 2
        )
        assert abs(direct - num / den) < 1e-9


def test_sin2_cross_validation_exact():
    st = state_from_matrix(A)
    exact = sin2_alpha(st).exact
    for alt in (sin2_via_y_intercepts(st), sin2_via_x_intercepts(st)):
        assert alt is not None
        assert (alt - exact).is_zero


def test_sin2_in_unit_interval():
    st = state_from_matrix(A)
    v = sin2_alpha(st).exact
    assert v.sign() > 0
    assert (st.field.one(st.xi_root) - v).sign() >= 0


def test_sin2_decimal_rendering():
    st = state_from_matrix(A)
    text = sin2_alpha(st, digits=12).approx
    assert len(text.split(".")[1]) == 12


def test_phi_step_on_example():
    st = state_from_matrix(A)
    from sin2jp import change_basis

    st = change_basis(st, ((0, 0, 1), (0, -1, 0), (1, 0, 0)))
    st = change_basis(st, ((7, 6, 0), (1, 1, 0), (0, 0, 1)))
    res = phi_step(st)
    assert res.chosen == V(3, 1, 1)
    assert res.matrix == ((1, 3, 1), (0, 1, 1), (0, 1, 0))
    res2 = phi_step(res.state)
    assert res2.matrix == ((1, 1, 1), (1, 0, 1), (1, 0, 0))


def test_exact_tie_on_symmetric_cyclic_state():
    """In the cyclic field of t^3 - 3t + 1 the state (theta, theta^2, 1)
    reaches an exact two-way tie at sin^2 = 1 after the preliminary stages
    (V[0,1;0] and V[2,2;1]).  Strict mode detects it exactly; the default
    breaks it toward the first candidate in enumeration order."""
    from sin2jp import change_basis, state_from_polynomials
    from sin2jp.engine import stage1_supporting, stage2_separating
    from sin2jp.transforms import ExactTie

    st = state_from_polynomials((1, 0, -3, 1), (0, 1, 0), (1, 0, 0))
    st = change_basis(st, stage1_supporting(st.coords()))
    m, _ = stage2_separating(st)
    st = change_basis(st, m)
    st = phi_step(st).state
    with pytest.raises(ExactTie):
        phi_step(st, strict_ties=True)
    res = phi_step(st)
    assert res.tied
    assert res.chosen == V(0, 1, 0)


def test_phi_step_output_sorted():
    st = state_from_matrix(A)
    from sin2jp import change_basis

    st = change_basis(st, ((0, 0, 1), (0, -1, 0), (1, 0, 0)))
    st = change_basis(st, ((7, 6, 0), (1, 1, 0), (0, 0, 1)))
    for _ in range(4):
        res = phi_step(st)
        st = res.state
        assert st.is_sorted()
