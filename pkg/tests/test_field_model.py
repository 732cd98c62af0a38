import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from emqubit.errors import IncompatibleModels, PointInsideConductor
from emqubit.field import Charge, FieldModel, coupled_pair, eval_field, scaled, superpose_models
from oracles import central_jacobian, field_complex

# E at (0, 0.5) for +1 at (-1, 0) and -1 at (1, 0): (0.8, 0.4) - (-0.8, 0.4)
DIPOLE_MIDLINE_FIELD = (1.6, 0.0)


def test_symmetric_pair_cancels_at_midpoint():
    m = FieldModel([((-1, 0), 1), ((1, 0), 1)])
    assert np.allclose(eval_field(m, (0, 0)), 0, atol=1e-15)


def test_single_charge_is_radial():
    e = eval_field(FieldModel([((0, 0), 1)]), (2, 0))
    assert e[0] > 0 and e[1] == 0
    assert e[0] == pytest.approx(0.5)


def test_dipole_closed_form_value():
    m = FieldModel([((-1, 0), 1), ((1, 0), -1)])
    assert np.allclose(eval_field(m, (0, 0.5)), DIPOLE_MIDLINE_FIELD, rtol=1e-14, atol=1e-15)


def test_ground_plane_images_match_reference():
    charges = [((-0.5, 0.5), 1.0), ((0.5, 0.5), -0.3)]
    m = FieldModel(charges, ground_plane=True)
    for p in [(0.1, 0.2), (-1.3, 1.7), (2.0, 0.05)]:
        assert np.allclose(eval_field(m, p), field_complex(charges, True, *p), rtol=1e-13)


def test_point_inside_conductor_rejected():
    m = FieldModel([((0, 0), 1)], conductor_radius=0.1)
    with pytest.raises(PointInsideConductor):
        eval_field(m, (0.05, 0))


def test_invariants_enforced():
    with pytest.raises(ValueError):
        FieldModel([((0, -0.1), 1)], ground_plane=True)
    with pytest.raises(ValueError):
        FieldModel([((0, 0), 1), ((0.08, 0), 1)], conductor_radius=0.05)
    with pytest.raises(ValueError):
        # the image sits 0.06 below the charge
        FieldModel([((0, 0.03), 1)], ground_plane=True, conductor_radius=0.05)


def test_superpose_even_and_odd_puts_all_charge_on_first_conductor():
    even = coupled_pair(1, 1)
    odd = coupled_pair(1, -1)
    s = superpose_models(even, odd)
    assert sorted(c.strength for c in s.charges) == [0.0, 2.0]
    assert s.charges[0].strength == 2.0
    assert list(s.conductors) == [0]


def test_superpose_identity_and_inverse():
    even = coupled_pair(1, 1)
    empty = FieldModel([], ground_plane=True)
    assert superpose_models(even, empty) == even
    zero = superpose_models(even, scaled(even, -1))
    assert all(c.strength == 0 for c in zero.charges)
    assert np.allclose(eval_field(zero, (0.3, 1.1)), 0, atol=0)


def test_superpose_rejects_mismatched_models():
    with pytest.raises(IncompatibleModels):
        superpose_models(coupled_pair(1, 1, ground=True), coupled_pair(1, 1, ground=False))
    with pytest.raises(IncompatibleModels):
        superpose_models(coupled_pair(1, 1), coupled_pair(1, 1, conductor_radius=0.01))


coords = st.floats(-2, 2, allow_nan=False)
strengths = st.floats(-3, 3, allow_nan=False)


@st.composite
def model_pairs(draw):
    n = draw(st.integers(1, 3))
    pos = []
    while len(pos) < n:
        p = (draw(coords), draw(st.floats(0.3, 2)))
        if all(math.dist(p, q) > 0.3 for q in pos):
            pos.append(p)
    q1 = [draw(strengths) for _ in pos]
    q0 = [draw(strengths) for _ in pos]
    # second model shares some positions and adds its own
    extra = (draw(coords), draw(st.floats(2.5, 3)))
    m1 = FieldModel(list(zip(pos, q1)), ground_plane=True)
    m0 = FieldModel(list(zip(pos, q0)) + [(extra, draw(strengths))], ground_plane=True)
    return m1, m0


@given(model_pairs(), st.floats(-4, 4), st.floats(3.2, 5))
def test_linearity_of_superposition(pair, x, y):
    m1, m0 = pair
    s = superpose_models(m1, m0)
    lhs = eval_field(s, (x, y))
    rhs = eval_field(m1, (x, y)) + eval_field(m0, (x, y))
    scale = max(1.0, float(np.abs(eval_field(m1, (x, y))).max()), float(np.abs(eval_field(m0, (x, y))).max()))
    assert np.all(np.abs(lhs - rhs) <= 1e-12 * scale)


def test_jacobian_matches_central_differences_at_100_points():
    rng = np.random.default_rng(11)
    m = FieldModel([((-0.5, 0.5), 1.0), ((0.5, 0.5), 0.4), ((1.5, 1.2), -0.7)], ground_plane=True)
    checked = 0
    while checked < 100:
        x, y = rng.uniform(-2, 3), rng.uniform(0.05, 2.5)
        if m.conductor_at(x, y) is not None or min(
            math.dist((x, y), (c.x, c.y)) for c in m.charges
        ) < 0.2:
            continue
        fd = central_jacobian(m.field, x, y, h=1e-6)
        an = m.jacobian(x, y)
        assert np.max(np.abs(an - fd)) <= 1e-5 * max(1.0, np.max(np.abs(an)))
        checked += 1


def test_jacobian_is_symmetric_and_traceless():
    m = coupled_pair(1.0, 0.3)
    j = m.jacobian(0.2, 1.3)
    assert j[0, 1] == pytest.approx(j[1, 0], rel=1e-12)
    assert j[0, 0] + j[1, 1] == pytest.approx(0, abs=1e-12)


def test_vectorized_field_matches_scalar():
    m = coupled_pair(1.0, -0.6)
    pts = np.array([[0.1, 0.9], [-1.2, 0.3], [2.0, 2.0]])
    many = m.field_many(pts)
    for p, e in zip(pts, many):
        assert np.allclose(e, m.field(*p), rtol=1e-14)


def test_charge_type_round_trip():
    m = FieldModel([Charge(0.0, 1.0, 2.0)], ground_plane=True)
    assert m.charges[0] == Charge(0.0, 1.0, 2.0)
    assert m.conductors == {0: (0.0, 1.0)}
