import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from emqubit.errors import OutOfCavity
from emqubit.field import (ResonatorModel, charts_equivalent, extract_chart,
                           find_equilibria, resonator_field)
from oracles import central_jacobian

A, B = 2.0, 1.0


def fundamental(c=1.0):
    return ResonatorModel(A, B, {(1, 1): c}, f=0.8, f0=1.0)


def test_gradient_vanishes_at_the_centre():
    assert np.allclose(resonator_field(fundamental(), (A / 2, B / 2)), 0, atol=1e-15)


def test_midline_field_is_horizontal():
    e = resonator_field(fundamental(), (A / 4, B / 2))
    assert abs(e[1]) < 1e-15 and e[0] != 0
    # d/dx sin(pi x / a) sin(pi y / b) at (a/4, b/2)
    assert e[0] == pytest.approx(math.pi / A * math.cos(math.pi / 4))


def test_points_outside_the_cavity_rejected():
    with pytest.raises(OutOfCavity):
        resonator_field(fundamental(), (A + 0.1, 0.5))


def test_invalid_modes_rejected():
    with pytest.raises(ValueError):
        ResonatorModel(A, B, {(0, 1): 1.0})
    with pytest.raises(ValueError):
        ResonatorModel(-1, B, {(1, 1): 1.0})


def test_truncation_drops_high_orders():
    m = ResonatorModel(A, B, {(1, 1): 1.0, (11, 1): 5.0})
    assert list(m.mode_coefficients) == [(1, 1)]


def test_fundamental_chart_is_a_single_node():
    chart = extract_chart(fundamental())
    assert [e.label for e in chart.equilibria] == ["node:sink"]
    assert chart.separatrices == ()


def test_mode_mixture_changes_the_chart():
    pure = extract_chart(fundamental())
    mixed = extract_chart(ResonatorModel(A, B, {(1, 1): 1.0, (2, 1): 1.0}))
    assert not charts_equivalent(pure, mixed)
    kinds = sorted(e.label for e in mixed.equilibria)
    assert kinds == ["node:sink", "node:source"]
    # 1-D oracle along y = b/2: d/dx [sin(pi x/a) + sin(2 pi x/a)] = 0
    xs = sorted(e.position[0] for e in mixed.equilibria)
    for x in xs:
        assert math.cos(math.pi * x / A) + 2 * math.cos(2 * math.pi * x / A) == pytest.approx(0, abs=1e-9)


@given(st.floats(0.05, A - 0.05), st.floats(0.05, B - 0.05))
def test_hessian_matches_differences(x, y):
    m = ResonatorModel(A, B, {(1, 1): 1.0, (2, 1): -0.4 + 2j, (3, 2): 0.3})
    fd = central_jacobian(m.field, x, y, h=1e-6)
    assert np.allclose(m.jacobian(x, y), fd, atol=1e-6)


def test_only_real_parts_enter_the_field():
    a = ResonatorModel(A, B, {(1, 1): 1.0 + 5j})
    b = ResonatorModel(A, B, {(1, 1): 1.0})
    assert np.array_equal(resonator_field(a, (0.3, 0.4)), resonator_field(b, (0.3, 0.4)))


def test_zero_cavity_has_no_isolated_nulls():
    assert find_equilibria(ResonatorModel(A, B, {(1, 1): 1j})) == []


def test_two_lobe_mode_has_one_sink_and_one_source():
    # lobes of opposite sign; the saddles of sin(2 pi x/a) sin(pi y/b) lie on the walls
    eqs = find_equilibria(ResonatorModel(A, B, {(2, 1): 1.0}))
    assert sorted(e.label for e in eqs) == ["node:sink", "node:source"]
    assert np.allclose(sorted(e.position for e in eqs), [(A / 4, B / 2), (3 * A / 4, B / 2)], atol=1e-9)
