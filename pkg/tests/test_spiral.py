import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import expm1_abs, series_exp
from u1spiral.exceptions import DomainError, RangeError
from u1spiral.spiral import (TWO_PI, CirclePoint, SpiralDeformation, SpiralPoint,
                             circle_to_spiral, deform, deformed_defect,
                             is_infinitesimal_member, spiral_to_circle)
from u1spiral.u1core import u1_element, unitarity_defect


@pytest.mark.parametrize("eps", [0.0, -0.1, 1.5, math.nan])
def test_deformation_bounds(eps):
    with pytest.raises(DomainError):
        SpiralDeformation(eps)


def test_zero_pitch_or_zero_theta_is_identity():
    g = u1_element(0.7)
    assert deform(g, SpiralDeformation._unchecked(0.0)) == g
    assert deform(u1_element(0.0), SpiralDeformation(0.3)) == u1_element(0.0)


def test_deform_modulus():
    g = deform(u1_element(1.0), SpiralDeformation(0.1))
    assert g.theta == 1.0
    assert abs(g.value) == pytest.approx(float(series_exp(0.1)), rel=1e-15)


def test_deform_half_turn_defect():
    g = deform(u1_element(math.pi), SpiralDeformation(0.1))
    assert unitarity_defect(g) == pytest.approx(float(expm1_abs(0.2 * math.pi)), rel=1e-14)
    assert unitarity_defect(g) == pytest.approx(0.874456, abs=1e-6)


def test_deform_overflow_guard():
    with pytest.raises(RangeError):
        deform(u1_element(800.0), SpiralDeformation(1.0))
    # a large negative exponent only shrinks the element
    assert unitarity_defect(deform(u1_element(-800.0), SpiralDeformation(1.0))) == 1.0


@pytest.mark.parametrize("theta, expected", [
    (0.0, 0.0),
    (1.0, 0.22140275816016985),
    (-1.0, 0.18126924692201815),
])
def test_deformed_defect_values(theta, expected):
    measured, analytic = deformed_defect(theta, SpiralDeformation(0.1))
    assert measured == pytest.approx(expected, rel=1e-14, abs=0)
    assert analytic == pytest.approx(expected, rel=1e-14, abs=0)


@given(st.floats(1e-3, 0.5), st.floats(0.1, 10), st.booleans())
def test_expulsion_law(eps, theta, negative):
    theta = -theta if negative else theta
    measured, analytic = deformed_defect(theta, SpiralDeformation(eps))
    assert abs(measured - analytic) <= 1e-12 * (1 + analytic)
    assert measured == pytest.approx(float(expm1_abs(2 * eps * theta)), rel=1e-12)


def test_infinitesimal_member_examples():
    assert is_infinitesimal_member(1e-8, SpiralDeformation(0.01))
    assert is_infinitesimal_member(1.0, SpiralDeformation(0.01))  # 0.0202 <= 0.03
    assert not is_infinitesimal_member(1.0, SpiralDeformation(0.5))  # 1.718 > 1.5
    assert is_infinitesimal_member(0.0, SpiralDeformation(0.5))
    assert deformed_defect(0.0, SpiralDeformation(0.5)) == (0.0, 0.0)
    with pytest.raises(DomainError):
        is_infinitesimal_member(1.0, SpiralDeformation(0.5), c=0)


@given(st.floats(1e-3, 1.0), st.floats(1e-12, 1e-6))
def test_first_order_ratio(eps, theta):
    measured, _ = deformed_defect(theta, SpiralDeformation(eps))
    assert measured / (2 * eps * theta) == pytest.approx(1.0, abs=1e-3)


def test_circle_to_spiral_examples():
    d = SpiralDeformation(0.1)
    assert circle_to_spiral(CirclePoint(0.0, 0, 1.0), d).radius == 1.0
    s = circle_to_spiral(CirclePoint(math.pi, 0, 1.0), d)
    assert s.radius == pytest.approx(float(series_exp(0.1 * math.pi)), rel=1e-15)
    assert s.radius == pytest.approx(1.369, abs=1e-3)
    d = SpiralDeformation(0.37)
    assert circle_to_spiral(CirclePoint(0.0, 1, 1.0), d).radius == pytest.approx(
        math.exp(TWO_PI * 0.37), rel=1e-15)


def test_spiral_to_circle_examples():
    d = SpiralDeformation(0.2)
    p = spiral_to_circle(SpiralPoint(0.0, 2.0), 2.0, d)
    assert (p.angle, p.winding) == (0.0, 0)
    p = spiral_to_circle(SpiralPoint(TWO_PI, 2.0 * math.exp(TWO_PI * 0.2)), 2.0, d)
    assert p.winding in (0, 1)
    assert p.theta_total == pytest.approx(TWO_PI, rel=1e-12)
    with pytest.raises(DomainError):
        spiral_to_circle(SpiralPoint(0.0, 0.0), 1.0, d)
    with pytest.raises(DomainError):
        spiral_to_circle(SpiralPoint(0.0, 1.0), -1.0, d)


@given(st.floats(0, TWO_PI, exclude_max=True), st.integers(-10, 10),
       st.sampled_from([0.5, 1.0, 2.0]), st.floats(0.01, 0.5))
def test_bijectivity(angle, winding, k, eps):
    d = SpiralDeformation(eps)
    p = CirclePoint(angle, winding, k)
    s = circle_to_spiral(p, d)
    back = spiral_to_circle(s, k, d)
    assert back.theta_total == pytest.approx(p.theta_total, rel=1e-9, abs=1e-12)
    assert 0.0 <= back.angle < TWO_PI


def test_radius_strictly_increasing():
    d = SpiralDeformation(0.05)
    ts = np.linspace(-20 * math.pi, 20 * math.pi, 4001)
    radii = [circle_to_spiral(CirclePoint(t % TWO_PI, int(t // TWO_PI)), d).radius
             for t in ts]
    assert np.all(np.diff(radii) > 0)


def test_circle_point_validation():
    with pytest.raises(DomainError):
        CirclePoint(TWO_PI)
    with pytest.raises(DomainError):
        CirclePoint(0.0, 0, 0.0)
