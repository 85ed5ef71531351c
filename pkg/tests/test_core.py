import math

import pytest
from hypothesis import given, strategies as st

from pas_sim.core import Vec2, cos_angle, magnitude

finite = st.floats(min_value=-1e150, max_value=1e150, allow_nan=False, allow_infinity=False)
vecs = st.builds(Vec2, finite, finite)
nonzero_vecs = vecs.filter(lambda v: magnitude(v) > 1e-100)


def test_magnitude_examples():
    assert magnitude(Vec2(3.0, 4.0)) == 5.0
    assert magnitude(Vec2(0.0, 0.0)) == 0.0
    assert magnitude(Vec2(1.0, 0.0)) == 1.0


def test_magnitude_nonnegative_and_zero_only_at_origin():
    assert magnitude(Vec2(-3.0, 4.0)) == 5.0
    assert magnitude(Vec2(1e-200, 0.0)) > 0.0


def test_vec2_rejects_non_finite():
    with pytest.raises(ValueError):
        Vec2(math.nan, 0.0)
    with pytest.raises(ValueError):
        Vec2(0.0, math.inf)


def test_vec2_arithmetic():
    a = Vec2(1.0, 2.0)
    b = Vec2(3.0, -1.0)
    assert a + b == Vec2(4.0, 1.0)
    assert a - b == Vec2(-2.0, 3.0)
    assert a * 2.0 == Vec2(2.0, 4.0)
    assert 2.0 * a == Vec2(2.0, 4.0)
    assert b / 2.0 == Vec2(1.5, -0.5)
    assert a.dot(b) == 1.0


def test_cos_angle_examples():
    assert cos_angle(Vec2(1.0, 0.0), Vec2(2.0, 0.0)) == 1.0
    assert cos_angle(Vec2(1.0, 0.0), Vec2(0.0, 5.0)) == 0.0
    # dot = 4, |a| = 1, |b| = 5, so 4/5 by direct evaluation.
    assert cos_angle(Vec2(1.0, 0.0), Vec2(4.0, 3.0)) == pytest.approx(0.8, abs=1e-12)


def test_cos_angle_rejects_zero_vectors():
    with pytest.raises(ValueError):
        cos_angle(Vec2(0.0, 0.0), Vec2(1.0, 0.0))
    with pytest.raises(ValueError):
        cos_angle(Vec2(1.0, 0.0), Vec2(0.0, 0.0))


def test_cos_angle_stays_in_range_for_antiparallel():
    c = cos_angle(Vec2(1.0, 1.0), Vec2(-2.0, -2.0))
    assert -1.0 <= c <= -1.0 + 1e-12
    # Power-of-two scaling keeps the arithmetic exact.
    assert cos_angle(Vec2(1.0, 1.0), Vec2(-2.0, -2.0) * 2.0) == c


@given(vecs, vecs)
def test_triangle_inequality(a, b):
    try:
        s = a + b
    except ValueError:
        return  # overflow to non-finite; outside the stated domain
    lhs = magnitude(s)
    rhs = magnitude(a) + magnitude(b)
    assert lhs <= rhs * (1.0 + 1e-12) + 1e-300


@given(nonzero_vecs, nonzero_vecs)
def test_cos_angle_symmetric(a, b):
    assert cos_angle(a, b) == cos_angle(b, a)


@given(nonzero_vecs, st.floats(min_value=1e-6, max_value=1e6))
def test_cos_angle_of_positive_scaling_is_one(a, k):
    c = cos_angle(a, a * k)
    assert 1.0 - 1e-12 <= c <= 1.0


def test_cos_angle_power_of_two_scaling_exact():
    a = Vec2(0.3, -0.7)
    assert cos_angle(a, a * 4.0) == 1.0
