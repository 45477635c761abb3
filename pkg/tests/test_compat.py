import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from murqubit.compat import compat_functional, ellipsoid_for, is_jointly_measurable
from murqubit.errors import OutOfBall
from murqubit.yuoh import optimal_vectors, targets_for

from conftest import ball_vectors, unit_vectors


def test_trivial_observables():
    assert compat_functional([0, 0, 0], [0, 0, 0]) == 0.0


def test_identical_sharp_observables_on_boundary():
    a = [0, 1, 0]
    assert compat_functional(a, a) == 2.0


def test_scaled_target_pair_on_boundary():
    b = np.array([0.0, np.sqrt(3) / 2, 0.5])
    cos_chi = np.sqrt(3) / 2
    # (1 + cos chi) + (1 - cos chi)
    assert compat_functional(cos_chi * b, b) == pytest.approx(2.0, abs=1e-15)


def test_orthogonal_sharp_pair_incompatible():
    assert compat_functional([1, 0, 0], [0, 1, 0]) == pytest.approx(2 * np.sqrt(2))
    assert not is_jointly_measurable([1, 0, 0], [0, 1, 0])


def test_trivial_partner_compatible():
    assert is_jointly_measurable([0, 0, 1], [0, 0, 0])


@pytest.mark.parametrize("sin_chi", [1.0, np.sqrt(2) / 2, 0.5, 1 / 3])
def test_optimal_pairs_saturate(sin_chi):
    a, b = targets_for(sin_chi)
    for phi in np.linspace(0, np.pi / 2, 41):
        tp = optimal_vectors(a, b, phi)
        assert is_jointly_measurable(tp.c, tp.d)
        assert compat_functional(tp.c, tp.d) == pytest.approx(2.0, abs=1e-9)


def test_out_of_ball():
    with pytest.raises(OutOfBall):
        compat_functional([0, 0, 1.1], [0, 0, 0])


class TestEllipsoid:
    def test_zero_focus_is_unit_sphere(self):
        e = ellipsoid_for([0, 0, 0])
        assert e.minor_semi_axis == 1.0
        pts = e.surface_point(np.linspace(0, np.pi, 7)[:, None], np.linspace(0, 2 * np.pi, 9)[None, :])
        assert np.allclose(np.linalg.norm(pts, axis=-1), 1.0)

    def test_unit_focus_degenerates_to_segment(self):
        e = ellipsoid_for([1, 0, 0])
        assert e.minor_semi_axis == 0.0
        pts = e.surface_point(np.linspace(0, np.pi, 11), 0.3)
        assert np.allclose(pts[:, 1:], 0.0)

    def test_surface_saturates_functional(self, rng):
        d = np.array([0.2, -0.4, 0.5])
        e = ellipsoid_for(d)
        theta = np.arccos(rng.uniform(-1, 1, 50))
        psi = rng.uniform(0, 2 * np.pi, 50)
        for x in e.surface_point(theta, psi):
            assert abs(compat_functional(x, d) - 2.0) < 1e-9

    def test_major_axis_along_focus(self):
        d = np.array([0.0, 0.6, 0.0])
        top = ellipsoid_for(d).surface_point(0.0, 0.0)
        assert np.allclose(top, [0, 1, 0])


@given(ball_vectors(), ball_vectors())
def test_symmetries(c, d):
    f = compat_functional(c, d)
    assert compat_functional(d, c) == pytest.approx(f, abs=1e-14)
    assert compat_functional(-c, d) == pytest.approx(f, abs=1e-14)


@given(ball_vectors(), ball_vectors())
def test_triangle_lower_bound(c, d):
    assert compat_functional(c, d) >= 2 * max(np.linalg.norm(c), np.linalg.norm(d)) - 1e-12


@given(unit_vectors(), st.floats(0.0, 0.95), st.floats(0.0, np.pi), st.floats(0.0, 2 * np.pi), st.floats(0.05, 0.95))
def test_inside_and_outside(direction, length, theta, psi, scale):
    # a unit-length focus collapses the region to a segment, so stay strictly inside the ball
    d = length * direction
    e = ellipsoid_for(d)
    surface = e.surface_point(theta, psi)
    assert compat_functional(scale * surface, d) < 2.0
    outside = surface / scale
    if np.linalg.norm(outside) <= 1.0 and np.linalg.norm(surface) > 1e-6:
        assert compat_functional(outside, d) > 2.0
