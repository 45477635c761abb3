import numpy as np
import pytest
from hypothesis import given, settings
from scipy.optimize import minimize

from murqubit.compat import compat_functional
from murqubit.errors import DegenerateDot, DegenerateTargets, DomainError, NotOnBoundary
from murqubit.yuoh import (
    additive_bound,
    equal_error_value,
    h_closed_form,
    mur_lower_bound,
    optimal_vectors,
    owc_errors,
    phi_for_eps_a,
    phi_from_vectors,
    targets_for,
)

from conftest import FIG5_SIN_CHI, interior_phis, phis, sin_chis, target_pairs

# reference values evaluated at 50 digits
EQUAL_ERROR_HALF = 0.158918622597891
FAMILY_BOUND_ONE = 0.414213562373095
FAMILY_BOUND_HALF = 0.224744871391589
ADDITIVE_HALF = 0.317837245195782
ADDITIVE_ONE = 0.585786437626905
SYMMETRIC_ONE = 0.292893218813452

GRID = np.linspace(0.0, np.pi / 2, 200)


class TestOwcErrors:
    def test_first_endpoint(self):
        assert owc_errors(0.5, 0.0) == (0.5, 0.0)

    def test_equal_error_point(self):
        ea, eb = owc_errors(0.5, np.pi / 4)
        assert ea == pytest.approx(EQUAL_ERROR_HALF, abs=1e-14)
        assert eb == pytest.approx(EQUAL_ERROR_HALF, abs=1e-14)
        assert equal_error_value(0.5) == pytest.approx(EQUAL_ERROR_HALF, abs=1e-15)

    @pytest.mark.parametrize("phi", [0.0, 0.3, np.pi / 4, np.pi / 2])
    def test_commuting_targets(self, phi):
        assert owc_errors(0.0, phi) == pytest.approx((0.0, 0.0), abs=1e-15)

    def test_second_endpoint_exact(self):
        assert owc_errors(0.7, np.pi / 2) == (0.0, 0.7)

    def test_vectorized(self):
        ea, eb = owc_errors(0.5, GRID)
        assert ea.shape == eb.shape == GRID.shape

    @pytest.mark.parametrize("bad", [-0.1, 1.1, np.nan])
    def test_sin_chi_domain(self, bad):
        with pytest.raises(DomainError):
            owc_errors(bad, 0.1)

    @pytest.mark.parametrize("bad", [-1e-3, np.pi / 2 + 1e-3])
    def test_phi_domain(self, bad):
        with pytest.raises(DomainError):
            owc_errors(0.5, bad)


class TestBounds:
    def test_family_values(self):
        assert mur_lower_bound(1.0, np.pi / 4) == pytest.approx(FAMILY_BOUND_ONE, abs=1e-14)
        assert mur_lower_bound(0.5, np.pi / 4) == pytest.approx(FAMILY_BOUND_HALF, abs=1e-14)
        assert mur_lower_bound(0.5, np.pi / 4) == pytest.approx(np.sqrt(2) * EQUAL_ERROR_HALF, abs=1e-14)

    @pytest.mark.parametrize("s", [0.0, 0.3, 1.0])
    def test_family_at_zero(self, s):
        assert mur_lower_bound(s, 0.0) == 0.0

    def test_additive_values(self):
        assert additive_bound(1.0) == pytest.approx(ADDITIVE_ONE, abs=1e-14)
        assert additive_bound(1.0) == pytest.approx(2 - np.sqrt(2), abs=1e-14)
        assert additive_bound(0.5) == pytest.approx(ADDITIVE_HALF, abs=1e-14)
        assert additive_bound(0.0) == 0.0

    @pytest.mark.parametrize("s", FIG5_SIN_CHI)
    def test_saturation_on_grid(self, s):
        ea, eb = owc_errors(s, GRID)
        lhs = ea * np.sin(GRID) + eb * np.cos(GRID)
        assert np.max(np.abs(lhs - mur_lower_bound(s, GRID))) < 1e-12

    @pytest.mark.parametrize("s", FIG5_SIN_CHI)
    def test_peak_equals_incompatibility(self, s):
        ea, eb = owc_errors(s, GRID)
        assert np.argmax(ea) == 0 and abs(ea.max() - s) < 1e-9
        assert np.argmax(eb) == len(GRID) - 1 and abs(eb.max() - s) < 1e-9

    @pytest.mark.parametrize("s", FIG5_SIN_CHI)
    def test_additive_tangency(self, s):
        grid = np.linspace(0.0, np.pi / 2, 2001)
        ea, eb = owc_errors(s, grid)
        total = ea + eb
        k = int(np.argmin(total))
        assert grid[k] == pytest.approx(np.pi / 4, abs=1e-12)
        assert abs(total[k] - additive_bound(s)) < 1e-9

    @given(sin_chis, phis)
    def test_dominates_family_bound(self, s, phi):
        ea, eb = owc_errors(s, phi)
        for psi in np.linspace(0, np.pi / 2, 21):
            assert ea * np.sin(psi) + eb * np.cos(psi) >= mur_lower_bound(s, psi) - 1e-12

    @given(sin_chis.filter(lambda s: s > 1e-6))
    def test_monotone(self, s):
        ea, eb = owc_errors(s, GRID)
        assert np.all(np.diff(ea) < 0) and np.all(np.diff(eb) > 0)


class TestOptimalVectors:
    def test_first_endpoint(self):
        a, b = targets_for(0.5)
        assert np.allclose(b, [0, np.sqrt(3) / 2, 0.5])
        tp = optimal_vectors(a, b, 0.0)
        assert np.allclose(tp.c, [0, 0.75, np.sqrt(3) / 4], atol=1e-15)
        assert np.allclose(tp.d, b, atol=1e-15)
        assert np.linalg.norm(a - tp.c) == pytest.approx(0.5, abs=1e-15)

    def test_symmetric_orthogonal(self):
        tp = optimal_vectors([0, 1, 0], [0, 0, 1], np.pi / 4)
        assert tp.h == pytest.approx(0.0, abs=1e-15)
        assert tp.eps_a == pytest.approx(SYMMETRIC_ONE, abs=1e-14)
        assert tp.eps_b == pytest.approx(SYMMETRIC_ONE, abs=1e-14)

    @given(target_pairs())
    def test_h_at_thirty_degrees(self, pair):
        a, _ = pair
        # rotate a by pi/6 inside an arbitrary plane through a
        perp = np.cross(a, pair[1])
        perp = np.cross(perp, a)
        perp /= np.linalg.norm(perp)
        b = np.cos(np.pi / 6) * a + np.sin(np.pi / 6) * perp
        assert optimal_vectors(a, b, np.pi / 4).h == pytest.approx(np.sqrt(2) / 2, abs=1e-12)

    def test_degenerate_targets(self):
        with pytest.raises(DegenerateTargets):
            optimal_vectors([0, 1, 0], [0, -1, 0], 0.2)

    @settings(max_examples=200)
    @given(target_pairs(), phis)
    def test_record_invariants(self, pair, phi):
        a, b = pair
        tp = optimal_vectors(a, b, phi)
        s = np.linalg.norm(np.cross(a, b))
        ea, eb = owc_errors(s, phi)
        assert abs(compat_functional(tp.c, tp.d) - 2.0) < 1e-9
        assert abs(np.linalg.norm(a - tp.c) - ea) < 1e-9
        assert abs(np.linalg.norm(b - tp.d) - eb) < 1e-9
        assert abs(tp.u_c**2 - (1 - tp.c @ tp.c)) < 1e-9
        assert abs(tp.u_d**2 - (1 - tp.d @ tp.d)) < 1e-9
        if tp.u_c + tp.u_d > 1e-6:
            assert abs(np.sin(phi) - tp.u_d / np.hypot(tp.u_c, tp.u_d)) < 1e-9

    @given(target_pairs(), interior_phis)
    def test_perpendicular(self, pair, phi):
        a, b = pair
        tp = optimal_vectors(a, b, phi)
        assert abs((a - tp.c) @ (b - tp.d)) < 1e-9

    @given(target_pairs(), phis)
    def test_planar(self, pair, phi):
        a, b = pair
        n = np.cross(a, b)
        n /= np.linalg.norm(n)
        tp = optimal_vectors(a, b, phi)
        assert abs(tp.c @ n) < 1e-12 and abs(tp.d @ n) < 1e-12

    @given(target_pairs(), phis)
    def test_h_consistency(self, pair, phi):
        a, b = pair
        tp = optimal_vectors(a, b, phi)
        s = np.linalg.norm(np.cross(a, b))
        h_geom = 0.5 * (np.linalg.norm(tp.c + tp.d) - np.linalg.norm(tp.c - tp.d))
        assert abs(tp.h - h_geom) < 1e-9
        assert abs(h_closed_form(a @ b, s, phi) - h_geom) < 1e-9


@pytest.mark.parametrize("s,phi", [(1.0, np.pi / 4), (0.5, 0.4), (1 / 3, 1.1)])
def test_matches_numerical_optimum(s, phi):
    """A generic constrained optimiser finds nothing below the closed form."""
    a, b = targets_for(s)
    a2, b2 = a[1:], b[1:]

    def objective(x):
        c, d = x[:2], x[2:]
        return np.linalg.norm(a2 - c) * np.sin(phi) + np.linalg.norm(b2 - d) * np.cos(phi)

    def slack(x):
        c, d = x[:2], x[2:]
        return 2.0 - np.linalg.norm(c + d) - np.linalg.norm(c - d)

    starts = np.random.default_rng(3).uniform(-0.5, 0.5, (12, 4))
    best = min(
        minimize(objective, x0, constraints=[{"type": "ineq", "fun": slack}], method="SLSQP", tol=1e-12).fun
        for x0 in starts
    )
    tp = optimal_vectors(a, b, phi)
    closed = tp.eps_a * np.sin(phi) + tp.eps_b * np.cos(phi)
    assert best >= closed - 1e-7
    assert best == pytest.approx(closed, abs=1e-5)


class TestPhiFromVectors:
    def test_zero(self):
        a, b = targets_for(0.5)
        assert phi_from_vectors(np.sqrt(3) / 2 * b, b) == 0.0

    def test_symmetric(self):
        tp = optimal_vectors([0, 1, 0], [0, 0, 1], np.pi / 4)
        assert phi_from_vectors(tp.c, tp.d) == pytest.approx(np.pi / 4, abs=1e-12)

    @pytest.mark.parametrize("s", FIG5_SIN_CHI)
    def test_round_trip_fifty_points(self, s):
        a, b = targets_for(s)
        for phi in np.linspace(0.0, np.pi / 2, 50):
            tp = optimal_vectors(a, b, phi)
            assert abs(phi_from_vectors(tp.c, tp.d) - phi) < 1e-9

    def test_not_on_boundary(self):
        with pytest.raises(NotOnBoundary):
            phi_from_vectors([0, 0.3, 0], [0, 0, 0.3])

    def test_degenerate_dot(self):
        with pytest.raises(DegenerateDot):
            phi_from_vectors([0, 1, 0], [0, 1, 0])


@given(sin_chis.filter(lambda s: s > 0.01), phis)
def test_phi_for_eps_a_inverts(s, phi):
    ea, _ = owc_errors(s, phi)
    back = phi_for_eps_a(s, ea)
    assert owc_errors(s, back)[0] == pytest.approx(ea, abs=1e-10)


def test_phi_for_eps_a_domain():
    with pytest.raises(DomainError):
        phi_for_eps_a(0.5, 0.6)
