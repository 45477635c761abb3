import numpy as np
import pytest
from hypothesis import given

from murqubit.bloch import Effect, QubitState, prob, random_unit_vectors, sharp_effect, sin_chi
from murqubit.errors import InvalidEffect, InvalidState, NotUnit

from conftest import ball_vectors, unit_vectors

B30 = np.array([0.0, np.sqrt(3) / 2, 0.5])


class TestProb:
    def test_projector_on_own_eigenstate(self):
        a = np.array([0.0, 1.0, 0.0])
        assert prob(sharp_effect(a), QubitState(a)) == 1.0

    def test_maximally_mixed(self):
        assert prob(sharp_effect([0, 1, 0]), QubitState([0, 0, 0])) == 0.5

    def test_tilted_observable_on_z(self):
        # 1/2 + (1/2)(b . r) = 1/2 + 1/4
        assert prob(sharp_effect(B30), [0, 0, 1]) == pytest.approx(0.75, abs=1e-15)

    def test_matches_trace_formula(self, rng):
        for r, m in zip(random_unit_vectors(50, rng), random_unit_vectors(50, rng)):
            e = Effect(0.5, 0.3 * m)
            s = QubitState(0.9 * r)
            trace = np.real(np.trace(e.matrix() @ s.density_matrix()))
            assert prob(e, s) == pytest.approx(trace, abs=1e-14)

    def test_rejects_states_outside_ball(self):
        with pytest.raises(InvalidState):
            prob(sharp_effect([0, 0, 1]), [0, 0, 1.01])

    @given(unit_vectors(), ball_vectors(), unit_vectors())
    def test_probability_in_unit_interval(self, r, m, direction):
        e = Effect(0.5, 0.5 * m)
        assert 0.0 <= prob(e, r) <= 1.0

    @given(ball_vectors(), unit_vectors())
    def test_complement_sums_to_one(self, m, r):
        e = Effect(0.5, 0.5 * m)
        assert prob(e, r) + prob(e.complement(), r) == pytest.approx(1.0, abs=1e-12)


class TestEffect:
    def test_negative_eigenvalue_rejected(self):
        with pytest.raises(InvalidEffect):
            Effect(0.2, [0.0, 0.0, 0.3])

    def test_eigenvalue_above_one_rejected(self):
        with pytest.raises(InvalidEffect):
            Effect(0.8, [0.0, 0.0, 0.3])

    def test_sharp(self):
        assert sharp_effect([1, 0, 0]).is_sharp
        assert not Effect(0.5, [0, 0, 0.25]).is_sharp

    def test_immutable(self):
        e = sharp_effect([0, 0, 1])
        with pytest.raises(ValueError):
            e.m[0] = 1.0


class TestSharpEffect:
    def test_plus_z(self):
        e = sharp_effect([0, 0, 1], 1)
        assert e.c0 == 0.5 and np.array_equal(e.m, [0, 0, 0.5])

    def test_minus_y(self):
        e = sharp_effect([0, 1, 0], -1)
        assert e.c0 == 0.5 and np.array_equal(e.m, [0, -0.5, 0])

    def test_completeness(self):
        x = np.array([0.6, 0.0, 0.8])
        total = sharp_effect(x, 1) + sharp_effect(x, -1)
        assert total.c0 == 1.0 and np.array_equal(total.m, np.zeros(3))

    def test_not_unit(self):
        with pytest.raises(NotUnit):
            sharp_effect([0, 0, 0.9])

    def test_bad_sign(self):
        with pytest.raises(ValueError):
            sharp_effect([0, 0, 1], 0)


class TestSinChi:
    def test_orthogonal(self):
        assert sin_chi([0, 1, 0], [0, 0, 1]) == 1.0

    def test_thirty_degrees(self):
        assert sin_chi([0, 1, 0], B30) == pytest.approx(0.5, abs=1e-15)

    def test_parallel(self):
        assert sin_chi([0, 1, 0], [0, 1, 0]) == 0.0

    def test_not_unit(self):
        with pytest.raises(NotUnit):
            sin_chi([0, 2, 0], [0, 0, 1])

    @given(unit_vectors(), unit_vectors())
    def test_symmetric(self, a, b):
        assert sin_chi(a, b) == pytest.approx(sin_chi(b, a), abs=1e-15)


def test_states_pure_flag():
    assert QubitState([0, 0, 1]).is_pure
    assert not QubitState([0, 0, 0.5]).is_pure
